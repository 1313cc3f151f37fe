#include "supercurrent/packedexp.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <stdexcept>

namespace supercurrent {

namespace {

uint64_t pkey_hash(const PKey& k) {
  uint64_t lo, hi;
  std::memcpy(&lo, k.b, 8);
  std::memcpy(&hi, k.b + 8, 8);
  uint64_t x = lo ^ (hi * 0x9e3779b97f4a7c15ull);
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("packed coefficient overflow");
  return r;
}

void checked_add(int64_t& a, int64_t b) {
  if (__builtin_add_overflow(a, b, &a)) throw std::overflow_error("packed coefficient overflow");
}

}  // namespace

PMap::PMap(size_t initial) {
  size_t cap = 16;
  while (cap < initial) cap <<= 1;
  keys_.resize(cap);
  vals_.resize(cap);
  for (auto& k : keys_) k.b[0] = kEmptyId;
  mask_ = cap - 1;
}

void PMap::grow() {
  std::vector<PKey> ok;
  std::vector<PVal> ov;
  ok.swap(keys_);
  ov.swap(vals_);
  size_t cap = ok.size() * 2;
  keys_.resize(cap);
  vals_.resize(cap);
  for (auto& k : keys_) k.b[0] = kEmptyId;
  mask_ = cap - 1;
  count_ = 0;
  for (size_t i = 0; i < ok.size(); ++i) {
    if (ok[i].b[0] == kEmptyId) continue;
    PVal& v = slot(ok[i]);
    v = ov[i];
  }
}

PVal& PMap::slot(const PKey& k) {
  if (count_ * 10 >= keys_.size() * 7) grow();
  size_t i = pkey_hash(k) & mask_;
  while (true) {
    if (keys_[i].b[0] == kEmptyId) {
      keys_[i] = k;
      vals_[i] = PVal{};
      ++count_;
      return vals_[i];
    }
    if (keys_[i] == k) return vals_[i];
    i = (i + 1) & mask_;
  }
}

void PMap::clear() {
  for (auto& k : keys_) k.b[0] = kEmptyId;
  count_ = 0;
}

PackedCtx::PackedCtx(const LieAlgebraData& alg) : g(&alg) {
  wzero = pack_weight(std::vector<int>(alg.rank, 0));
  maxw = 1;
  for (auto& w : alg.weights)
    for (int x : w) maxw = std::max(maxw, std::abs(x));
}

uint16_t PackedCtx::id_of(GenKey k) {
  auto it = ids.find(k);
  if (it != ids.end()) return it->second;
  if (gens.size() >= 253)
    throw std::runtime_error("packed expansion supports at most 253 generators");
  uint16_t id = (uint16_t)gens.size();
  gens.push_back(k);
  ids.emplace(k, id);
  parity.push_back((uint8_t)gen_parity(k));
  wdelta.push_back(pack_weight(gen_weight(*g, k)) - wzero);
  return id;
}

namespace {

// sorts the byte sequence tracking odd-odd transpositions; 0 on odd repeat
int sort_bytes_sign(uint8_t* b, int len, const std::vector<uint8_t>& parity) {
  int sign = 1;
  for (int i = 1; i < len; ++i) {
    uint8_t v = b[i];
    int pv = parity[v];
    int j = i;
    while (j > 0 && b[j - 1] > v) {
      b[j] = b[j - 1];
      if (pv && parity[b[j - 1]]) sign = -sign;
      --j;
    }
    b[j] = v;
  }
  for (int i = 1; i < len; ++i)
    if (b[i] == b[i - 1] && parity[b[i]]) return 0;
  return sign;
}

// per-coordinate feasibility: |target - w| <= maxw * remaining
bool weight_feasible(uint64_t w, uint64_t target, int rank, int maxw, int remaining) {
  for (int c = 0; c < rank; ++c) {
    int wc = (int)((w >> (8 * c)) & 0xff) - 128;
    int tc = (int)((target >> (8 * c)) & 0xff) - 128;
    int d = tc - wc;
    if (d < 0) d = -d;
    if (d > maxw * remaining) return false;
  }
  return true;
}

struct IdEntry {
  uint16_t id;
  int32_t coeff;
};

// symbol matrix in id space
struct IdMatrix {
  int N = 0;
  std::vector<std::vector<IdEntry>> e;  // row-major entry lists
};

IdMatrix symbol_matrix_ids(PackedCtx& ctx, const DLabel& l) {
  const LieAlgebraData& g = *ctx.g;
  AMonomial m{l.zp, l.zm, l.mask};
  int64_t coef = theta_derivative_sign(l.mask);
  for (uint32_t r = 2; r <= l.zp; ++r) coef *= r;
  for (uint32_t r = 2; r <= l.zm; ++r) coef *= r;
  IdMatrix M;
  M.N = g.N;
  M.e.resize(g.N * g.N);
  for (int a = 0; a < g.dim; ++a) {
    uint16_t id = ctx.id_of(gen_key(a, m));
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j) {
        int64_t v = g.basis[a][i * g.N + j];
        if (v) M.e[i * g.N + j].push_back({id, (int32_t)(coef * v)});
      }
  }
  return M;
}

// Tr(M_1 ... M_k) with weight pruning; rem_after = factors in later traces
PMap trace_chain_packed(PackedCtx& ctx, const std::vector<IdMatrix>& ms, uint64_t target,
                        int rem_after) {
  int N = ms.empty() ? 0 : ms[0].N;
  int rank = ctx.g->rank;
  PMap out;
  PKey unit;
  std::memset(unit.b, kPadId, kPackedMaxLen);
  for (int start = 0; start < N; ++start) {
    std::vector<PMap> row(N);
    {
      PVal& v = row[start].slot(unit);
      v.coeff = 1;
      v.weight = ctx.wzero;
    }
    for (size_t step = 0; step < ms.size(); ++step) {
      const IdMatrix& M = ms[step];
      int remaining = (int)(ms.size() - step - 1) + rem_after;
      std::vector<PMap> next(N);
      for (int k = 0; k < N; ++k) {
        row[k].for_each([&](const PKey& key, const PVal& val) {
          if (val.coeff == 0) return;
          int len = key.length();
          for (int j = 0; j < N; ++j) {
            for (const IdEntry& en : M.e[k * N + j]) {
              uint64_t w = val.weight + ctx.wdelta[en.id];
              if (!weight_feasible(w, target, rank, ctx.maxw, remaining)) continue;
              PKey nk = key;
              nk.b[len] = en.id;
              int s = sort_bytes_sign(nk.b, len + 1, ctx.parity);
              if (s == 0) continue;
              PVal& slot = next[j].slot(nk);
              checked_add(slot.coeff, checked_mul(val.coeff, (int64_t)en.coeff * s));
              slot.weight = w;
            }
          }
        });
        row[k].clear();
      }
      row.swap(next);
    }
    row[start].for_each([&](const PKey& key, const PVal& val) {
      if (val.coeff == 0) return;
      PVal& slot = out.slot(key);
      checked_add(slot.coeff, val.coeff);
      slot.weight = val.weight;
    });
  }
  return out;
}

// merge of two packed monomials; 0 on an odd repeat
int pkey_merge(const PKey& a, int la, const PKey& b, int lb, const std::vector<uint8_t>& parity,
               PKey& out) {
  if (la + lb > kPackedMaxLen) throw std::runtime_error("packed monomial too long");
  int i = 0, j = 0, o = 0, sign = 1;
  int odd_rem_a = 0;
  for (int t = 0; t < la; ++t) odd_rem_a += parity[a.b[t]];
  while (i < la || j < lb) {
    if (j == lb || (i < la && a.b[i] <= b.b[j])) {
      odd_rem_a -= parity[a.b[i]];
      out.b[o++] = a.b[i++];
    } else {
      if (parity[b.b[j]] && (odd_rem_a & 1)) sign = -sign;
      out.b[o++] = b.b[j++];
    }
  }
  for (int t = o; t < kPackedMaxLen; ++t) out.b[t] = kPadId;
  for (int t = 1; t < o; ++t)
    if (out.b[t] == out.b[t - 1] && parity[out.b[t]]) return 0;
  return sign;
}

}  // namespace

PackedExpansion expand_packed(const TraceWord& word, const LieAlgebraData& g,
                              const std::vector<int>* target_weight) {
  PackedExpansion e(g);
  auto sec = word.sector();
  if (!sec) throw std::invalid_argument("expand_packed needs a homogeneous word");
  e.p = sec->first;
  e.n = sec->second;
  if (e.p > kPackedMaxLen - 1) throw std::invalid_argument("word length beyond packed support");
  uint64_t target =
      target_weight ? pack_weight(*target_weight) : pack_weight(std::vector<int>(g.rank, 0));
  int rank = g.rank;

  std::map<DLabel, IdMatrix> symcache;
  for (auto& term : word.terms) {
    if (Rat(term.coeff).get_den() != 1)
      throw std::invalid_argument("packed expansion expects integer term coefficients");
    int64_t tc = Rat(term.coeff).get_num().get_si();
    // factor traces, heaviest pruning late in the chain
    std::vector<int> suffix_len(term.factors.size() + 1, 0);
    for (int i = (int)term.factors.size() - 1; i >= 0; --i)
      suffix_len[i] = suffix_len[i + 1] + (int)term.factors[i].size();
    PMap acc;
    PKey unit;
    std::memset(unit.b, kPadId, kPackedMaxLen);
    {
      PVal& v = acc.slot(unit);
      v.coeff = 1;
      v.weight = e.ctx.wzero;
    }
    for (size_t fi = 0; fi < term.factors.size(); ++fi) {
      std::vector<IdMatrix> ms;
      for (auto& l : term.factors[fi]) {
        auto it = symcache.find(l);
        if (it == symcache.end()) it = symcache.emplace(l, symbol_matrix_ids(e.ctx, l)).first;
        ms.push_back(it->second);
      }
      PMap tr = trace_chain_packed(e.ctx, ms, target, suffix_len[fi + 1]);
      PMap next;
      int remaining = suffix_len[fi + 1];
      acc.for_each([&](const PKey& ka, const PVal& va) {
        if (va.coeff == 0) return;
        int la = ka.length();
        tr.for_each([&](const PKey& kb, const PVal& vb) {
          if (vb.coeff == 0) return;
          uint64_t w = va.weight + vb.weight - e.ctx.wzero;
          if (!weight_feasible(w, target, rank, e.ctx.maxw, remaining)) return;
          PKey nk;
          int s = pkey_merge(ka, la, kb, kb.length(), e.ctx.parity, nk);
          if (s == 0) return;
          PVal& slot = next.slot(nk);
          checked_add(slot.coeff, checked_mul(va.coeff, vb.coeff) * s);
          slot.weight = w;
        });
      });
      acc = std::move(next);
    }
    acc.for_each([&](const PKey& k, const PVal& v) {
      if (v.coeff == 0) return;
      PVal& slot = e.monos.slot(k);
      checked_add(slot.coeff, checked_mul(v.coeff, tc));
      slot.weight = v.weight;
    });
  }
  return e;
}

bool packed_is_zero(const PackedExpansion& e) {
  bool zero = true;
  e.monos.for_each([&](const PKey&, const PVal& v) {
    if (v.coeff != 0) zero = false;
  });
  return zero;
}

bool packed_d_is_zero(PackedExpansion& e) {
  auto ops = complex_ops(build_algebra(e.ctx.g->spec));
  // suspended differential tables in id space; splits register new generators
  std::vector<std::vector<std::tuple<uint16_t, uint16_t, int32_t>>> dtab;
  std::vector<char> dtab_done;
  auto dtable = [&](uint16_t id) -> const std::vector<std::tuple<uint16_t, uint16_t, int32_t>>& {
    if (dtab.size() <= id) {
      dtab.resize(id + 1);
      dtab_done.resize(id + 1, 0);
    }
    if (!dtab_done[id]) {
      for (auto& [ka, kb, c] : ops->dgen(e.ctx.gens[id]))
        dtab[id].push_back({e.ctx.id_of(ka), e.ctx.id_of(kb), (int32_t)c});
      dtab_done[id] = 1;
    }
    return dtab[id];
  };
  PMap acc;
  e.monos.for_each([&](const PKey& key, const PVal& val) {
    if (val.coeff == 0) return;
    int len = key.length();
    int prefix = 1;
    for (int i = 0; i < len; ++i) {
      uint16_t id = key.b[i];
      for (auto& [ida, idb, c] : dtable(id)) {
        PKey nk;
        int o = 0;
        for (int t = 0; t < i; ++t) nk.b[o++] = key.b[t];
        nk.b[o++] = (uint8_t)ida;
        nk.b[o++] = (uint8_t)idb;
        for (int t = i + 1; t < len; ++t) nk.b[o++] = key.b[t];
        for (int t = o; t < kPackedMaxLen; ++t) nk.b[t] = kPadId;
        int s = sort_bytes_sign(nk.b, o, e.ctx.parity);
        if (s == 0) continue;
        PVal& slot = acc.slot(nk);
        checked_add(slot.coeff, checked_mul(val.coeff, (int64_t)c * s * prefix));
      }
      if (e.ctx.parity[id]) prefix = -prefix;
    }
  });
  bool zero = true;
  acc.for_each([&](const PKey&, const PVal& v) {
    if (v.coeff != 0) zero = false;
  });
  return zero;
}

bool packed_raising_kernel_zero(PackedExpansion& e) {
  auto ops = complex_ops(build_algebra(e.ctx.g->spec));
  const LieAlgebraData& g = *e.ctx.g;
  for (int ei : g.simple_raising) {
    // action tables in id space per present generator
    std::vector<std::vector<std::pair<uint16_t, int32_t>>> atab;
    std::vector<char> atab_done;
    auto atable = [&](uint16_t id) -> const std::vector<std::pair<uint16_t, int32_t>>& {
      if (atab.size() <= id) {
        atab.resize(id + 1);
        atab_done.resize(id + 1, 0);
      }
      if (!atab_done[id]) {
        GenKey k = e.ctx.gens[id];
        AMonomial m = gen_mono(k);
        for (auto& [b, coef] : ops->action_pairs(ei, gen_g(k)))
          atab[id].push_back({e.ctx.id_of(gen_key(b, m)), (int32_t)coef});
        atab_done[id] = 1;
      }
      return atab[id];
    };
    PMap acc;
    e.monos.for_each([&](const PKey& key, const PVal& val) {
      if (val.coeff == 0) return;
      int len = key.length();
      for (int i = 0; i < len; ++i) {
        for (auto& [idb, c] : atable(key.b[i])) {
          PKey nk = key;
          nk.b[i] = (uint8_t)idb;
          int s = sort_bytes_sign(nk.b, len, e.ctx.parity);
          if (s == 0) continue;
          PVal& slot = acc.slot(nk);
          checked_add(slot.coeff, checked_mul(val.coeff, (int64_t)c * s));
        }
      }
    });
    bool zero = true;
    acc.for_each([&](const PKey&, const PVal& v) {
      if (v.coeff != 0) zero = false;
    });
    if (!zero) return false;
  }
  return true;
}

Cochain packed_to_cochain(const PackedExpansion& e, size_t max_terms) {
  if (e.monos.size() > max_terms)
    throw std::runtime_error("packed expansion too large to materialize");
  Cochain c;
  e.monos.for_each([&](const PKey& key, const PVal& val) {
    if (val.coeff == 0) return;
    int len = key.length();
    SuperMono m;
    m.reserve(len);
    for (int i = 0; i < len; ++i) m.push_back(e.ctx.gens[key.b[i]]);
    c.add(std::move(m), Rat(val.coeff));
  });
  return c;
}

}  // namespace supercurrent
