#include "supercurrent/classes.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "supercurrent/exactla.hpp"
#include "supercurrent/schemes.hpp"
#include "supercurrent/packedexp.hpp"
#include "supercurrent/superring.hpp"

namespace supercurrent {

namespace {

int64_t factorial(int n) {
  int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

// sign of evaluating the canonical ascending derivative composition on the
// canonical ascending theta monomial
int theta_derivative_sign(uint32_t mask) {
  static int table[8] = {1, 1, 1, -1, 1, -1, -1, -1};
  static std::once_flag once;
  std::call_once(once, []() {
    for (uint32_t m = 0; m < 8; ++m) {
      RPoly<Rat> p;
      RMono mono;
      for (int i = 0; i < 3; ++i)
        if ((m >> i) & 1) mono.push_back(rv_avar(2 + i));
      p.add_term(mono, Rat(1));
      // composition d_{i1} o ... o d_{ik}: innermost (rightmost) acts first
      std::vector<int> idx;
      for (int i = 0; i < 3; ++i)
        if ((m >> i) & 1) idx.push_back(i);
      for (auto it = idx.rbegin(); it != idx.rend(); ++it) p = davar(p, 2 + *it);
      if (p.t.size() != 1 || !p.t.begin()->first.empty())
        throw std::logic_error("theta sign table");
      table[m] = p.t.begin()->second == 1 ? 1 : -1;
    }
  });
  return table[mask];
}

std::string DLabel::str() const {
  std::string s;
  for (uint32_t r = 0; r < zp; ++r) s += "zp";
  for (uint32_t r = 0; r < zm; ++r) s += "zm";
  for (int i = 0; i < 3; ++i)
    if ((mask >> i) & 1) s += "t" + std::to_string(i + 1);
  return s;
}

std::pair<DLabel, int> make_label(const std::vector<int>& theta_order, uint32_t zp, uint32_t zm) {
  DLabel l;
  l.zp = zp;
  l.zm = zm;
  int sign = 1;
  // anticommuting derivatives: sort to ascending, track transpositions
  std::vector<int> v = theta_order;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) return {l, 0};
  for (int i : v) l.mask |= 1u << (i - 1);
  return {l, sign};
}

int TraceTerm::word_length() const {
  int p = 0;
  for (auto& f : factors) p += (int)f.size();
  return p;
}

MultiDegree TraceTerm::mdeg() const {
  MultiDegree n;
  for (auto& f : factors)
    for (auto& l : f) n = n + l.mdeg();
  return n;
}

std::optional<std::pair<int, MultiDegree>> TraceWord::sector() const {
  if (terms.empty()) return std::nullopt;
  int p = terms[0].word_length();
  MultiDegree n = terms[0].mdeg();
  for (auto& t : terms)
    if (t.word_length() != p || !(t.mdeg() == n)) return std::nullopt;
  return std::make_pair(p, n);
}

std::string TraceWord::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms) {
    Rat c = t.coeff;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rat a = abs(c);
    os << rat_str(a);
    for (auto& f : t.factors) {
      os << " * Tr(";
      for (size_t i = 0; i < f.size(); ++i) {
        if (i) os << " ";
        os << f[i].str();
      }
      os << ")";
    }
  }
  return os.str();
}

TraceWord parse_trace_word(const std::string& text) {
  TraceWord w;
  size_t pos = 0;
  auto skip = [&]() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  };
  auto parse_symbol = [&](const std::string& tok) -> std::pair<DLabel, int> {
    uint32_t zp = 0, zm = 0;
    std::vector<int> thetas;
    size_t i = 0;
    while (i < tok.size()) {
      if (tok.compare(i, 2, "zp") == 0) {
        ++zp;
        i += 2;
      } else if (tok.compare(i, 2, "zm") == 0) {
        ++zm;
        i += 2;
      } else if (tok[i] == 't' && i + 1 < tok.size() && tok[i + 1] >= '1' && tok[i + 1] <= '3') {
        thetas.push_back(tok[i + 1] - '0');
        i += 2;
      } else {
        throw std::invalid_argument("bad derivative label: " + tok);
      }
    }
    if (zp + zm + thetas.size() == 0) throw std::invalid_argument("empty derivative label");
    return make_label(thetas, zp, zm);
  };
  skip();
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    skip();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw std::invalid_argument("expected +/- between terms");
    }
    skip();
    // optional coefficient
    Rat coeff(sign);
    if (pos < text.size() && (std::isdigit((unsigned char)text[pos]))) {
      size_t start = pos;
      while (pos < text.size() && (std::isdigit((unsigned char)text[pos]) || text[pos] == '/'))
        ++pos;
      coeff = rat_parse(text.substr(start, pos - start)) * sign;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      }
    }
    TraceTerm term;
    term.coeff = coeff;
    bool more = true;
    while (more) {
      skip();
      if (text.compare(pos, 3, "Tr(") != 0)
        throw std::invalid_argument("expected Tr( at position " + std::to_string(pos));
      pos += 3;
      TraceFactor factor;
      while (true) {
        skip();
        if (pos >= text.size()) throw std::invalid_argument("unterminated Tr(");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        size_t start = pos;
        while (pos < text.size() && !std::isspace((unsigned char)text[pos]) && text[pos] != ')')
          ++pos;
        auto [label, s] = parse_symbol(text.substr(start, pos - start));
        if (s == 0) throw std::invalid_argument("repeated theta derivative in label");
        term.coeff *= s;
        factor.push_back(label);
      }
      if (factor.empty()) throw std::invalid_argument("empty trace factor");
      term.factors.push_back(factor);
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        more = true;
      } else {
        more = false;
      }
    }
    w.terms.push_back(term);
    first = false;
    skip();
  }
  if (w.terms.empty()) throw std::invalid_argument("empty trace word");
  return w;
}

// ---- expansion ---------------------------------------------------------------

namespace {

// matrix of the derivative-labeled superfield factor evaluated at the origin
RMatrix<int64_t> symbol_matrix(const LieAlgebraData& g, const DLabel& l) {
  for (int i = 0; i < 3; ++i)
    if (((l.mask >> i) & 1) > 1) throw std::invalid_argument("theta order above one");
  AMonomial m{l.zp, l.zm, l.mask};
  int64_t coef = factorial((int)l.zp) * factorial((int)l.zm) * theta_derivative_sign(l.mask);
  RMatrix<int64_t> M(g.N);
  for (int a = 0; a < g.dim; ++a) {
    RMono mono{rv_xi(gen_key(a, m))};
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j) {
        int64_t v = g.basis[a][i * g.N + j];
        if (v) M.at(i, j).add_term(mono, coef * v);
      }
  }
  return M;
}

// Tr(M_1 ... M_k) by row chaining: keeps only 1 x N polynomial states
template <class Coef>
RPoly<Coef> trace_chain(const std::vector<const RMatrix<Coef>*>& ms, const RBounds& bounds) {
  if (ms.empty()) return {};
  int N = ms[0]->N;
  RPoly<Coef> tr;
  for (int start = 0; start < N; ++start) {
    std::vector<RPoly<Coef>> row(N);
    row[start].add_term(RMono{}, Coef(1));
    for (auto* M : ms) {
      std::vector<RPoly<Coef>> next(N);
      for (int k = 0; k < N; ++k) {
        if (row[k].zero()) continue;
        for (int j = 0; j < N; ++j) {
          if (M->at(k, j).zero()) continue;
          next[j] = next[j] + rmul(row[k], M->at(k, j), bounds);
        }
      }
      row.swap(next);
    }
    tr = tr + row[start];
  }
  return tr;
}

}  // namespace

Cochain expand(const TraceWord& word, const LieAlgebraData& g) {
  std::unordered_map<SuperMono, Rat, SuperMonoHash> acc_out;
  std::map<DLabel, RMatrix<int64_t>> symcache;
  std::map<std::pair<TraceFactor, MultiDegree>, RPoly<int64_t>> factorcache;
  for (auto& term : word.terms) {
    MultiDegree n = term.mdeg();
    RBounds bounds;
    bounds.xi = &n;
    RPoly<int64_t> acc;
    acc.add_term(RMono{}, 1);
    for (auto& factor : term.factors) {
      auto key = std::make_pair(factor, n);
      auto it = factorcache.find(key);
      if (it == factorcache.end()) {
        std::vector<const RMatrix<int64_t>*> ms;
        for (auto& l : factor) {
          auto sit = symcache.find(l);
          if (sit == symcache.end()) sit = symcache.emplace(l, symbol_matrix(g, l)).first;
          ms.push_back(&sit->second);
        }
        it = factorcache.emplace(key, trace_chain(ms, bounds)).first;
      }
      acc = rmul(acc, it->second, bounds);
      if (acc.zero()) break;
    }
    for (auto& [m, v] : acc.t) {
      SuperMono w;
      w.reserve(m.size());
      for (RVar x : m) {
        if (!rv_is_xi(x)) throw std::logic_error("unexpected variable in expansion");
        w.push_back(rv_genkey(x));
      }
      auto [it2, ins] = acc_out.emplace(std::move(w), Rat(0));
      it2->second += Rat(v) * term.coeff;
    }
  }
  Cochain out;
  for (auto& [m, v] : acc_out)
    if (v != 0) out.terms.emplace(m, v);
  return out;
}

CartanPoly restrict_trace_word(const TraceWord& word, const LieAlgebraData& g) {
  RPoly<Rat> total;
  for (auto& term : word.terms) {
    RPoly<Rat> acc;
    acc.add_term(RMono{}, term.coeff);
    for (auto& factor : term.factors) {
      std::vector<RMatrix<Rat>> mats;
      for (auto& l : factor) {
        if (l.order() != 1)
          throw std::invalid_argument("Cartan restriction needs first-derivative labels");
        MultiDegree d = l.mdeg();
        int slot = 0;
        while (d[slot] == 0) ++slot;
        RMatrix<Rat> M(g.N);
        for (int c = 0; c < g.rank; ++c) {
          // GL's central cartan direction participates like any other
          RMono mono{rv_cartan(cartan_var(slot, c))};
          int hc = g.cartan_indices[c];
          for (int i = 0; i < g.N; ++i)
            for (int j = 0; j < g.N; ++j) {
              int64_t v = g.basis[hc][i * g.N + j];
              if (v) M.at(i, j).add_term(mono, Rat(v));
            }
        }
        mats.push_back(std::move(M));
      }
      std::vector<const RMatrix<Rat>*> ptrs;
      for (auto& m : mats) ptrs.push_back(&m);
      acc = rmul(acc, trace_chain(ptrs, RBounds{}));
      if (acc.zero()) break;
    }
    total = total + acc;
  }
  return rpoly_to_cartan(total);
}

// ---- symmetrized-trace representatives ---------------------------------------

std::string GravitonSpec::str() const {
  std::ostringstream os;
  os << "G[p=(" << pp << "," << pm << "),e=(" << e1 << "," << e2 << "," << e3 << "),k=(" << kp
     << "," << km << "),m=(" << m1 << "," << m2 << "," << m3 << ")]";
  return os.str();
}

Cochain graviton(const GravitonSpec& spec, const LieAlgebraData& g) {
  if (spec.length() == 0) return {};  // empty symmetrized trace: excluded
  MultiDegree target = spec.mdeg();
  MultiDegree ext = mdeg(spec.pp, spec.pm, spec.e1, spec.e2, spec.e3);
  RBounds bounds;
  bounds.xi = &target;
  bounds.a = &ext;

  RMatrix<Rat> psi = tautological_psi(g, target);
  RMatrix<Rat> parts[5];
  int counts[5] = {spec.kp, spec.km, spec.m1, spec.m2, spec.m3};
  for (int i = 0; i < 5; ++i)
    if (counts[i]) {
      RMatrix<Rat> M(g.N);
      for (int r = 0; r < g.N * g.N; ++r) M.e[r] = davar(psi.e[r], i);
      parts[i] = std::move(M);
    }
  std::vector<int> codes;
  for (int i = 0; i < 5; ++i)
    for (int r = 0; r < counts[i]; ++r) codes.push_back(i);
  std::sort(codes.begin(), codes.end());
  int nargs = (int)codes.size();

  RPoly<Rat> sym;
  do {
    // Koszul sign: odd factors are the z-derivative insertions (codes 0, 1)
    int sign = 1;
    if (spec.kp && spec.km) {
      for (int i = 0; i < nargs; ++i)
        if (codes[i] == 1) {
          // -1 when the z- factor precedes the z+ factor
          bool zp_seen = false;
          for (int j = 0; j < i; ++j) zp_seen |= (codes[j] == 0);
          if (!zp_seen) sign = -1;
          break;
        }
    }
    std::vector<const RMatrix<Rat>*> ms;
    for (int c : codes) ms.push_back(&parts[c]);
    RPoly<Rat> tr = trace_chain(ms, bounds);
    sym = sym + (sign < 0 ? tr.scaled(Rat(-1)) : tr);
  } while (std::next_permutation(codes.begin(), codes.end()));

  Rat norm(1);
  for (int i = 0; i < 5; ++i) norm *= factorial(counts[i]);
  norm /= factorial(nargs);
  RPoly<Rat> res = sym.scaled(norm);
  // external derivatives, then evaluation at the origin
  int extc[5] = {spec.pp, spec.pm, spec.e1, spec.e2, spec.e3};
  for (int i = 0; i < 5; ++i)
    for (int r = 0; r < extc[i]; ++r) res = davar(res, i);
  res = eval_at_origin(res);
  return rpoly_to_cochain(res);
}

std::vector<GravitonSpec> graviton_specs_within(const MultiDegree& n, int p) {
  std::vector<GravitonSpec> out;
  for (int kp = 0; kp <= std::min(1, n[0]); ++kp)
    for (int pp = 0; pp + kp <= n[0]; ++pp)
      for (int km = 0; km <= std::min(1, n[1]); ++km)
        for (int pm = 0; pm + km <= n[1]; ++pm)
          for (int e1 = 0; e1 <= std::min(1, n[2]); ++e1)
            for (int m1 = 0; m1 + e1 <= n[2]; ++m1)
              for (int e2 = 0; e2 <= std::min(1, n[3]); ++e2)
                for (int m2 = 0; m2 + e2 <= n[3]; ++m2)
                  for (int e3 = 0; e3 <= std::min(1, n[4]); ++e3)
                    for (int m3 = 0; m3 + e3 <= n[4]; ++m3) {
                      GravitonSpec s{pp, pm, e1, e2, e3, kp, km, m1, m2, m3};
                      if (s.length() < 1 || s.length() > p) continue;
                      out.push_back(s);
                    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

const Cochain& cached_graviton(const LieAlgebraData& g, const GravitonSpec& s) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, GravitonSpec>, Cochain> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple((int)g.spec.series, g.spec.size, s);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, graviton(s, g)).first;
  return it->second;
}

}  // namespace

std::vector<Cochain> multi_graviton_products(const LieAlgebraData& g, int p,
                                             const MultiDegree& n) {
  std::vector<GravitonSpec> singles;
  for (auto& s : graviton_specs_within(n, p))
    if (!cached_graviton(g, s).zero()) singles.push_back(s);
  std::vector<Cochain> out;
  // multisets of specs with total length p and multidegree n
  std::function<void(size_t, int, MultiDegree, const Cochain*)> rec =
      [&](size_t i, int prem, MultiDegree nrem, const Cochain* partial) {
        if (prem == 0) {
          if (nrem == MultiDegree{} && partial) out.push_back(*partial);
          return;
        }
        if (i == singles.size()) return;
        if (prem > nrem.total()) return;
        // skip this spec
        rec(i + 1, prem, nrem, partial);
        // take it once more (multiset: stay at i)
        const GravitonSpec& s = singles[i];
        MultiDegree d = s.mdeg();
        MultiDegree nn = nrem - d;
        if (!nn.nonneg() || s.length() > prem) return;
        Cochain next;
        if (partial)
          next = (*partial) * cached_graviton(g, s);
        else
          next = cached_graviton(g, s);
        if (next.zero()) return;  // an odd class squared (or truncated) to zero
        rec(i, prem - s.length(), nn, &next);
      };
  rec(0, p, n, nullptr);
  return out;
}

// ---- verification -------------------------------------------------------------

Classes::Classes(Engine& engine, LieAlgebraPtr g)
    : eng_(engine), g_(std::move(g)), ops_(complex_ops(g_)) {}

namespace {

// coordinates of a cochain in a weight block; throws when a monomial is
// missing (non-invariant input)
std::vector<Rat> block_coords(const Cochain& c, const WeightBlock& block) {
  std::vector<Rat> v(block.size(), Rat(0));
  for (auto& [m, coef] : c.terms) {
    uint32_t idx = block.find(m);
    if (idx == UINT32_MAX) throw std::invalid_argument("cochain outside the weight-zero block");
    v[idx] = coef;
  }
  return v;
}

void append_rat_column(SparseMatrix& M, const std::vector<Rat>& v) {
  Int lcm(1);
  for (auto& r : v)
    if (r != 0) {
      Int d = r.get_den(), g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
      lcm = lcm / g * d;
    }
  uint32_t col = (uint32_t)M.cols;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) {
      Rat s = v[i] * Rat(lcm);
      if (!s.get_num().fits_slong_p()) throw std::runtime_error("column entry overflow");
      M.add((uint32_t)i, col, s.get_num().get_si());
    }
  M.cols++;
}

}  // namespace

Classes::SpanDims Classes::span_dims(int p, const MultiDegree& n, uint64_t prime,
                                     const std::vector<Cochain>& products) {
  SpanDims out;
  auto block = enumerate_weight_block(*g_, p, n, pack_weight_zero(*g_));
  if (block.size() == 0) return out;
  SparseMatrix DI;
  DI.rows = (int64_t)block.size();
  if (p >= 1) {
    auto invm = eng_.invariants_mod_p(g_->spec, p - 1, n, prime);
    if (!invm.kernel.empty()) {
      auto D = eng_.d_matrix_wt0(g_->spec, p - 1, n, invm.block, block);
      std::vector<std::vector<std::pair<uint32_t, uint64_t>>> cols((size_t)D.cols);
      for (auto& [r, c, v] : D.entries) cols[c].push_back({r, int_mod(v, prime)});
      std::vector<uint64_t> dense(block.size(), 0);
      std::vector<uint32_t> touched;
      for (size_t j = 0; j < invm.kernel.size(); ++j) {
        for (auto& [cidx, coef] : invm.kernel[j])
          for (auto& [r, dv] : cols[cidx]) {
            if (dense[r] == 0 && dv != 0) touched.push_back(r);
            dense[r] = add_mod(dense[r], mul_mod(coef, dv, prime), prime);
          }
        for (uint32_t r : touched)
          if (dense[r]) DI.add(r, (uint32_t)j, (int64_t)dense[r]);
        for (uint32_t r : touched) dense[r] = 0;
        touched.clear();
      }
      DI.cols = (int64_t)invm.kernel.size();
    }
  }
  out.rank_d = DI.cols ? rank_mod_p(DI, prime) : 0;
  SparseMatrix DG = DI;
  for (auto& prod : products) {
    uint32_t col = (uint32_t)DG.cols;
    for (auto& [m, coef] : prod.terms) {
      uint32_t idx = block.find(m);
      if (idx == UINT32_MAX)
        throw std::logic_error("graviton product outside the weight-zero block");
      DG.add(idx, col, (int64_t)rat_mod(coef, prime));
    }
    DG.cols++;
  }
  out.rank_d_and_g = DG.cols ? rank_mod_p(DG, prime) : 0;
  return out;
}

int64_t Classes::graviton_span_in_H(int p, const MultiDegree& n) {
  auto rep = eng_.dim_H(g_->spec, p, n);
  if (rep.dim_H == 0) return 0;
  auto products = multi_graviton_products(*g_, p, n);
  auto primes = select_primes(eng_.options().seed, std::max(2, eng_.options().nprimes));
  std::optional<SpanDims> first;
  for (uint64_t prime : primes) {
    auto d = span_dims(p, n, prime, products);
    if (!first) first = d;
    else if (d.rank_d != first->rank_d || d.rank_d_and_g != first->rank_d_and_g)
      throw ArithmeticDisagreement("graviton span dims disagree across primes");
  }
  return first->rank_d_and_g - first->rank_d;
}

int64_t Classes::fortuitous_dim(int p, const MultiDegree& n) {
  auto rep = eng_.dim_H(g_->spec, p, n);
  if (rep.dim_H == 0) return 0;
  int64_t span = graviton_span_in_H(p, n);
  int64_t fort = rep.dim_H - span;
  if (fort < 0) throw std::logic_error("graviton span exceeds cohomology");
  return fort;
}

ClassReport Classes::verify_cochain(const Cochain& v, const ClassVerifyOptions& opts) {
  ClassReport rep;
  rep.spec = g_->spec;
  if (v.zero()) {
    rep.zero = true;
    rep.homogeneous = true;
    rep.invariant = true;
    rep.closed = true;
    return rep;
  }
  auto sec = v.sector();
  if (!sec) return rep;  // non-homogeneous: nothing else is defined
  rep.homogeneous = true;
  rep.p = sec->first;
  rep.n = sec->second;
  rep.level = level(rep.n);

  rep.invariant = true;
  for (int a = 0; a < g_->dim && rep.invariant; ++a)
    if (!ops_->act(a, v).zero()) rep.invariant = false;
  rep.closed = ops_->d(v).zero();

  if (opts.check_exactness && rep.invariant) {
    auto block = enumerate_weight_block(*g_, rep.p, rep.n, pack_weight_zero(*g_));
    auto coords = block_coords(v, block);
    SparseMatrix D;
    D.rows = (int64_t)block.size();
    D.cols = 0;
    if (rep.p >= 1) {
      auto prev = enumerate_weight_block(*g_, rep.p - 1, rep.n, pack_weight_zero(*g_));
      if (prev.size()) D = eng_.d_matrix_wt0(g_->spec, rep.p - 1, rep.n, prev, block);
    }
    ModOptions mo;
    mo.seed = eng_.options().seed;
    mo.nprimes = std::max(2, eng_.options().nprimes);
    mo.certify = opts.certify;
    bool is_exact = in_span(D, coords, mo);
    if (!is_exact && opts.certify) {
      auto cert = not_in_span_certificate(D, coords, mo);
      if (!cert) throw ArithmeticDisagreement("non-exactness certificate not found");
    }
    rep.exact = is_exact;
    // fortuity: membership in d-image + graviton span
    SparseMatrix DG = D;
    for (auto& prod : multi_graviton_products(*g_, rep.p, rep.n))
      append_rat_column(DG, block_coords(prod, block));
    bool in_stable = in_span(DG, coords, mo);
    if (!in_stable && opts.certify) {
      auto cert = not_in_span_certificate(DG, coords, mo);
      if (!cert) throw ArithmeticDisagreement("fortuity certificate not found");
    }
    rep.fortuitous = !in_stable;
  }
  return rep;
}

ClassReport Classes::verify_class(const TraceWord& word, const ClassVerifyOptions& opts) {
  auto ws = word.sector();
  if (!ws) throw std::invalid_argument("verify_class needs a homogeneous trace word");
  // big sectors run on the packed weight-pruned engine; span membership
  // there is an extended computation and is left unset
  if (weight_zero_count(*g_, ws->first, ws->second) > 200000) {
    ClassReport rep;
    rep.spec = g_->spec;
    rep.homogeneous = true;
    rep.p = ws->first;
    rep.n = ws->second;
    rep.level = level(rep.n);
    auto e = expand_packed(word, *g_);
    rep.zero = packed_is_zero(e);
    rep.closed = rep.zero || rep.p == rep.n.total() || packed_d_is_zero(e);
    rep.invariant = rep.zero || packed_raising_kernel_zero(e);
    if (rep.p == rep.n.total())
      rep.cartan_restriction_zero = restrict_trace_word(word, *g_).empty();
    return rep;
  }
  Cochain v = expand(word, *g_);
  ClassReport rep = verify_cochain(v, opts);
  if (!rep.closed && !rep.zero) {
    // diagnostic: closed combinations supported on the same trace terms
    SparseMatrix M;
    std::unordered_map<SuperMono, uint32_t, SuperMonoHash> rows;
    for (auto& term : word.terms) {
      TraceWord single;
      single.terms.push_back({Rat(1), term.factors});
      Cochain dv = ops_->d(expand(single, *g_));
      uint32_t col = (uint32_t)M.cols;
      Int lcm(1);
      for (auto& [m, c] : dv.terms) {
        Int den = c.get_den(), g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
      }
      for (auto& [m, c] : dv.terms) {
        auto [it, ins] = rows.emplace(m, (uint32_t)rows.size());
        Rat s = c * Rat(lcm);
        M.add(it->second, col, s.get_num().get_si());
      }
      M.cols++;
    }
    M.rows = (int64_t)rows.size();
    ModOptions mo;
    mo.seed = eng_.options().seed;
    rep.closed_combination_dim = M.cols - rank(M, mo).rank;
  }
  // Cartan restriction at top degree
  if (ws->first == ws->second.total()) {
    auto restricted = restrict_trace_word(word, *g_);
    rep.cartan_restriction_zero = restricted.empty();
  }
  return rep;
}

// ---- builtin representatives ---------------------------------------------------

namespace {

TraceFactor F(std::initializer_list<DLabel> ls) { return TraceFactor(ls); }

struct TermBuilder {
  Rat coeff;
  std::vector<TraceFactor> factors;
};

DLabel T(std::initializer_list<int> thetas, int* sign) {
  auto [l, s] = make_label(std::vector<int>(thetas));
  *sign *= s;
  return l;
}

TraceWord xi_f_sl2() {
  // seven-factor fortuitous representative: cyclic sum over the theta
  // indices of
  //   Tr(P_{23} P_1 + P_{13} P_2) Tr(P_{12} P_1) Tr(P_{13} P_{23} P_{23})
  TraceWord w;
  int perms[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (auto& pm : perms) {
    auto s = [&](int i) { return pm[i - 1]; };
    for (int variant = 0; variant < 2; ++variant) {
      int sign = 1;
      TraceFactor f1;
      if (variant == 0)
        f1 = F({T({s(2), s(3)}, &sign), T({s(1)}, &sign)});
      else
        f1 = F({T({s(1), s(3)}, &sign), T({s(2)}, &sign)});
      TraceFactor f2 = F({T({s(1), s(2)}, &sign), T({s(1)}, &sign)});
      TraceFactor f3 = F({T({s(1), s(3)}, &sign), T({s(2), s(3)}, &sign), T({s(2), s(3)}, &sign)});
      w.terms.push_back({Rat(sign), {f1, f2, f3}});
    }
  }
  return w;
}

TraceWord xi_f_so7() {
  TraceWord w;
  auto add = [&](long coeff, std::initializer_list<std::initializer_list<std::initializer_list<int>>>
                                 factors) {
    int sign = 1;
    TraceTerm t;
    for (auto& fac : factors) {
      TraceFactor f;
      for (auto& lab : fac) f.push_back(T(lab, &sign));
      t.factors.push_back(f);
    }
    t.coeff = Rat(coeff * sign);
    w.terms.push_back(t);
  };
  add(1, {{{2}, {2}}, {{1}, {2, 3}}, {{1}, {3}}, {{1}, {3}}});
  add(-4, {{{2}, {2}}, {{1}, {3}}, {{3}, {1}, {3}, {1, 2}}});
  add(-1, {{{1}, {3}}, {{1}, {3}}, {{3}, {2}, {1, 2}, {2}}});
  add(-4, {{{1}, {3}}, {{1}, {3}}, {{3}, {2}, {2}, {1, 2}}});
  add(8, {{{1}, {3}}, {{3}, {1}, {2}, {2}, {3}, {1, 2}}});
  add(4, {{{1}, {3}}, {{3}, {1}, {3}, {2}, {1, 2}, {2}}});
  add(16, {{{1}, {3}}, {{3}, {1}, {3}, {2}, {2}, {1, 2}}});
  add(-4, {{{3}, {1, 2}}, {{3}, {1}}, {{3}, {1}, {2}, {2}}});
  add(8, {{{3}, {1}, {3}, {1, 2}}, {{1}, {2}, {3}, {2}}});
  add(-2, {{{2}, {2}}, {{3}, {1, 2}}, {{3}, {1}, {3}, {1}}});
  add(8, {{{3}, {1}, {3}, {1}}, {{2}, {2}, {3}, {1, 2}}});
  add(2, {{{3}, {1}, {3}, {1}}, {{2}, {3}, {2}, {1, 2}}});
  add(16, {{{2}, {3}, {1, 2}}, {{3}, {1}, {3}, {1}, {2}}});
  add(8, {{{3}, {1, 2}}, {{3}, {1}, {3}, {1}, {2}, {2}}});
  add(8, {{{2}, {2}}, {{3}, {1}, {3}, {1}, {3}, {1, 2}}});
  add(16, {{{3}, {1}, {3}, {1}, {2}, {3}, {2}, {1, 2}}});
  add(-8, {{{3}, {1}, {3}, {1}, {3}, {2}, {1, 2}, {2}}});
  add(-32, {{{3}, {1}, {3}, {1}, {3}, {2}, {2}, {1, 2}}});
  add(-16, {{{3}, {1}, {3}, {2}, {1}, {2}, {3}, {1, 2}}});
  add(-16, {{{3}, {1}, {3}, {2}, {1}, {3}, {2}, {1, 2}}});
  add(-16, {{{3}, {1}, {3}, {2}, {2}, {1}, {3}, {1, 2}}});
  return w;
}

int eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) ||
      (i == 3 && j == 1 && k == 2))
    return 1;
  return -1;
}

TraceWord xi_nc_so7() {
  // epsilon_{ijk} epsilon_{lmn} ( Tr(P_i P_l) Tr(P_a P^a)
  //   - Tr(P_i P_a) Tr(P_l P^a) - 4 Tr(P_a P^a P_{(i} P_{l)}) )
  //   Tr(P_j P_m) Tr(P_k P_n)
  // with P^a = eps^{ab} P_b over the two z slots and the symmetrization
  // normalized as the average of the two orderings.
  TraceWord w;
  DLabel zp{1, 0, 0}, zm{0, 1, 0};
  auto th = [](int i) {
    DLabel l;
    l.mask = 1u << (i - 1);
    return l;
  };
  int idx[3] = {1, 2, 3};
  for (int i : idx)
    for (int j : idx)
      for (int k : idx) {
        int e1 = eps3(i, j, k);
        if (!e1) continue;
        for (int l : idx)
          for (int m : idx)
            for (int n : idx) {
              int e2 = eps3(l, m, n);
              if (!e2) continue;
              Rat base(e1 * e2);
              TraceFactor tjm = F({th(j), th(m)});
              TraceFactor tkn = F({th(k), th(n)});
              // Tr(P_i P_l) (Tr(P_+ P_-) - Tr(P_- P_+))
              w.terms.push_back({base, {F({th(i), th(l)}), F({zp, zm}), tjm, tkn}});
              w.terms.push_back({-base, {F({th(i), th(l)}), F({zm, zp}), tjm, tkn}});
              // - (Tr(P_i P_+) Tr(P_l P_-) - Tr(P_i P_-) Tr(P_l P_+))
              w.terms.push_back({-base, {F({th(i), zp}), F({th(l), zm}), tjm, tkn}});
              w.terms.push_back({base, {F({th(i), zm}), F({th(l), zp}), tjm, tkn}});
              // - 4 * (1/2) [ Tr(P_+P_-P_iP_l) - Tr(P_-P_+P_iP_l)
              //              + Tr(P_+P_-P_lP_i) - Tr(P_-P_+P_lP_i) ]
              w.terms.push_back({-2 * base, {F({zp, zm, th(i), th(l)}), tjm, tkn}});
              w.terms.push_back({2 * base, {F({zm, zp, th(i), th(l)}), tjm, tkn}});
              w.terms.push_back({-2 * base, {F({zp, zm, th(l), th(i)}), tjm, tkn}});
              w.terms.push_back({2 * base, {F({zm, zp, th(l), th(i)}), tjm, tkn}});
            }
      }
  return w;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"XiF_sl2", "XiF_so7", "XiNC_so7"}; }

TraceWord builtin_representative(const std::string& name) {
  if (name == "XiF_sl2") return xi_f_sl2();
  if (name == "XiF_so7") return xi_f_so7();
  if (name == "XiNC_so7") return xi_nc_so7();
  throw std::invalid_argument("unknown builtin representative: " + name);
}

}  // namespace supercurrent
