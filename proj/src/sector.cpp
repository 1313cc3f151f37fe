#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

#include "supercurrent/cochain.hpp"
#include "supercurrent/exactla.hpp"

namespace supercurrent {

namespace {

struct GroupCombos {
  int k = 0;
  bool odd = false;  // odd generators: strict subsets; even: multisets
  std::vector<std::vector<uint8_t>> combos;       // sorted g-index tuples
  std::vector<std::vector<int>> weight;           // action-weight per combo
  std::map<std::vector<int>, std::vector<uint32_t>> by_weight;
  std::vector<int> wmin, wmax;
};

using GroupPtr = std::shared_ptr<const GroupCombos>;

GroupPtr group_combos(const LieAlgebraData& g, int k, bool odd) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int>, GroupPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple((int)g.spec.series, g.spec.size, k, (int)odd);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto gc = std::make_shared<GroupCombos>();
  gc->k = k;
  gc->odd = odd;
  int dim = g.dim, rank = g.rank;
  std::vector<uint8_t> cur;
  auto emit = [&]() {
    std::vector<int> w(rank, 0);
    for (uint8_t a : cur)
      for (int c = 0; c < rank; ++c) w[c] -= g.weights[a][c];
    gc->weight.push_back(w);
    gc->combos.push_back(cur);
  };
  // lexicographic enumeration
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (left == 0) {
      emit();
      return;
    }
    for (int a = start; a < dim; ++a) {
      cur.push_back((uint8_t)a);
      rec(odd ? a + 1 : a, left - 1);
      cur.pop_back();
    }
  };
  rec(0, k);
  gc->wmin.assign(rank, 0);
  gc->wmax.assign(rank, 0);
  for (uint32_t i = 0; i < gc->combos.size(); ++i) {
    gc->by_weight[gc->weight[i]].push_back(i);
    for (int c = 0; c < rank; ++c) {
      if (i == 0 || gc->weight[i][c] < gc->wmin[c]) gc->wmin[c] = gc->weight[i][c];
      if (i == 0 || gc->weight[i][c] > gc->wmax[c]) gc->wmax[c] = gc->weight[i][c];
    }
  }
  cache[key] = gc;
  return gc;
}

struct Profile {
  std::vector<std::pair<AMonomial, int>> parts;  // ascending monomial code, k >= 1
};

std::vector<Profile> enumerate_profiles(const LieAlgebraData& g, int p, const MultiDegree& n) {
  std::vector<Profile> out;
  if (p < 0 || !n.nonneg()) return out;
  if (p > n.total()) return out;  // each factor carries >= 1 derivative
  auto monos = enumerate_monomials(n);
  Profile cur;
  std::function<void(size_t, int, MultiDegree)> rec = [&](size_t i, int prem, MultiDegree nrem) {
    if (prem == 0) {
      if (nrem == MultiDegree{}) out.push_back(cur);
      return;
    }
    if (i == monos.size()) return;
    if (prem > nrem.total()) return;
    const AMonomial& m = monos[i];
    MultiDegree d = m.degree_vector();
    int kmax = prem;
    for (int c = 0; c < 5; ++c)
      if (d[c] > 0) kmax = std::min(kmax, nrem[c] / d[c]);
    bool odd = ((__builtin_popcount(m.mask) + 1) & 1) != 0;
    if (odd) kmax = std::min(kmax, g.dim);
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0) cur.parts.push_back({m, k});
      MultiDegree nn = nrem;
      for (int c = 0; c < 5; ++c) nn[c] -= k * d[c];
      rec(i + 1, prem - k, nn);
      if (k > 0) cur.parts.pop_back();
    }
  };
  rec(0, p, n);
  return out;
}

bool gen_is_odd_mono(const AMonomial& m) { return ((__builtin_popcount(m.mask) + 1) & 1) != 0; }

}  // namespace

std::vector<SuperMono> enumerate_basis(const LieAlgebraData& g, int p, const MultiDegree& n) {
  std::vector<SuperMono> out;
  for (auto& prof : enumerate_profiles(g, p, n)) {
    std::vector<GroupPtr> groups;
    for (auto& [m, k] : prof.parts) groups.push_back(group_combos(g, k, gen_is_odd_mono(m)));
    SuperMono word;
    std::function<void(size_t)> rec = [&](size_t gi) {
      if (gi == groups.size()) {
        out.push_back(word);
        return;
      }
      const AMonomial& m = prof.parts[gi].first;
      for (auto& combo : groups[gi]->combos) {
        size_t base = word.size();
        for (uint8_t a : combo) word.push_back(gen_key(a, m));
        rec(gi + 1);
        word.resize(base);
      }
    };
    rec(0);
  }
  return out;
}

int64_t sector_dimension(const LieAlgebraData& g, int p, const MultiDegree& n) {
  auto binom = [](int64_t nn, int64_t kk) -> __int128 {
    if (kk < 0 || kk > nn) return 0;
    __int128 r = 1;
    for (int64_t i = 1; i <= kk; ++i) r = r * (nn - kk + i) / i;
    return r;
  };
  __int128 total = 0;
  for (auto& prof : enumerate_profiles(g, p, n)) {
    __int128 prod = 1;
    for (auto& [m, k] : prof.parts) {
      if (gen_is_odd_mono(m))
        prod *= binom(g.dim, k);
      else
        prod *= binom(g.dim + k - 1, k);
    }
    total += prod;
  }
  if (total > (__int128)INT64_MAX) throw std::overflow_error("sector dimension overflow");
  return (int64_t)total;
}

WeightBlock enumerate_weight_block(const LieAlgebraData& g, int p, const MultiDegree& n,
                                   uint64_t packed_weight) {
  WeightBlock block;
  int rank = g.rank;
  std::vector<int> target(rank);
  for (int c = 0; c < rank; ++c) target[c] = (int)((packed_weight >> (8 * c)) & 0xff) - 128;

  for (auto& prof : enumerate_profiles(g, p, n)) {
    size_t ng = prof.parts.size();
    std::vector<GroupPtr> groups;
    for (auto& [m, k] : prof.parts) groups.push_back(group_combos(g, k, gen_is_odd_mono(m)));
    // suffix reachability bounds
    std::vector<std::vector<int>> sufmin(ng + 1, std::vector<int>(rank, 0)),
        sufmax(ng + 1, std::vector<int>(rank, 0));
    for (int gi = (int)ng - 1; gi >= 0; --gi)
      for (int c = 0; c < rank; ++c) {
        sufmin[gi][c] = sufmin[gi + 1][c] + groups[gi]->wmin[c];
        sufmax[gi][c] = sufmax[gi + 1][c] + groups[gi]->wmax[c];
      }
    SuperMono word;
    std::vector<int> partial(rank, 0);
    std::function<void(size_t)> rec = [&](size_t gi) {
      for (int c = 0; c < rank; ++c) {
        int rem = target[c] - partial[c];
        if (rem < sufmin[gi][c] || rem > sufmax[gi][c]) return;
      }
      if (gi == ng) {
        block.index.emplace(word, (uint32_t)block.monos.size());
        block.monos.push_back(word);
        return;
      }
      const AMonomial& m = prof.parts[gi].first;
      for (auto& [w, ids] : groups[gi]->by_weight) {
        bool ok = true;
        for (int c = 0; c < rank && ok; ++c) {
          int rem = target[c] - partial[c] - w[c];
          if (rem < sufmin[gi + 1][c] || rem > sufmax[gi + 1][c]) ok = false;
        }
        if (!ok) continue;
        for (int c = 0; c < rank; ++c) partial[c] += w[c];
        for (uint32_t id : ids) {
          size_t base = word.size();
          for (uint8_t a : groups[gi]->combos[id]) word.push_back(gen_key(a, m));
          rec(gi + 1);
          word.resize(base);
        }
        for (int c = 0; c < rank; ++c) partial[c] -= w[c];
      }
    };
    rec(0);
  }
  return block;
}

int64_t weight_zero_count(const LieAlgebraData& g, int p, const MultiDegree& n) {
  int rank = g.rank;
  int64_t total = 0;
  for (auto& prof : enumerate_profiles(g, p, n)) {
    std::map<std::vector<int>, int64_t> dp{{std::vector<int>(rank, 0), 1}};
    for (auto& [m, k] : prof.parts) {
      auto gc = group_combos(g, k, gen_is_odd_mono(m));
      std::map<std::vector<int>, int64_t> next;
      for (auto& [w0, cnt] : dp)
        for (auto& [w, ids] : gc->by_weight) {
          std::vector<int> s(rank);
          for (int c = 0; c < rank; ++c) s[c] = w0[c] + w[c];
          next[s] += cnt * (int64_t)ids.size();
        }
      dp.swap(next);
    }
    auto it = dp.find(std::vector<int>(rank, 0));
    if (it != dp.end()) total += it->second;
  }
  return total;
}

std::vector<Cochain> relative_invariants(const ComplexOps& ops, int p, const MultiDegree& n) {
  const LieAlgebraData& g = ops.algebra();
  auto all = enumerate_basis(g, p, n);
  std::vector<SuperMono> wt0;
  std::vector<int> zero(g.rank, 0);
  for (auto& m : all)
    if (super_mono_weight(g, m) == zero) wt0.push_back(m);
  if (wt0.empty()) return {};

  std::unordered_map<SuperMono, uint32_t, SuperMonoHash> tindex;
  std::vector<std::tuple<uint32_t, uint32_t, Rat>> entries;
  uint32_t trows = 0;
  for (uint32_t col = 0; col < wt0.size(); ++col) {
    for (size_t si = 0; si < g.simple_raising.size(); ++si) {
      int e = g.simple_raising[si];
      for (auto& [w, coef] : ops.act_mono(e, wt0[col])) {
        auto [it, ins] = tindex.emplace(w, trows);
        if (ins) ++trows;
        // row offset by raising index to stack all operators
        entries.push_back({it->second + (uint32_t)(si << 24), col, Rat(coef)});
      }
    }
  }
  // remap stacked rows densely
  std::map<uint32_t, uint32_t> rowmap;
  for (auto& [r, c, v] : entries) rowmap.emplace(r, 0);
  uint32_t nr = 0;
  for (auto& [r, idx] : rowmap) idx = nr++;
  std::vector<Rat> dense((size_t)nr * wt0.size(), Rat(0));
  for (auto& [r, c, v] : entries) dense[(size_t)rowmap[r] * wt0.size() + c] += v;
  auto null_vectors = dense_nullspace_q(nr, (int64_t)wt0.size(), dense);

  std::vector<Cochain> out;
  for (auto& v : null_vectors) {
    Cochain c;
    for (size_t i = 0; i < wt0.size(); ++i)
      if (v[i] != 0) c.terms[wt0[i]] = v[i];
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace supercurrent
