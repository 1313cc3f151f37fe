#include "supercurrent/schemes.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "supercurrent/exactla.hpp"

namespace supercurrent {

namespace {

// scale a rational-coefficient cochain to integer entries in a fixed
// monomial index; membership/span questions are scale-invariant
void append_column(SparseMatrix& M,
                   std::unordered_map<SuperMono, uint32_t, SuperMonoHash>& rows,
                   const Cochain& c) {
  Int lcm(1);
  for (auto& [m, v] : c.terms) {
    Int d = v.get_den(), g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    lcm = lcm / g * d;
  }
  uint32_t col = (uint32_t)M.cols;
  for (auto& [m, v] : c.terms) {
    auto [it, ins] = rows.emplace(m, (uint32_t)rows.size());
    Rat s = v * Rat(lcm);
    if (!s.get_num().fits_slong_p()) throw std::runtime_error("column entry overflow");
    M.add(it->second, col, s.get_num().get_si());
  }
  M.cols += 1;
  M.rows = (int64_t)rows.size();
}

}  // namespace

Schemes::Schemes(LieAlgebraPtr g, SchemeOptions opts)
    : g_(std::move(g)), ops_(complex_ops(g_)), opts_(opts) {}

AMonomial Schemes::slot_monomial(int slot) {
  switch (slot) {
    case 0:
      return AMonomial{1, 0, 0};
    case 1:
      return AMonomial{0, 1, 0};
    default:
      return AMonomial{0, 0, 1u << (slot - 2)};
  }
}

std::vector<SuperMono> Schemes::ambient_basis(const MultiDegree& n) const {
  return enumerate_basis(*g_, n.total(), n);
}

std::vector<Cochain> Schemes::relation_generators() const {
  std::vector<Cochain> out;
  const int dim = g_->dim;
  // slot pairs: even-even (theta) strictly ordered, even-odd all, odd-odd
  // with repetition (the self-bracket of an odd coordinate is nontrivial)
  std::vector<std::pair<int, int>> pairs;
  for (int i = 2; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pairs.push_back({i, j});
  for (int i = 2; i < 5; ++i)
    for (int a = 0; a < 2; ++a) pairs.push_back({i, a});
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b) pairs.push_back({a, b});
  for (auto [s, t] : pairs) {
    AMonomial ms = slot_monomial(s), mt = slot_monomial(t);
    for (int c = 0; c < dim; ++c) {
      Cochain q;
      for (auto& [a, b, fc] : g_->f_by_target[c])
        q.add(SuperMono{gen_key(a, ms), gen_key(b, mt)}, Rat(fc));
      if (!q.zero()) out.push_back(std::move(q));
    }
  }
  return out;
}

std::vector<Cochain> Schemes::ideal_columns(const MultiDegree& n) const {
  std::vector<Cochain> out;
  for (auto& q : relation_generators()) {
    auto sec = q.sector();
    MultiDegree rest = n - sec->second;
    if (!rest.nonneg()) continue;
    if (rest.total() == 0) {
      out.push_back(q);
      continue;
    }
    for (auto& m : enumerate_basis(*g_, rest.total(), rest)) {
      Cochain factor;
      factor.add(m, 1);
      Cochain prod = q * factor;
      if (!prod.zero()) out.push_back(std::move(prod));
    }
  }
  return out;
}

Schemes::QuotientInvariants Schemes::invariants_supercommuting(const MultiDegree& n) const {
  QuotientInvariants out;
  if (n.total() == 0) {
    out.dim = 1;  // constants
    Cochain one;
    one.add(SuperMono{}, 1);
    out.representatives.push_back(one);
    return out;
  }
  auto inv = relative_invariants(*ops_, n.total(), n);
  if (inv.empty()) return out;
  auto ideal = ideal_columns(n);

  std::unordered_map<SuperMono, uint32_t, SuperMonoHash> rows;
  SparseMatrix M;
  for (auto& c : ideal) append_column(M, rows, c);
  ModOptions mo;
  mo.nprimes = opts_.nprimes;
  mo.seed = opts_.seed;
  mo.max_retries = opts_.max_retries;
  int64_t base = M.cols ? rank(M, mo).rank : 0;
  int64_t cur = base;
  for (auto& v : inv) {
    append_column(M, rows, v);
    int64_t r = rank(M, mo).rank;
    if (r > cur) {
      out.representatives.push_back(v);
      cur = r;
    }
  }
  out.dim = cur - base;
  return out;
}

std::vector<CartanMono> Schemes::cartan_basis(const MultiDegree& n) const {
  int rank = g_->rank;
  std::vector<CartanMono> out;
  // odd slots: subsets; even slots: multisets; slot-major ascending order
  std::function<void(int, CartanMono&)> rec = [&](int slot, CartanMono& cur) {
    if (slot == 5) {
      out.push_back(cur);
      return;
    }
    int k = n[slot];
    bool odd = slot < 2;
    std::function<void(int, int)> pick = [&](int start, int left) {
      if (left == 0) {
        rec(slot + 1, cur);
        return;
      }
      for (int c = start; c < rank; ++c) {
        cur.push_back(cartan_var(slot, c));
        pick(odd ? c + 1 : c, left - 1);
        cur.pop_back();
      }
    };
    if (odd && k > rank) return;  // exterior power collapses
    pick(0, k);
  };
  CartanMono cur;
  rec(0, cur);
  return out;
}

Schemes::CartanInvariants Schemes::cartan_invariants(const MultiDegree& n) const {
  CartanInvariants out;
  auto basis = cartan_basis(n);
  if (basis.empty()) return out;
  // fast path: all Weyl elements act monomially (signed permutations)
  bool monomial_action = true;
  int rank = g_->rank;
  for (auto& w : g_->weyl_cartan) {
    for (int r = 0; r < rank && monomial_action; ++r) {
      int nz = 0;
      for (int c = 0; c < rank; ++c)
        if (w[r * rank + c] != 0) {
          ++nz;
          if (std::abs(w[r * rank + c]) != 1) monomial_action = false;
        }
      if (nz > 1) monomial_action = false;
    }
    if (!monomial_action) break;
  }
  if (monomial_action) {
    // orbit sums with consistent signs
    std::map<CartanMono, uint32_t> index;
    for (uint32_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    std::vector<char> used(basis.size(), 0);
    for (uint32_t i = 0; i < basis.size(); ++i) {
      if (used[i]) continue;
      std::map<uint32_t, int> orbit;  // index -> sign
      bool dead = false;
      std::vector<std::pair<uint32_t, int>> queue{{i, 1}};
      orbit[i] = 1;
      for (size_t qi = 0; qi < queue.size() && !dead; ++qi) {
        auto [j, sign] = queue[qi];
        for (auto& w : g_->weyl_cartan) {
          CartanMono m;
          int s = sign;
          for (CartanVar v : basis[j]) {
            int slot = cartan_var_slot(v), c = cartan_var_coord(v);
            int cc = -1, sv = 0;
            for (int c2 = 0; c2 < rank; ++c2)
              if (w[c2 * rank + c] != 0) {
                cc = c2;
                sv = w[c2 * rank + c];
              }
            m.push_back(cartan_var(slot, cc));
            if (sv < 0) s = -s;
          }
          int ns = normalize_cartan_mono(m);
          if (ns == 0) {
            dead = true;
            break;
          }
          s *= ns;
          uint32_t tj = index.at(m);
          auto it = orbit.find(tj);
          if (it == orbit.end()) {
            orbit[tj] = s;
            queue.push_back({tj, s});
          } else if (it->second != s) {
            dead = true;
            break;
          }
        }
      }
      for (auto& [j, s] : orbit) used[j] = 1;
      if (!dead) {
        CartanPoly sum;
        for (auto& [j, s] : orbit) sum[basis[j]] = Rat(s);
        out.basis.push_back(std::move(sum));
      }
    }
    out.dim = (int64_t)out.basis.size();
    return out;
  }
  // generic path: average each monomial, take independent ones
  std::map<CartanMono, uint32_t> index;
  for (uint32_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  std::vector<std::vector<Rat>> vecs;
  std::vector<CartanPoly> polys;
  for (auto& m : basis) {
    CartanPoly p{{m, Rat(1)}};
    auto avg = weyl_orbit_average(*g_, p);
    if (avg.empty()) continue;
    std::vector<Rat> v(basis.size(), Rat(0));
    for (auto& [mm, c] : avg) v[index.at(mm)] = c;
    vecs.push_back(std::move(v));
    polys.push_back(std::move(avg));
  }
  // greedy independent subset over Q
  std::vector<std::vector<Rat>> rrefrows;
  std::vector<int> pivots;
  for (size_t i = 0; i < vecs.size(); ++i) {
    std::vector<Rat> v = vecs[i];
    for (size_t r = 0; r < rrefrows.size(); ++r) {
      if (v[pivots[r]] == 0) continue;
      Rat fac = v[pivots[r]];
      for (size_t j = 0; j < v.size(); ++j) v[j] -= fac * rrefrows[r][j];
    }
    int pc = -1;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        pc = (int)j;
        break;
      }
    if (pc < 0) continue;
    Rat piv = v[pc];
    for (auto& x : v) x /= piv;
    rrefrows.push_back(v);
    pivots.push_back(pc);
    out.basis.push_back(polys[i]);
  }
  out.dim = (int64_t)out.basis.size();
  return out;
}

CartanPoly Schemes::restrict_to_cartan(const Cochain& c) const {
  CartanPoly out;
  int rank = g_->rank;
  for (auto& [m, coef] : c.terms) {
    CartanMono cm;
    bool zero = false;
    for (GenKey k : m) {
      int a = gen_g(k);
      if (a >= rank) {  // only Cartan coordinates survive
        zero = true;
        break;
      }
      MultiDegree d = gen_mdeg(k);
      if (d.total() != 1) throw std::invalid_argument("restriction needs first derivatives only");
      int slot = 0;
      while (d[slot] == 0) ++slot;
      cm.push_back(cartan_var(slot, a));
    }
    if (zero) continue;
    int s = normalize_cartan_mono(cm);
    if (s == 0) continue;
    auto& v = out[cm];
    v += coef * s;
    if (v == 0) out.erase(cm);
  }
  return out;
}

Schemes::Restriction Schemes::restriction_matrix(const MultiDegree& n) const {
  Restriction out;
  out.source = invariants_supercommuting(n);
  for (auto& rep : out.source.representatives) out.images.push_back(restrict_to_cartan(rep));
  // rank over Q on the cartan monomial coordinates
  std::map<CartanMono, uint32_t> index;
  for (auto& img : out.images)
    for (auto& [m, v] : img) index.emplace(m, (uint32_t)index.size());
  if (index.empty() || out.images.empty()) {
    out.rank = 0;
    return out;
  }
  int64_t rows = (int64_t)index.size(), cols = (int64_t)out.images.size();
  std::vector<Rat> dense(rows * cols, Rat(0));
  for (int64_t j = 0; j < cols; ++j)
    for (auto& [m, v] : out.images[j]) dense[(int64_t)index.at(m) * cols + j] = v;
  out.rank = dense_rank_q(rows, cols, std::move(dense));
  return out;
}

Schemes::Kernel Schemes::non_cartan_kernel(const MultiDegree& n) const {
  Kernel out;
  auto res = restriction_matrix(n);
  out.dim = res.source.dim - res.rank;
  if (out.dim == 0) return out;
  // kernel combinations over Q
  std::map<CartanMono, uint32_t> index;
  for (auto& img : res.images)
    for (auto& [m, v] : img) index.emplace(m, (uint32_t)index.size());
  int64_t rows = std::max<int64_t>(1, (int64_t)index.size());
  int64_t cols = (int64_t)res.images.size();
  std::vector<Rat> dense(rows * cols, Rat(0));
  for (int64_t j = 0; j < cols; ++j)
    for (auto& [m, v] : res.images[j]) dense[(int64_t)index.at(m) * cols + j] = v;
  for (auto& coefs : dense_nullspace_q(rows, cols, std::move(dense))) {
    Cochain comb;
    for (int64_t j = 0; j < cols; ++j)
      if (coefs[j] != 0) comb = comb + res.source.representatives[j].scaled(coefs[j]);
    out.representatives.push_back(std::move(comb));
  }
  return out;
}

SchemeSectorReport Schemes::report(const MultiDegree& n) const {
  SchemeSectorReport r;
  r.spec = g_->spec;
  r.n = n;
  r.dim_ambient = sector_dimension(*g_, n.total(), n);
  auto res = restriction_matrix(n);
  r.dim_scheme_invariants = res.source.dim;
  r.rank_restriction = res.rank;
  r.dim_kernel = res.source.dim - res.rank;
  r.dim_cartan_invariants = cartan_invariants(n).dim;
  return r;
}

}  // namespace supercurrent
