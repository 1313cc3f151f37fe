#include "supercurrent/exactla.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>

namespace supercurrent {

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.entries.reserve(entries.size());
  for (auto& [r, c, v] : entries) t.entries.push_back({c, r, v});
  return t;
}

namespace {

using Row = std::vector<std::pair<uint32_t, uint32_t>>;  // (col, value) sorted

// Sparse Gaussian elimination mod p with Markowitz-style pivoting:
// column with fewest active entries first (lowest column on ties), then the
// shortest row in it (lowest row on ties).
struct Elim {
  uint64_t p;
  int64_t nrows, ncols;
  std::vector<Row> rows;
  std::vector<char> active;
  std::vector<uint32_t> colcount;
  std::vector<std::vector<uint32_t>> colrows;  // candidates, may be stale
  std::vector<std::pair<uint32_t, uint32_t>> pivots;  // (row, col) in order
  std::priority_queue<std::pair<uint32_t, uint32_t>, std::vector<std::pair<uint32_t, uint32_t>>,
                      std::greater<>>
      colheap;  // (count, col), lazy
  std::vector<uint64_t> b;  // optional augmented column
  bool with_b = false;

  Elim(const SparseMatrix& M, uint64_t prime) : p(prime), nrows(M.rows), ncols(M.cols) {
    std::vector<std::tuple<uint32_t, uint32_t, int64_t>> es = M.entries;
    std::sort(es.begin(), es.end());
    rows.assign(nrows, {});
    active.assign(nrows, 1);
    colcount.assign(ncols, 0);
    colrows.assign(ncols, {});
    for (size_t i = 0; i < es.size();) {
      auto [r, c, v] = es[i];
      int64_t sum = 0;
      size_t j = i;
      while (j < es.size() && std::get<0>(es[j]) == r && std::get<1>(es[j]) == c) {
        sum += std::get<2>(es[j]);
        ++j;
      }
      i = j;
      uint64_t val = int_mod(sum, p);
      if (val) rows[r].push_back({c, (uint32_t)val});
    }
    for (int64_t r = 0; r < nrows; ++r)
      for (auto& [c, v] : rows[r]) {
        ++colcount[c];
        colrows[c].push_back((uint32_t)r);
      }
    for (int64_t c = 0; c < ncols; ++c)
      if (colcount[c]) colheap.push({colcount[c], (uint32_t)c});
  }

  bool row_has(uint32_t r, uint32_t c, uint32_t& val) const {
    auto it = std::lower_bound(rows[r].begin(), rows[r].end(), std::make_pair(c, 0u),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == rows[r].end() || it->first != c) return false;
    val = it->second;
    return true;
  }

  void drop_row_counts(uint32_t r) {
    for (auto& [c, v] : rows[r]) {
      --colcount[c];
      colheap.push({colcount[c], c});
    }
  }

  // row[r] -= lam * row[rp]
  void row_sub(uint32_t r, uint32_t rp, uint64_t lam) {
    Row out;
    out.reserve(rows[r].size() + rows[rp].size());
    auto it = rows[r].begin(), ie = rows[r].end();
    auto jt = rows[rp].begin(), je = rows[rp].end();
    while (it != ie || jt != je) {
      if (jt == je || (it != ie && it->first < jt->first)) {
        out.push_back(*it++);
      } else if (it == ie || jt->first < it->first) {
        uint64_t nv = p - mul_mod(lam, jt->second, p);
        if (nv == p) nv = 0;
        if (nv) {
          out.push_back({jt->first, (uint32_t)nv});
          ++colcount[jt->first];
          colheap.push({colcount[jt->first], jt->first});
          colrows[jt->first].push_back(r);
        }
        ++jt;
      } else {
        uint64_t nv = sub_mod(it->second, mul_mod(lam, jt->second, p), p);
        if (nv) {
          out.push_back({it->first, (uint32_t)nv});
        } else {
          --colcount[it->first];
          colheap.push({colcount[it->first], it->first});
        }
        ++it;
        ++jt;
      }
    }
    rows[r].swap(out);
    if (with_b) b[r] = sub_mod(b[r], mul_mod(lam, b[rp], p), p);
  }

  void run() {
    while (true) {
      // next pivot column: valid minimal count
      int64_t c = -1;
      while (!colheap.empty()) {
        auto [cnt, cc] = colheap.top();
        if (colcount[cc] == 0) {
          colheap.pop();
          continue;
        }
        if (cnt != colcount[cc]) {
          colheap.pop();
          continue;
        }
        c = cc;
        break;
      }
      if (c < 0) break;
      // shortest valid row in column c
      uint32_t best = UINT32_MAX;
      size_t bestnnz = SIZE_MAX;
      auto& cand = colrows[c];
      std::vector<uint32_t> valid;
      valid.reserve(cand.size());
      for (uint32_t r : cand) {
        if (!active[r]) continue;
        uint32_t val;
        if (!row_has(r, (uint32_t)c, val)) continue;
        if (std::find(valid.begin(), valid.end(), r) != valid.end()) continue;
        valid.push_back(r);
        if (rows[r].size() < bestnnz || (rows[r].size() == bestnnz && r < best)) {
          bestnnz = rows[r].size();
          best = r;
        }
      }
      if (best == UINT32_MAX) {
        colcount[c] = 0;
        colrows[c].clear();
        continue;
      }
      pivots.push_back({best, (uint32_t)c});
      active[best] = 0;
      drop_row_counts(best);
      uint32_t pval;
      row_has(best, (uint32_t)c, pval);
      uint64_t pinv = inv_mod(pval, p);
      for (uint32_t r : valid) {
        if (r == best) continue;
        uint32_t val;
        if (!row_has(r, (uint32_t)c, val)) continue;
        row_sub(r, best, mul_mod(val, pinv, p));
      }
      colrows[c].clear();
      colcount[c] = 0;
    }
  }

  // back-substitution through the frozen pivot rows, reverse order;
  // x must be pre-filled on the free columns.
  void back_substitute(std::vector<uint64_t>& x, const std::vector<uint64_t>* rhs) const {
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      auto [r, c] = *it;
      uint64_t acc = rhs ? (*rhs)[r] : 0;
      uint64_t diag = 0;
      for (auto& [cc, v] : rows[r]) {
        if (cc == c) {
          diag = v;
          continue;
        }
        acc = sub_mod(acc, mul_mod(v, x[cc], p), p);
      }
      x[c] = mul_mod(acc, inv_mod(diag, p), p);
    }
  }
};

std::vector<int64_t> scale_to_int(const std::vector<Rat>& v) {
  Int l(1);
  for (auto& r : v) {
    Int d = r.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  std::vector<int64_t> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(l);
    if (s.get_den() != 1) throw std::runtime_error("scale_to_int failed");
    if (!s.get_num().fits_slong_p()) throw std::runtime_error("entry too large for int64");
    out[i] = s.get_num().get_si();
  }
  return out;
}

}  // namespace

int64_t rank_mod_p(const SparseMatrix& M, uint64_t p) {
  Elim e(M, p);
  e.run();
  return (int64_t)e.pivots.size();
}

std::vector<std::vector<std::pair<uint32_t, uint64_t>>> kernel_mod_p(const SparseMatrix& M,
                                                                     uint64_t p) {
  Elim e(M, p);
  e.run();
  std::vector<char> ispivot(M.cols, 0);
  for (auto& [r, c] : e.pivots) ispivot[c] = 1;
  std::vector<std::vector<std::pair<uint32_t, uint64_t>>> out;
  std::vector<uint64_t> x(M.cols, 0);
  for (int64_t f = 0; f < M.cols; ++f) {
    if (ispivot[f]) continue;
    std::fill(x.begin(), x.end(), 0);
    x[f] = 1;
    e.back_substitute(x, nullptr);
    std::vector<std::pair<uint32_t, uint64_t>> vec;
    for (int64_t c = 0; c < M.cols; ++c)
      if (x[c]) vec.push_back({(uint32_t)c, x[c]});
    out.push_back(std::move(vec));
  }
  return out;
}

std::optional<std::vector<uint64_t>> solve_mod_p(const SparseMatrix& M,
                                                 const std::vector<uint64_t>& b, uint64_t p) {
  Elim e(M, p);
  e.with_b = true;
  e.b = b;
  for (auto& v : e.b) v %= p;
  e.run();
  for (int64_t r = 0; r < M.rows; ++r)
    if (e.active[r] && e.rows[r].empty() && e.b[r] != 0) return std::nullopt;
  // active rows are empty after run(); frozen rows are consistent by
  // construction once back-substituted
  std::vector<uint64_t> x(M.cols, 0);
  e.back_substitute(x, &e.b);
  return x;
}

RankCertificate rank(const SparseMatrix& M, const std::vector<uint64_t>& primes, int max_retries,
                     uint64_t reseed) {
  RankCertificate cert;
  cert.primes = primes;
  std::vector<int64_t> ranks;
  for (uint64_t p : primes) ranks.push_back(rank_mod_p(M, p));
  cert.agreement = std::all_of(ranks.begin(), ranks.end(),
                               [&](int64_t r) { return r == ranks[0]; });
  cert.rank = ranks[0];
  if (!cert.agreement) {
    if (max_retries <= 0)
      throw ArithmeticDisagreement("rank: primes disagree after retries");
    auto fresh = select_primes(reseed * 7919 + primes[0], (int)primes.size());
    return rank(M, fresh, max_retries - 1, reseed + 1);
  }
  return cert;
}

RankCertificate rank(const SparseMatrix& M, const ModOptions& opts) {
  return rank(M, select_primes(opts.seed, opts.nprimes), opts.max_retries, opts.seed + 1);
}

std::vector<std::vector<Rat>> nullspace_basis(const SparseMatrix& M, const ModOptions& opts) {
  int attempts = opts.max_retries + 1;
  uint64_t seed = opts.seed;
  int nprimes = std::max(2, opts.nprimes);
  while (attempts-- > 0) {
    auto primes = select_primes(seed, nprimes);
    std::vector<std::vector<std::vector<std::pair<uint32_t, uint64_t>>>> kernels;
    bool shape_ok = true;
    for (uint64_t p : primes) {
      kernels.push_back(kernel_mod_p(M, p));
      if (kernels.back().size() != kernels[0].size()) shape_ok = false;
    }
    if (shape_ok) {
      size_t nv = kernels[0].size();
      std::vector<std::vector<Rat>> out;
      bool ok = true;
      for (size_t k = 0; k < nv && ok; ++k) {
        // union of support
        std::set<uint32_t> support;
        for (auto& ker : kernels)
          for (auto& [i, v] : ker[k]) support.insert(i);
        std::vector<Rat> vec(M.cols, Rat(0));
        for (uint32_t idx : support) {
          std::vector<uint64_t> residues;
          for (auto& ker : kernels) {
            uint64_t r = 0;
            for (auto& [i, v] : ker[k])
              if (i == idx) r = v;
            residues.push_back(r);
          }
          Int value, modulus;
          crt_combine(residues, primes, value, modulus);
          Rat q;
          if (!rational_reconstruct(value, modulus, q)) {
            ok = false;
            break;
          }
          vec[idx] = q;
        }
        if (ok) out.push_back(std::move(vec));
      }
      if (ok) {
        // exact verification M v = 0
        for (auto& vec : out) {
          std::map<uint32_t, Rat> prod;
          for (auto& [r, c, v] : M.entries)
            if (vec[c] != 0) prod[r] += Rat(v) * vec[c];
          for (auto& [r, s] : prod)
            if (s != 0) {
              ok = false;
              break;
            }
          if (!ok) break;
        }
        if (ok) return out;
      }
    }
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    nprimes *= 2;
  }
  throw ArithmeticDisagreement("nullspace_basis: reconstruction failed after retries");
}

bool in_span(const SparseMatrix& M, const std::vector<Rat>& v, const ModOptions& opts) {
  if ((int64_t)v.size() != M.rows) throw std::invalid_argument("in_span: size mismatch");
  std::vector<int64_t> vi = scale_to_int(v);
  bool allzero = std::all_of(vi.begin(), vi.end(), [](int64_t x) { return x == 0; });
  if (allzero) return true;
  if (M.cols == 0) return false;

  int attempts = opts.max_retries + 1;
  uint64_t seed = opts.seed;
  int nprimes = std::max(2, opts.nprimes);
  while (attempts-- > 0) {
    auto primes = select_primes(seed, nprimes);
    std::vector<std::optional<std::vector<uint64_t>>> sols;
    for (uint64_t p : primes) {
      std::vector<uint64_t> b(vi.size());
      for (size_t i = 0; i < vi.size(); ++i) b[i] = int_mod(vi[i], p);
      sols.push_back(solve_mod_p(M, b, p));
    }
    bool any = false, all = true;
    for (auto& s : sols) {
      any |= s.has_value();
      all &= s.has_value();
    }
    if (any != all) {
      // an unlucky prime: retry with a fresh set
      seed = seed * 6364136223846793005ull + 7;
      continue;
    }
    if (!any) return false;
    if (!opts.certify) return true;
    // reconstruct a rational witness and verify exactly
    std::vector<Rat> x(M.cols, Rat(0));
    bool ok = true;
    for (int64_t c = 0; c < M.cols && ok; ++c) {
      std::vector<uint64_t> residues;
      for (auto& s : sols) residues.push_back((*s)[c]);
      bool zero = std::all_of(residues.begin(), residues.end(),
                              [](uint64_t r) { return r == 0; });
      if (zero) continue;
      Int value, modulus;
      crt_combine(residues, primes, value, modulus);
      ok = rational_reconstruct(value, modulus, x[c]);
    }
    if (ok) {
      std::vector<Rat> prod(M.rows, Rat(0));
      for (auto& [r, c, val] : M.entries)
        if (x[c] != 0) prod[r] += Rat(val) * x[c];
      for (int64_t r = 0; r < M.rows && ok; ++r)
        if (prod[r] != v[r]) ok = false;
    }
    if (ok) return true;
    seed = seed * 6364136223846793005ull + 13;
    nprimes *= 2;
  }
  throw ArithmeticDisagreement("in_span: could not certify a stable verdict");
}

std::optional<std::vector<Rat>> not_in_span_certificate(const SparseMatrix& M,
                                                        const std::vector<Rat>& v,
                                                        const ModOptions& opts) {
  if ((int64_t)v.size() != M.rows) throw std::invalid_argument("size mismatch");
  std::vector<int64_t> vi = scale_to_int(v);
  // Solve [M^T; v^T] phi = e_last over Q via modular solves.
  SparseMatrix B = M.transposed();
  B.rows += 1;
  for (size_t i = 0; i < vi.size(); ++i)
    if (vi[i]) B.entries.push_back({(uint32_t)(B.rows - 1), (uint32_t)i, vi[i]});

  int attempts = opts.max_retries + 1;
  uint64_t seed = opts.seed + 0x51ed;
  int nprimes = std::max(2, opts.nprimes);
  while (attempts-- > 0) {
    auto primes = select_primes(seed, nprimes);
    std::vector<std::optional<std::vector<uint64_t>>> sols;
    for (uint64_t p : primes) {
      std::vector<uint64_t> b(B.rows, 0);
      b[B.rows - 1] = 1;
      sols.push_back(solve_mod_p(B, b, p));
    }
    bool all = std::all_of(sols.begin(), sols.end(), [](auto& s) { return s.has_value(); });
    if (!all) {
      bool none = std::none_of(sols.begin(), sols.end(), [](auto& s) { return s.has_value(); });
      if (none) return std::nullopt;  // consistent: no certificate (v likely in span)
      seed += 17;
      continue;
    }
    std::vector<Rat> phi(M.rows, Rat(0));
    bool ok = true;
    for (int64_t c = 0; c < M.rows && ok; ++c) {
      std::vector<uint64_t> residues;
      for (auto& s : sols) residues.push_back((*s)[c]);
      bool zero = std::all_of(residues.begin(), residues.end(),
                              [](uint64_t r) { return r == 0; });
      if (zero) continue;
      Int value, modulus;
      crt_combine(residues, primes, value, modulus);
      ok = rational_reconstruct(value, modulus, phi[c]);
    }
    if (ok) {
      // exact verification: M^T phi = 0 and v . phi = 1
      std::vector<Rat> mt(M.cols, Rat(0));
      for (auto& [r, c, val] : M.entries)
        if (phi[r] != 0) mt[c] += Rat(val) * phi[r];
      for (auto& s : mt)
        if (s != 0) ok = false;
      Rat dot(0);
      for (int64_t r = 0; r < M.rows; ++r)
        if (phi[r] != 0) dot += v[r] * phi[r];
      if (dot != 1) ok = false;
    }
    if (ok) return phi;
    seed = seed * 2862933555777941757ull + 3037000493ull;
    nprimes *= 2;
  }
  throw ArithmeticDisagreement("not_in_span_certificate: reconstruction failed");
}

int64_t dense_rank_bareiss(int64_t rows, int64_t cols, std::vector<Int> a) {
  Int prev(1);
  int64_t r = 0;
  for (int64_t c = 0; c < cols && r < rows; ++c) {
    int64_t pr = -1;
    for (int64_t i = r; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int64_t j = 0; j < cols; ++j) std::swap(a[pr * cols + j], a[r * cols + j]);
    for (int64_t i = r + 1; i < rows; ++i) {
      for (int64_t j = c + 1; j < cols; ++j) {
        Int t = a[r * cols + c] * a[i * cols + j] - a[i * cols + c] * a[r * cols + j];
        mpz_divexact(a[i * cols + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = a[r * cols + c];
    ++r;
  }
  return r;
}

static int64_t rref_q(int64_t rows, int64_t cols, std::vector<Rat>& a,
                      std::vector<int>* pivot_cols) {
  int64_t r = 0;
  for (int64_t c = 0; c < cols && r < rows; ++c) {
    int64_t pr = -1;
    for (int64_t i = r; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int64_t j = 0; j < cols; ++j) std::swap(a[pr * cols + j], a[r * cols + j]);
    Rat piv = a[r * cols + c];
    for (int64_t j = c; j < cols; ++j) a[r * cols + j] /= piv;
    for (int64_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      Rat fac = a[i * cols + c];
      for (int64_t j = c; j < cols; ++j) a[i * cols + j] -= fac * a[r * cols + j];
    }
    if (pivot_cols) pivot_cols->push_back((int)c);
    ++r;
  }
  return r;
}

int64_t dense_rank_q(int64_t rows, int64_t cols, std::vector<Rat> a) {
  return rref_q(rows, cols, a, nullptr);
}

std::vector<std::vector<Rat>> dense_nullspace_q(int64_t rows, int64_t cols, std::vector<Rat> a) {
  std::vector<int> pcols;
  int64_t r = rref_q(rows, cols, a, &pcols);
  std::vector<char> ispivot(cols, 0);
  for (int c : pcols) ispivot[c] = 1;
  std::vector<std::vector<Rat>> out;
  for (int64_t f = 0; f < cols; ++f) {
    if (ispivot[f]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[f] = 1;
    for (int64_t i = 0; i < r; ++i) {
      int c = pcols[i];
      v[c] = -a[i * cols + f];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace supercurrent
