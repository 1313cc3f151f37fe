#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "supercurrent/exactla.hpp"

namespace supercurrent::oracle {

namespace {

using QRow = std::vector<std::pair<uint32_t, Rat>>;  // sorted by column

// Exact rational elimination with plain left-to-right column pivoting.
// Structurally independent of the engine pipeline: no prime fields, no
// weight blocks, no Markowitz ordering.
struct QElim {
  int64_t cols = 0;
  std::vector<QRow> reduced;        // pivot rows, in pivot-column order
  std::vector<uint32_t> pivot_col;

  void add_row(QRow r) {
    while (!r.empty()) {
      // reduce against existing pivots
      bool changed = true;
      while (changed && !r.empty()) {
        changed = false;
        for (size_t k = 0; k < reduced.size(); ++k) {
          auto it = std::lower_bound(
              r.begin(), r.end(), std::make_pair(pivot_col[k], Rat(0)),
              [](const auto& a, const auto& b) { return a.first < b.first; });
          if (it == r.end() || it->first != pivot_col[k]) continue;
          Rat fac = it->second;
          QRow out;
          out.reserve(r.size() + reduced[k].size());
          auto a = r.begin(), ae = r.end();
          auto b = reduced[k].begin(), be = reduced[k].end();
          while (a != ae || b != be) {
            if (b == be || (a != ae && a->first < b->first)) {
              out.push_back(*a++);
            } else if (a == ae || b->first < a->first) {
              out.push_back({b->first, -fac * b->second});
              ++b;
            } else {
              Rat v = a->second - fac * b->second;
              if (v != 0) out.push_back({a->first, v});
              ++a;
              ++b;
            }
          }
          r.swap(out);
          changed = true;
        }
      }
      if (r.empty()) return;
      // new pivot: normalize on the leading column
      Rat inv = r.front().second;
      for (auto& [c, v] : r) v /= inv;
      pivot_col.push_back(r.front().first);
      reduced.push_back(std::move(r));
      return;
    }
  }

  int64_t rank() const { return (int64_t)reduced.size(); }

  // canonical kernel basis (free columns set to 1); back-substitution uses
  // fully reduced pivot rows, so first bring rows to RREF
  std::vector<std::vector<Rat>> kernel() {
    // full reduction pass
    for (size_t k = reduced.size(); k-- > 0;) {
      for (size_t j = 0; j < k; ++j) {
        auto& row = reduced[j];
        auto it = std::lower_bound(
            row.begin(), row.end(), std::make_pair(pivot_col[k], Rat(0)),
            [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it == row.end() || it->first != pivot_col[k]) continue;
        Rat fac = it->second;
        QRow out;
        auto a = row.begin(), ae = row.end();
        auto b = reduced[k].begin(), be = reduced[k].end();
        while (a != ae || b != be) {
          if (b == be || (a != ae && a->first < b->first)) {
            out.push_back(*a++);
          } else if (a == ae || b->first < a->first) {
            out.push_back({b->first, -fac * b->second});
            ++b;
          } else {
            Rat v = a->second - fac * b->second;
            if (v != 0) out.push_back({a->first, v});
            ++a;
            ++b;
          }
        }
        row.swap(out);
      }
    }
    std::vector<char> ispivot(cols, 0);
    for (uint32_t c : pivot_col) ispivot[c] = 1;
    std::vector<std::vector<Rat>> out;
    for (int64_t f = 0; f < cols; ++f) {
      if (ispivot[f]) continue;
      std::vector<Rat> v(cols, Rat(0));
      v[f] = 1;
      for (size_t k = 0; k < reduced.size(); ++k) {
        for (auto& [c, val] : reduced[k])
          if ((int64_t)c == f) v[pivot_col[k]] = -val;
      }
      out.push_back(std::move(v));
    }
    return out;
  }
};

}  // namespace

std::vector<Cochain> invariants_full_kernel(const ComplexOps& ops, int p, const MultiDegree& n) {
  const LieAlgebraData& g = ops.algebra();
  auto basis = enumerate_basis(g, p, n);
  if (basis.empty()) return {};
  std::unordered_map<SuperMono, uint32_t, SuperMonoHash> colidx;
  for (uint32_t i = 0; i < basis.size(); ++i) colidx.emplace(basis[i], i);
  // rows of the stacked action matrix indexed by (target monomial, a)
  std::map<std::pair<uint32_t, int>, QRow> rows;
  std::unordered_map<SuperMono, uint32_t, SuperMonoHash> tindex;
  for (uint32_t col = 0; col < basis.size(); ++col)
    for (int a = 0; a < g.dim; ++a)
      for (auto& [w, coef] : ops.act_mono(a, basis[col])) {
        auto [it, ins] = tindex.emplace(w, (uint32_t)tindex.size());
        rows[{it->second, a}].push_back({col, Rat(coef)});
      }
  QElim elim;
  elim.cols = (int64_t)basis.size();
  for (auto& [k, r] : rows) {
    QRow sorted = r;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // coalesce duplicate columns
    QRow merged;
    for (auto& [c, v] : sorted) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.push_back({c, v});
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.second == 0; }),
                 merged.end());
    elim.add_row(std::move(merged));
  }
  std::vector<Cochain> out;
  for (auto& v : elim.kernel()) {
    Cochain c;
    for (size_t i = 0; i < basis.size(); ++i)
      if (v[i] != 0) c.terms[basis[i]] = v[i];
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

int64_t exact_rank_of_d(const ComplexOps& ops, const std::vector<Cochain>& inv) {
  if (inv.empty()) return 0;
  // columns = d(invariant); eliminate the transpose rows
  std::map<SuperMono, uint32_t> rowidx;
  std::vector<QRow> cols;
  for (auto& c : inv) {
    Cochain dc = ops.d(c);
    QRow col;
    for (auto& [m, v] : dc.terms) {
      auto [it, ins] = rowidx.emplace(m, (uint32_t)rowidx.size());
      col.push_back({it->second, v});
    }
    std::sort(col.begin(), col.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    cols.push_back(std::move(col));
  }
  QElim elim;
  elim.cols = (int64_t)rowidx.size();
  for (auto& col : cols) elim.add_row(std::move(col));
  return elim.rank();
}

}  // namespace

DenseSectorDims dense_sector_oracle(const ComplexOps& ops, int p, const MultiDegree& n) {
  DenseSectorDims out;
  const LieAlgebraData& g = ops.algebra();
  out.dim_cochain = sector_dimension(g, p, n);
  if (p > n.total() || p < 0) return out;
  auto inv = invariants_full_kernel(ops, p, n);
  out.dim_inv = (int64_t)inv.size();
  out.rank_out = exact_rank_of_d(ops, inv);
  if (p > 0) {
    auto invm = invariants_full_kernel(ops, p - 1, n);
    out.rank_in = exact_rank_of_d(ops, invm);
  }
  out.dim_h = out.dim_inv - out.rank_out - out.rank_in;
  return out;
}

}  // namespace supercurrent::oracle
