#include "supercurrent/liealg.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace supercurrent {

namespace {

using Mat = std::vector<int64_t>;  // N*N row-major

Mat zero_mat(int N) { return Mat(N * N, 0); }

Mat commutator(const Mat& A, const Mat& B, int N) {
  Mat C(N * N, 0);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      int64_t a = A[i * N + k];
      if (a == 0) continue;
      for (int j = 0; j < N; ++j) C[i * N + j] += a * B[k * N + j];
    }
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      int64_t b = B[i * N + k];
      if (b == 0) continue;
      for (int j = 0; j < N; ++j) C[i * N + j] -= b * A[k * N + j];
    }
  return C;
}

// Dense rational Gaussian elimination: solves A x = b for consistent
// systems, A given row-major (rows x cols). Returns nullopt when
// inconsistent; free variables are set to zero.
std::optional<std::vector<Rat>> rsolve(int rows, int cols, std::vector<Rat> A,
                                       std::vector<Rat> b) {
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (A[i * cols + c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(A[pr * cols + j], A[r * cols + j]);
    std::swap(b[pr], b[r]);
    Rat inv = A[r * cols + c];
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i * cols + c] == 0) continue;
      Rat fac = A[i * cols + c] / inv;
      for (int j = c; j < cols; ++j) A[i * cols + j] -= fac * A[r * cols + j];
      b[i] -= fac * b[r];
    }
    pivot_col_of_row.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (int i = 0; i < r; ++i) {
    int c = pivot_col_of_row[i];
    x[c] = b[i] / A[i * cols + c];
  }
  return x;
}

std::vector<Rat> rinvert(int n, const std::vector<Rat>& Min) {
  std::vector<Rat> A = Min, I(n * n, Rat(0));
  for (int i = 0; i < n; ++i) I[i * n + i] = 1;
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int i = c; i < n; ++i)
      if (A[i * n + c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) throw std::runtime_error("rinvert: singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(A[pr * n + j], A[c * n + j]);
      std::swap(I[pr * n + j], I[c * n + j]);
    }
    Rat piv = A[c * n + c];
    for (int j = 0; j < n; ++j) {
      A[c * n + j] /= piv;
      I[c * n + j] /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || A[i * n + c] == 0) continue;
      Rat fac = A[i * n + c];
      for (int j = 0; j < n; ++j) {
        A[i * n + j] -= fac * A[c * n + j];
        I[i * n + j] -= fac * I[c * n + j];
      }
    }
  }
  return I;
}

struct RootElem {
  Mat mat;
  std::vector<int> root;  // torus coordinates
};

struct SeriesData {
  int N = 0, tdim = 0;
  std::vector<Mat> cartan;
  std::vector<std::vector<int>> cartan_torus;  // torus coords of each H_c
  std::vector<RootElem> pos, neg;              // aligned: neg[i] = -root of pos[i]
  std::vector<std::vector<int>> simple_roots;  // torus coords
  std::vector<std::vector<int>> weyl_gens;     // tdim x tdim
};

void put(Mat& m, int N, int i, int j, int64_t v) { m[(i - 1) * N + (j - 1)] += v; }

Mat E(int N, int i, int j) {
  Mat m = zero_mat(N);
  put(m, N, i, j, 1);
  return m;
}

std::vector<int> evec(int tdim, int c, int v = 1) {
  std::vector<int> r(tdim, 0);
  r[c - 1] = v;
  return r;
}
std::vector<int> evec2(int tdim, int c, int vc, int d, int vd) {
  std::vector<int> r(tdim, 0);
  r[c - 1] = vc;
  r[d - 1] += vd;
  return r;
}

std::vector<int> perm_swap(int n, int a, int b) {
  std::vector<int> m(n * n, 0);
  for (int i = 0; i < n; ++i) m[i * n + i] = 1;
  m[(a - 1) * n + (a - 1)] = m[(b - 1) * n + (b - 1)] = 0;
  m[(a - 1) * n + (b - 1)] = m[(b - 1) * n + (a - 1)] = 1;
  return m;
}

SeriesData make_sl_gl(int n, bool gl) {
  SeriesData s;
  s.N = n;
  s.tdim = n;
  for (int i = 1; i < n; ++i) {
    Mat h = zero_mat(n);
    put(h, n, i, i, 1);
    put(h, n, i + 1, i + 1, -1);
    s.cartan.push_back(h);
    s.cartan_torus.push_back(evec2(n, i, 1, i + 1, -1));
  }
  if (gl) {
    Mat id = zero_mat(n);
    for (int i = 1; i <= n; ++i) put(id, n, i, i, 1);
    s.cartan.push_back(id);
    s.cartan_torus.push_back(std::vector<int>(n, 1));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      s.pos.push_back({E(n, i, j), evec2(n, i, 1, j, -1)});
      s.neg.push_back({E(n, j, i), evec2(n, i, -1, j, 1)});
    }
  for (int i = 1; i < n; ++i) {
    s.simple_roots.push_back(evec2(n, i, 1, i + 1, -1));
    s.weyl_gens.push_back(perm_swap(n, i, i + 1));
  }
  return s;
}

SeriesData make_so(int n) {
  SeriesData s;
  s.N = n;
  int k = n / 2;
  bool odd = n % 2;
  s.tdim = k;
  auto Bm = [&](int i, int j) {
    Mat m = zero_mat(n);
    put(m, n, i, j, 1);
    put(m, n, n + 1 - j, n + 1 - i, -1);
    return m;
  };
  for (int c = 1; c <= k; ++c) {
    s.cartan.push_back(Bm(c, c));
    s.cartan_torus.push_back(evec(k, c));
  }
  for (int c = 1; c <= k; ++c)
    for (int d = c + 1; d <= k; ++d) {
      s.pos.push_back({Bm(c, d), evec2(k, c, 1, d, -1)});
      s.neg.push_back({Bm(d, c), evec2(k, c, -1, d, 1)});
      s.pos.push_back({Bm(c, n + 1 - d), evec2(k, c, 1, d, 1)});
      s.neg.push_back({Bm(n + 1 - d, c), evec2(k, c, -1, d, -1)});
    }
  if (odd)
    for (int c = 1; c <= k; ++c) {
      s.pos.push_back({Bm(c, k + 1), evec(k, c)});
      s.neg.push_back({Bm(k + 1, c), evec(k, c, -1)});
    }
  for (int i = 1; i < k; ++i) {
    s.simple_roots.push_back(evec2(k, i, 1, i + 1, -1));
    s.weyl_gens.push_back(perm_swap(k, i, i + 1));
  }
  if (odd && k >= 1) {
    s.simple_roots.push_back(evec(k, k));
    std::vector<int> flip(k * k, 0);
    for (int i = 0; i < k; ++i) flip[i * k + i] = (i == k - 1) ? -1 : 1;
    s.weyl_gens.push_back(flip);
  }
  if (!odd && k >= 2) {
    s.simple_roots.push_back(evec2(k, k - 1, 1, k, 1));
    // e_{k-1} -> -e_k, e_k -> -e_{k-1}
    std::vector<int> m(k * k, 0);
    for (int i = 0; i < k - 2; ++i) m[i * k + i] = 1;
    m[(k - 2) * k + (k - 1)] = -1;
    m[(k - 1) * k + (k - 2)] = -1;
    s.weyl_gens.push_back(m);
  }
  return s;
}

SeriesData make_sp(int n) {
  // n = 2k; antidiagonal symplectic form with signs (+..+,-..-)
  SeriesData s;
  s.N = n;
  int k = n / 2;
  s.tdim = k;
  auto sigma = [&](int i) { return i <= k ? 1 : -1; };
  auto Cm = [&](int i, int j) {
    Mat m = zero_mat(n);
    put(m, n, i, j, 1);
    put(m, n, n + 1 - j, n + 1 - i, -sigma(i) * sigma(j));
    return m;
  };
  for (int c = 1; c <= k; ++c) {
    Mat h = zero_mat(n);
    put(h, n, c, c, 1);
    put(h, n, n + 1 - c, n + 1 - c, -1);
    s.cartan.push_back(h);
    s.cartan_torus.push_back(evec(k, c));
  }
  for (int c = 1; c <= k; ++c)
    for (int d = c + 1; d <= k; ++d) {
      s.pos.push_back({Cm(c, d), evec2(k, c, 1, d, -1)});
      s.neg.push_back({Cm(d, c), evec2(k, c, -1, d, 1)});
      s.pos.push_back({Cm(c, n + 1 - d), evec2(k, c, 1, d, 1)});
      s.neg.push_back({Cm(n + 1 - d, c), evec2(k, c, -1, d, -1)});
    }
  for (int c = 1; c <= k; ++c) {
    s.pos.push_back({E(n, c, n + 1 - c), evec(k, c, 2)});
    s.neg.push_back({E(n, n + 1 - c, c), evec(k, c, -2)});
  }
  for (int i = 1; i < k; ++i) {
    s.simple_roots.push_back(evec2(k, i, 1, i + 1, -1));
    s.weyl_gens.push_back(perm_swap(k, i, i + 1));
  }
  if (k >= 1) {
    s.simple_roots.push_back(evec(k, k, 2));
    std::vector<int> flip(k * k, 0);
    for (int i = 0; i < k; ++i) flip[i * k + i] = (i == k - 1) ? -1 : 1;
    s.weyl_gens.push_back(flip);
  }
  return s;
}

int root_height(const std::vector<std::vector<int>>& simples, const std::vector<int>& root) {
  int tdim = (int)root.size();
  int ell = (int)simples.size();
  std::vector<Rat> A(tdim * ell), b(tdim);
  for (int i = 0; i < tdim; ++i) {
    for (int j = 0; j < ell; ++j) A[i * ell + j] = simples[j][i];
    b[i] = root[i];
  }
  auto x = rsolve(tdim, ell, A, b);
  if (!x) throw std::runtime_error("root not in simple-root span");
  Rat h(0);
  for (auto& v : *x) h += v;
  if (h.get_den() != 1) throw std::runtime_error("non-integral root height");
  return (int)h.get_num().get_si();
}

void check_membership(const LieAlgebraSpec& spec, const Mat& X, int N) {
  // X^T J + J X = 0 for the invariant form J (SO symmetric antidiagonal,
  // SP antidiagonal with split signs); tracelessness for SL.
  if (spec.series == Series::SL) {
    int64_t tr = 0;
    for (int i = 0; i < N; ++i) tr += X[i * N + i];
    if (tr != 0) throw std::runtime_error("sl element has nonzero trace");
    return;
  }
  if (spec.series == Series::GL) return;
  int k = N / 2;
  auto jsign = [&](int i) {  // 1-based
    if (spec.series == Series::SO) return (int64_t)1;
    return (int64_t)(i <= k ? 1 : -1);
  };
  // J_{ab} = jsign(a) delta_{b, n+1-a}
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      // (X^T J)_{ij} = sum_a X_{a i} J_{a j} = X_{(n+1-j) i} jsign(n+1-j)
      // (J X)_{ij}  = sum_a J_{i a} X_{a j} = jsign(i) X_{(n+1-i) j}
      int64_t lhs = X[((N + 1 - j) - 1) * N + (i - 1)] * jsign(N + 1 - j) +
                    jsign(i) * X[((N + 1 - i) - 1) * N + (j - 1)];
      if (lhs != 0) throw std::runtime_error("matrix not in the algebra for its form");
    }
}

}  // namespace

std::string LieAlgebraSpec::name() const {
  const char* s = series == Series::GL   ? "gl"
                  : series == Series::SL ? "sl"
                  : series == Series::SO ? "so"
                                         : "sp";
  return s + std::to_string(size);
}

LieAlgebraSpec parse_algebra(const std::string& in) {
  std::string s;
  for (char c : in) s.push_back((char)std::tolower((unsigned char)c));
  if (s.size() < 3) throw std::invalid_argument("algebra name too short: " + in);
  std::string ser = s.substr(0, 2);
  int size = 0;
  try {
    size_t pos = 0;
    size = std::stoi(s.substr(2), &pos);
    if (pos != s.size() - 2) throw std::invalid_argument("");
  } catch (...) {
    throw std::invalid_argument("bad algebra size in: " + in);
  }
  if (size < 1) throw std::invalid_argument("algebra size must be >= 1: " + in);
  LieAlgebraSpec spec;
  spec.size = size;
  if (ser == "gl")
    spec.series = Series::GL;
  else if (ser == "sl")
    spec.series = Series::SL;
  else if (ser == "so")
    spec.series = Series::SO;
  else if (ser == "sp") {
    spec.series = Series::SP;
    if (size % 2) throw std::invalid_argument("sp size must be even: " + in);
  } else
    throw std::invalid_argument("unknown series: " + in);
  return spec;
}

uint64_t expected_weyl_order(const LieAlgebraSpec& spec) {
  auto fact = [](int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (spec.series) {
    case Series::GL:
    case Series::SL:
      return fact(spec.size);
    case Series::SP:
      return (1ull << (spec.size / 2)) * fact(spec.size / 2);
    case Series::SO: {
      int k = spec.size / 2;
      if (spec.size % 2) return (1ull << k) * fact(k);
      return k == 0 ? 1 : (1ull << (k - 1)) * fact(k);
    }
  }
  return 1;
}

std::vector<int64_t> LieAlgebraData::bracket_matrices(int a, int b) const {
  return commutator(basis[a], basis[b], N);
}

std::vector<Rat> LieAlgebraData::bracket(const std::vector<Rat>& x,
                                         const std::vector<Rat>& y) const {
  std::vector<Rat> out(dim, Rat(0));
  for (int a = 0; a < dim; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < dim; ++b) {
      if (y[b] == 0) continue;
      for (auto& [c, coef] : f[a * dim + b]) out[c] += x[a] * y[b] * Rat(coef);
    }
  }
  return out;
}

int64_t LieAlgebraData::trace_pair(int a, int b) const {
  int64_t t = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) t += basis[a][i * N + j] * basis[b][j * N + i];
  return t;
}

static std::shared_ptr<LieAlgebraData> build_impl(const LieAlgebraSpec& spec) {
  if (spec.size < 1) throw std::invalid_argument("size must be >= 1");
  if (spec.series == Series::SP && spec.size % 2)
    throw std::invalid_argument("sp size must be even");

  SeriesData sd;
  switch (spec.series) {
    case Series::GL:
      sd = make_sl_gl(spec.size, true);
      break;
    case Series::SL:
      sd = make_sl_gl(spec.size, false);
      break;
    case Series::SO:
      sd = make_so(spec.size);
      break;
    case Series::SP:
      sd = make_sp(spec.size);
      break;
  }

  auto data = std::make_shared<LieAlgebraData>();
  data->spec = spec;
  data->N = sd.N;
  data->tdim = sd.tdim;
  data->rank = (int)sd.cartan.size();

  // order positives by (height, root lex)
  std::vector<int> order(sd.pos.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::vector<int> heights(sd.pos.size());
  for (size_t i = 0; i < sd.pos.size(); ++i)
    heights[i] = root_height(sd.simple_roots, sd.pos[i].root);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (heights[a] != heights[b]) return heights[a] < heights[b];
    return sd.pos[a].root < sd.pos[b].root;
  });

  for (auto& h : sd.cartan) data->basis.push_back(h);
  for (int i : order) data->basis.push_back(sd.pos[i].mat);
  for (int i : order) data->basis.push_back(sd.neg[i].mat);
  data->dim = (int)data->basis.size();
  for (int c = 0; c < data->rank; ++c) data->cartan_indices.push_back(c);

  for (auto& X : data->basis) check_membership(spec, X, data->N);

  int npos = (int)sd.pos.size();
  // simple raising/lowering: positives whose root equals a simple root
  for (auto& alpha : sd.simple_roots) {
    for (int oi = 0; oi < npos; ++oi) {
      if (sd.pos[order[oi]].root == alpha) {
        data->simple_raising.push_back(data->rank + oi);
        data->simple_lowering.push_back(data->rank + npos + oi);
        break;
      }
    }
  }
  if (data->simple_raising.size() != sd.simple_roots.size())
    throw std::runtime_error("missing simple root vector");

  int N = data->N, dim = data->dim;

  // weights: [H_c, X] = w_c X
  data->weights.assign(dim, std::vector<int>(data->rank, 0));
  for (int a = 0; a < dim; ++a) {
    for (int c = 0; c < data->rank; ++c) {
      Mat com = commutator(data->basis[c], data->basis[a], N);
      int pos = -1;
      for (int e = 0; e < N * N; ++e)
        if (data->basis[a][e] != 0) {
          pos = e;
          break;
        }
      if (pos < 0) throw std::runtime_error("zero basis matrix");
      int64_t num = com[pos], den = data->basis[a][pos];
      if (num % den != 0) throw std::runtime_error("basis element is not a weight vector");
      int64_t w = num / den;
      for (int e = 0; e < N * N; ++e)
        if (com[e] != w * data->basis[a][e])
          throw std::runtime_error("basis element is not a weight vector");
      data->weights[a][c] = (int)w;
    }
  }

  // structure constants via the Gram left inverse of the vectorized basis
  {
    std::vector<Rat> G(dim * dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        int64_t s = 0;
        for (int e = 0; e < N * N; ++e) s += data->basis[a][e] * data->basis[b][e];
        G[a * dim + b] = s;
      }
    std::vector<Rat> Ginv = rinvert(dim, G);
    data->f.assign(dim * dim, {});
    data->f_by_target.assign(dim, {});
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        if (a == b) continue;
        Mat com = commutator(data->basis[a], data->basis[b], N);
        // coords = Ginv * (B^T vec(com))
        std::vector<int64_t> bt(dim, 0);
        for (int c = 0; c < dim; ++c) {
          int64_t s = 0;
          for (int e = 0; e < N * N; ++e) s += data->basis[c][e] * com[e];
          bt[c] = s;
        }
        Mat reconstructed(N * N, 0);
        for (int c = 0; c < dim; ++c) {
          Rat coef(0);
          for (int e = 0; e < dim; ++e) coef += Ginv[c * dim + e] * Rat(bt[e]);
          if (coef == 0) continue;
          if (coef.get_den() != 1)
            throw std::runtime_error("non-integer structure constant");
          int64_t ic = coef.get_num().get_si();
          data->f[a * dim + b].push_back({c, ic});
          data->f_by_target[c].push_back({a, b, ic});
          for (int e = 0; e < N * N; ++e) reconstructed[e] += ic * data->basis[c][e];
        }
        if (reconstructed != com)
          throw std::runtime_error("bracket does not close on the basis");
      }
  }

  // Weyl group closure (BFS over torus matrices)
  {
    int t = data->tdim;
    auto mul = [&](const std::vector<int>& A, const std::vector<int>& B) {
      std::vector<int> C(t * t, 0);
      for (int i = 0; i < t; ++i)
        for (int k2 = 0; k2 < t; ++k2) {
          if (A[i * t + k2] == 0) continue;
          for (int j = 0; j < t; ++j) C[i * t + j] += A[i * t + k2] * B[k2 * t + j];
        }
      return C;
    };
    std::vector<int> id(t * t, 0);
    for (int i = 0; i < t; ++i) id[i * t + i] = 1;
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> queue{id};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      for (auto& g : sd.weyl_gens) {
        auto prod = mul(queue[qi], g);
        if (seen.insert(prod).second) queue.push_back(prod);
      }
    }
    data->weyl_torus = queue;
    if ((uint64_t)queue.size() != expected_weyl_order(spec))
      throw std::runtime_error("unexpected Weyl group order");
  }

  // induced action on the Cartan basis H_c: solve T x = w * t(H_c)
  {
    int t = data->tdim, r = data->rank;
    std::vector<Rat> T(t * r);
    for (int c = 0; c < r; ++c)
      for (int i = 0; i < t; ++i) T[i * r + c] = sd.cartan_torus[c][i];
    for (auto& w : data->weyl_torus) {
      std::vector<int> m(r * r, 0);
      for (int c = 0; c < r; ++c) {
        std::vector<Rat> rhs(t, Rat(0));
        for (int i = 0; i < t; ++i) {
          Rat s(0);
          for (int j = 0; j < t; ++j) s += Rat(w[i * t + j]) * Rat(sd.cartan_torus[c][j]);
          rhs[i] = s;
        }
        auto x = rsolve(t, r, T, rhs);
        if (!x) throw std::runtime_error("Weyl element does not preserve the Cartan");
        for (int c2 = 0; c2 < r; ++c2) {
          if ((*x)[c2].get_den() != 1)
            throw std::runtime_error("non-integral Weyl action on Cartan");
          m[c2 * r + c] = (int)(*x)[c2].get_num().get_si();
        }
      }
      data->weyl_cartan.push_back(m);
    }
  }

  // trace-form dual basis
  {
    std::vector<Rat> G(dim * dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) G[a * dim + b] = data->trace_pair(a, b);
    auto Ginv = rinvert(dim, G);
    data->trace_dual.assign(dim, std::vector<Rat>(dim));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) data->trace_dual[a][b] = Ginv[a * dim + b];
  }

  return data;
}

LieAlgebraPtr build_algebra(const LieAlgebraSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<LieAlgebraData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair((int)spec.series, spec.size);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto built = build_impl(spec);
  cache[key] = built;
  return built;
}

std::vector<std::tuple<int, int, Rat>> adjoint_action_matrix(
    const LieAlgebraData& g, int a, const std::vector<std::vector<int>>& words) {
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < words.size(); ++i) index[words[i]] = (int)i;
  std::map<std::pair<int, int>, Rat> acc;
  for (size_t col = 0; col < words.size(); ++col) {
    const auto& w = words[col];
    for (size_t slot = 0; slot < w.size(); ++slot) {
      for (auto& [c, coef] : g.f[a * g.dim + w[slot]]) {
        std::vector<int> w2 = w;
        w2[slot] = c;
        auto it = index.find(w2);
        if (it == index.end())
          throw std::runtime_error("adjoint_action_matrix: target word outside basis");
        acc[{it->second, (int)col}] += Rat(coef);
      }
    }
  }
  std::vector<std::tuple<int, int, Rat>> out;
  for (auto& [rc, v] : acc)
    if (v != 0) out.push_back({rc.first, rc.second, v});
  return out;
}

// ---- Cartan superspace polynomials --------------------------------------

int normalize_cartan_mono(CartanMono& m) {
  int sign = 1;
  // insertion sort, tracking odd-odd transpositions
  for (size_t i = 1; i < m.size(); ++i) {
    CartanVar v = m[i];
    size_t j = i;
    while (j > 0 && m[j - 1] > v) {
      m[j] = m[j - 1];
      if (cartan_var_odd(v) && cartan_var_odd(m[j - 1])) sign = -sign;
      --j;
    }
    m[j] = v;
  }
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && cartan_var_odd(m[i])) return 0;
  return sign;
}

CartanPoly cartan_poly_add(const CartanPoly& a, const CartanPoly& b) {
  CartanPoly r = a;
  for (auto& [m, c] : b) {
    auto& v = r[m];
    v += c;
    if (v == 0) r.erase(m);
  }
  return r;
}

CartanPoly cartan_poly_mul(const CartanPoly& a, const CartanPoly& b) {
  CartanPoly r;
  for (auto& [ma, ca] : a)
    for (auto& [mb, cb] : b) {
      CartanMono m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      int s = normalize_cartan_mono(m);
      if (s == 0) continue;
      auto& v = r[m];
      v += ca * cb * s;
      if (v == 0) r.erase(m);
    }
  return r;
}

CartanPoly weyl_substitute(const LieAlgebraData& g, const std::vector<int>& M,
                           const CartanPoly& p) {
  int r = g.rank;
  CartanPoly out;
  for (auto& [mono, coef] : p) {
    // substitute each variable by a linear form and expand
    CartanPoly acc{{CartanMono{}, coef}};
    for (CartanVar v : mono) {
      int slot = cartan_var_slot(v), cp = cartan_var_coord(v);
      CartanPoly lin;
      for (int c = 0; c < r; ++c) {
        int coefm = M[cp * r + c];
        if (coefm != 0) lin[CartanMono{cartan_var(slot, c)}] = Rat(coefm);
      }
      acc = cartan_poly_mul(acc, lin);
    }
    out = cartan_poly_add(out, acc);
  }
  return out;
}

CartanPoly weyl_orbit_average(const LieAlgebraData& g, const CartanPoly& poly) {
  CartanPoly sum;
  for (auto& w : g.weyl_cartan) sum = cartan_poly_add(sum, weyl_substitute(g, w, poly));
  Rat inv(1, (long)g.weyl_cartan.size());
  CartanPoly out;
  for (auto& [m, c] : sum) {
    Rat v = c * inv;
    if (v != 0) out[m] = v;
  }
  return out;
}

}  // namespace supercurrent
