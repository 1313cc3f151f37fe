#include <doctest.h>

#include <random>

#include "supercurrent/liealg.hpp"

using namespace supercurrent;

namespace {

// exhaustive Jacobi check on structure constants
void check_jacobi(const LieAlgebraData& g) {
  int dim = g.dim;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c) {
        std::vector<int64_t> acc(dim, 0);
        auto add3 = [&](int x, int y, int z) {
          for (auto& [m, f1] : g.f[y * dim + z])
            for (auto& [t, f2] : g.f[x * dim + m]) acc[t] += f1 * f2;
        };
        add3(a, b, c);
        add3(b, c, a);
        add3(c, a, b);
        for (int t = 0; t < dim; ++t) CHECK(acc[t] == 0);
      }
}

void check_closure(const LieAlgebraData& g) {
  // [T_a, T_b] as matrices equals the structure-constant expansion
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      auto com = g.bracket_matrices(a, b);
      std::vector<int64_t> rec(g.N * g.N, 0);
      for (auto& [c, coef] : g.f[a * g.dim + b])
        for (int e = 0; e < g.N * g.N; ++e) rec[e] += coef * g.basis[c][e];
      CHECK(rec == com);
    }
}

}  // namespace

TEST_CASE("sl2 fundamentals") {
  auto g = build_algebra("sl2");
  CHECK(g->dim == 3);
  CHECK(g->rank == 1);
  // basis: h, e, f
  int h = 0, e = g->simple_raising[0], f = g->simple_lowering[0];
  auto expand = [&](int a, int b) { return g->f[a * g->dim + b]; };
  auto ef = expand(e, f);
  REQUIRE(ef.size() == 1);
  CHECK(ef[0] == std::pair<int, int64_t>{h, 1});
  auto he = expand(h, e);
  REQUIRE(he.size() == 1);
  CHECK(he[0] == std::pair<int, int64_t>{e, 2});
  auto hf = expand(h, f);
  REQUIRE(hf.size() == 1);
  CHECK(hf[0] == std::pair<int, int64_t>{f, -2});
  CHECK(expand(h, h).empty());
  CHECK(g->weyl_torus.size() == 2);
}

TEST_CASE("dimensions and Weyl orders for the named algebras") {
  struct Row {
    const char* name;
    int dim;
    uint64_t weyl;
  };
  for (auto [name, dim, weyl] : {Row{"so7", 21, 48}, Row{"sp6", 21, 48}, Row{"sl3", 8, 6},
                                 Row{"so5", 10, 8}, Row{"sp4", 10, 8}, Row{"gl3", 9, 6},
                                 Row{"so4", 6, 4}, Row{"so6", 15, 24}}) {
    auto g = build_algebra(name);
    CHECK(g->dim == dim);
    CHECK(g->weyl_torus.size() == weyl);
    CHECK(expected_weyl_order(g->spec) == weyl);
  }
}

TEST_CASE("rejects sp with odd size and malformed names") {
  CHECK_THROWS(parse_algebra("sp5"));
  CHECK_THROWS(parse_algebra("su3"));
  CHECK_THROWS(parse_algebra("sl0"));
  CHECK_THROWS(parse_algebra("sl"));
}

TEST_CASE("structure constants: closure, antisymmetry, Jacobi") {
  for (const char* name : {"sl2", "sl3", "so5", "sp4", "gl2", "so7", "sp6"}) {
    auto g = build_algebra(name);
    check_closure(*g);
    check_jacobi(*g);
    // antisymmetry in the lower indices
    for (int a = 0; a < g->dim; ++a)
      for (int b = 0; b < g->dim; ++b) {
        auto ab = g->f[a * g->dim + b];
        auto ba = g->f[b * g->dim + a];
        REQUIRE(ab.size() == ba.size());
        for (size_t i = 0; i < ab.size(); ++i) {
          CHECK(ab[i].first == ba[i].first);
          CHECK(ab[i].second == -ba[i].second);
        }
      }
  }
}

TEST_CASE("cartan elements commute and every basis element is a weight vector") {
  for (const char* name : {"sl3", "so7", "sp6", "gl3"}) {
    auto g = build_algebra(name);
    for (int c1 : g->cartan_indices)
      for (int c2 : g->cartan_indices) CHECK(g->f[c1 * g->dim + c2].empty());
    // weights of cartan elements vanish
    for (int c : g->cartan_indices)
      for (int i = 0; i < g->rank; ++i) CHECK(g->weights[c][i] == 0);
  }
}

TEST_CASE("gl central generator acts by zero in the adjoint") {
  auto g = build_algebra("gl3");
  int center = g->rank - 1;  // identity is the last cartan element
  // check the identity is there
  for (int i = 0; i < g->N; ++i)
    for (int j = 0; j < g->N; ++j)
      CHECK(g->basis[center][i * g->N + j] == (i == j ? 1 : 0));
  for (int b = 0; b < g->dim; ++b) CHECK(g->f[center * g->dim + b].empty());
}

TEST_CASE("bracket of coefficient vectors") {
  auto g = build_algebra("sl2");
  int h = 0, e = g->simple_raising[0], f = g->simple_lowering[0];
  std::vector<Rat> ve(g->dim, Rat(0)), vf(g->dim, Rat(0));
  ve[e] = 1;
  vf[f] = 1;
  auto vh = g->bracket(ve, vf);
  CHECK(vh[h] == 1);
  CHECK(vh[e] == 0);
  CHECK(vh[f] == 0);
  // antisymmetry: [x,x] = 0 on a random element
  std::vector<Rat> x(g->dim);
  for (int i = 0; i < g->dim; ++i) x[i] = Rat(i - 1, 2);
  auto xx = g->bracket(x, x);
  for (auto& v : xx) CHECK(v == 0);
}

TEST_CASE("adjoint action matrix: cartan diagonal, rep property") {
  auto g = build_algebra("sl2");
  std::vector<std::vector<int>> words;
  for (int a = 0; a < g->dim; ++a) words.push_back({a});
  // cartan action diagonal with the weights
  auto hmat = adjoint_action_matrix(*g, 0, words);
  for (auto& [r, c, v] : hmat) {
    CHECK(r == c);
    CHECK(v == Rat(g->weights[c][0]));
  }
  // [action(e), action(f)] = action(h) on the 2-fold tensor space
  std::vector<std::vector<int>> words2;
  for (int a = 0; a < g->dim; ++a)
    for (int b = 0; b < g->dim; ++b) words2.push_back({a, b});
  int e = g->simple_raising[0], f = g->simple_lowering[0];
  auto to_dense = [&](const std::vector<std::tuple<int, int, Rat>>& m) {
    std::vector<Rat> d(words2.size() * words2.size(), Rat(0));
    for (auto& [r, c, v] : m) d[r * words2.size() + c] += v;
    return d;
  };
  auto E = to_dense(adjoint_action_matrix(*g, e, words2));
  auto F = to_dense(adjoint_action_matrix(*g, f, words2));
  auto H = to_dense(adjoint_action_matrix(*g, 0, words2));
  size_t n = words2.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat comm(0);
      for (size_t k = 0; k < n; ++k)
        comm += E[i * n + k] * F[k * n + j] - F[i * n + k] * E[k * n + j];
      CHECK(comm == H[i * n + j]);
    }
}

TEST_CASE("weyl orbit average on t^{3|2}") {
  auto g = build_algebra("sl2");
  // u variables live in slots 2..4; sl2 has rank 1, coordinate c = 0
  CartanVar u1 = cartan_var(2, 0), u2 = cartan_var(3, 0);
  // odd total degree: u1 alone averages to zero under the sign action
  CartanPoly p1{{CartanMono{u1}, Rat(1)}};
  CHECK(weyl_orbit_average(*g, p1).empty());
  // u1 u2 is invariant
  CartanPoly p2{{CartanMono{u1, u2}, Rat(1)}};
  auto avg = weyl_orbit_average(*g, p2);
  REQUIRE(avg.size() == 1);
  CHECK(avg.begin()->second == Rat(1));
  // idempotence on a random so7 polynomial
  auto so7 = build_algebra("so7");
  std::mt19937 rng(17);
  CartanPoly q;
  for (int t = 0; t < 4; ++t) {
    CartanMono m;
    for (int j = 0; j < 3; ++j) m.push_back(cartan_var(2 + rng() % 3, rng() % 3));
    m.push_back(cartan_var(rng() % 2, rng() % 3));
    int s = normalize_cartan_mono(m);
    if (s == 0) continue;
    q[m] += Rat((int)(rng() % 7) - 3) * s;
  }
  auto a1 = weyl_orbit_average(*so7, q);
  auto a2 = weyl_orbit_average(*so7, a1);
  CHECK(a1 == a2);
}
