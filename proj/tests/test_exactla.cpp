#include <doctest.h>

#include <random>

#include "supercurrent/exactla.hpp"

using namespace supercurrent;

namespace {

SparseMatrix random_matrix(std::mt19937& rng, int rows, int cols, int target_rank) {
  // product of random rows x r and r x cols integer matrices
  std::vector<std::vector<int64_t>> A(rows, std::vector<int64_t>(target_rank)),
      B(target_rank, std::vector<int64_t>(cols));
  for (auto& row : A)
    for (auto& v : row) v = (int64_t)(rng() % 7) - 3;
  for (auto& row : B)
    for (auto& v : row) v = (int64_t)(rng() % 7) - 3;
  SparseMatrix M;
  M.rows = rows;
  M.cols = cols;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      int64_t s = 0;
      for (int k = 0; k < target_rank; ++k) s += A[i][k] * B[k][j];
      M.add(i, j, s);
    }
  return M;
}

int64_t dense_rank_of(const SparseMatrix& M) {
  std::vector<Int> dense(M.rows * M.cols, Int(0));
  for (auto& [r, c, v] : M.entries) dense[r * M.cols + c] += v;
  return dense_rank_bareiss(M.rows, M.cols, std::move(dense));
}

}  // namespace

TEST_CASE("rank: identity and zero") {
  SparseMatrix id;
  id.rows = id.cols = 5;
  for (int i = 0; i < 5; ++i) id.add(i, i, 1);
  auto cert = rank(id);
  CHECK(cert.rank == 5);
  CHECK(cert.agreement);
  CHECK(cert.primes.size() == 2);
  for (uint64_t p : cert.primes) CHECK(p > (1ull << 30));

  SparseMatrix z;
  z.rows = 3;
  z.cols = 4;
  CHECK(rank(z).rank == 0);
}

TEST_CASE("rank agrees with the dense fraction-free oracle") {
  std::mt19937 rng(12);
  for (int t = 0; t < 12; ++t) {
    int rows = 10 + rng() % 15, cols = 10 + rng() % 25;
    auto M = random_matrix(rng, rows, cols, 1 + rng() % 9);
    CHECK(rank(M).rank == dense_rank_of(M));
  }
}

TEST_CASE("rank(M) == rank(M^T)") {
  std::mt19937 rng(13);
  for (int t = 0; t < 8; ++t) {
    auto M = random_matrix(rng, 12 + rng() % 10, 8 + rng() % 20, 1 + rng() % 7);
    CHECK(rank(M).rank == rank(M.transposed()).rank);
  }
}

TEST_CASE("nullspace: identity, zero, outer product") {
  SparseMatrix id;
  id.rows = id.cols = 4;
  for (int i = 0; i < 4; ++i) id.add(i, i, 2);
  CHECK(nullspace_basis(id).empty());

  SparseMatrix z;
  z.rows = z.cols = 3;
  auto nz = nullspace_basis(z);
  REQUIRE(nz.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(nz[i][i] == 1);

  std::mt19937 rng(14);
  SparseMatrix op = random_matrix(rng, 4, 4, 1);
  auto nv = nullspace_basis(op);
  CHECK((int64_t)nv.size() == 4 - rank(op).rank);
  // exact verification (already done inside, re-check here)
  for (auto& v : nv) {
    std::vector<Rat> prod(op.rows, Rat(0));
    for (auto& [r, c, val] : op.entries) prod[r] += Rat(val) * v[c];
    for (auto& s : prod) CHECK(s == 0);
  }
}

TEST_CASE("nullspace on random rectangular matrices") {
  std::mt19937 rng(15);
  for (int t = 0; t < 6; ++t) {
    auto M = random_matrix(rng, 8 + rng() % 6, 10 + rng() % 8, 2 + rng() % 5);
    auto nv = nullspace_basis(M);
    CHECK((int64_t)nv.size() == M.cols - rank(M).rank);
    for (auto& v : nv) {
      std::vector<Rat> prod(M.rows, Rat(0));
      for (auto& [r, c, val] : M.entries) prod[r] += Rat(val) * v[c];
      for (auto& s : prod) CHECK(s == 0);
    }
  }
}

TEST_CASE("in_span verdicts") {
  SparseMatrix M;  // diag(1,2,0) with 2 columns
  M.rows = 3;
  M.cols = 2;
  M.add(0, 0, 1);
  M.add(1, 1, 2);
  std::vector<Rat> v1{Rat(1), Rat(4), Rat(0)};  // = col0 + 2*col1
  std::vector<Rat> v2{Rat(0), Rat(0), Rat(1)};  // outside
  ModOptions certify;
  certify.certify = true;
  CHECK(in_span(M, v1, certify));
  CHECK(!in_span(M, v2, certify));
  // first column of a random matrix is in its span
  std::mt19937 rng(16);
  auto R = random_matrix(rng, 10, 6, 4);
  std::vector<Rat> col0(R.rows, Rat(0));
  for (auto& [r, c, val] : R.entries)
    if (c == 0) col0[r] = val;
  CHECK(in_span(R, col0, certify));
}

TEST_CASE("not_in_span_certificate") {
  std::mt19937 rng(17);
  auto M = random_matrix(rng, 12, 5, 3);
  // v = random combination + a vector outside the span
  std::vector<Rat> inside(M.rows, Rat(0));
  for (auto& [r, c, val] : M.entries) inside[r] += Rat(val);
  if (!in_span(M, inside, {})) return;  // degenerate draw; skip
  auto certInside = not_in_span_certificate(M, inside);
  CHECK(!certInside.has_value());

  // append an unreachable coordinate direction
  SparseMatrix M2 = M;
  M2.rows += 1;
  std::vector<Rat> v = inside;
  v.push_back(Rat(1));
  auto cert = not_in_span_certificate(M2, v);
  REQUIRE(cert.has_value());
  // verify the certificate contract once more
  std::vector<Rat> mt(M2.cols, Rat(0));
  for (auto& [r, c, val] : M2.entries) mt[c] += Rat(val) * (*cert)[r];
  for (auto& s : mt) CHECK(s == 0);
  Rat dot(0);
  for (size_t r = 0; r < v.size(); ++r) dot += v[r] * (*cert)[r];
  CHECK(dot == 1);
}

TEST_CASE("dense bareiss oracle basics") {
  // 3x3 rank-2 integer matrix
  std::vector<Int> m{Int(1), Int(2), Int(3), Int(2), Int(4), Int(6), Int(1), Int(0), Int(1)};
  CHECK(dense_rank_bareiss(3, 3, m) == 2);
  std::vector<Rat> q{Rat(1), Rat(2), Rat(2), Rat(4)};
  CHECK(dense_rank_q(2, 2, q) == 1);
  auto nv = dense_nullspace_q(2, 2, q);
  REQUIRE(nv.size() == 1);
  CHECK(nv[0][0] * 1 + nv[0][1] * 2 == 0);
}
