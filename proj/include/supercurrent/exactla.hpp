#ifndef SUPERCURRENT_EXACTLA_HPP
#define SUPERCURRENT_EXACTLA_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "supercurrent/modular.hpp"
#include "supercurrent/rational.hpp"

namespace supercurrent {

// Raised when independent prime-field computations refuse to agree after
// the configured number of retries.
struct ArithmeticDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparse integer matrix in coordinate format. Duplicate (r,c) pairs are
// coalesced when the matrix is consumed.
struct SparseMatrix {
  int64_t rows = 0, cols = 0;
  std::vector<std::tuple<uint32_t, uint32_t, int64_t>> entries;

  void add(uint32_t r, uint32_t c, int64_t v) {
    if (v != 0) entries.push_back({r, c, v});
  }
  SparseMatrix transposed() const;
};

struct RankCertificate {
  int64_t rank = 0;
  std::vector<uint64_t> primes;
  bool agreement = false;
};

struct ModOptions {
  int nprimes = 2;
  uint64_t seed = 1;
  int max_retries = 3;
  bool certify = false;  // rational certification of positive span verdicts
};

// ---- single-prime sparse elimination ---------------------------------------

int64_t rank_mod_p(const SparseMatrix& M, uint64_t p);

// kernel basis mod p; each vector as sparse (index, value) list, free
// column normalized to 1; deterministic given the pivot sequence
std::vector<std::vector<std::pair<uint32_t, uint64_t>>> kernel_mod_p(const SparseMatrix& M,
                                                                     uint64_t p);

// particular solution of M x = b with free variables set to zero
std::optional<std::vector<uint64_t>> solve_mod_p(const SparseMatrix& M,
                                                 const std::vector<uint64_t>& b, uint64_t p);

// ---- multi-prime wrappers ---------------------------------------------------

RankCertificate rank(const SparseMatrix& M, const ModOptions& opts = {});
RankCertificate rank(const SparseMatrix& M, const std::vector<uint64_t>& primes,
                     int max_retries = 3, uint64_t reseed = 99);

// Exact rational nullspace: multi-modular kernels, CRT + rational
// reconstruction, verified by exact multiplication.
std::vector<std::vector<Rat>> nullspace_basis(const SparseMatrix& M, const ModOptions& opts = {});

// Column-span membership, consistent across >= 2 primes; positive verdicts
// are certified over Q when opts.certify is set.
bool in_span(const SparseMatrix& M, const std::vector<Rat>& v, const ModOptions& opts = {});

// Rational certificate that v is NOT in the column span: phi with
// M^T phi = 0 and v . phi = 1, verified exactly. nullopt when none found
// (in particular when v is in the span).
std::optional<std::vector<Rat>> not_in_span_certificate(const SparseMatrix& M,
                                                        const std::vector<Rat>& v,
                                                        const ModOptions& opts = {});

// ---- dense exact oracles (test-scale) ---------------------------------------

int64_t dense_rank_bareiss(int64_t rows, int64_t cols, std::vector<Int> a);

// reduced row echelon nullspace over Q
std::vector<std::vector<Rat>> dense_nullspace_q(int64_t rows, int64_t cols, std::vector<Rat> a);

int64_t dense_rank_q(int64_t rows, int64_t cols, std::vector<Rat> a);

}  // namespace supercurrent

#endif
