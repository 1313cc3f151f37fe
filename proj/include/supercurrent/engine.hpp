#ifndef SUPERCURRENT_ENGINE_HPP
#define SUPERCURRENT_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "supercurrent/cochain.hpp"
#include "supercurrent/exactla.hpp"
#include "supercurrent/liealg.hpp"
#include "supercurrent/superspace.hpp"

namespace supercurrent {

struct SectorReport {
  LieAlgebraSpec spec;
  int p = 0;
  MultiDegree n;
  int64_t dim_cochain = 0;
  int64_t dim_invariant = 0;
  int64_t rank_d_out = 0;  // rank of d on invariants at p
  int64_t rank_d_in = 0;   // rank of d on invariants at p-1
  int64_t dim_H = 0;
  ChargeVector charge;
  int level = 0;
  std::vector<uint64_t> primes;
  double wall_time_ms = 0.0;

  bool math_equal(const SectorReport& o) const {
    return spec == o.spec && p == o.p && n == o.n && dim_cochain == o.dim_cochain &&
           dim_invariant == o.dim_invariant && rank_d_out == o.rank_d_out &&
           rank_d_in == o.rank_d_in && dim_H == o.dim_H && primes == o.primes;
  }
};

struct LevelTable {
  LieAlgebraSpec spec;
  int level = 0;
  std::vector<SectorReport> sectors;  // ordered by (n, p)
};

struct Mismatch {
  int level = 0;
  int p = 0;
  MultiDegree n;
  int64_t dim_a = 0, dim_b = 0;
};

struct EngineOptions {
  int nprimes = 2;
  uint64_t seed = 1;
  int max_retries = 3;
  int threads = 0;            // 0 = hardware concurrency
  std::string cache_dir;      // empty = caching disabled
  bool use_cache = true;
  bool recompute = false;     // bypass cache lookups, still store
};

// All multidegrees with level(n) = L.
std::vector<MultiDegree> multidegrees_of_level(int L);

class Engine {
 public:
  explicit Engine(EngineOptions opts = {});

  const EngineOptions& options() const { return opts_; }

  SectorReport dim_H(const LieAlgebraSpec& spec, int p, const MultiDegree& n);
  LevelTable level_table(const LieAlgebraSpec& spec, int L);
  std::vector<Mismatch> compare_langlands(const LieAlgebraSpec& a, const LieAlgebraSpec& b,
                                          int lmax);

  // Invariant basis mod p as coefficient vectors over the weight-zero block;
  // shared by the engine pipeline and by class/scheme verification.
  struct InvariantsModP {
    WeightBlock block;  // weight-zero basis of the sector
    std::vector<std::vector<std::pair<uint32_t, uint64_t>>> kernel;  // invariant vectors
  };
  InvariantsModP invariants_mod_p(const LieAlgebraSpec& spec, int p, const MultiDegree& n,
                                  uint64_t prime);

  // Sparse integer matrix of d from the weight-zero block of (p, n) into the
  // weight-zero block of (p+1, n).
  SparseMatrix d_matrix_wt0(const LieAlgebraSpec& spec, int p, const MultiDegree& n,
                            const WeightBlock& source, const WeightBlock& target);

 private:
  EngineOptions opts_;

  SectorReport compute_sector(const LieAlgebraSpec& spec, int p, const MultiDegree& n,
                              const std::vector<uint64_t>& primes);
};

// ---- persistent cache -------------------------------------------------------

// JSON-lines cache keyed by (series, size, p, n, convention version, prime
// hash). Writes go through a temp file + atomic rename.
class SectorCache {
 public:
  explicit SectorCache(std::string dir);
  std::optional<SectorReport> lookup(const std::string& key) const;
  void store(const std::string& key, const SectorReport& r);
  static std::string key_of(const LieAlgebraSpec& spec, int p, const MultiDegree& n,
                            const std::vector<uint64_t>& primes);

 private:
  std::string path_;
  mutable std::mutex mu_;
};

constexpr int kConventionVersion = 1;

uint64_t prime_set_hash(const std::vector<uint64_t>& primes);

}  // namespace supercurrent

#endif
