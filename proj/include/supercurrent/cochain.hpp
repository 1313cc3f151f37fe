#ifndef SUPERCURRENT_COCHAIN_HPP
#define SUPERCURRENT_COCHAIN_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "supercurrent/liealg.hpp"
#include "supercurrent/superspace.hpp"

namespace supercurrent {

// Suspended generator xi^{(a,m)}: a = Lie algebra basis index, m a nonunit
// monomial of A_+. Packed so that numeric order is monomial-major.
using GenKey = uint64_t;

inline GenKey gen_key(int g_index, const AMonomial& m) {
  return (uint64_t(mono_code(m)) << 8) | uint64_t(g_index);
}
inline int gen_g(GenKey k) { return int(k & 0xff); }
inline AMonomial gen_mono(GenKey k) { return mono_from_code(uint32_t(k >> 8)); }
// 1 = odd generator (A-monomial even), 0 = even generator.
inline int gen_parity(GenKey k) {
  return (__builtin_popcount(uint32_t(k >> 8) & 7u) + 1) & 1;
}
inline MultiDegree gen_mdeg(GenKey k) { return gen_mono(k).degree_vector(); }

// Normal-ordered word of generators: ascending keys, odd keys strict.
using SuperMono = std::vector<GenKey>;

// Sorts in place; returns the Koszul sign, or 0 when an odd generator repeats.
int normalize_super_mono(SuperMono& m);

MultiDegree super_mono_mdeg(const SuperMono& m);
int super_mono_parity(const SuperMono& m);  // total parity of the word

// Action-weight of a generator/word: raising operators raise it by the
// corresponding simple root; invariants live in weight zero.
std::vector<int> gen_weight(const LieAlgebraData& g, GenKey k);
std::vector<int> super_mono_weight(const LieAlgebraData& g, const SuperMono& m);

// Packs a small signed weight vector (|entry| < 128) into a uint64 key.
uint64_t pack_weight(const std::vector<int>& w);
uint64_t pack_weight_root(const LieAlgebraData& g, int simple_index);  // alpha_i
uint64_t pack_weight_zero(const LieAlgebraData& g);
uint64_t add_packed_weights(uint64_t a, uint64_t b, uint64_t zero);

struct SuperMonoHash {
  size_t operator()(const SuperMono& m) const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (GenKey k : m) {
      h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return (size_t)h;
  }
};

// Sparse exact cochain.
struct Cochain {
  std::map<SuperMono, Rat> terms;

  void add(SuperMono m, Rat c);  // normalizes m
  bool zero() const { return terms.empty(); }
  // word length / multidegree when homogeneous
  std::optional<std::pair<int, MultiDegree>> sector() const;
  Cochain operator+(const Cochain& o) const;
  Cochain operator*(const Cochain& o) const;  // supercommutative product
  Cochain scaled(const Rat& c) const;
  bool operator==(const Cochain& o) const { return terms == o.terms; }
  std::string str() const;
};

// Per-algebra tables for the differential and the g-action. The suspended
// structure constants are c_{ab}^g = (-1)^{|m_a|(|m_b|+1)} f-type constants
// of the current-algebra bracket; the sign is the one produced by the
// superfield square, and the convention is pinned operationally by the
// d.d = 0 suite together with the superfield cross-check.
class ComplexOps {
 public:
  explicit ComplexOps(LieAlgebraPtr g);

  const LieAlgebraData& algebra() const { return *g_; }
  LieAlgebraPtr algebra_ptr() const { return g_; }

  // d xi^gamma as normal-ordered pairs (alpha <= beta, integer coeffs)
  const std::vector<std::tuple<GenKey, GenKey, int64_t>>& dgen(GenKey gamma) const;

  // terms of d applied to a normal-ordered word
  std::vector<std::pair<SuperMono, int64_t>> d_mono(const SuperMono& m) const;
  Cochain d(const Cochain& c) const;

  // action of T_a (even derivation, coadjoint on each slot)
  std::vector<std::pair<SuperMono, int64_t>> act_mono(int a, const SuperMono& m) const;
  // g-index substitutions of act(T_a) on xi^{(c,m)}
  const std::vector<std::pair<int, int64_t>>& action_pairs(int a, int c) const {
    return action_[a][c];
  }
  Cochain act(int a, const Cochain& c) const;

 private:
  LieAlgebraPtr g_;
  // action_[a][c] = expansion of act(T_a) on xi^{(c,m)} g-index substitutions
  std::vector<std::vector<std::vector<std::pair<int, int64_t>>>> action_;
  mutable std::unordered_map<GenKey, std::vector<std::tuple<GenKey, GenKey, int64_t>>> dgen_;
  mutable std::mutex mu_;
};

std::shared_ptr<ComplexOps> complex_ops(LieAlgebraPtr g);

// ---- sector bases ---------------------------------------------------------

// All normal-ordered words of length p and multidegree exactly n, in a
// deterministic order. Empty when p > |n|.
std::vector<SuperMono> enumerate_basis(const LieAlgebraData& g, int p, const MultiDegree& n);

// Full sector dimension without materializing the basis.
int64_t sector_dimension(const LieAlgebraData& g, int p, const MultiDegree& n);

// Basis of one action-weight block of the sector.
struct WeightBlock {
  std::vector<SuperMono> monos;
  std::unordered_map<SuperMono, uint32_t, SuperMonoHash> index;

  uint32_t find(const SuperMono& m) const {
    auto it = index.find(m);
    return it == index.end() ? UINT32_MAX : it->second;
  }
  size_t size() const { return monos.size(); }
};

WeightBlock enumerate_weight_block(const LieAlgebraData& g, int p, const MultiDegree& n,
                                   uint64_t packed_weight);

// Count of weight-zero words (cheap upper-bound proxy for scheduling).
int64_t weight_zero_count(const LieAlgebraData& g, int p, const MultiDegree& n);

// Exact invariant basis (weight-0 and killed by all simple raisings),
// computed densely over Q. Intended for small sectors and oracles.
std::vector<Cochain> relative_invariants(const ComplexOps& ops, int p, const MultiDegree& n);

}  // namespace supercurrent

#endif
