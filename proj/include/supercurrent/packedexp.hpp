#ifndef SUPERCURRENT_PACKEDEXP_HPP
#define SUPERCURRENT_PACKEDEXP_HPP

// Packed trace-word expansion for large sectors: generators indexed by small
// ids, monomials packed into 16 bytes, coefficients in int64, weight-pruned
// accumulation in open-addressing tables. Sound for trace words because
// their expansions are g-invariant, hence supported on action-weight zero;
// the verifier additionally samples nonzero weight slices and checks they
// vanish.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "supercurrent/classes.hpp"
#include "supercurrent/cochain.hpp"

namespace supercurrent {

constexpr int kPackedMaxLen = 16;
constexpr uint8_t kPadId = 0xff;
constexpr uint8_t kEmptyId = 0xfe;  // open-addressing empty slot marker

struct PKey {
  uint8_t b[kPackedMaxLen];

  bool operator==(const PKey& o) const {
    return __builtin_memcmp(b, o.b, kPackedMaxLen) == 0;
  }
  int length() const {
    int n = 0;
    while (n < kPackedMaxLen && b[n] != kPadId) ++n;
    return n;
  }
};

struct PVal {
  int64_t coeff = 0;
  uint64_t weight = 0;  // packed biased action-weight
};

// open-addressing hash map PKey -> PVal
class PMap {
 public:
  explicit PMap(size_t initial = 1 << 10);
  PVal& slot(const PKey& k);  // inserts zero-initialized value on miss
  size_t size() const { return count_; }
  template <class F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < keys_.size(); ++i)
      if (keys_[i].b[0] != kEmptyId) f(keys_[i], vals_[i]);
  }
  void clear();
  size_t memory_bytes() const { return keys_.size() * (sizeof(PKey) + sizeof(PVal)); }

 private:
  void grow();
  std::vector<PKey> keys_;
  std::vector<PVal> vals_;
  size_t mask_ = 0, count_ = 0;
};

// generator id table for one expansion context
struct PackedCtx {
  const LieAlgebraData* g = nullptr;
  std::vector<GenKey> gens;
  std::unordered_map<GenKey, uint16_t> ids;
  std::vector<uint8_t> parity;
  std::vector<uint64_t> wdelta;  // packed weight contribution (biased against wzero)
  uint64_t wzero = 0;
  int maxw = 1;  // max |weight entry| over the algebra basis

  explicit PackedCtx(const LieAlgebraData& alg);
  uint16_t id_of(GenKey k);
};

// expansion of one trace word restricted to a target total action-weight
// (weight-zero for the invariant content); returns the packed support
struct PackedExpansion {
  PackedCtx ctx;
  PMap monos;
  int p = 0;
  MultiDegree n;

  explicit PackedExpansion(const LieAlgebraData& alg) : ctx(alg) {}
};

// expand with pruning to the given total weight (nullptr = weight zero)
PackedExpansion expand_packed(const TraceWord& word, const LieAlgebraData& g,
                              const std::vector<int>* target_weight = nullptr);

// checks on a packed expansion
bool packed_is_zero(const PackedExpansion& e);
bool packed_d_is_zero(PackedExpansion& e);              // exact integer check
bool packed_raising_kernel_zero(PackedExpansion& e);    // all simple raisings kill it

// conversion for moderate supports
Cochain packed_to_cochain(const PackedExpansion& e, size_t max_terms);

}  // namespace supercurrent

#endif
