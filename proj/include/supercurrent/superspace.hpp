#ifndef SUPERCURRENT_SUPERSPACE_HPP
#define SUPERCURRENT_SUPERSPACE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supercurrent/rational.hpp"

namespace supercurrent {

// Derivative multidegree n = (n_{z+}, n_{z-}, n_{t1}, n_{t2}, n_{t3}).
struct MultiDegree {
  std::array<int, 5> n{0, 0, 0, 0, 0};

  int total() const { return n[0] + n[1] + n[2] + n[3] + n[4]; }
  int operator[](int i) const { return n[i]; }
  int& operator[](int i) { return n[i]; }

  MultiDegree operator+(const MultiDegree& o) const {
    MultiDegree r;
    for (int i = 0; i < 5; ++i) r.n[i] = n[i] + o.n[i];
    return r;
  }
  MultiDegree operator-(const MultiDegree& o) const {
    MultiDegree r;
    for (int i = 0; i < 5; ++i) r.n[i] = n[i] - o.n[i];
    return r;
  }
  bool operator==(const MultiDegree& o) const = default;
  auto operator<=>(const MultiDegree& o) const = default;
  bool leq(const MultiDegree& o) const {
    for (int i = 0; i < 5; ++i)
      if (n[i] > o.n[i]) return false;
    return true;
  }
  bool nonneg() const {
    for (int i = 0; i < 5; ++i)
      if (n[i] < 0) return false;
    return true;
  }
  std::string str() const;
};

MultiDegree mdeg(int a, int b, int c, int d, int e);

// Weighted level L = 3 n_{z+} + 3 n_{z-} + 2 (n_{t1}+n_{t2}+n_{t3}).
int level(const MultiDegree& n);

// Monomial of A = C[z+,z-] (x) Lambda(t1,t2,t3). The unit has all fields 0.
struct AMonomial {
  uint32_t zp = 0, zm = 0;  // z exponents
  uint32_t mask = 0;        // theta subset, bits 0..2 for t1..t3

  bool is_unit() const { return zp == 0 && zm == 0 && mask == 0; }
  int parity() const { return __builtin_popcount(mask) & 1; }
  MultiDegree degree_vector() const {
    MultiDegree d;
    d[0] = (int)zp;
    d[1] = (int)zm;
    for (int i = 0; i < 3; ++i) d[2 + i] = (mask >> i) & 1;
    return d;
  }
  bool operator==(const AMonomial&) const = default;
  std::string str() const;
};

// Packed code; numeric order equals (zp, zm, mask) lexicographic order.
inline uint32_t mono_code(const AMonomial& m) {
  return (m.zp << 14) | (m.zm << 3) | m.mask;
}
inline AMonomial mono_from_code(uint32_t c) {
  return AMonomial{c >> 14, (c >> 3) & 0x7ff, c & 7u};
}
constexpr uint32_t kMaxZExp = 0x7ff;

// Supercommutative product. Returns sign in {+1,-1} and the product, or
// nullopt when a theta variable repeats.
std::optional<std::pair<int, AMonomial>> multiply(const AMonomial& a, const AMonomial& b);

// All nonunit monomials m with degree_vector(m) <= bound, ordered by code.
std::vector<AMonomial> enumerate_monomials(const MultiDegree& bound);

// Physical charges attached to word length p and multidegree n.
struct ChargeVector {
  Rat J1, J2, q1, q2, q3;
  bool operator==(const ChargeVector&) const = default;
  ChargeVector operator-(const ChargeVector& o) const {
    return {J1 - o.J1, J2 - o.J2, q1 - o.q1, q2 - o.q2, q3 - o.q3};
  }
  Rat deg() const { return 2 * (J1 + J2 + q1 + q2 + q3); }
  std::string str() const;
};

ChargeVector charges(int p, const MultiDegree& n);

// Charge of the supercharge Q: (-1/2,-1/2,1/2,1/2,1/2).
ChargeVector q_charge();

}  // namespace supercurrent

#endif
