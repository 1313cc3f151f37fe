#ifndef SUPERCURRENT_MODULAR_HPP
#define SUPERCURRENT_MODULAR_HPP

#include <cstdint>
#include <vector>

#include "supercurrent/rational.hpp"

namespace supercurrent {

// Arithmetic mod a prime p with 2^30 < p < 2^31. Values and p fit in
// uint64 so products never overflow.
inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) { return (a * b) % p; }
inline uint64_t neg_mod(uint64_t a, uint64_t p) { return a == 0 ? 0 : p - a; }

uint64_t inv_mod(uint64_t a, uint64_t p);
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p);

// Signed integer reduced into [0, p).
inline uint64_t int_mod(int64_t v, uint64_t p) {
  int64_t r = v % (int64_t)p;
  if (r < 0) r += (int64_t)p;
  return (uint64_t)r;
}

bool is_prime_u32(uint32_t n);

// Deterministic seeded selection of distinct primes in (2^30, 2^31).
std::vector<uint64_t> select_primes(uint64_t seed, int count);

// Rational reconstruction: find n/d = value mod m with |n|, d <= sqrt(m/2).
// Returns false when no such representative exists.
bool rational_reconstruct(const Int& value, const Int& modulus, Rat& out);

// CRT combine: residues r[i] mod primes m[i] -> value mod prod(m).
void crt_combine(const std::vector<uint64_t>& residues,
                 const std::vector<uint64_t>& moduli, Int& value, Int& modulus);

}  // namespace supercurrent

#endif
