#ifndef SUPERCURRENT_RATIONAL_HPP
#define SUPERCURRENT_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace supercurrent {

// Exact scalar used everywhere outside the mod-p hot paths.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_parse(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

// Value of r mod p. Denominator must be invertible mod p.
uint64_t rat_mod(const Rat& r, uint64_t p);

}  // namespace supercurrent

#endif
