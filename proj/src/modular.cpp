#include "supercurrent/modular.hpp"

#include <stdexcept>

namespace supercurrent {

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  // extended Euclid; p prime, a != 0 mod p
  int64_t t = 0, newt = 1;
  int64_t r = (int64_t)p, newr = (int64_t)(a % p);
  while (newr != 0) {
    int64_t q = r / newr;
    int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::runtime_error("inv_mod: not invertible");
  if (t < 0) t += (int64_t)p;
  return (uint64_t)t;
}

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % q == 0) return n == q;
  }
  // deterministic Miller-Rabin for n < 3,215,031,751
  uint32_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

static uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::vector<uint64_t> select_primes(uint64_t seed, int count) {
  std::vector<uint64_t> out;
  uint64_t state = seed;
  while ((int)out.size() < count) {
    state = splitmix64(state + 0x1234);
    // candidate in (2^30, 2^31)
    uint64_t c = (1ull << 30) + 1 + (state % ((1ull << 30) - 2));
    c |= 1;
    while (c < (1ull << 31) && !is_prime_u32((uint32_t)c)) c += 2;
    if (c >= (1ull << 31)) continue;
    bool dup = false;
    for (uint64_t q : out) dup |= (q == c);
    if (!dup) out.push_back(c);
  }
  return out;
}

void crt_combine(const std::vector<uint64_t>& residues,
                 const std::vector<uint64_t>& moduli, Int& value, Int& modulus) {
  value = 0;
  modulus = 1;
  for (size_t i = 0; i < residues.size(); ++i) {
    Int m(static_cast<unsigned long>(moduli[i]));
    Int r(static_cast<unsigned long>(residues[i]));
    // solve x = value mod modulus, x = r mod m
    Int inv, g;
    if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t()) == 0)
      throw std::runtime_error("crt: moduli not coprime");
    Int t = ((r - value) * inv) % m;
    if (t < 0) t += m;
    value += modulus * t;
    modulus *= m;
  }
}

bool rational_reconstruct(const Int& value, const Int& modulus, Rat& out) {
  // Wang's algorithm with thresholds sqrt(m/2).
  Int m = modulus, v = value % modulus;
  if (v < 0) v += modulus;
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(modulus / 2).get_mpz_t());
  Int r0 = m, r1 = v, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return false;
  Int num = r1, den = t1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound) return false;
  Int g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) {
    // representative must be in lowest terms to be the canonical lift
    num /= g;
    den /= g;
  }
  out = Rat(num, den);
  out.canonicalize();
  return true;
}

uint64_t rat_mod_impl(const Rat& r, uint64_t p) {
  Int num = r.get_num(), den = r.get_den();
  uint64_t n = mpz_fdiv_ui(num.get_mpz_t(), p);
  uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
  if (d == 0) throw std::runtime_error("rat_mod: denominator divisible by p");
  return mul_mod(n, inv_mod(d, p), p);
}

}  // namespace supercurrent

namespace supercurrent {
uint64_t rat_mod(const Rat& r, uint64_t p) { return rat_mod_impl(r, p); }
}  // namespace supercurrent
