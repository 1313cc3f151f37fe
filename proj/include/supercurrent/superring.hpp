#ifndef SUPERCURRENT_SUPERRING_HPP
#define SUPERCURRENT_SUPERRING_HPP

// A truncated supercommutative polynomial ring mixing three kinds of
// variables: suspended cochain generators xi^{(a,m)}, the superspace
// coordinates z+-, theta_i, and Cartan coordinates u/eta. Products carry
// Koszul signs; optional multidegree bounds prune terms on the fly.
//
// This is the computational substrate for the superfield-side supercharge
// (Psi^2 via honest matrix arithmetic in the defining representation),
// trace-word expansion, symmetrized-trace representatives, and evaluation
// on Cartan-valued points.

#include <cstdint>
#include <map>
#include <vector>

#include "supercurrent/cochain.hpp"
#include "supercurrent/liealg.hpp"
#include "supercurrent/superspace.hpp"

namespace supercurrent {

using RVar = uint64_t;

constexpr uint64_t kTagXi = 0ull << 62;
constexpr uint64_t kTagA = 1ull << 62;
constexpr uint64_t kTagCartan = 2ull << 62;
constexpr uint64_t kTagMask = 3ull << 62;

inline RVar rv_xi(GenKey k) { return kTagXi | k; }
inline RVar rv_avar(int i) { return kTagA | (uint64_t)i; }  // 0..4: zp, zm, t1..t3
inline RVar rv_cartan(CartanVar v) { return kTagCartan | (uint64_t)v; }

inline bool rv_is_xi(RVar v) { return (v & kTagMask) == kTagXi; }
inline bool rv_is_avar(RVar v) { return (v & kTagMask) == kTagA; }
inline bool rv_is_cartan(RVar v) { return (v & kTagMask) == kTagCartan; }
inline GenKey rv_genkey(RVar v) { return v & ~kTagMask; }
inline int rv_avar_index(RVar v) { return int(v & 7); }
inline CartanVar rv_cartan_var(RVar v) { return CartanVar(v & 0xffffffffu); }

inline int rv_parity(RVar v) {
  if (rv_is_xi(v)) return gen_parity(rv_genkey(v));
  if (rv_is_avar(v)) return rv_avar_index(v) >= 2 ? 1 : 0;
  return cartan_var_odd(rv_cartan_var(v)) ? 1 : 0;
}

using RMono = std::vector<RVar>;

// sorts in place, returns Koszul sign or 0 on an odd repeat
int normalize_rmono(RMono& m);

// multidegree carried by the xi variables of the monomial
MultiDegree rmono_xi_mdeg(const RMono& m);
// multidegree of the A-variable part (z/theta coordinates)
MultiDegree rmono_a_mdeg(const RMono& m);

struct RBounds {
  const MultiDegree* xi = nullptr;  // componentwise cap on xi multidegree
  const MultiDegree* a = nullptr;   // componentwise cap on A-variable degree
  int max_xi_len = -1;              // cap on the number of xi factors

  bool admits(const RMono& m) const;
};

template <class Coef>
struct RPoly {
  std::map<RMono, Coef> t;

  static RPoly var(RVar v, Coef c) {
    RPoly p;
    p.t[RMono{v}] = c;
    return p;
  }
  bool zero() const { return t.empty(); }
  void add_term(RMono m, Coef c);
  RPoly operator+(const RPoly& o) const;
  RPoly scaled(const Coef& c) const;
  bool operator==(const RPoly& o) const { return t == o.t; }
};

template <class Coef>
RPoly<Coef> rmul(const RPoly<Coef>& a, const RPoly<Coef>& b, const RBounds& bounds = {});

// left derivative with respect to A-variable index i
template <class Coef>
RPoly<Coef> davar(const RPoly<Coef>& p, int i);

// drop every monomial containing an A variable (evaluation at z = theta = 0)
template <class Coef>
RPoly<Coef> eval_at_origin(const RPoly<Coef>& p);

template <class Coef>
struct RMatrix {
  int N = 0;
  std::vector<RPoly<Coef>> e;  // row-major

  RMatrix() = default;
  explicit RMatrix(int n) : N(n), e(n * n) {}
  RPoly<Coef>& at(int i, int j) { return e[i * N + j]; }
  const RPoly<Coef>& at(int i, int j) const { return e[i * N + j]; }
};

template <class Coef>
RMatrix<Coef> rmat_mul(const RMatrix<Coef>& a, const RMatrix<Coef>& b,
                       const RBounds& bounds = {});
template <class Coef>
RPoly<Coef> rmat_trace(const RMatrix<Coef>& m);
template <class Coef>
RPoly<Coef> rmat_trace_mul(const RMatrix<Coef>& a, const RMatrix<Coef>& b,
                           const RBounds& bounds = {});  // Tr(a b) without storing a*b

// pure-xi polynomial -> Cochain (throws if other variables are present)
Cochain rpoly_to_cochain(const RPoly<Rat>& p);
// pure-cartan polynomial -> CartanPoly
CartanPoly rpoly_to_cartan(const RPoly<Rat>& p);

// The tautological superfield Psi = sum_(a,m) xi^{(a,m)} rho(T_a) m(z,theta)
// over generators with multidegree <= bound, as an N x N matrix.
RMatrix<Rat> tautological_psi(const LieAlgebraData& g, const MultiDegree& bound);

// Superfield-side supercharge on generators: Q Psi^gamma extracted from the
// matrix square Psi^2 via trace duals. Also asserts that Psi^2 lies in the
// image of rho (the reconstruction matches entrywise).
std::map<GenKey, Cochain> q_on_generators(const LieAlgebraData& g, const MultiDegree& bound);

// Extension of Q to words by the graded Leibniz rule, using the generator
// images from q_on_generators.
Cochain q_apply(const std::map<GenKey, Cochain>& qgen, const Cochain& c);

extern template struct RPoly<Rat>;
extern template struct RPoly<int64_t>;

}  // namespace supercurrent

#endif
