#ifndef SUPERCURRENT_SCHEMES_HPP
#define SUPERCURRENT_SCHEMES_HPP

// Invariant functions on the super-commuting scheme with 3 even and 2 odd
// g-valued coordinates, per multihomogeneous piece; Weyl-invariant functions
// on the Cartan side; the restriction map between them and its kernel.
//
// The ambient multihomogeneous piece is represented through the top-degree
// dictionary: even coordinates correspond to the theta-slot generators
// xi^{(a,ti)}, odd coordinates to the z-slot generators xi^{(a,z+-)}; a piece
// of multidegree n is exactly the (|n|, n) cochain sector. The relation
// ideal is built independently of the differential.

#include <cstdint>
#include <vector>

#include "supercurrent/cochain.hpp"
#include "supercurrent/liealg.hpp"

namespace supercurrent {

struct SchemeOptions {
  int nprimes = 2;
  uint64_t seed = 1;
  int max_retries = 3;
};

struct SchemeSectorReport {
  LieAlgebraSpec spec;
  MultiDegree n;
  int64_t dim_ambient = 0;
  int64_t dim_scheme_invariants = 0;
  int64_t dim_cartan_invariants = 0;
  int64_t rank_restriction = 0;
  int64_t dim_kernel = 0;
};

class Schemes {
 public:
  explicit Schemes(LieAlgebraPtr g, SchemeOptions opts = {});

  const LieAlgebraData& algebra() const { return *g_; }

  // first-derivative monomial of coordinate slot 0..4 (z+, z-, t1, t2, t3)
  static AMonomial slot_monomial(int slot);

  // ambient basis of the multihomogeneous piece (top-degree cochain sector)
  std::vector<SuperMono> ambient_basis(const MultiDegree& n) const;

  // quadratic generators lambda_c([coordinate_s, coordinate_t]) of the
  // defining ideal, all slot pairs and all targets c
  std::vector<Cochain> relation_generators() const;

  // span of the degree-n piece of the ideal: relation * complement monomial
  std::vector<Cochain> ideal_columns(const MultiDegree& n) const;

  // invariants of the quotient = invariants of the ambient piece modulo
  // invariants of the ideal piece (reductivity); returns the dimension and
  // representative invariant cochains
  struct QuotientInvariants {
    int64_t dim = 0;
    std::vector<Cochain> representatives;
  };
  QuotientInvariants invariants_supercommuting(const MultiDegree& n) const;

  // Cartan-side monomial basis of the piece and the W-invariant subspace
  std::vector<CartanMono> cartan_basis(const MultiDegree& n) const;
  struct CartanInvariants {
    int64_t dim = 0;
    std::vector<CartanPoly> basis;
  };
  CartanInvariants cartan_invariants(const MultiDegree& n) const;

  // evaluation of a top-degree element on Cartan-valued coordinates
  CartanPoly restrict_to_cartan(const Cochain& c) const;

  // matrix of the restriction on the quotient representatives, with its rank
  struct Restriction {
    QuotientInvariants source;
    std::vector<CartanPoly> images;
    int64_t rank = 0;
  };
  Restriction restriction_matrix(const MultiDegree& n) const;

  struct Kernel {
    int64_t dim = 0;
    std::vector<Cochain> representatives;  // kernel combinations of source reps
  };
  Kernel non_cartan_kernel(const MultiDegree& n) const;

  SchemeSectorReport report(const MultiDegree& n) const;

 private:
  LieAlgebraPtr g_;
  std::shared_ptr<ComplexOps> ops_;
  SchemeOptions opts_;
};

}  // namespace supercurrent

#endif
