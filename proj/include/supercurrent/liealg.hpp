#ifndef SUPERCURRENT_LIEALG_HPP
#define SUPERCURRENT_LIEALG_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "supercurrent/rational.hpp"

namespace supercurrent {

enum class Series { GL, SL, SO, SP };

struct LieAlgebraSpec {
  Series series = Series::SL;
  int size = 2;  // n for gl_n/sl_n/so_n, 2k for sp_2k

  std::string name() const;
  bool operator==(const LieAlgebraSpec&) const = default;
};

// "sl2", "so7", "sp6", "gl3", ... Throws on malformed input or odd sp size.
LieAlgebraSpec parse_algebra(const std::string& s);

// A classical reductive Lie algebra realized by integer matrices in its
// defining representation. Basis order: Cartan first, then positive root
// vectors by height, then the matching negatives.
struct LieAlgebraData {
  LieAlgebraSpec spec;
  int dim = 0;  // basis size
  int N = 0;    // defining representation dimension
  std::vector<std::vector<int64_t>> basis;  // N*N row-major

  // f[a*dim+b] = sparse expansion of [T_a, T_b]
  std::vector<std::vector<std::pair<int, int64_t>>> f;
  // per target c: all (a, b, coeff) with coeff = f_{ab}^c != 0
  std::vector<std::vector<std::tuple<int, int, int64_t>>> f_by_target;

  std::vector<int> cartan_indices;  // 0..rank-1 by construction
  std::vector<int> simple_raising, simple_lowering;
  int rank = 0;  // includes the GL central direction

  std::vector<std::vector<int>> weights;  // per basis element, length rank

  // Weyl group elements as torus-coordinate matrices (tdim x tdim,
  // row-major; signed permutations for SO/SP, permutations for GL/SL)
  // and as the induced integer action on the Cartan basis H_c.
  int tdim = 0;
  std::vector<std::vector<int>> weyl_torus;
  std::vector<std::vector<int>> weyl_cartan;  // rank x rank row-major

  // trace-form dual basis: dual_a = sum_b trace_dual[a][b] * T_b
  std::vector<std::vector<Rat>> trace_dual;

  // ---- helpers ----
  std::vector<int64_t> bracket_matrices(int a, int b) const;  // matrix commutator
  // exact bracket of coefficient vectors via structure constants
  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
  bool is_cartan(int a) const { return a < rank; }
  int64_t trace_pair(int a, int b) const;  // Tr(T_a T_b)
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebraData>;

// Builds (and memoizes) the algebra for a spec. Thread-safe.
LieAlgebraPtr build_algebra(const LieAlgebraSpec& spec);
inline LieAlgebraPtr build_algebra(const std::string& s) { return build_algebra(parse_algebra(s)); }

// Expected Weyl group order: n! for GL/SL_n, 2^k k! for SO_{2k+1} and
// SP_{2k}, 2^{k-1} k! for SO_{2k}.
uint64_t expected_weyl_order(const LieAlgebraSpec& spec);

// Derivation action of T_a on pure tensor words in adjoint basis indices:
// returns the sparse matrix column-by-column as (row, col, coeff) triples.
// `words` lists the tensor basis; each slot transforms in the adjoint.
std::vector<std::tuple<int, int, Rat>> adjoint_action_matrix(
    const LieAlgebraData& g, int a, const std::vector<std::vector<int>>& words);

// ---- polynomial functions on the Cartan superspace t^{3|2} -------------
// Variables: eta_{s,c} odd for s in {0,1} (the z+-, z--slots) and u_{s,c}
// even for s in {2,3,4} (the theta-slots); c indexes the Cartan basis.
using CartanVar = uint32_t;  // (slot << 8) | c
inline CartanVar cartan_var(int slot, int c) { return (uint32_t(slot) << 8) | uint32_t(c); }
inline int cartan_var_slot(CartanVar v) { return int(v >> 8); }
inline int cartan_var_coord(CartanVar v) { return int(v & 0xff); }
inline bool cartan_var_odd(CartanVar v) { return cartan_var_slot(v) < 2; }

using CartanMono = std::vector<CartanVar>;  // normal-ordered
using CartanPoly = std::map<CartanMono, Rat>;

// Normal-orders a variable word in place; returns the Koszul sign, or 0 when
// an odd variable repeats.
int normalize_cartan_mono(CartanMono& m);

CartanPoly cartan_poly_add(const CartanPoly& a, const CartanPoly& b);
CartanPoly cartan_poly_mul(const CartanPoly& a, const CartanPoly& b);

// Substitution by the Weyl element with Cartan-action matrix M (rank x rank):
// each variable (s, c') is replaced by sum_c M[c'][c] * (s, c).
CartanPoly weyl_substitute(const LieAlgebraData& g, const std::vector<int>& weyl_cartan_mat,
                           const CartanPoly& p);

// The W-average (1/|W|) sum_w w . poly ; an idempotent projector onto the
// W-invariants.
CartanPoly weyl_orbit_average(const LieAlgebraData& g, const CartanPoly& poly);

}  // namespace supercurrent

#endif
