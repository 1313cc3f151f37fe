#ifndef SUPERCURRENT_CLASSES_HPP
#define SUPERCURRENT_CLASSES_HPP

// Symbolic trace words in derivative-labeled superfield factors, their
// expansion into cochains through the defining representation, symmetrized
// trace representatives and their products, and the closedness/exactness/
// fortuity/Cartan-restriction verification pipeline.

#include <optional>
#include <string>
#include <vector>

#include "supercurrent/cochain.hpp"
#include "supercurrent/engine.hpp"
#include "supercurrent/liealg.hpp"

namespace supercurrent {

// Derivative label of one superfield factor: z orders are free, theta
// orders at most one each. Stored with the theta indices ascending; signs
// from reordering anticommuting derivatives are folded into coefficients.
struct DLabel {
  uint32_t zp = 0, zm = 0, mask = 0;

  bool operator==(const DLabel&) const = default;
  auto operator<=>(const DLabel&) const = default;
  int order() const { return (int)(zp + zm) + __builtin_popcount(mask); }
  MultiDegree mdeg() const {
    MultiDegree d;
    d[0] = (int)zp;
    d[1] = (int)zm;
    for (int i = 0; i < 3; ++i) d[2 + i] = (mask >> i) & 1;
    return d;
  }
  // parity of the derived superfield factor
  int parity() const { return (1 + __builtin_popcount(mask)) & 1; }
  std::string str() const;
};

// sign of evaluating the canonical ascending derivative composition on the
// canonical ascending theta monomial
int theta_derivative_sign(uint32_t mask);

// ordered composition of theta derivatives -> canonical label and sign
std::pair<DLabel, int> make_label(const std::vector<int>& theta_order, uint32_t zp = 0,
                                  uint32_t zm = 0);

using TraceFactor = std::vector<DLabel>;  // cyclic word of factors inside one trace

struct TraceTerm {
  Rat coeff;
  std::vector<TraceFactor> factors;
  int word_length() const;
  MultiDegree mdeg() const;
};

struct TraceWord {
  std::vector<TraceTerm> terms;

  // (word length, multidegree) when homogeneous
  std::optional<std::pair<int, MultiDegree>> sector() const;
  std::string str() const;
};

// text format: `coeff * Tr(t1 t2t3) * Tr(zp t2)` terms joined by +/-
TraceWord parse_trace_word(const std::string& text);

// expansion through the defining representation; exact coefficients
Cochain expand(const TraceWord& word, const LieAlgebraData& g);

// evaluation on Cartan-valued coordinates; requires first-derivative labels
CartanPoly restrict_trace_word(const TraceWord& word, const LieAlgebraData& g);

// ---- symmetrized-trace representatives --------------------------------------

struct GravitonSpec {
  int pp = 0, pm = 0;          // external z derivatives
  int e1 = 0, e2 = 0, e3 = 0;  // external theta derivatives, 0/1
  int kp = 0, km = 0;          // inserted z-derivative factors, 0/1
  int m1 = 0, m2 = 0, m3 = 0;  // inserted theta-derivative factors

  int length() const { return kp + km + m1 + m2 + m3; }
  MultiDegree mdeg() const { return mdeg_of(*this); }
  static MultiDegree mdeg_of(const GravitonSpec& s) {
    return supercurrent::mdeg(s.pp + s.kp, s.pm + s.km, s.e1 + s.m1, s.e2 + s.m2, s.e3 + s.m3);
  }
  auto operator<=>(const GravitonSpec&) const = default;
  std::string str() const;
};

// exact expansion; zero for the empty insertion list
Cochain graviton(const GravitonSpec& spec, const LieAlgebraData& g);

// all specs with multidegree <= n (componentwise) and 1 <= length <= p
std::vector<GravitonSpec> graviton_specs_within(const MultiDegree& n, int p);

// products of single-graviton cochains of total length p and multidegree n;
// zero products dropped; deterministic order
std::vector<Cochain> multi_graviton_products(const LieAlgebraData& g, int p,
                                             const MultiDegree& n);

// ---- verification ------------------------------------------------------------

struct ClassVerifyOptions {
  bool check_exactness = true;   // the expensive span membership tests
  bool certify = true;           // rational certification of the verdicts
};

struct ClassReport {
  std::string name;
  LieAlgebraSpec spec;
  int p = 0;
  MultiDegree n;
  int level = 0;
  bool homogeneous = false;
  bool zero = false;
  bool invariant = false;
  bool closed = false;
  std::optional<bool> exact;
  std::optional<bool> fortuitous;
  std::optional<bool> cartan_restriction_zero;  // only at top degree
  // diagnostic when closedness fails: dimension of closed combinations
  // supported on the same trace-term expansions
  std::optional<int64_t> closed_combination_dim;
};

class Classes {
 public:
  Classes(Engine& engine, LieAlgebraPtr g);

  const LieAlgebraData& algebra() const { return *g_; }

  int64_t graviton_span_in_H(int p, const MultiDegree& n);
  int64_t fortuitous_dim(int p, const MultiDegree& n);

  ClassReport verify_class(const TraceWord& word, const ClassVerifyOptions& opts = {});
  ClassReport verify_cochain(const Cochain& v, const ClassVerifyOptions& opts = {});

 private:
  Engine& eng_;
  LieAlgebraPtr g_;
  std::shared_ptr<ComplexOps> ops_;

  struct SpanDims {
    int64_t rank_d = 0;        // rank of d on invariants from p-1
    int64_t rank_d_and_g = 0;  // rank of [d image | graviton products]
  };
  SpanDims span_dims(int p, const MultiDegree& n, uint64_t prime,
                     const std::vector<Cochain>& products);
};

// builtin names: XiF_sl2, XiF_so7, XiNC_so7
TraceWord builtin_representative(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace supercurrent

#endif
