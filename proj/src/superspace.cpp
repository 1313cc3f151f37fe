#include "supercurrent/superspace.hpp"

#include <cassert>
#include <sstream>

namespace supercurrent {

MultiDegree mdeg(int a, int b, int c, int d, int e) {
  MultiDegree m;
  m.n = {a, b, c, d, e};
  return m;
}

int level(const MultiDegree& n) {
  return 3 * (n[0] + n[1]) + 2 * (n[2] + n[3] + n[4]);
}

std::string MultiDegree::str() const {
  std::ostringstream os;
  os << "(" << n[0] << "," << n[1] << "," << n[2] << "," << n[3] << "," << n[4] << ")";
  return os.str();
}

std::string AMonomial::str() const {
  if (is_unit()) return "1";
  std::ostringstream os;
  bool first = true;
  auto app = [&](const std::string& s) {
    if (!first) os << " ";
    os << s;
    first = false;
  };
  if (zp == 1) app("zp");
  if (zp > 1) app("zp^" + std::to_string(zp));
  if (zm == 1) app("zm");
  if (zm > 1) app("zm^" + std::to_string(zm));
  for (int i = 0; i < 3; ++i)
    if ((mask >> i) & 1) app("t" + std::to_string(i + 1));
  return os.str();
}

std::optional<std::pair<int, AMonomial>> multiply(const AMonomial& a, const AMonomial& b) {
  if (a.mask & b.mask) return std::nullopt;
  // Koszul sign from interleaving the theta factors: count pairs
  // (i in a.mask, j in b.mask) with i > j.
  int swaps = 0;
  for (int i = 0; i < 3; ++i) {
    if (!((a.mask >> i) & 1)) continue;
    for (int j = 0; j < i; ++j)
      if ((b.mask >> j) & 1) ++swaps;
  }
  AMonomial r{a.zp + b.zp, a.zm + b.zm, a.mask | b.mask};
  assert(r.zp <= kMaxZExp && r.zm <= kMaxZExp);
  return std::make_pair((swaps & 1) ? -1 : 1, r);
}

std::vector<AMonomial> enumerate_monomials(const MultiDegree& bound) {
  std::vector<AMonomial> out;
  uint32_t mbound = 0;
  for (int i = 0; i < 3; ++i)
    if (bound[2 + i] > 0) mbound |= 1u << i;
  for (uint32_t zp = 0; (int)zp <= bound[0]; ++zp)
    for (uint32_t zm = 0; (int)zm <= bound[1]; ++zm)
      for (uint32_t mask = 0; mask < 8; ++mask) {
        if (mask & ~mbound) continue;
        AMonomial m{zp, zm, mask};
        if (!m.is_unit()) out.push_back(m);
      }
  // code order = (zp, zm, mask) lex order; the loops above emit mask-major
  // inside zm, so sort to pin the contract.
  std::sort(out.begin(), out.end(),
            [](const AMonomial& a, const AMonomial& b) { return mono_code(a) < mono_code(b); });
  return out;
}

ChargeVector charges(int p, const MultiDegree& n) {
  Rat half(1, 2);
  Rat nth = n[2] + n[3] + n[4];
  Rat pp = p;
  ChargeVector c;
  c.J1 = Rat(n[1]) + (nth - pp) * half;
  c.J2 = Rat(n[0]) + (nth - pp) * half;
  c.q1 = (pp + Rat(n[2]) - Rat(n[3]) - Rat(n[4])) * half;
  c.q2 = (pp - Rat(n[2]) + Rat(n[3]) - Rat(n[4])) * half;
  c.q3 = (pp - Rat(n[2]) - Rat(n[3]) + Rat(n[4])) * half;
  return c;
}

ChargeVector q_charge() {
  return {Rat(-1, 2), Rat(-1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)};
}

std::string ChargeVector::str() const {
  std::ostringstream os;
  os << "(" << rat_str(J1) << "," << rat_str(J2) << "," << rat_str(q1) << "," << rat_str(q2)
     << "," << rat_str(q3) << ")";
  return os.str();
}

}  // namespace supercurrent
