#include "supercurrent/cochain.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace supercurrent {

int normalize_super_mono(SuperMono& m) {
  int sign = 1;
  for (size_t i = 1; i < m.size(); ++i) {
    GenKey v = m[i];
    int pv = gen_parity(v);
    size_t j = i;
    while (j > 0 && m[j - 1] > v) {
      m[j] = m[j - 1];
      if (pv && gen_parity(m[j - 1])) sign = -sign;
      --j;
    }
    m[j] = v;
  }
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && gen_parity(m[i])) return 0;
  return sign;
}

MultiDegree super_mono_mdeg(const SuperMono& m) {
  MultiDegree d;
  for (GenKey k : m) d = d + gen_mdeg(k);
  return d;
}

int super_mono_parity(const SuperMono& m) {
  int p = 0;
  for (GenKey k : m) p ^= gen_parity(k);
  return p;
}

std::vector<int> gen_weight(const LieAlgebraData& g, GenKey k) {
  // coadjoint: weight of the coordinate is minus the weight of the basis
  // vector, so that raising operators raise it.
  std::vector<int> w = g.weights[gen_g(k)];
  for (int& x : w) x = -x;
  return w;
}

std::vector<int> super_mono_weight(const LieAlgebraData& g, const SuperMono& m) {
  std::vector<int> w(g.rank, 0);
  for (GenKey k : m) {
    const auto& gw = g.weights[gen_g(k)];
    for (int i = 0; i < g.rank; ++i) w[i] -= gw[i];
  }
  return w;
}

uint64_t pack_weight(const std::vector<int>& w) {
  if (w.size() > 8) throw std::runtime_error("weight rank > 8 unsupported");
  uint64_t p = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    int v = w[i] + 128;
    if (v < 0 || v > 255) throw std::runtime_error("weight entry out of packing range");
    p |= (uint64_t)(uint8_t)v << (8 * i);
  }
  return p;
}

uint64_t pack_weight_zero(const LieAlgebraData& g) {
  return pack_weight(std::vector<int>(g.rank, 0));
}

uint64_t pack_weight_root(const LieAlgebraData& g, int simple_index) {
  // action-weight gained by applying a simple raising operator: the weight
  // of xi^{(lowering basis vector, m)} minus that of xi^{(raising,m)}... the
  // raising operator e_i has adjoint weight alpha_i; on coordinates the
  // action adds +alpha_i in the action-weight convention.
  int e = g.simple_raising[simple_index];
  std::vector<int> w = g.weights[e];
  return pack_weight(w);
}

uint64_t add_packed_weights(uint64_t a, uint64_t b, uint64_t zero) {
  // bytewise signed addition with offset 128 per byte; assumes no overflow
  return a + b - zero;
}

// ---- Cochain ---------------------------------------------------------------

void Cochain::add(SuperMono m, Rat c) {
  if (c == 0) return;
  int s = normalize_super_mono(m);
  if (s == 0) return;
  if (s < 0) c = -c;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(std::move(m), std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

std::optional<std::pair<int, MultiDegree>> Cochain::sector() const {
  if (terms.empty()) return std::nullopt;
  int p = (int)terms.begin()->first.size();
  MultiDegree n = super_mono_mdeg(terms.begin()->first);
  for (auto& [m, c] : terms) {
    if ((int)m.size() != p || !(super_mono_mdeg(m) == n)) return std::nullopt;
  }
  return std::make_pair(p, n);
}

Cochain Cochain::operator+(const Cochain& o) const {
  Cochain r = *this;
  for (auto& [m, c] : o.terms) {
    auto& v = r.terms[m];
    v += c;
    if (v == 0) r.terms.erase(m);
  }
  return r;
}

Cochain Cochain::operator*(const Cochain& o) const {
  Cochain r;
  for (auto& [m1, c1] : terms)
    for (auto& [m2, c2] : o.terms) {
      SuperMono m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      r.add(std::move(m), c1 * c2);
    }
  return r;
}

Cochain Cochain::scaled(const Rat& c) const {
  Cochain r;
  if (c == 0) return r;
  for (auto& [m, v] : terms) r.terms[m] = v * c;
  return r;
}

std::string Cochain::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << "*[";
    for (size_t i = 0; i < m.size(); ++i) {
      if (i) os << " ";
      os << "(" << gen_g(m[i]) << "," << gen_mono(m[i]).str() << ")";
    }
    os << "]";
  }
  return os.str();
}

// ---- ComplexOps ------------------------------------------------------------

ComplexOps::ComplexOps(LieAlgebraPtr g) : g_(std::move(g)) {
  int dim = g_->dim;
  action_.assign(dim, std::vector<std::vector<std::pair<int, int64_t>>>(dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (auto& [c, coef] : g_->f[a * dim + b]) {
        // act(T_a) xi^{(c,m)} = - sum_b f_{ab}^c xi^{(b,m)}
        action_[a][c].push_back({b, -coef});
      }
}

const std::vector<std::tuple<GenKey, GenKey, int64_t>>& ComplexOps::dgen(GenKey gamma) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = dgen_.find(gamma);
    if (it != dgen_.end()) return it->second;
  }
  const AMonomial m3 = gen_mono(gamma);
  const int c = gen_g(gamma);
  std::map<std::pair<GenKey, GenKey>, int64_t> acc;
  // ordered splittings m3 = s * m1 m2, both parts nonunit
  for (uint32_t zp1 = 0; zp1 <= m3.zp; ++zp1)
    for (uint32_t zm1 = 0; zm1 <= m3.zm; ++zm1)
      for (uint32_t sub = m3.mask;; sub = (sub - 1) & m3.mask) {
        AMonomial m1{zp1, zm1, sub};
        AMonomial m2{m3.zp - zp1, m3.zm - zm1, m3.mask & ~sub};
        if (!m1.is_unit() && !m2.is_unit()) {
          auto prod = multiply(m1, m2);
          assert(prod && mono_code(prod->second) == mono_code(m3));
          int s = prod->first;
          // suspension sign (-1)^{|m1| (|m2|+1)}: the sign produced by moving
          // the A-monomial of the first factor past the suspended generator
          // of the second in the superfield square
          int susp = (m1.parity() && !m2.parity()) ? -1 : 1;
          for (auto& [a, b, fc] : g_->f_by_target[c]) {
            // contribution: -(1/2) susp f_{ab}^c s  xi^{(a,m1)} xi^{(b,m2)};
            // accumulated at twice its value to stay integral
            GenKey ka = gen_key(a, m1), kb = gen_key(b, m2);
            int64_t twice = -fc * s * susp;
            int sign = 1;
            if (ka > kb) {
              std::swap(ka, kb);
              if (gen_parity(ka) && gen_parity(kb)) sign = -sign;
            } else if (ka == kb && gen_parity(ka)) {
              continue;  // odd square
            }
            acc[{ka, kb}] += twice * sign;
          }
        }
        if (sub == 0) break;
      }
  std::vector<std::tuple<GenKey, GenKey, int64_t>> out;
  for (auto& [kk, twice] : acc) {
    if (twice == 0) continue;
    if (twice % 2 != 0) throw std::runtime_error("non-integral suspended constant");
    out.push_back({kk.first, kk.second, twice / 2});
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = dgen_.emplace(gamma, std::move(out));
  return it->second;
}

std::vector<std::pair<SuperMono, int64_t>> ComplexOps::d_mono(const SuperMono& m) const {
  std::map<SuperMono, int64_t> acc;
  int prefix = 1;
  for (size_t i = 0; i < m.size(); ++i) {
    for (auto& [ka, kb, coef] : dgen(m[i])) {
      SuperMono w;
      w.reserve(m.size() + 1);
      w.insert(w.end(), m.begin(), m.begin() + i);
      w.push_back(ka);
      w.push_back(kb);
      w.insert(w.end(), m.begin() + i + 1, m.end());
      int s = normalize_super_mono(w);
      if (s == 0) continue;
      int64_t v = coef * s * prefix;
      auto [it, ins] = acc.emplace(std::move(w), v);
      if (!ins) {
        it->second += v;
        if (it->second == 0) acc.erase(it);
      }
    }
    if (gen_parity(m[i])) prefix = -prefix;
  }
  return {acc.begin(), acc.end()};
}

Cochain ComplexOps::d(const Cochain& c) const {
  Cochain out;
  for (auto& [m, v] : c.terms)
    for (auto& [w, coef] : d_mono(m)) {
      auto& t = out.terms[w];
      t += v * Rat(coef);
      if (t == 0) out.terms.erase(w);
    }
  return out;
}

std::vector<std::pair<SuperMono, int64_t>> ComplexOps::act_mono(int a, const SuperMono& m) const {
  std::map<SuperMono, int64_t> acc;
  for (size_t i = 0; i < m.size(); ++i) {
    int c = gen_g(m[i]);
    AMonomial mono = gen_mono(m[i]);
    for (auto& [b, coef] : action_[a][c]) {
      SuperMono w = m;
      w[i] = gen_key(b, mono);
      int s = normalize_super_mono(w);
      if (s == 0) continue;
      int64_t v = coef * s;
      auto [it, ins] = acc.emplace(std::move(w), v);
      if (!ins) {
        it->second += v;
        if (it->second == 0) acc.erase(it);
      }
    }
  }
  return {acc.begin(), acc.end()};
}

Cochain ComplexOps::act(int a, const Cochain& c) const {
  Cochain out;
  for (auto& [m, v] : c.terms)
    for (auto& [w, coef] : act_mono(a, m)) {
      auto& t = out.terms[w];
      t += v * Rat(coef);
      if (t == 0) out.terms.erase(w);
    }
  return out;
}

std::shared_ptr<ComplexOps> complex_ops(LieAlgebraPtr g) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<ComplexOps>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair((int)g->spec.series, g->spec.size);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ops = std::make_shared<ComplexOps>(g);
  cache[key] = ops;
  return ops;
}

}  // namespace supercurrent
