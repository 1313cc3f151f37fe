#include "supercurrent/superring.hpp"

#include <cassert>
#include <stdexcept>

namespace supercurrent {

int normalize_rmono(RMono& m) {
  int sign = 1;
  for (size_t i = 1; i < m.size(); ++i) {
    RVar v = m[i];
    int pv = rv_parity(v);
    size_t j = i;
    while (j > 0 && m[j - 1] > v) {
      m[j] = m[j - 1];
      if (pv && rv_parity(m[j - 1])) sign = -sign;
      --j;
    }
    m[j] = v;
  }
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && rv_parity(m[i])) return 0;
  return sign;
}

MultiDegree rmono_xi_mdeg(const RMono& m) {
  MultiDegree d;
  for (RVar v : m)
    if (rv_is_xi(v)) d = d + gen_mdeg(rv_genkey(v));
  return d;
}

MultiDegree rmono_a_mdeg(const RMono& m) {
  MultiDegree d;
  for (RVar v : m)
    if (rv_is_avar(v)) d[rv_avar_index(v)] += 1;
  return d;
}

bool RBounds::admits(const RMono& m) const {
  if (max_xi_len >= 0) {
    int len = 0;
    for (RVar v : m)
      if (rv_is_xi(v)) ++len;
    if (len > max_xi_len) return false;
  }
  if (xi && !rmono_xi_mdeg(m).leq(*xi)) return false;
  if (a && !rmono_a_mdeg(m).leq(*a)) return false;
  return true;
}

template <class Coef>
void RPoly<Coef>::add_term(RMono m, Coef c) {
  if (c == 0) return;
  int s = normalize_rmono(m);
  if (s == 0) return;
  if (s < 0) c = -c;
  auto it = t.find(m);
  if (it == t.end())
    t.emplace(std::move(m), std::move(c));
  else {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

template <class Coef>
RPoly<Coef> RPoly<Coef>::operator+(const RPoly& o) const {
  RPoly r = *this;
  for (auto& [m, c] : o.t) {
    auto& v = r.t[m];
    v += c;
    if (v == 0) r.t.erase(m);
  }
  return r;
}

template <class Coef>
RPoly<Coef> RPoly<Coef>::scaled(const Coef& c) const {
  RPoly r;
  if (c == 0) return r;
  for (auto& [m, v] : t) r.t[m] = v * c;
  return r;
}

template <class Coef>
RPoly<Coef> rmul(const RPoly<Coef>& a, const RPoly<Coef>& b, const RBounds& bounds) {
  RPoly<Coef> r;
  for (auto& [ma, ca] : a.t)
    for (auto& [mb, cb] : b.t) {
      RMono m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      int s = normalize_rmono(m);
      if (s == 0) continue;
      if (!bounds.admits(m)) continue;
      Coef v = ca * cb;
      if (s < 0) v = -v;
      auto it = r.t.find(m);
      if (it == r.t.end())
        r.t.emplace(std::move(m), std::move(v));
      else {
        it->second += v;
        if (it->second == 0) r.t.erase(it);
      }
    }
  return r;
}

template <class Coef>
RPoly<Coef> davar(const RPoly<Coef>& p, int i) {
  RVar target = rv_avar(i);
  bool odd = rv_parity(target) != 0;
  RPoly<Coef> r;
  for (auto& [m, c] : p.t) {
    // left derivative: walk to each occurrence, sign by odd vars crossed
    int sign = 1;
    for (size_t j = 0; j < m.size(); ++j) {
      if (m[j] == target) {
        RMono w;
        w.reserve(m.size() - 1);
        w.insert(w.end(), m.begin(), m.begin() + j);
        w.insert(w.end(), m.begin() + j + 1, m.end());
        Coef v = c;
        if (odd && sign < 0) v = -v;
        r.add_term(std::move(w), v);
        if (odd) break;  // odd variables occur at most once
      }
      if (rv_parity(m[j]) && odd) sign = -sign;
    }
  }
  return r;
}

template <class Coef>
RPoly<Coef> eval_at_origin(const RPoly<Coef>& p) {
  RPoly<Coef> r;
  for (auto& [m, c] : p.t) {
    bool hasA = false;
    for (RVar v : m) hasA |= rv_is_avar(v);
    if (!hasA) r.t.emplace(m, c);
  }
  return r;
}

template <class Coef>
RMatrix<Coef> rmat_mul(const RMatrix<Coef>& a, const RMatrix<Coef>& b, const RBounds& bounds) {
  RMatrix<Coef> c(a.N);
  for (int i = 0; i < a.N; ++i)
    for (int k = 0; k < a.N; ++k) {
      if (a.at(i, k).zero()) continue;
      for (int j = 0; j < a.N; ++j) {
        if (b.at(k, j).zero()) continue;
        c.at(i, j) = c.at(i, j) + rmul(a.at(i, k), b.at(k, j), bounds);
      }
    }
  return c;
}

template <class Coef>
RPoly<Coef> rmat_trace(const RMatrix<Coef>& m) {
  RPoly<Coef> r;
  for (int i = 0; i < m.N; ++i) r = r + m.at(i, i);
  return r;
}

template <class Coef>
RPoly<Coef> rmat_trace_mul(const RMatrix<Coef>& a, const RMatrix<Coef>& b,
                           const RBounds& bounds) {
  RPoly<Coef> r;
  for (int i = 0; i < a.N; ++i)
    for (int k = 0; k < a.N; ++k) {
      if (a.at(i, k).zero() || b.at(k, i).zero()) continue;
      r = r + rmul(a.at(i, k), b.at(k, i), bounds);
    }
  return r;
}

Cochain rpoly_to_cochain(const RPoly<Rat>& p) {
  Cochain c;
  for (auto& [m, v] : p.t) {
    SuperMono w;
    w.reserve(m.size());
    for (RVar x : m) {
      if (!rv_is_xi(x)) throw std::runtime_error("rpoly_to_cochain: non-xi variable");
      w.push_back(rv_genkey(x));
    }
    // both normal forms are ascending with matching parities: sign +1
    c.terms[w] = v;
  }
  return c;
}

CartanPoly rpoly_to_cartan(const RPoly<Rat>& p) {
  CartanPoly out;
  for (auto& [m, v] : p.t) {
    CartanMono w;
    w.reserve(m.size());
    for (RVar x : m) {
      if (!rv_is_cartan(x)) throw std::runtime_error("rpoly_to_cartan: non-cartan variable");
      w.push_back(rv_cartan_var(x));
    }
    out[w] = v;
  }
  return out;
}

RMatrix<Rat> tautological_psi(const LieAlgebraData& g, const MultiDegree& bound) {
  RMatrix<Rat> psi(g.N);
  for (auto& m : enumerate_monomials(bound)) {
    RMono avars;
    for (uint32_t r = 0; r < m.zp; ++r) avars.push_back(rv_avar(0));
    for (uint32_t r = 0; r < m.zm; ++r) avars.push_back(rv_avar(1));
    for (int i = 0; i < 3; ++i)
      if ((m.mask >> i) & 1) avars.push_back(rv_avar(2 + i));
    for (int a = 0; a < g.dim; ++a) {
      RMono mono;
      mono.push_back(rv_xi(gen_key(a, m)));
      mono.insert(mono.end(), avars.begin(), avars.end());
      for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
          int64_t v = g.basis[a][i * g.N + j];
          if (v) psi.at(i, j).add_term(mono, Rat(v));
        }
    }
  }
  return psi;
}

std::map<GenKey, Cochain> q_on_generators(const LieAlgebraData& g, const MultiDegree& bound) {
  RMatrix<Rat> psi = tautological_psi(g, bound);
  RBounds bounds;
  bounds.xi = &bound;
  RMatrix<Rat> psi2 = rmat_mul(psi, psi, bounds);

  // extract components along rho(T_c) tensor monomials via trace duals
  std::map<GenKey, Cochain> out;
  RMatrix<Rat> recon(g.N);
  for (int c = 0; c < g.dim; ++c) {
    // dual(T_c) = sum_b trace_dual[c][b] T_b
    RPoly<Rat> pc;
    for (int i = 0; i < g.N; ++i)
      for (int k = 0; k < g.N; ++k) {
        Rat dv(0);
        for (int b = 0; b < g.dim; ++b)
          if (g.trace_dual[c][b] != 0) dv += g.trace_dual[c][b] * Rat(g.basis[b][i * g.N + k]);
        if (dv == 0) continue;
        // Tr(dual * psi2) = sum_{i,k} dual_{ik} psi2_{ki}
        pc = pc + psi2.at(k, i).scaled(dv);
      }
    // group by A-monomial
    std::map<AMonomial, RPoly<Rat>, decltype([](const AMonomial& x, const AMonomial& y) {
               return mono_code(x) < mono_code(y);
             })>
        by_mono;
    for (auto& [m, v] : pc.t) {
      AMonomial am{0, 0, 0};
      RMono xs;
      for (RVar x : m) {
        if (rv_is_avar(x)) {
          int i = rv_avar_index(x);
          if (i == 0) am.zp++;
          else if (i == 1) am.zm++;
          else am.mask |= 1u << (i - 2);
        } else {
          xs.push_back(x);
        }
      }
      by_mono[am].t[xs] = v;  // xi's precede A vars in the sorted order
    }
    for (auto& [am, poly] : by_mono) {
      if (am.is_unit()) continue;
      GenKey gamma = gen_key(c, am);
      Cochain qc = rpoly_to_cochain(poly);
      if (!qc.zero()) out[gamma] = qc;
      // rebuild rho(T_c) * m * QPsi^gamma for the completeness assertion
      RMono avars;
      for (uint32_t r = 0; r < am.zp; ++r) avars.push_back(rv_avar(0));
      for (uint32_t r = 0; r < am.zm; ++r) avars.push_back(rv_avar(1));
      for (int i = 0; i < 3; ++i)
        if ((am.mask >> i) & 1) avars.push_back(rv_avar(2 + i));
      RPoly<Rat> afact;
      afact.add_term(avars, Rat(1));
      RPoly<Rat> full = rmul(poly, afact);
      for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
          int64_t v = g.basis[c][i * g.N + j];
          if (v) recon.at(i, j) = recon.at(i, j) + full.scaled(Rat(v));
        }
    }
  }
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j)
      if (!(recon.at(i, j) == psi2.at(i, j)))
        throw std::runtime_error("Psi^2 does not lie in the image of the representation");
  return out;
}

Cochain q_apply(const std::map<GenKey, Cochain>& qgen, const Cochain& c) {
  Cochain out;
  for (auto& [m, coef] : c.terms) {
    int prefix = 1;
    for (size_t i = 0; i < m.size(); ++i) {
      auto it = qgen.find(m[i]);
      if (it != qgen.end()) {
        for (auto& [pair, qc] : it->second.terms) {
          SuperMono w;
          w.reserve(m.size() + 1);
          w.insert(w.end(), m.begin(), m.begin() + i);
          w.insert(w.end(), pair.begin(), pair.end());
          w.insert(w.end(), m.begin() + i + 1, m.end());
          out.add(std::move(w), coef * qc * prefix);
        }
      }
      if (gen_parity(m[i])) prefix = -prefix;
    }
  }
  return out;
}

template struct RPoly<Rat>;
template struct RPoly<int64_t>;
template RPoly<Rat> rmul(const RPoly<Rat>&, const RPoly<Rat>&, const RBounds&);
template RPoly<int64_t> rmul(const RPoly<int64_t>&, const RPoly<int64_t>&, const RBounds&);
template RPoly<Rat> davar(const RPoly<Rat>&, int);
template RPoly<int64_t> davar(const RPoly<int64_t>&, int);
template RPoly<Rat> eval_at_origin(const RPoly<Rat>&);
template RPoly<int64_t> eval_at_origin(const RPoly<int64_t>&);
template RMatrix<Rat> rmat_mul(const RMatrix<Rat>&, const RMatrix<Rat>&, const RBounds&);
template RMatrix<int64_t> rmat_mul(const RMatrix<int64_t>&, const RMatrix<int64_t>&,
                                   const RBounds&);
template RPoly<Rat> rmat_trace(const RMatrix<Rat>&);
template RPoly<int64_t> rmat_trace(const RMatrix<int64_t>&);
template RPoly<Rat> rmat_trace_mul(const RMatrix<Rat>&, const RMatrix<Rat>&, const RBounds&);
template RPoly<int64_t> rmat_trace_mul(const RMatrix<int64_t>&, const RMatrix<int64_t>&,
                                       const RBounds&);

}  // namespace supercurrent
