#include "supercurrent/jsonio.hpp"

#include <sstream>

#include "supercurrent/engine.hpp"

namespace supercurrent {

ordered_json multidegree_to_json(const MultiDegree& n) {
  return ordered_json::array({n[0], n[1], n[2], n[3], n[4]});
}

MultiDegree multidegree_from_json(const json& j) {
  MultiDegree n;
  for (int i = 0; i < 5; ++i) n[i] = j.at(i).get<int>();
  return n;
}

ordered_json charge_to_json(const ChargeVector& c) {
  ordered_json j;
  j["J1"] = rat_str(c.J1);
  j["J2"] = rat_str(c.J2);
  j["q1"] = rat_str(c.q1);
  j["q2"] = rat_str(c.q2);
  j["q3"] = rat_str(c.q3);
  return j;
}

ordered_json sector_report_to_json(const SectorReport& r) {
  ordered_json j;
  j["algebra"] = r.spec.name();
  j["p"] = r.p;
  j["n"] = multidegree_to_json(r.n);
  j["level"] = r.level;
  j["charge"] = charge_to_json(r.charge);
  j["dim_cochain"] = r.dim_cochain;
  j["dim_invariant"] = r.dim_invariant;
  j["rank_d_out"] = r.rank_d_out;
  j["rank_d_in"] = r.rank_d_in;
  j["dim_H"] = r.dim_H;
  j["primes"] = r.primes;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

SectorReport sector_report_from_json(const json& j) {
  SectorReport r;
  r.spec = parse_algebra(j.at("algebra").get<std::string>());
  r.p = j.at("p").get<int>();
  r.n = multidegree_from_json(j.at("n"));
  r.level = j.at("level").get<int>();
  r.charge = charges(r.p, r.n);
  r.dim_cochain = j.at("dim_cochain").get<int64_t>();
  r.dim_invariant = j.at("dim_invariant").get<int64_t>();
  r.rank_d_out = j.at("rank_d_out").get<int64_t>();
  r.rank_d_in = j.at("rank_d_in").get<int64_t>();
  r.dim_H = j.at("dim_H").get<int64_t>();
  r.primes = j.at("primes").get<std::vector<uint64_t>>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

ordered_json level_table_to_json(const LevelTable& t) {
  ordered_json j;
  j["algebra"] = t.spec.name();
  j["level"] = t.level;
  j["sectors"] = ordered_json::array();
  for (auto& s : t.sectors) j["sectors"].push_back(sector_report_to_json(s));
  return j;
}

ordered_json mismatches_to_json(const LieAlgebraSpec& a, const LieAlgebraSpec& b, int lmax,
                                const std::vector<Mismatch>& ms) {
  ordered_json j;
  j["a"] = a.name();
  j["b"] = b.name();
  j["lmax"] = lmax;
  j["mismatches"] = ordered_json::array();
  for (auto& m : ms) {
    ordered_json e;
    e["level"] = m.level;
    e["p"] = m.p;
    e["n"] = multidegree_to_json(m.n);
    e["dim_a"] = m.dim_a;
    e["dim_b"] = m.dim_b;
    j["mismatches"].push_back(e);
  }
  return j;
}

ordered_json cochain_to_json(const Cochain& c) {
  ordered_json j;
  auto sec = c.sector();
  if (sec) {
    j["sector"] = ordered_json{{"p", sec->first}, {"n", multidegree_to_json(sec->second)}};
  } else {
    j["sector"] = c.zero() ? "zero" : "mixed";
  }
  j["terms"] = ordered_json::array();
  for (auto& [m, v] : c.terms) {
    ordered_json term;
    term["monomial"] = ordered_json::array();
    for (GenKey k : m)
      term["monomial"].push_back(ordered_json::array({gen_g(k), mono_code(gen_mono(k))}));
    term["coeff"] = rat_str(v);
    j["terms"].push_back(term);
  }
  return j;
}

Cochain cochain_from_json(const json& j) {
  Cochain c;
  for (auto& term : j.at("terms")) {
    SuperMono m;
    for (auto& pair : term.at("monomial"))
      m.push_back(gen_key(pair.at(0).get<int>(), mono_from_code(pair.at(1).get<uint32_t>())));
    c.add(std::move(m), rat_parse(term.at("coeff").get<std::string>()));
  }
  return c;
}

std::string sector_report_csv_header() {
  return "algebra,p,n_zp,n_zm,n_t1,n_t2,n_t3,level,dim_cochain,dim_invariant,rank_d_out,"
         "rank_d_in,dim_H";
}

std::string sector_report_to_csv_row(const SectorReport& r) {
  std::ostringstream os;
  os << r.spec.name() << "," << r.p;
  for (int i = 0; i < 5; ++i) os << "," << r.n[i];
  os << "," << r.level << "," << r.dim_cochain << "," << r.dim_invariant << "," << r.rank_d_out
     << "," << r.rank_d_in << "," << r.dim_H;
  return os.str();
}

}  // namespace supercurrent
