// Command-line front end: batch queries against the sector engine, the
// scheme pipeline, and the class verifier, with JSON/CSV/pretty output.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "../tests/repro_suite.hpp"
#include "supercurrent/classes.hpp"
#include "supercurrent/engine.hpp"
#include "supercurrent/jsonio.hpp"
#include "supercurrent/schemes.hpp"

using namespace supercurrent;

namespace {

struct Common {
  int nprimes = 2;
  uint64_t seed = 1;
  int threads = 0;
  std::string cache_dir;
  std::string format = "json";
  bool certify = false;
  bool no_cache = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--primes", c.nprimes, "number of independent primes (default 2)");
  cmd->add_option("--seed", c.seed, "seed for prime selection");
  cmd->add_option("--threads", c.threads, "worker threads (0 = hardware)");
  cmd->add_option("--cache-dir", c.cache_dir,
                  "sector cache directory (default $SUPERCURRENT_CACHE_DIR)");
  cmd->add_option("--format", c.format, "output format: json|csv|pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd->add_flag("--certify", c.certify, "rationally certify span-membership verdicts");
  cmd->add_flag("--no-cache", c.no_cache, "disable the sector cache");
}

EngineOptions engine_options(const Common& c) {
  EngineOptions eo;
  eo.nprimes = c.nprimes;
  eo.seed = c.seed;
  eo.threads = c.threads;
  eo.cache_dir = c.cache_dir;
  if (eo.cache_dir.empty()) {
    const char* env = std::getenv("SUPERCURRENT_CACHE_DIR");
    if (env) eo.cache_dir = env;
  }
  if (c.no_cache) eo.cache_dir.clear();
  return eo;
}

MultiDegree parse_mdeg(const std::string& s) {
  MultiDegree n;
  std::stringstream ss(s);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= 5) throw std::invalid_argument("multidegree needs exactly 5 entries");
    size_t pos = 0;
    try {
      n[i] = std::stoi(tok, &pos);
    } catch (...) {
      pos = 0;
    }
    if (pos != tok.size() || n[i] < 0)
      throw std::invalid_argument("bad multidegree entry: '" + tok + "'");
    ++i;
  }
  if (i != 5) throw std::invalid_argument("multidegree needs exactly 5 entries");
  return n;
}

ordered_json class_report_json(const ClassReport& r, const std::string& name) {
  ordered_json j;
  j["name"] = name;
  j["algebra"] = r.spec.name();
  j["p"] = r.p;
  j["n"] = multidegree_to_json(r.n);
  j["level"] = r.level;
  j["homogeneous"] = r.homogeneous;
  j["zero"] = r.zero;
  j["invariant"] = r.invariant;
  j["closed"] = r.closed;
  j["exact"] = r.exact ? ordered_json(*r.exact) : ordered_json(nullptr);
  j["fortuitous"] = r.fortuitous ? ordered_json(*r.fortuitous) : ordered_json(nullptr);
  j["cartan_restriction_zero"] =
      r.cartan_restriction_zero ? ordered_json(*r.cartan_restriction_zero) : ordered_json(nullptr);
  if (r.closed_combination_dim) j["closed_combination_dim"] = *r.closed_combination_dim;
  return j;
}

ordered_json scheme_report_json(const SchemeSectorReport& r) {
  ordered_json j;
  j["algebra"] = r.spec.name();
  j["n"] = multidegree_to_json(r.n);
  j["dim_ambient"] = r.dim_ambient;
  j["dim_scheme_invariants"] = r.dim_scheme_invariants;
  j["dim_cartan_invariants"] = r.dim_cartan_invariants;
  j["rank_restriction"] = r.rank_restriction;
  j["dim_kernel"] = r.dim_kernel;
  return j;
}

void emit_sector(const SectorReport& rep, const std::string& format) {
  if (format == "csv") {
    std::cout << sector_report_csv_header() << "\n" << sector_report_to_csv_row(rep) << "\n";
  } else if (format == "pretty") {
    std::cout << rep.spec.name() << " p=" << rep.p << " n=" << rep.n.str()
              << " level=" << rep.level << ": dim_H = " << rep.dim_H
              << " (cochain " << rep.dim_cochain << ", invariant " << rep.dim_invariant
              << ", rank_out " << rep.rank_d_out << ", rank_in " << rep.rank_d_in << ")\n";
  } else {
    std::cout << sector_report_to_json(rep).dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact sector-by-sector relative cohomology of current superalgebras on "
               "C[z+,z-] (x) Lambda(t1,t2,t3)"};
  app.require_subcommand(1);

  // sector
  Common c_sector;
  std::string a_sector;
  int p_sector = 0;
  std::string n_sector;
  auto* cmd_sector = app.add_subcommand("sector", "dimension of one (p, n) sector");
  cmd_sector->add_option("--g", a_sector, "algebra, e.g. sl2/so7/sp6/gl3")->required();
  cmd_sector->add_option("--p", p_sector, "cohomological degree")->required();
  cmd_sector->add_option("--n", n_sector, "multidegree a,b,c,d,e")->required();
  add_common(cmd_sector, c_sector);

  // table
  Common c_table;
  std::string a_table;
  int level_table_arg = 0;
  auto* cmd_table = app.add_subcommand("table", "all sectors of one level");
  cmd_table->add_option("--g", a_table)->required();
  cmd_table->add_option("--level", level_table_arg)->required();
  add_common(cmd_table, c_table);

  // compare
  Common c_cmp;
  std::string a_cmp, b_cmp;
  int lmax_cmp = 0;
  auto* cmd_cmp = app.add_subcommand("compare", "sector-by-sector dimension comparison");
  cmd_cmp->add_option("--a", a_cmp)->required();
  cmd_cmp->add_option("--b", b_cmp)->required();
  cmd_cmp->add_option("--lmax", lmax_cmp)->required();
  add_common(cmd_cmp, c_cmp);

  // restriction
  Common c_res;
  std::string a_res, n_res;
  auto* cmd_res = app.add_subcommand(
      "restriction", "super-commuting invariants, Cartan invariants, restriction map");
  cmd_res->add_option("--g", a_res)->required();
  cmd_res->add_option("--n", n_res)->required();
  add_common(cmd_res, c_res);

  // verify
  Common c_ver;
  std::string a_ver, target_ver;
  auto* cmd_ver = app.add_subcommand("verify", "verify a builtin name or a trace-word file");
  cmd_ver->add_option("input", target_ver, "builtin name (XiF_sl2, XiF_so7, XiNC_so7) or file")
      ->required();
  cmd_ver->add_option("--g", a_ver)->required();
  add_common(cmd_ver, c_ver);

  // fortuitous
  Common c_fort;
  std::string a_fort, n_fort;
  int p_fort = 0;
  auto* cmd_fort = app.add_subcommand("fortuitous", "fortuitous dimension of a sector");
  cmd_fort->add_option("--g", a_fort)->required();
  cmd_fort->add_option("--p", p_fort)->required();
  cmd_fort->add_option("--n", n_fort)->required();
  add_common(cmd_fort, c_fort);

  // repro
  Common c_repro;
  bool extended = false;
  int level_budget = 16;
  auto* cmd_repro = app.add_subcommand("repro", "run the acceptance suite and print a summary");
  cmd_repro->add_flag("--extended", extended, "include the multi-hour extended criteria");
  cmd_repro->add_option("--level-budget", level_budget, "sl2 saturation sweep level budget");
  add_common(cmd_repro, c_repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cmd_sector) {
      Engine eng(engine_options(c_sector));
      auto rep = eng.dim_H(parse_algebra(a_sector), p_sector, parse_mdeg(n_sector));
      emit_sector(rep, c_sector.format);
    } else if (*cmd_table) {
      Engine eng(engine_options(c_table));
      auto table = eng.level_table(parse_algebra(a_table), level_table_arg);
      if (c_table.format == "csv") {
        std::cout << sector_report_csv_header() << "\n";
        for (auto& s : table.sectors) std::cout << sector_report_to_csv_row(s) << "\n";
      } else if (c_table.format == "pretty") {
        for (auto& s : table.sectors)
          if (s.dim_H) emit_sector(s, "pretty");
      } else {
        std::cout << level_table_to_json(table).dump(2) << "\n";
      }
    } else if (*cmd_cmp) {
      Engine eng(engine_options(c_cmp));
      auto specA = parse_algebra(a_cmp), specB = parse_algebra(b_cmp);
      auto ms = eng.compare_langlands(specA, specB, lmax_cmp);
      std::cout << mismatches_to_json(specA, specB, lmax_cmp, ms).dump(2) << "\n";
    } else if (*cmd_res) {
      Schemes sch(build_algebra(a_res),
                  SchemeOptions{c_res.nprimes, engine_options(c_res).seed, 3});
      auto rep = sch.report(parse_mdeg(n_res));
      std::cout << scheme_report_json(rep).dump(2) << "\n";
    } else if (*cmd_ver) {
      Engine eng(engine_options(c_ver));
      auto g = build_algebra(a_ver);
      TraceWord word;
      std::string name = target_ver;
      auto builtins = builtin_names();
      if (std::find(builtins.begin(), builtins.end(), target_ver) != builtins.end()) {
        word = builtin_representative(target_ver);
      } else {
        std::ifstream in(target_ver);
        if (!in) throw std::invalid_argument("no such builtin or file: " + target_ver);
        std::stringstream ss;
        ss << in.rdbuf();
        word = parse_trace_word(ss.str());
        name = target_ver;
      }
      Classes cls(eng, g);
      ClassVerifyOptions vo;
      vo.certify = c_ver.certify;
      auto rep = cls.verify_class(word, vo);
      std::cout << class_report_json(rep, name).dump(2) << "\n";
    } else if (*cmd_fort) {
      Engine eng(engine_options(c_fort));
      auto g = build_algebra(a_fort);
      Classes cls(eng, g);
      int p = p_fort;
      MultiDegree n = parse_mdeg(n_fort);
      auto rep = eng.dim_H(g->spec, p, n);
      int64_t span = cls.graviton_span_in_H(p, n);
      int64_t fort = cls.fortuitous_dim(p, n);
      ordered_json j;
      j["algebra"] = g->spec.name();
      j["p"] = p;
      j["n"] = multidegree_to_json(n);
      j["dim_H"] = rep.dim_H;
      j["graviton_span"] = span;
      j["fortuitous_dim"] = fort;
      std::cout << j.dump(2) << "\n";
    } else if (*cmd_repro) {
      repro::ReproOptions ro;
      ro.extended = extended;
      const char* env = std::getenv("SUPERCURRENT_EXTENDED");
      if (env && std::string(env) != "0") ro.extended = true;
      ro.seed = c_repro.seed;
      ro.threads = c_repro.threads;
      ro.cache_dir = engine_options(c_repro).cache_dir;
      ro.sl2_level_budget = level_budget;
      auto results = repro::run_acceptance(ro, [](const repro::CriterionResult& r) {
        std::printf("[%s] %-4s %s  (%.1fs)\n        %s\n", repro::status_str(r.status).c_str(),
                    r.id.c_str(), r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
      });
      return repro::exit_code(results);
    }
  } catch (const ArithmeticDisagreement& e) {
    std::cerr << "arithmetic disagreement: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
