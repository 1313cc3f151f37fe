#include "supercurrent/engine.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "supercurrent/jsonio.hpp"
#include "supercurrent/parallel.hpp"

namespace supercurrent {

std::vector<MultiDegree> multidegrees_of_level(int L) {
  std::vector<MultiDegree> out;
  for (int s = 0; 3 * s <= L; ++s) {
    int rem = L - 3 * s;
    if (rem % 2) continue;
    int t = rem / 2;
    for (int a = 0; a <= s; ++a)
      for (int c = 0; c <= t; ++c)
        for (int d = 0; c + d <= t; ++d) out.push_back(mdeg(a, s - a, c, d, t - c - d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t prime_set_hash(const std::vector<uint64_t>& primes) {
  uint64_t h = 1469598103934665603ull;
  for (uint64_t p : primes) {
    h ^= p;
    h *= 1099511628211ull;
  }
  return h;
}

Engine::Engine(EngineOptions opts) : opts_(std::move(opts)) {}

Engine::InvariantsModP Engine::invariants_mod_p(const LieAlgebraSpec& spec, int p,
                                                const MultiDegree& n, uint64_t prime) {
  InvariantsModP out;
  auto g = build_algebra(spec);
  auto ops = complex_ops(g);
  out.block = enumerate_weight_block(*g, p, n, pack_weight_zero(*g));
  if (out.block.size() == 0) return out;

  // stacked simple-raising matrix
  SparseMatrix R;
  R.cols = (int64_t)out.block.size();
  int64_t row_base = 0;
  for (size_t si = 0; si < g->simple_raising.size(); ++si) {
    auto target = enumerate_weight_block(*g, p, n, pack_weight_root(*g, (int)si));
    int e = g->simple_raising[si];
    for (uint32_t col = 0; col < out.block.size(); ++col)
      for (auto& [w, coef] : ops->act_mono(e, out.block.monos[col])) {
        uint32_t r = target.find(w);
        if (r == UINT32_MAX) throw std::logic_error("raising image outside its weight block");
        R.add((uint32_t)(row_base + r), col, coef);
      }
    row_base += (int64_t)target.size();
  }
  R.rows = row_base;
  out.kernel = kernel_mod_p(R, prime);
  return out;
}

SparseMatrix Engine::d_matrix_wt0(const LieAlgebraSpec& spec, int p, const MultiDegree& n,
                                  const WeightBlock& source, const WeightBlock& target) {
  auto ops = complex_ops(build_algebra(spec));
  SparseMatrix D;
  D.rows = (int64_t)target.size();
  D.cols = (int64_t)source.size();
  for (uint32_t col = 0; col < source.size(); ++col)
    for (auto& [w, coef] : ops->d_mono(source.monos[col])) {
      uint32_t r = target.find(w);
      if (r == UINT32_MAX) throw std::logic_error("d image outside the target weight block");
      D.add(r, col, coef);
    }
  return D;
}

namespace {

// rank of d restricted to the span of mod-p kernel vectors
int64_t rank_on_invariants(const SparseMatrix& D,
                           const std::vector<std::vector<std::pair<uint32_t, uint64_t>>>& inv,
                           uint64_t prime) {
  if (inv.empty() || D.rows == 0) return 0;
  // image columns: D * v for each invariant v, over F_p
  // build row-major lists of D's columns first
  std::vector<std::vector<std::pair<uint32_t, uint64_t>>> cols((size_t)D.cols);
  for (auto& [r, c, v] : D.entries) cols[c].push_back({r, int_mod(v, prime)});
  SparseMatrix img;
  img.rows = D.rows;
  img.cols = (int64_t)inv.size();
  std::vector<uint64_t> dense((size_t)D.rows, 0);
  std::vector<uint32_t> touched;
  for (size_t j = 0; j < inv.size(); ++j) {
    for (auto& [cidx, coef] : inv[j])
      for (auto& [r, dv] : cols[cidx]) {
        if (dense[r] == 0 && dv != 0) touched.push_back(r);
        dense[r] = add_mod(dense[r], mul_mod(coef, dv, prime), prime);
      }
    for (uint32_t r : touched)
      if (dense[r]) img.add(r, (uint32_t)j, (int64_t)dense[r]);
    for (uint32_t r : touched) dense[r] = 0;
    touched.clear();
  }
  return rank_mod_p(img, prime);
}

}  // namespace

SectorReport Engine::compute_sector(const LieAlgebraSpec& spec, int p, const MultiDegree& n,
                                    const std::vector<uint64_t>& primes) {
  auto t0 = std::chrono::steady_clock::now();
  SectorReport rep;
  rep.spec = spec;
  rep.p = p;
  rep.n = n;
  rep.level = level(n);
  rep.charge = charges(p, n);
  auto g = build_algebra(spec);
  rep.dim_cochain = sector_dimension(*g, p, n);
  if (p < 0 || p > n.total() || rep.dim_cochain == 0) {
    // top-degree bound: no linear algebra needed
    rep.dim_H = 0;
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }
  rep.primes = primes;

  struct Dims {
    int64_t inv = 0, out = 0, in = 0;
    bool operator==(const Dims&) const = default;
  };
  std::vector<Dims> per_prime;
  std::optional<WeightBlock> blk_p, blk_p1;
  for (uint64_t prime : primes) {
    Dims d;
    auto inv = invariants_mod_p(spec, p, n, prime);
    d.inv = (int64_t)inv.kernel.size();
    if (d.inv > 0 && p + 1 <= n.total()) {
      if (!blk_p1) blk_p1 = enumerate_weight_block(*g, p + 1, n, pack_weight_zero(*g));
      if (blk_p1->size() > 0) {
        auto D = d_matrix_wt0(spec, p, n, inv.block, *blk_p1);
        d.out = rank_on_invariants(D, inv.kernel, prime);
      }
    }
    if (p > 0) {
      auto invm = invariants_mod_p(spec, p - 1, n, prime);
      if (!invm.kernel.empty()) {
        auto D = d_matrix_wt0(spec, p - 1, n, invm.block, inv.block);
        d.in = rank_on_invariants(D, invm.kernel, prime);
      }
    }
    per_prime.push_back(d);
  }
  bool agree = true;
  for (auto& d : per_prime) agree &= (d == per_prime[0]);
  if (!agree) throw ArithmeticDisagreement("sector dims disagree across primes");
  rep.dim_invariant = per_prime[0].inv;
  rep.rank_d_out = per_prime[0].out;
  rep.rank_d_in = per_prime[0].in;
  rep.dim_H = rep.dim_invariant - rep.rank_d_out - rep.rank_d_in;
  if (rep.dim_H < 0) throw std::logic_error("negative cohomology dimension");
  rep.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

SectorReport Engine::dim_H(const LieAlgebraSpec& spec, int p, const MultiDegree& n) {
  auto primes = select_primes(opts_.seed, opts_.nprimes);
  std::optional<SectorCache> cache;
  if (!opts_.cache_dir.empty() && opts_.use_cache) cache.emplace(opts_.cache_dir);
  std::string key = SectorCache::key_of(spec, p, n, primes);
  if (cache && !opts_.recompute) {
    auto hit = cache->lookup(key);
    if (hit) return *hit;
  }
  int attempts = opts_.max_retries;
  while (true) {
    try {
      auto rep = compute_sector(spec, p, n, primes);
      if (cache) cache->store(key, rep);
      return rep;
    } catch (const ArithmeticDisagreement&) {
      if (attempts-- <= 0) throw;
      primes = select_primes(prime_set_hash(primes) ^ opts_.seed, opts_.nprimes);
    }
  }
}

LevelTable Engine::level_table(const LieAlgebraSpec& spec, int L) {
  LevelTable table;
  table.spec = spec;
  table.level = L;
  auto g = build_algebra(spec);
  std::vector<std::pair<int, MultiDegree>> sectors;
  for (auto& n : multidegrees_of_level(L))
    for (int p = 0; p <= n.total(); ++p) sectors.push_back({p, n});
  // schedule cheap sectors first (weight-zero count as the proxy)
  std::vector<int64_t> cost(sectors.size());
  for (size_t i = 0; i < sectors.size(); ++i)
    cost[i] = weight_zero_count(*g, sectors[i].first, sectors[i].second);
  std::vector<size_t> order(sectors.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return cost[a] < cost[b]; });
  std::vector<SectorReport> reports(sectors.size());
  parallel_for(
      order.size(),
      [&](size_t oi) {
        auto [p, n] = sectors[order[oi]];
        reports[order[oi]] = dim_H(spec, p, n);
      },
      opts_.threads);
  table.sectors = std::move(reports);
  std::stable_sort(table.sectors.begin(), table.sectors.end(),
                   [](const SectorReport& a, const SectorReport& b) {
                     if (a.n != b.n) return a.n < b.n;
                     return a.p < b.p;
                   });
  return table;
}

std::vector<Mismatch> Engine::compare_langlands(const LieAlgebraSpec& a, const LieAlgebraSpec& b,
                                                int lmax) {
  std::vector<Mismatch> out;
  for (int L = 0; L <= lmax; ++L) {
    auto ta = level_table(a, L);
    auto tb = level_table(b, L);
    if (ta.sectors.size() != tb.sectors.size())
      throw std::logic_error("level tables have mismatched sector sets");
    for (size_t i = 0; i < ta.sectors.size(); ++i) {
      auto& ra = ta.sectors[i];
      auto& rb = tb.sectors[i];
      if (ra.p != rb.p || !(ra.n == rb.n)) throw std::logic_error("sector alignment broke");
      if (ra.dim_H != rb.dim_H)
        out.push_back({L, ra.p, ra.n, ra.dim_H, rb.dim_H});
    }
  }
  return out;
}

// ---- cache ------------------------------------------------------------------

SectorCache::SectorCache(std::string dir) {
  std::filesystem::create_directories(dir);
  path_ = dir + "/sectors.jsonl";
}

std::string SectorCache::key_of(const LieAlgebraSpec& spec, int p, const MultiDegree& n,
                                const std::vector<uint64_t>& primes) {
  std::ostringstream os;
  os << spec.name() << "|p=" << p << "|n=" << n.str() << "|conv=" << kConventionVersion
     << "|primes=" << std::hex << prime_set_hash(primes);
  return os.str();
}

std::optional<SectorReport> SectorCache::lookup(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::string line;
  std::optional<SectorReport> found;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key")) continue;
    if (j["key"].get<std::string>() == key) found = sector_report_from_json(j["report"]);
  }
  return found;
}

void SectorCache::store(const std::string& key, const SectorReport& r) {
  std::lock_guard<std::mutex> lock(mu_);
  // read existing lines, drop duplicates of this key, rewrite atomically
  std::vector<std::string> lines;
  {
    std::ifstream in(path_);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = json::parse(line, nullptr, false);
      if (!j.is_discarded() && j.contains("key") && j["key"].get<std::string>() == key) continue;
      lines.push_back(line);
    }
  }
  ordered_json entry;
  entry["key"] = key;
  entry["report"] = sector_report_to_json(r);
  lines.push_back(entry.dump());
  std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (auto& l : lines) out << l << "\n";
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace supercurrent
