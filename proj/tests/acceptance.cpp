// Acceptance suite runner: one line per criterion, nonzero exit on failure.
// Extended (multi-hour) criteria run only with SUPERCURRENT_EXTENDED=1.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "repro_suite.hpp"

int main(int argc, char** argv) {
  using namespace supercurrent::repro;
  ReproOptions opts;
  const char* ext = std::getenv("SUPERCURRENT_EXTENDED");
  opts.extended = ext && std::strcmp(ext, "0") != 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0) opts.extended = true;
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) opts.seed = std::atoll(argv[++i]);
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
      opts.threads = std::atoi(argv[++i]);
    if (std::strcmp(argv[i], "--level-budget") == 0 && i + 1 < argc)
      opts.sl2_level_budget = std::atoi(argv[++i]);
  }
  const char* budget = std::getenv("SUPERCURRENT_LEVEL_BUDGET");
  if (budget) opts.sl2_level_budget = std::atoi(budget);

  std::printf("acceptance suite (seed=%llu, extended=%s)\n",
              (unsigned long long)opts.seed, opts.extended ? "yes" : "no");
  auto results = run_acceptance(opts, [](const CriterionResult& r) {
    std::printf("[%s] %-4s %s  (%.1fs)\n        %s\n", status_str(r.status).c_str(),
                r.id.c_str(), r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
  });
  int failures = 0, skips = 0;
  for (auto& r : results) {
    failures += r.status == Status::FAIL;
    skips += r.status == Status::SKIP;
  }
  std::printf("summary: %zu criteria, %d failed, %d skipped\n", results.size(), failures, skips);
  return exit_code(results);
}
