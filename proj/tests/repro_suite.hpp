#ifndef SUPERCURRENT_REPRO_SUITE_HPP
#define SUPERCURRENT_REPRO_SUITE_HPP

// The acceptance criteria, one runner per criterion. Each runner returns
// PASS/FAIL plus a detail line; expensive extended runs are skipped unless
// requested (SUPERCURRENT_EXTENDED=1 or --extended).

#include <functional>
#include <string>
#include <vector>

namespace supercurrent::repro {

enum class Status { PASS, FAIL, SKIP };

struct CriterionResult {
  std::string id;
  std::string name;
  Status status = Status::SKIP;
  std::string detail;
  double seconds = 0.0;
};

struct ReproOptions {
  bool extended = false;
  uint64_t seed = 1;
  int threads = 0;
  std::string cache_dir;
  int sl2_level_budget = 16;  // exhaustive saturation sweep bound (23 when extended)
};

std::vector<CriterionResult> run_acceptance(const ReproOptions& opts,
                                            const std::function<void(const CriterionResult&)>&
                                                on_result = {});

// summary helpers
std::string status_str(Status s);
int exit_code(const std::vector<CriterionResult>& rs);

}  // namespace supercurrent::repro

#endif
