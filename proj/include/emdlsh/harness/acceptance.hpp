#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "emdlsh/harness/stats.hpp"

namespace emdlsh {

// Seed used by `selftest` when none is given.
inline constexpr std::uint64_t kDefaultSelftestSeed = 2;

struct Criterion {
    int id = 0;
    std::string title;
    double time_limit_s = 0.0;  // 0 means no limit
    std::function<std::vector<stats::Record>(std::uint64_t seed)> run;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<stats::Record> records;
    double seconds = 0.0;
    double time_limit_s = 0.0;
    bool records_pass() const;
    bool within_time() const { return time_limit_s <= 0 || seconds <= time_limit_s; }
    bool pass() const { return records_pass() && within_time(); }
};

// Criteria 1-13 in order.
const std::vector<Criterion>& acceptance_criteria();

CriterionResult run_criterion(const Criterion& c, std::uint64_t seed);

// `criterion <id> PASS|FAIL <title> (<seconds> s[, over <limit> s])`.
std::string summary_line(const CriterionResult& r);

// Runs the criteria whose ids are in `only` (all if empty), printing one
// summary line per criterion to `lines` as it finishes. Every record goes
// into the returned report, named c<id>.<record>.
stats::StatsReport run_acceptance(std::uint64_t seed, const std::vector<int>& only, std::ostream& lines,
                                  std::vector<CriterionResult>* results = nullptr);

}  // namespace emdlsh
