// Acceptance run: criteria 1-13 in process, then criterion 14 by timing the
// CLI selftest, whose report must match the in-process one exactly.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "emdlsh/harness/acceptance.hpp"

using namespace emdlsh;

namespace {

constexpr double kSelftestBudgetS = 30.0 * 60.0;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path to emdlsh CLI> [report dir]\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string dir = argc > 2 ? argv[2] : ".";
    const std::uint64_t seed = kDefaultSelftestSeed;

    // The CLI run goes first so its memory peak does not stack on this process's.
    const std::string cli_report = dir + "/selftest_report.txt";
    const std::string cmd = "\"" + cli + "\" selftest --seed " + std::to_string(seed) + " --out \"" + cli_report +
                            "\" > \"" + dir + "/selftest_stdout.txt\" 2>&1";
    const auto start = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::vector<CriterionResult> results;
    const stats::StatsReport in_process = run_acceptance(seed, {}, std::cout, &results);
    std::ostringstream expected;
    in_process.write(expected);
    {
        std::ofstream os(dir + "/acceptance_report.txt");
        os << expected.str();
    }

    const bool same = slurp(cli_report) == expected.str();
    const bool pass14 = code == 0 && seconds < kSelftestBudgetS && same;
    char buf[160];
    std::snprintf(buf, sizeof buf, "criterion 14 %s selftest CLI end to end (%.1f s, exit %d, report %s)",
                  pass14 ? "PASS" : "FAIL", seconds, code, same ? "reproduced" : "differs");
    std::cout << buf << std::endl;

    bool all = pass14;
    for (const auto& r : results) all = all && r.pass();
    std::cout << "acceptance " << (all ? "PASS" : "FAIL") << std::endl;
    return all ? 0 : 1;
}
