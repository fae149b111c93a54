#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace emdlsh::stats {

// sqrt(p (1 - p) / n).
double binomial_sigma(double p, double n);

// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);
// Goodness of fit of observed counts to expected counts (same total).
double chi_square_gof_pvalue(std::span<const double> observed, std::span<const double> expected);
// Homogeneity of two count vectors over the same categories. Categories
// empty in both samples are dropped.
double chi_square_homogeneity_pvalue(std::span<const double> a, std::span<const double> b);
// One-sided sign test: P[X >= wins] for X ~ Bin(wins + losses, 1/2).
double sign_test_pvalue(std::size_t wins, std::size_t losses);

enum class Relation { at_most, at_least };

// One measured quantity against a declared bound: passes iff
// estimate <= bound + tolerance (at_most) or estimate >= bound - tolerance
// (at_least). The tolerance is usually 3 sigma.
struct Record {
    std::string name;
    double estimate = 0.0;
    double sigma = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::at_most;
    std::size_t trials = 0;
    bool pass = false;
    std::string note;

    static Record check(std::string name, double estimate, Relation rel, double bound, double tolerance,
                        double sigma, std::size_t trials, std::string note = {});
};

struct StatsReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::string config_digest;
    std::vector<Record> records;

    bool all_pass() const;
    void add(Record r) { records.push_back(std::move(r)); }
    // One key=value line per record, then a summary line.
    void write(std::ostream& os) const;
};

}  // namespace emdlsh::stats
