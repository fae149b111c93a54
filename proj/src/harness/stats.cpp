#include "emdlsh/harness/stats.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "emdlsh/errors.hpp"

namespace emdlsh::stats {

double binomial_sigma(double p, double n) {
    if (!(n > 0)) return 0.0;
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
}

double chi_square_sf(double statistic, double dof) {
    if (!(dof > 0)) return 1.0;
    if (statistic <= 0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), statistic));
}

double chi_square_gof_pvalue(std::span<const double> observed, std::span<const double> expected) {
    if (observed.size() != expected.size()) throw InvalidInput("chi-square: category count mismatch");
    double stat = 0.0;
    std::size_t cats = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) {
            if (observed[i] > 0.0) return 0.0;
            continue;
        }
        stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
        ++cats;
    }
    return chi_square_sf(stat, static_cast<double>(cats) - 1.0);
}

double chi_square_homogeneity_pvalue(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidInput("chi-square: category count mismatch");
    double na = 0, nb = 0;
    for (double v : a) na += v;
    for (double v : b) nb += v;
    if (na <= 0 || nb <= 0) return 1.0;
    const double n = na + nb;
    double stat = 0.0;
    std::size_t cats = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double col = a[i] + b[i];
        if (col <= 0) continue;
        ++cats;
        const double ea = col * na / n, eb = col * nb / n;
        stat += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    }
    return chi_square_sf(stat, static_cast<double>(cats) - 1.0);
}

double sign_test_pvalue(std::size_t wins, std::size_t losses) {
    const std::size_t n = wins + losses;
    if (n == 0) return 1.0;
    if (wins == 0) return 1.0;
    const boost::math::binomial_distribution<double> bin(static_cast<double>(n), 0.5);
    return boost::math::cdf(boost::math::complement(bin, static_cast<double>(wins) - 1.0));
}

Record Record::check(std::string name, double estimate, Relation rel, double bound, double tolerance, double sigma,
                     std::size_t trials, std::string note) {
    Record r;
    r.name = std::move(name);
    r.estimate = estimate;
    r.sigma = sigma;
    r.bound = bound;
    r.tolerance = tolerance;
    r.relation = rel;
    r.trials = trials;
    r.note = std::move(note);
    r.pass = rel == Relation::at_most ? estimate <= bound + tolerance : estimate >= bound - tolerance;
    return r;
}

bool StatsReport::all_pass() const {
    for (const Record& r : records)
        if (!r.pass) return false;
    return true;
}

void StatsReport::write(std::ostream& os) const {
    std::ostringstream line;
    for (const Record& r : records) {
        line.str({});
        line << std::setprecision(10);
        line << "suite=" << suite << " record=" << r.name << " estimate=" << r.estimate << " sigma=" << r.sigma
             << " relation=" << (r.relation == Relation::at_most ? "le" : "ge") << " bound=" << r.bound
             << " tolerance=" << r.tolerance << " trials=" << r.trials << " verdict=" << (r.pass ? "pass" : "fail");
        if (!r.note.empty()) line << " note=\"" << r.note << '"';
        os << line.str() << '\n';
    }
    os << "suite=" << suite << " seed=" << seed << " config_digest=" << config_digest
       << " records=" << records.size() << " verdict=" << (all_pass() ? "pass" : "fail") << '\n';
}

}  // namespace emdlsh::stats
