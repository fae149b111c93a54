#include "emdlsh/emd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "emdlsh/errors.hpp"

namespace emdlsh {

namespace {

bool integer_mode(Mode m) { return m != Mode::real; }

void check_exponent(Mode m, double p) {
    if (!(p >= 1.0 && p <= 2.0)) throw InvalidInput("norm exponent must lie in [1, 2]");
    if (integer_mode(m) && p != 1.0) throw InvalidInput("hypercube and grid modes use p = 1");
}

// Shortest augmenting path with row/column potentials (1-indexed internally).
template <class T>
std::vector<std::size_t> hungarian(std::span<const T> a, std::size_t n) {
    if (a.size() != n * n) throw InvalidInput("cost matrix is not n x n");
    const T inf = std::numeric_limits<T>::has_infinity ? std::numeric_limits<T>::infinity()
                                                       : std::numeric_limits<T>::max() / 4;
    std::vector<T> u(n + 1, T{}), v(n + 1, T{}), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            T delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const T cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

}  // namespace

std::int64_t l1_distance_int(const Vector& a, const Vector& b) {
    check_same_space(a, b);
    if (!integer_mode(a.mode())) throw InvalidInput("integer l1 distance needs hypercube or grid mode");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += std::llabs(static_cast<std::int64_t>(a[i]) - static_cast<std::int64_t>(b[i]));
    return s;
}

double ground_distance(const Vector& a, const Vector& b, double p) {
    check_same_space(a, b);
    check_exponent(a.mode(), p);
    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) s += std::fabs(a[i] - b[i]);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::pow(std::fabs(a[i] - b[i]), p);
    return std::pow(s, 1.0 / p);
}

std::vector<std::size_t> solve_assignment(std::span<const std::int64_t> cost, std::size_t n) {
    return hungarian<std::int64_t>(cost, n);
}

std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n) {
    return hungarian<double>(cost, n);
}

Matching emd_exact(const PointSet& x, const PointSet& y, double p) {
    check_same_shape(x, y);
    check_exponent(x.mode(), p);
    const std::size_t s = x.s();
    Matching m;
    if (integer_mode(x.mode())) {
        std::vector<std::int64_t> c(s * s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) c[i * s + j] = l1_distance_int(x[i], y[j]);
        m.permutation = hungarian<std::int64_t>(c, s);
        std::int64_t total = 0;
        for (std::size_t i = 0; i < s; ++i) total += c[i * s + m.permutation[i]];
        m.cost = static_cast<double>(total);
    } else {
        std::vector<double> c(s * s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) c[i * s + j] = ground_distance(x[i], y[j], p);
        m.permutation = hungarian<double>(c, s);
        double total = 0.0;
        for (std::size_t i = 0; i < s; ++i) total += c[i * s + m.permutation[i]];
        m.cost = total;
    }
    return m;
}

double emd(const PointSet& x, const PointSet& y, double p) { return emd_exact(x, y, p).cost; }

double emd_bruteforce(const PointSet& x, const PointSet& y, double p) {
    check_same_shape(x, y);
    check_exponent(x.mode(), p);
    const std::size_t s = x.s();
    if (s > kBruteforceMaxS)
        throw OracleSizeError("brute-force EMD enumerates s! permutations; s = " + std::to_string(s) +
                              " exceeds the guard of " + std::to_string(kBruteforceMaxS));
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    if (integer_mode(x.mode())) {
        std::vector<std::int64_t> c(s * s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) c[i * s + j] = l1_distance_int(x[i], y[j]);
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        do {
            std::int64_t t = 0;
            for (std::size_t i = 0; i < s; ++i) t += c[i * s + perm[i]];
            best = std::min(best, t);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return static_cast<double>(best);
    }
    std::vector<double> c(s * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) c[i * s + j] = ground_distance(x[i], y[j], p);
    double best = std::numeric_limits<double>::infinity();
    do {
        double t = 0.0;
        for (std::size_t i = 0; i < s; ++i) t += c[i * s + perm[i]];
        best = std::min(best, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double chamfer(const PointSet& x, std::span<const Vector> omega, double p) {
    if (omega.empty()) throw InvalidInput("chamfer distance needs a nonempty target set");
    double total = 0.0;
    for (const Vector& a : x) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vector& b : omega) best = std::min(best, ground_distance(a, b, p));
        total += best;
    }
    return total;
}

double greedy_matching_cost(const PointSet& x, const PointSet& y, double p) {
    check_same_shape(x, y);
    const std::size_t s = x.s();
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    pairs.reserve(s * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) pairs.emplace_back(ground_distance(x[i], y[j], p), i, j);
    std::sort(pairs.begin(), pairs.end());
    std::vector<char> row_used(s), col_used(s);
    double total = 0.0;
    std::size_t matched = 0;
    for (const auto& [c, i, j] : pairs) {
        if (row_used[i] || col_used[j]) continue;
        row_used[i] = col_used[j] = 1;
        total += c;
        if (++matched == s) break;
    }
    return total;
}

}  // namespace emdlsh
