#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "emdlsh/glued_lsh.hpp"
#include "emdlsh/point_set.hpp"

namespace emdlsh {

struct AnnParams {
    GluedParams glued;
    std::size_t k = 0;            // ceil(log_{1/p2} n)
    std::size_t repetitions = 0;  // ceil(3 n^rho / p1)
    double rho = 0.0;             // ln(1/p1) / ln(1/p2)

    static AnnParams derive(std::size_t n, const GluedParams& glued);
    // (1 - p1^k)^repetitions.
    double failure_bound() const;
};

struct CoreNode {
    std::size_t point = 0;          // dataset index
    std::size_t residual_size = 0;  // points routed to this node
    std::size_t depth = 0;
    bool leaf = false;
    std::vector<std::size_t> data;  // leaf only
    std::unique_ptr<GluedLsh> hash;  // internal only
    std::unordered_map<GluedBucket, std::unique_ptr<CoreNode>, GluedBucketHash> children;
};

struct QueryStats {
    std::size_t distance_evals = 0;   // all EMD evaluations
    std::size_t leaf_scan_evals = 0;  // EMD evaluations inside leaf scans
    std::size_t hash_evals = 0;       // glued hash evaluations
    std::size_t trees_tried = 0;
};

// Recursion of depth k over `subset` (indices into P). Residuals of size 1
// become leaves early.
std::unique_ptr<CoreNode> core_preprocess(const Dataset& P, std::span<const std::size_t> subset, std::size_t k,
                                          const GluedParams& params, std::uint64_t seed);
// Any returned index i satisfies EMD(P[i], q) <= cr.
std::optional<std::size_t> core_query(const Dataset& P, const PointSet& q, const CoreNode& v, double cr,
                                      QueryStats* stats = nullptr);

class AnnIndex {
public:
    static AnnIndex build(Dataset P, double r, double p1, double p2, std::uint64_t seed);
    static AnnIndex build(Dataset P, const AnnParams& params, std::uint64_t seed);

    const AnnParams& params() const noexcept { return params_; }
    const Dataset& dataset() const noexcept { return P_; }
    std::size_t tree_count() const noexcept { return trees_.size(); }
    const CoreNode& tree(std::size_t i) const { return *trees_.at(i); }
    double cr() const noexcept { return params_.glued.cr(); }

    // Tries the trees in order; the first non-fail answer is returned.
    std::optional<std::size_t> query(const PointSet& q, QueryStats* stats = nullptr) const;

private:
    Dataset P_;
    AnnParams params_;
    std::vector<std::unique_ptr<CoreNode>> trees_;
};

}  // namespace emdlsh
