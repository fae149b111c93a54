#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "emdlsh/harness/config.hpp"
#include "emdlsh/harness/stats.hpp"

namespace emdlsh {

// Collision laws of the grid hash, the data-independent hash H(tau, l) at
// every level and the l1 grid hash behind the sample tree, with
// cfg.trials draws per estimate.
stats::StatsReport run_collision_suite(const ExperimentConfig& cfg);

// Sample tree against the data-independent tree with matched level seeds,
// on in-cluster pairs of clustered data: mean expansion of both, the
// contraction-violation frequency against delta, and a one-sided sign test
// that the sample tree expands less.
struct DistortionOptions {
    std::size_t trials = 200;
    std::size_t m = 0;     // sampled points per tree; 0 means cfg.n
    double delta = 0.05;
    double sign_test_alpha = 0.05;
};
std::vector<stats::Record> distortion_comparison(const ExperimentConfig& cfg, const DistortionOptions& opt);
stats::StatsReport run_distortion_suite(const ExperimentConfig& cfg);

// On the planted benchmark: close-collision rate of near pairs against p1
// and the rate of colliding with u ~ mu at EMD > c r against p2, over
// `builds` independent glued hashes.
std::vector<stats::Record> glued_sensitivity(const ExperimentConfig& cfg, std::size_t builds);

// Builds an AnnIndex on the planted benchmark and checks recall against
// 0.9, answer validity against c r, and mean leaf-scan evaluations against
// 4 (k + n p2^k).
std::vector<stats::Record> ann_benchmark(const ExperimentConfig& cfg);

// glued_sensitivity with cfg.trials builds, followed by ann_benchmark.
stats::StatsReport run_ann_suite(const ExperimentConfig& cfg);

}  // namespace emdlsh
