#pragma once

#include <cstdint>
#include <vector>

#include "emdlsh/harness/config.hpp"
#include "emdlsh/point_set.hpp"

namespace emdlsh {

// n points in cfg.generator.clusters clusters (point i in cluster
// i mod clusters). Each element is its center's element moved by at most
// cfg.generator.radius in l1: bit flips in hypercube mode, unit steps in grid
// mode, and coordinate shifts of at most 1/2 in real mode.
Dataset gen_clustered(const ExperimentConfig& cfg, std::uint64_t seed);

struct PlantedBenchmark {
    Dataset data;
    std::vector<PointSet> near_queries;  // each within r of data[near_index[i]]
    std::vector<std::size_t> near_index;
    std::vector<double> near_emd;        // exact EMD to the planted neighbor
    std::vector<PointSet> far_queries;   // each at EMD >= far_margin * r from every data point
};

// Hypercube only. A near query spends floor(r) flips on a data point, spread
// over all s elements on distinct coordinates, so its EMD to the source is at
// most floor(r). Throws ConfigError if floor(r) < s, floor(r) > s d, or far
// queries cannot be found.
PlantedBenchmark gen_planted(const ExperimentConfig& cfg, std::uint64_t seed);

// The dataset described by cfg, drawn from cfg.seed.
Dataset gen_synthetic(const ExperimentConfig& cfg);

}  // namespace emdlsh
