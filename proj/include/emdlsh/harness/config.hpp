#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "emdlsh/point_set.hpp"

namespace emdlsh {

enum class GeneratorKind { clustered, planted };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::clustered;
    std::size_t clusters = 10;
    std::size_t radius = 2;     // per-element Hamming radius around cluster centers
    std::size_t queries = 100;  // planted: near queries and far queries each
    double far_margin = 2.0;    // planted: far queries sit at EMD >= far_margin * r
};

// One experiment. Loaded from a YAML file of the form
//
//   mode: hypercube
//   n: 200
//   s: 3
//   d: 64
//   delta: 8          # grid only
//   seed: 1
//   trials: 1000
//   out: report.txt
//   generator: {kind: planted, clusters: 10, radius: 2, queries: 100, far_margin: 2}
//   params: {r: 4, c: 4, p1: 0.8, p2: 0.2}
//
// Missing keys keep their defaults.
struct ExperimentConfig {
    Mode mode = Mode::hypercube;
    std::size_t n = 200;
    std::size_t s = 3;
    std::size_t d = 64;
    std::int64_t delta = 8;
    GeneratorSpec generator;
    double r = 4.0;
    double c = 4.0;
    double p1 = 0.8;
    double p2 = 0.2;
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    std::string out;

    // Throws ConfigError.
    void validate() const;
    // Hex digest of every field, for report headers.
    std::string digest() const;

    static ExperimentConfig from_yaml_text(const std::string& text);
    static ExperimentConfig load(const std::string& path);
};

// Command-line overrides; absent values leave the config untouched.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> trials;
    std::optional<Mode> mode;
};

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o);

}  // namespace emdlsh
