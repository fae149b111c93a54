#include "emdlsh/harness/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "emdlsh/digest.hpp"
#include "emdlsh/errors.hpp"

namespace emdlsh {

namespace {

template <class T>
void read(const YAML::Node& node, const char* key, T& out) {
    if (!node[key]) return;
    try {
        out = node[key].as<T>();
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

void check_keys(const YAML::Node& node, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError("unknown config key '" + key + "' in " + where);
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n == 0 || s == 0 || d == 0 || trials == 0) throw ConfigError("n, s, d and trials must be positive");
    if (mode == Mode::grid && delta < 1) throw ConfigError("delta must be positive in grid mode");
    if (generator.clusters == 0 || generator.queries == 0) throw ConfigError("clusters and queries must be positive");
    if (generator.radius > d) throw ConfigError("cluster radius exceeds d");
    if (!(p1 > 0 && p1 < 1 && p2 > 0 && p2 < 1)) throw ConfigError("p1 and p2 must lie in (0, 1)");
    if (!(p2 < p1)) throw ConfigError("p2 must be smaller than p1");
    if (!(r > 0) || !(c > 1)) throw ConfigError("r must be positive and c greater than 1");
    if (!(generator.far_margin >= 1)) throw ConfigError("far_margin must be at least 1");
}

std::string ExperimentConfig::digest() const {
    DigestBuilder b(0x636f6e666967ULL);
    b.add(static_cast<std::uint64_t>(mode));
    for (std::uint64_t v : {std::uint64_t(n), std::uint64_t(s), std::uint64_t(d), std::uint64_t(delta),
                            std::uint64_t(generator.kind), std::uint64_t(generator.clusters),
                            std::uint64_t(generator.radius), std::uint64_t(generator.queries), seed,
                            std::uint64_t(trials)})
        b.add(v);
    for (double v : {generator.far_margin, r, c, p1, p2}) b.add_double(v);
    for (char ch : out) b.add(static_cast<std::uint64_t>(static_cast<unsigned char>(ch)));
    const Digest128 h = b.finish();
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(h.hi),
                  static_cast<unsigned long long>(h.lo));
    return buf;
}

ExperimentConfig ExperimentConfig::from_yaml_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    if (root.IsNull()) return cfg;
    if (!root.IsMap()) throw ConfigError("config must be a mapping");
    check_keys(root, {"mode", "n", "s", "d", "delta", "seed", "trials", "out", "generator", "params"}, "top level");
    std::string mode;
    read(root, "mode", mode);
    if (!mode.empty()) {
        try {
            cfg.mode = parse_mode(mode);
        } catch (const InvalidInput&) {
            throw ConfigError("unknown mode '" + mode + "'");
        }
    }
    read(root, "n", cfg.n);
    read(root, "s", cfg.s);
    read(root, "d", cfg.d);
    read(root, "delta", cfg.delta);
    read(root, "seed", cfg.seed);
    read(root, "trials", cfg.trials);
    read(root, "out", cfg.out);
    if (const auto g = root["generator"]) {
        check_keys(g, {"kind", "clusters", "radius", "queries", "far_margin"}, "generator");
        std::string kind;
        read(g, "kind", kind);
        if (kind == "planted")
            cfg.generator.kind = GeneratorKind::planted;
        else if (kind.empty() || kind == "clustered")
            cfg.generator.kind = GeneratorKind::clustered;
        else
            throw ConfigError("unknown generator kind '" + kind + "'");
        read(g, "clusters", cfg.generator.clusters);
        read(g, "radius", cfg.generator.radius);
        read(g, "queries", cfg.generator.queries);
        read(g, "far_margin", cfg.generator.far_margin);
    }
    if (const auto p = root["params"]) {
        check_keys(p, {"r", "c", "p1", "p2"}, "params");
        read(p, "r", cfg.r);
        read(p, "c", cfg.c);
        read(p, "p1", cfg.p1);
        read(p, "p2", cfg.p2);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_yaml_text(ss.str());
}

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o) {
    if (o.seed) cfg.seed = *o.seed;
    if (o.out) cfg.out = *o.out;
    if (o.trials) cfg.trials = *o.trials;
    if (o.mode) cfg.mode = *o.mode;
    cfg.validate();
}

}  // namespace emdlsh
