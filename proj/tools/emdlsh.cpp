#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "emdlsh/errors.hpp"
#include "emdlsh/harness/acceptance.hpp"
#include "emdlsh/harness/config.hpp"
#include "emdlsh/harness/dataset_io.hpp"
#include "emdlsh/harness/generators.hpp"
#include "emdlsh/harness/suites.hpp"

using namespace emdlsh;

namespace {

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> trials;
    std::optional<std::string> mode;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "YAML experiment config")->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "64-bit seed");
    cmd->add_option("--out", f.out, "output path (stdout if omitted)");
    cmd->add_option("--trials", f.trials, "trial count")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", f.mode, "hypercube, grid or real")
        ->check(CLI::IsMember({"hypercube", "grid", "real"}));
}

ExperimentConfig resolve(const CommonFlags& f) {
    ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : ExperimentConfig::load(f.config);
    ConfigOverrides o;
    o.seed = f.seed;
    o.out = f.out;
    o.trials = f.trials;
    if (f.mode) o.mode = parse_mode(*f.mode);
    apply_overrides(cfg, o);
    return cfg;
}

int emit_report(const stats::StatsReport& rep, const std::string& out) {
    if (out.empty()) {
        rep.write(std::cout);
    } else {
        std::ofstream os(out);
        if (!os) throw FormatError("cannot open " + out + " for writing");
        rep.write(os);
        std::cout << (rep.all_pass() ? "PASS" : "FAIL") << ' ' << rep.suite << " -> " << out << '\n';
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EMD locality-sensitive hashing: data generation, experiments and self test"};
    app.require_subcommand(1);

    CommonFlags gen_f, col_f, dis_f, ann_f, self_f;
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    add_common(gen, gen_f);
    auto* col = app.add_subcommand("collisions", "collision-law suite");
    add_common(col, col_f);
    auto* dis = app.add_subcommand("distortion", "sample tree versus data-independent tree distortion");
    add_common(dis, dis_f);
    auto* ann = app.add_subcommand("ann", "glued hash sensitivities and ANN recall on a planted benchmark");
    add_common(ann, ann_f);
    auto* self = app.add_subcommand("selftest", "run acceptance criteria 1-13");
    add_common(self, self_f);
    std::vector<int> only;
    self->add_option("--only", only, "criterion ids to run (default: all)")->check(CLI::Range(1, 13));

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const ExperimentConfig cfg = resolve(gen_f);
            const Dataset data = gen_synthetic(cfg);
            if (cfg.out.empty())
                write_dataset(std::cout, data);
            else
                save_dataset(cfg.out, data);
            return 0;
        }
        if (col->parsed()) {
            const auto cfg = resolve(col_f);
            return emit_report(run_collision_suite(cfg), cfg.out);
        }
        if (dis->parsed()) {
            const auto cfg = resolve(dis_f);
            return emit_report(run_distortion_suite(cfg), cfg.out);
        }
        if (ann->parsed()) {
            const auto cfg = resolve(ann_f);
            return emit_report(run_ann_suite(cfg), cfg.out);
        }
        if (self->parsed()) {
            if (!self_f.seed) self_f.seed = kDefaultSelftestSeed;
            const auto cfg = resolve(self_f);
            const auto rep = run_acceptance(cfg.seed, only, std::cout);
            if (!cfg.out.empty()) {
                std::ofstream os(cfg.out);
                if (!os) throw FormatError("cannot open " + cfg.out + " for writing");
                rep.write(os);
            }
            std::cout << "selftest " << (rep.all_pass() ? "PASS" : "FAIL") << '\n';
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
