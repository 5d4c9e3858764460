// Command-line front end: one subcommand per run kind, one config file per
// scenario, deterministic outputs under --out.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "abelint/errors.hpp"
#include "abelint/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

struct CliArgs {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    double tol = 0.0;
    bool tol_set = false;
};

int run_kind_command(const std::string& kind_name, const CliArgs& args) {
    using namespace abelint;
    try {
        Scenario scenario = parse_scenario(args.config);
        const RunKind cli_kind = run_kind_from_name(kind_name);
        if (scenario.kind != cli_kind)
            throw ValidationError("config run kind \"" + run_kind_name(scenario.kind) +
                                  "\" does not match subcommand \"" + kind_name + "\"");
        if (!args.out.empty()) scenario.out_dir = args.out;
        if (args.seed_set) scenario.seed = args.seed;
        if (args.threads > 0) scenario.threads = args.threads;
        if (args.tol_set) {
            if (!(args.tol > 0.0) || args.tol >= 1.0)
                throw ValidationError("--tol must lie in (0,1)");
            scenario.tol = args.tol;
        }
        const RunManifest manifest = run(scenario);
        std::printf("ok: %s -> %s (%zu files, hash %s)\n", kind_name.c_str(),
                    scenario.out_dir.c_str(), manifest.files.size() + 1,
                    manifest.scenario_hash.c_str());
        return kExitOk;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const BudgetError& e) {
        std::fprintf(stderr, "numerical budget exhausted: %s\n", e.what());
        return kExitBudget;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"intersection laboratory for complex abelian surfaces"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds = {"intersect-scan", "density",       "segments",
                                            "equidist",       "torsion-delta", "census"};
    CliArgs args;
    std::string chosen;
    for (const auto& kind : kinds) {
        auto* sub = app.add_subcommand(kind, "run a \"" + kind + "\" scenario");
        sub->add_option("--config", args.config, "scenario config file (JSON)")->required();
        sub->add_option("--out", args.out, "output directory (overrides config)");
        auto* seed_opt = sub->add_option("--seed", args.seed, "override the scenario seed");
        sub->add_option("--threads", args.threads, "parallelism budget");
        auto* tol_opt = sub->add_option("--tol", args.tol, "override the numerical tolerance");
        sub->callback([&, kind, seed_opt, tol_opt]() {
            args.seed_set = seed_opt->count() > 0;
            args.tol_set = tol_opt->count() > 0;
            chosen = kind;
        });
    }

    CLI11_PARSE(app, argc, argv);
    return run_kind_command(chosen, args);
}
