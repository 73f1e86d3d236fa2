// levyheat -- batch runner for the spectral verification checks.
//
// Every subcommand loads a JSON experiment config, runs the named check, and
// appends one record per result to <out>/results.jsonl next to the plot
// tables. Exit codes: 0 all checks passed, 1 a check failed its criterion,
// 2 invalid config or precondition.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "levyheat/config.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    int workers = 1;
};

int run(const std::string& kind, const CliOptions& opt) {
    try {
        levyheat::ExperimentConfig cfg = levyheat::load_config(opt.config_path);
        if (cfg.check.kind != kind)
            throw levyheat::contract_error("config: check.kind is '" + cfg.check.kind +
                                           "' but the subcommand is '" + kind + "'");
        if (opt.seed) cfg.seed = *opt.seed;
        const std::string out = !opt.out_dir.empty() ? opt.out_dir : cfg.output;
        return levyheat::run_experiment(cfg, out, opt.workers).exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral verification harness for Levy-driven heat equations"};
    app.require_subcommand(1);

    static const char* kKinds[] = {"partition-check", "kernel-decay", "hardy", "prop1",
                                   "theorem", "corollary", "isometry", "fractional"};
    static const char* kHelp[] = {
        "exactness of the dyadic partition of unity on the grid",
        "decay of dyadic heat kernels and block semigroup envelopes",
        "Hardy-type double-integral inequality on random step functions",
        "deterministic convolution bound against shifted Besov norms",
        "Monte Carlo a-priori bound for the stochastic convolution",
        "same-scale norm bounds plus the embedding constant",
        "p=2 isometry anchor for the stochastic convolution",
        "kernel decay and convolution bound for the fractional semigroup"};

    CliOptions opt;
    std::string chosen;
    for (std::size_t i = 0; i < std::size(kKinds); ++i) {
        CLI::App* sub = app.add_subcommand(kKinds[i], kHelp[i]);
        sub->add_option("--config", opt.config_path, "experiment config (JSON)")
            ->required();
        sub->add_option("--seed", opt.seed, "override the config seed");
        sub->add_option("--out", opt.out_dir, "output directory (default: config output)");
        sub->add_option("--workers", opt.workers, "worker threads for Monte Carlo checks")
            ->check(CLI::PositiveNumber);
        sub->callback([&chosen, name = std::string(kKinds[i])]() { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return run(chosen, opt);
}
