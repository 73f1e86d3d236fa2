#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "levyheat/inequalities.hpp"

namespace levyheat {

/// Declarative experiment description. Parsed from strict JSON: unknown
/// fields are rejected (fail closed) and every diagnostic names the
/// offending field. (config, seed) fully determines all numerical output.
struct ExperimentConfig {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::uint64_t seed = 0;

    struct GridBlock {
        int dim = 1;
        int n = 128;
        double period = 1.0;
    } grid;

    struct TimeBlock {
        double horizon = 1.0;
        int steps = 64;
    };
    std::optional<TimeBlock> time;

    struct LevyBlock {
        // exactly one of the two is populated
        std::vector<Atom> atoms;
        struct Uniform {
            double lo = 1.0;
            double hi = 2.0;
            double mass = 1.0;
        };
        std::optional<Uniform> uniform;
    };
    std::optional<LevyBlock> levy;

    struct FieldBlock {
        std::string recipe = "zero";  // zero | constant | single_mode | random_decay
        std::array<int, 2> mode{1, 0};
        double amplitude = 1.0;
        double slope = 1.0;
        std::uint64_t field_seed = 1;
        bool mean_zero = false;
        std::optional<std::pair<double, double>> time_window;
    };
    std::optional<FieldBlock> field;

    struct CheckBlock {
        std::string kind;  // partition-check | kernel-decay | hardy | prop1 |
                           // theorem | corollary | isometry | fractional
        std::vector<double> p_list{2.0};
        std::vector<double> k_list{0.0};
        std::vector<double> alpha_list;  // empty selects the heat semigroup
        bool homogeneous = false;
        int samples = 100;
        int trials = 100;
        std::vector<int> blocks{2, 3, 4};
        std::vector<double> scaled_times;  // empty selects per-check defaults
        int j_count = 4;
        int time_steps = 1000;
        std::string index_mode = "nonneg";  // nonneg | all
        std::vector<std::string> norm_pairs{"HH"};  // HH | BB | HdotHdot | BdotBdot
        std::vector<std::string> variants{"kernel", "envelope"};
    } check;

    std::string output = "results";
};

/// Strict parse; throws contract_error naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Normalized serialization; parse(config_to_json(c)) reproduces c.
nlohmann::json config_to_json(const ExperimentConfig& config);

nlohmann::json report_to_json(const RatioReport& report);

struct RunResult {
    int exit_code = 0;  // 0: all pass, 1: some check failed
    std::vector<RatioReport> reports;
};

/// Executes the configured check (fanning out over exponent lists), appends
/// one JSON record per report to <out_dir>/results.jsonl, writes the
/// plot-ready tables, and prints a summary line per report.
RunResult run_experiment(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir, int workers = 1);

/// Writes the delimited plot tables (decay_curves.tsv, ratio_vs_refinement.tsv,
/// ratio_vs_p.tsv) for the reports whose name matches `selector` (empty
/// selector keeps everything). Empty selections still produce the header row.
void emit_plot_data(const std::vector<RatioReport>& reports, const std::string& selector,
                    const std::filesystem::path& out_dir);

} // namespace levyheat
