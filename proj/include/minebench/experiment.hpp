#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minebench/core.hpp"
#include "minebench/prompts.hpp"
#include "minebench/provider.hpp"

namespace minebench {

// A named scenario recipe. TC presets pin an exact ones-count at 15x15 with
// 10 rules; scalability presets target ~10% density with 20 rules at total
// sizes 500..5000.
struct Preset {
    std::string name;
    std::string row_label;  // summary-table row: density percentage or total elements
    bool scalability = false;
    GenerationParams params;  // seed overwritten per run
};

const std::vector<Preset>& tc_presets();
const std::vector<Preset>& scalability_presets();
std::vector<Preset> all_presets();
std::optional<Preset> find_preset(const std::string& name);

// Applies a seed and produces the preset's scenario.
Scenario generate_preset(const Preset& preset, std::uint64_t seed);

enum class Engine { Reference, Exact, Llm };
const char* to_string(Engine e);
Engine engine_from_string(const std::string& s);

enum class Phase { ModelScreening, InputFormats, PromptStudy, Scalability, Custom };
const char* to_string(Phase p);
Phase phase_from_string(const std::string& s);

struct ExperimentConfig {
    Phase phase = Phase::Custom;
    std::vector<std::string> presets;        // empty: phase default
    std::vector<PromptStrategy> strategies;  // empty: phase default (llm engine only)
    std::vector<Engine> engines;             // empty: llm
    std::vector<ProviderConfig> providers;
    std::vector<std::uint64_t> seeds{0};
    std::filesystem::path out_dir = "runs";
    std::filesystem::path prompts_dir;   // empty: library default
    std::filesystem::path fixtures_dir;  // offline recordings
    int jobs = 1;
    bool offline = false;
    // By default every configuration in a phase shares the scenario
    // generated for (preset, seed); this derives a fresh seed per
    // configuration instead.
    bool fresh_scenarios = false;
};

// One grading outcome, already formatted for the results CSV. Metric fields
// are empty for failed ("*") runs.
struct ResultRow {
    std::string scenario_id;
    std::string strategy;  // prompt strategy, or engine name for builtin engines
    std::string provider;  // provider id, or "builtin"
    std::string density;
    std::string mined_size;
    std::string ratio;
    std::string accuracy;
    std::string precision;
    std::string recall;
    std::string f1;
    bool failed = false;

    static std::string csv_header();
    std::string to_csv() const;
    static ResultRow from_csv(const std::string& line);
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::filesystem::path csv_path;
};

// Runs the cross-product of presets x seeds x configurations, one CSV row
// per run. Scenario generation is deterministic per (preset, seed); rows are
// persisted individually so an interrupted run resumes where it stopped.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Summary tables per metric, shaped rows-by-density (or total elements)
// versus one column per configuration; pure functions of the CSV text.
std::map<std::string, std::string> build_summaries(const std::string& csv_text);

// Writes summary_<metric>.txt, plot_<metric>.dat and plot.gp next to the CSV.
void write_summary_files(const std::filesystem::path& dir, const std::string& csv_text);

} // namespace minebench
