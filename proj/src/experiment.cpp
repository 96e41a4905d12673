#include "minebench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "minebench/generator.hpp"
#include "minebench/metrics.hpp"
#include "minebench/miner.hpp"
#include "minebench/serialize.hpp"

namespace minebench {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v, int decimals) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(decimals);
    os << v;
    return os.str();
}

Preset make_tc(const std::string& name, const std::string& label, std::int64_t ones,
               int cardinality, int max_conditions) {
    Preset p;
    p.name = name;
    p.row_label = label;
    p.scalability = false;
    p.params = GenerationParams::uniform(15, 15, 3, 3, cardinality, 10,
                                         static_cast<double>(ones) / 225.0, 0.02,
                                         max_conditions, 0);
    p.params.exact_ones = ones;
    p.params.max_attempts = 50000;
    return p;
}

Preset make_scal(int total, int n_subjects, int n_objects, int cardinality) {
    Preset p;
    p.name = "scal-" + std::to_string(total);
    p.row_label = std::to_string(total);
    p.scalability = true;
    p.params = GenerationParams::uniform(n_subjects, n_objects, 3, 3, cardinality, 20, 0.10,
                                         0.02, 5, 0);
    p.params.max_attempts = 5000;
    return p;
}

} // namespace

const std::vector<Preset>& tc_presets() {
    static const std::vector<Preset> presets = {
        make_tc("TC1", "12.88", 29, 10, 3), make_tc("TC2", "30.67", 69, 6, 4),
        make_tc("TC3", "40.44", 91, 5, 3),  make_tc("TC4", "46.22", 104, 6, 3),
        make_tc("TC5", "52.44", 118, 6, 3),
    };
    return presets;
}

const std::vector<Preset>& scalability_presets() {
    static const std::vector<Preset> presets = {
        make_scal(500, 20, 25, 30),   make_scal(700, 25, 28, 30),
        make_scal(1000, 25, 40, 30),  make_scal(1500, 30, 50, 30),
        make_scal(2000, 40, 50, 30),  make_scal(3000, 50, 60, 30),
        make_scal(4000, 50, 80, 30),  make_scal(5000, 50, 100, 30),
    };
    return presets;
}

std::vector<Preset> all_presets() {
    std::vector<Preset> out = tc_presets();
    const auto& scal = scalability_presets();
    out.insert(out.end(), scal.begin(), scal.end());
    return out;
}

std::optional<Preset> find_preset(const std::string& name) {
    for (const Preset& p : all_presets()) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

Scenario generate_preset(const Preset& preset, std::uint64_t seed) {
    GenerationParams params = preset.params;
    params.seed = seed;
    return generate_scenario(params, preset.name + "-s" + std::to_string(seed));
}

const char* to_string(Engine e) {
    switch (e) {
        case Engine::Reference: return "reference";
        case Engine::Exact: return "exact";
        case Engine::Llm: return "llm";
    }
    return "?";
}

Engine engine_from_string(const std::string& s) {
    if (s == "reference") return Engine::Reference;
    if (s == "exact") return Engine::Exact;
    if (s == "llm") return Engine::Llm;
    throw InvalidParams("unknown engine: " + s);
}

const char* to_string(Phase p) {
    switch (p) {
        case Phase::ModelScreening: return "model-screening";
        case Phase::InputFormats: return "input-formats";
        case Phase::PromptStudy: return "prompt-study";
        case Phase::Scalability: return "scalability";
        case Phase::Custom: return "custom";
    }
    return "?";
}

Phase phase_from_string(const std::string& s) {
    if (s == "model-screening") return Phase::ModelScreening;
    if (s == "input-formats") return Phase::InputFormats;
    if (s == "prompt-study") return Phase::PromptStudy;
    if (s == "scalability") return Phase::Scalability;
    if (s == "custom") return Phase::Custom;
    throw InvalidParams("unknown phase: " + s);
}

std::string ResultRow::csv_header() {
    return "scenario_id,strategy,provider,density,mined_size,ratio,accuracy,precision,recall,"
           "f1,failed_flag";
}

std::string ResultRow::to_csv() const {
    std::ostringstream os;
    os << scenario_id << ',' << strategy << ',' << provider << ',' << density << ','
       << mined_size << ',' << ratio << ',' << accuracy << ',' << precision << ',' << recall
       << ',' << f1 << ',' << (failed ? '1' : '0');
    return os.str();
}

ResultRow ResultRow::from_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    while (fields.size() < 11) fields.emplace_back();
    ResultRow row;
    row.scenario_id = fields[0];
    row.strategy = fields[1];
    row.provider = fields[2];
    row.density = fields[3];
    row.mined_size = fields[4];
    row.ratio = fields[5];
    row.accuracy = fields[6];
    row.precision = fields[7];
    row.recall = fields[8];
    row.f1 = fields[9];
    row.failed = fields[10] == "1";
    return row;
}

namespace {

ResultRow row_from_metrics(const Scenario& scenario, const std::string& strategy,
                           const std::string& provider, const MetricsReport& report) {
    ResultRow row;
    row.scenario_id = scenario.id;
    row.strategy = strategy;
    row.provider = provider;
    row.density = format_double(density(scenario.acm).value(), 6);
    row.mined_size = std::to_string(report.mined_size);
    row.ratio = format_double(report.size_ratio.value(), 4);
    row.accuracy = format_double(report.accuracy.value(), 6);
    row.precision = format_double(report.precision.value(), 6);
    row.recall = format_double(report.recall.value(), 6);
    row.f1 = format_double(report.f1.value(), 6);
    row.failed = false;
    return row;
}

ResultRow failed_row(const Scenario& scenario, const std::string& strategy,
                     const std::string& provider) {
    ResultRow row;
    row.scenario_id = scenario.id;
    row.strategy = strategy;
    row.provider = provider;
    row.density = format_double(density(scenario.acm).value(), 6);
    row.failed = true;
    return row;
}

struct RunSpec {
    std::size_t index = 0;
    Preset preset;
    std::uint64_t seed = 0;
    Engine engine = Engine::Reference;
    std::optional<PromptStrategy> strategy;
    int provider_index = -1;
    std::string scenario_key;
};

struct ResolvedConfig {
    std::vector<Preset> presets;
    std::vector<PromptStrategy> strategies;
    std::vector<Engine> engines;
};

ResolvedConfig resolve(const ExperimentConfig& config) {
    ResolvedConfig r;
    if (!config.presets.empty()) {
        for (const std::string& name : config.presets) {
            auto preset = find_preset(name);
            if (!preset) throw InvalidParams("unknown preset: " + name);
            r.presets.push_back(*preset);
        }
    } else if (config.phase == Phase::Scalability) {
        r.presets = scalability_presets();
    } else if (config.phase == Phase::Custom) {
        throw InvalidParams("custom experiments must name their presets");
    } else {
        r.presets = tc_presets();
    }

    if (!config.strategies.empty()) {
        r.strategies = config.strategies;
    } else {
        switch (config.phase) {
            case Phase::ModelScreening: r.strategies = {PromptStrategy::Prompt1}; break;
            case Phase::InputFormats:
                r.strategies = {PromptStrategy::Prompt1, PromptStrategy::AcmPrompt,
                                PromptStrategy::AclPrompt};
                break;
            case Phase::PromptStudy:
                r.strategies = {PromptStrategy::Prompt1,        PromptStrategy::Prompt2ZeroShot,
                                PromptStrategy::Prompt3Examples, PromptStrategy::ChainOfThought,
                                PromptStrategy::No0To1,          PromptStrategy::DenyAllowed};
                break;
            case Phase::Scalability:
                r.strategies = {PromptStrategy::Prompt1, PromptStrategy::ChainOfThought};
                break;
            case Phase::Custom: r.strategies = {PromptStrategy::Prompt1}; break;
        }
    }

    r.engines = config.engines.empty() ? std::vector<Engine>{Engine::Llm} : config.engines;
    return r;
}

ordered_json config_fingerprint(const ExperimentConfig& config, const ResolvedConfig& resolved) {
    ordered_json doc;
    doc["phase"] = to_string(config.phase);
    ordered_json presets = ordered_json::array();
    for (const Preset& p : resolved.presets) presets.push_back(p.name);
    doc["presets"] = presets;
    ordered_json strategies = ordered_json::array();
    for (PromptStrategy s : resolved.strategies) strategies.push_back(to_string(s));
    doc["strategies"] = strategies;
    ordered_json engines = ordered_json::array();
    for (Engine e : resolved.engines) engines.push_back(to_string(e));
    doc["engines"] = engines;
    ordered_json providers = ordered_json::array();
    for (const ProviderConfig& p : config.providers) {
        ordered_json entry;
        entry["provider_id"] = p.provider_id;
        entry["model"] = p.model_name;
        entry["endpoint"] = p.endpoint;
        entry["wire"] = p.wire;
        entry["timeout_s"] = p.timeout_s;
        entry["max_output_tokens"] = p.max_output_tokens;
        entry["extra_params"] = p.extra_params_json;
        providers.push_back(entry);
    }
    doc["providers"] = providers;
    doc["seeds"] = config.seeds;
    doc["offline"] = config.offline;
    doc["fresh_scenarios"] = config.fresh_scenarios;
    return doc;
}

ordered_json row_to_json(const ResultRow& row) {
    ordered_json doc;
    doc["scenario_id"] = row.scenario_id;
    doc["strategy"] = row.strategy;
    doc["provider"] = row.provider;
    doc["density"] = row.density;
    doc["mined_size"] = row.mined_size;
    doc["ratio"] = row.ratio;
    doc["accuracy"] = row.accuracy;
    doc["precision"] = row.precision;
    doc["recall"] = row.recall;
    doc["f1"] = row.f1;
    doc["failed"] = row.failed;
    return doc;
}

ResultRow row_from_json(const ordered_json& doc) {
    ResultRow row;
    row.scenario_id = doc.at("scenario_id").get<std::string>();
    row.strategy = doc.at("strategy").get<std::string>();
    row.provider = doc.at("provider").get<std::string>();
    row.density = doc.at("density").get<std::string>();
    row.mined_size = doc.at("mined_size").get<std::string>();
    row.ratio = doc.at("ratio").get<std::string>();
    row.accuracy = doc.at("accuracy").get<std::string>();
    row.precision = doc.at("precision").get<std::string>();
    row.recall = doc.at("recall").get<std::string>();
    row.f1 = doc.at("f1").get<std::string>();
    row.failed = doc.at("failed").get<bool>();
    return row;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ResolvedConfig resolved = resolve(config);
    std::filesystem::create_directories(config.out_dir);

    // Resumption is only valid against the same resolved configuration.
    ordered_json fingerprint = config_fingerprint(config, resolved);
    std::filesystem::path config_path = config.out_dir / "config.json";
    if (std::filesystem::exists(config_path)) {
        ordered_json previous = ordered_json::parse(read_text_file(config_path));
        if (previous != fingerprint) {
            throw IoError("run directory " + config.out_dir.string() +
                          " holds a different experiment configuration");
        }
    } else {
        write_text_file(config_path, fingerprint.dump(4) + "\n");
    }

    bool needs_llm = std::find(resolved.engines.begin(), resolved.engines.end(), Engine::Llm) !=
                     resolved.engines.end();

    // Provider instances; offline mode substitutes recorded fixtures.
    std::vector<std::unique_ptr<Provider>> providers;
    if (needs_llm) {
        if (config.offline) {
            std::filesystem::path fixtures =
                config.fixtures_dir.empty() ? config.out_dir / "fixtures" : config.fixtures_dir;
            if (config.providers.empty()) {
                providers.push_back(std::make_unique<FixtureProvider>(fixtures, "fixture"));
            } else {
                for (const ProviderConfig& pc : config.providers) {
                    providers.push_back(
                        std::make_unique<FixtureProvider>(fixtures, pc.provider_id));
                }
            }
        } else {
            if (config.providers.empty()) {
                throw InvalidParams("llm engine requires at least one configured provider");
            }
            for (const ProviderConfig& pc : config.providers) {
                providers.push_back(std::make_unique<HttpProvider>(pc));
            }
        }
    }

    // Build the run list: builtin engines once per scenario, llm runs per
    // strategy x provider.
    std::vector<RunSpec> runs;
    for (const Preset& preset : resolved.presets) {
        for (std::uint64_t seed : config.seeds) {
            int config_index = 0;
            for (Engine engine : resolved.engines) {
                if (engine != Engine::Llm) {
                    RunSpec spec;
                    spec.preset = preset;
                    spec.seed = config.fresh_scenarios
                                    ? seed + 1000003ull * static_cast<std::uint64_t>(config_index)
                                    : seed;
                    spec.engine = engine;
                    runs.push_back(std::move(spec));
                    ++config_index;
                    continue;
                }
                for (PromptStrategy strategy : resolved.strategies) {
                    for (std::size_t pi = 0; pi < providers.size(); ++pi) {
                        RunSpec spec;
                        spec.preset = preset;
                        spec.seed =
                            config.fresh_scenarios
                                ? seed + 1000003ull * static_cast<std::uint64_t>(config_index)
                                : seed;
                        spec.engine = Engine::Llm;
                        spec.strategy = strategy;
                        spec.provider_index = static_cast<int>(pi);
                        runs.push_back(std::move(spec));
                        ++config_index;
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        runs[i].index = i;
        runs[i].scenario_key = runs[i].preset.name + "-s" + std::to_string(runs[i].seed);
    }

    // Scenario generation is sequential and cached so shared keys reuse the
    // same instance; files are written once per scenario.
    std::map<std::string, Scenario> scenarios;
    for (const RunSpec& run : runs) {
        if (scenarios.count(run.scenario_key)) continue;
        Scenario scenario = generate_preset(run.preset, run.seed);
        save_scenario(scenario, config.out_dir / "scenarios" / scenario.id);
        scenarios.emplace(run.scenario_key, std::move(scenario));
    }

    PromptLibrary library(config.prompts_dir.empty() ? PromptLibrary::default_root()
                                                     : config.prompts_dir);
    RunStore store(config.out_dir);
    std::filesystem::path rows_dir = config.out_dir / "rows";
    std::filesystem::create_directories(rows_dir);

    std::vector<ResultRow> rows(runs.size());
    std::vector<char> done(runs.size(), 0);
    for (const RunSpec& run : runs) {
        std::filesystem::path row_path = rows_dir / ("row_" + std::to_string(run.index) + ".json");
        if (std::filesystem::exists(row_path)) {
            rows[run.index] = row_from_json(ordered_json::parse(read_text_file(row_path)));
            done[run.index] = 1;
        }
    }

    auto execute = [&](const RunSpec& run) {
        const Scenario& scenario = scenarios.at(run.scenario_key);
        ResultRow row;
        switch (run.engine) {
            case Engine::Reference: {
                try {
                    PolicySet mined = mine_generalize_validate(scenario, /*allow_empty=*/true);
                    write_text_file(config.out_dir / "rules" /
                                        (scenario.id + "__reference.rules"),
                                    emit_policy(mined));
                    row = row_from_metrics(scenario, "reference", "builtin",
                                           grade(scenario, mined, Semantics::PermitOnly));
                } catch (const Error&) {
                    row = failed_row(scenario, "reference", "builtin");
                }
                break;
            }
            case Engine::Exact: {
                try {
                    PolicySet mined = exact_minimal_policy(scenario, 4);
                    write_text_file(config.out_dir / "rules" / (scenario.id + "__exact.rules"),
                                    emit_policy(mined));
                    row = row_from_metrics(scenario, "exact", "builtin",
                                           grade(scenario, mined, Semantics::PermitOnly));
                } catch (const Error&) {
                    row = failed_row(scenario, "exact", "builtin");
                }
                break;
            }
            case Engine::Llm: {
                Provider& provider = *providers[static_cast<std::size_t>(run.provider_index)];
                MiningAttempt attempt =
                    mine_with_regeneration(scenario, *run.strategy, provider, library, &store);
                if (attempt.failed || !attempt.metrics) {
                    row = failed_row(scenario, to_string(*run.strategy), provider.id());
                } else {
                    row = row_from_metrics(scenario, to_string(*run.strategy), provider.id(),
                                           *attempt.metrics);
                }
                break;
            }
        }
        rows[run.index] = row;
        write_text_file(rows_dir / ("row_" + std::to_string(run.index) + ".json"),
                        row_to_json(row).dump(4) + "\n");
    };

    std::vector<std::size_t> pending;
    for (const RunSpec& run : runs) {
        if (!done[run.index]) pending.push_back(run.index);
    }
    int jobs = std::max(1, config.jobs);
    if (jobs == 1 || pending.size() <= 1) {
        for (std::size_t index : pending) execute(runs[index]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        std::mutex error_mutex;
        std::exception_ptr first_error;
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                while (true) {
                    std::size_t slot = next.fetch_add(1);
                    if (slot >= pending.size()) return;
                    try {
                        execute(runs[pending[slot]]);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::string csv = ResultRow::csv_header() + "\n";
    for (const ResultRow& row : rows) csv += row.to_csv() + "\n";
    ExperimentResult result;
    result.csv_path = config.out_dir / "results.csv";
    result.rows = std::move(rows);
    write_text_file(result.csv_path, csv);
    write_summary_files(config.out_dir, csv);
    return result;
}

namespace {

struct SummaryCell {
    double sum = 0;
    int count = 0;
    int failed = 0;
};

struct SummaryAxis {
    // label -> sort value, column labels in first-appearance order
    std::vector<std::pair<std::string, double>> row_labels;
    std::vector<std::string> columns;
    std::map<std::pair<std::string, std::string>, SummaryCell> cells;  // (row, column)
};

struct RowPlacement {
    bool scalability = false;
    std::string label;
    double sort = 0;
};

RowPlacement place_row(const ResultRow& row) {
    RowPlacement placement;
    std::string id = row.scenario_id;
    std::size_t cut = id.rfind("-s");
    if (cut != std::string::npos) {
        if (auto preset = find_preset(id.substr(0, cut))) {
            placement.scalability = preset->scalability;
            placement.label = preset->row_label;
            placement.sort = std::stod(preset->row_label);
            return placement;
        }
    }
    double percent = row.density.empty() ? 0.0 : std::stod(row.density) * 100.0;
    placement.label = format_double(percent, 2);
    placement.sort = percent;
    return placement;
}

std::string config_label(const ResultRow& row) {
    if (row.provider == "builtin") return row.strategy;
    return row.provider + "/" + row.strategy;
}

std::string render_table(const SummaryAxis& axis, const std::string& first_column,
                         int decimals) {
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{first_column};
    header.insert(header.end(), axis.columns.begin(), axis.columns.end());
    grid.push_back(header);

    for (const auto& [label, unused] : axis.row_labels) {
        std::vector<std::string> line{label};
        for (const std::string& column : axis.columns) {
            auto it = axis.cells.find({label, column});
            if (it == axis.cells.end()) {
                line.push_back("-");
            } else if (it->second.count == 0) {
                line.push_back("*");
            } else {
                line.push_back(format_double(it->second.sum / it->second.count, decimals));
            }
        }
        grid.push_back(std::move(line));
    }

    std::vector<std::size_t> widths(grid[0].size(), 0);
    for (const auto& line : grid) {
        for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
    }
    std::string out;
    for (const auto& line : grid) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            std::string cell = line[c];
            cell.resize(widths[c], ' ');
            out += cell;
            if (c + 1 < line.size()) out += "  ";
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> parse_csv_rows(const std::string& csv_text) {
    std::vector<ResultRow> rows;
    std::istringstream stream(csv_text);
    std::string line;
    bool first = true;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            first = false;
            continue;
        }
        if (line.empty()) continue;
        rows.push_back(ResultRow::from_csv(line));
    }
    return rows;
}

} // namespace

std::map<std::string, std::string> build_summaries(const std::string& csv_text) {
    std::vector<ResultRow> rows = parse_csv_rows(csv_text);

    const std::vector<std::pair<std::string, int>> metrics = {
        {"ratio", 1}, {"accuracy", 2}, {"precision", 2}, {"recall", 2}, {"f1", 2}};

    std::map<std::string, std::string> out;
    for (const auto& [metric, decimals] : metrics) {
        SummaryAxis density_axis;
        SummaryAxis scale_axis;
        for (const ResultRow& row : rows) {
            RowPlacement placement = place_row(row);
            SummaryAxis& axis = placement.scalability ? scale_axis : density_axis;
            std::string column = config_label(row);
            if (std::find(axis.columns.begin(), axis.columns.end(), column) ==
                axis.columns.end()) {
                axis.columns.push_back(column);
            }
            bool seen = false;
            for (const auto& [label, unused] : axis.row_labels) {
                if (label == placement.label) {
                    seen = true;
                    break;
                }
            }
            if (!seen) axis.row_labels.emplace_back(placement.label, placement.sort);

            SummaryCell& cell = axis.cells[{placement.label, column}];
            if (row.failed) {
                ++cell.failed;
            } else {
                std::string value;
                if (metric == "ratio") value = row.ratio;
                else if (metric == "accuracy") value = row.accuracy;
                else if (metric == "precision") value = row.precision;
                else if (metric == "recall") value = row.recall;
                else value = row.f1;
                if (!value.empty()) {
                    cell.sum += std::stod(value);
                    ++cell.count;
                }
            }
        }

        std::string text;
        for (SummaryAxis* axis : {&density_axis, &scale_axis}) {
            if (axis->row_labels.empty()) continue;
            std::sort(axis->row_labels.begin(), axis->row_labels.end(),
                      [](const auto& a, const auto& b) { return a.second < b.second; });
            // Ratios are rounded to one decimal here, table convention;
            // the CSV keeps the exact values.
            std::string first_column =
                axis == &scale_axis ? "Total Elements in ACM" : "Percentage of 1s";
            std::string table = render_table(*axis, first_column, decimals);
            if (!text.empty()) text += "\n";
            text += metric + " (" + (axis == &scale_axis ? "by total elements" : "by density") +
                    ")\n" + table;
        }
        out[metric] = text;
    }
    return out;
}

void write_summary_files(const std::filesystem::path& dir, const std::string& csv_text) {
    std::map<std::string, std::string> summaries = build_summaries(csv_text);
    for (const auto& [metric, text] : summaries) {
        write_text_file(dir / ("summary_" + metric + ".txt"), text);
    }

    // Gnuplot-ready data: one file per metric, x = density% or total
    // elements, one column per configuration, "?" marks failed cells.
    std::vector<ResultRow> rows = parse_csv_rows(csv_text);
    std::string gp = "set datafile missing \"?\"\nset key outside\nset style data linespoints\n";
    for (const std::string& metric : {"ratio", "accuracy", "precision", "recall", "f1"}) {
        for (bool scalability : {false, true}) {
            SummaryAxis axis;
            for (const ResultRow& row : rows) {
                RowPlacement placement = place_row(row);
                if (placement.scalability != scalability) continue;
                std::string column = config_label(row);
                if (std::find(axis.columns.begin(), axis.columns.end(), column) ==
                    axis.columns.end()) {
                    axis.columns.push_back(column);
                }
                bool seen = false;
                for (const auto& [label, unused] : axis.row_labels) {
                    if (label == placement.label) {
                        seen = true;
                        break;
                    }
                }
                if (!seen) axis.row_labels.emplace_back(placement.label, placement.sort);
                SummaryCell& cell = axis.cells[{placement.label, column}];
                if (row.failed) {
                    ++cell.failed;
                    continue;
                }
                std::string value;
                if (metric == "ratio") value = row.ratio;
                else if (metric == "accuracy") value = row.accuracy;
                else if (metric == "precision") value = row.precision;
                else if (metric == "recall") value = row.recall;
                else value = row.f1;
                if (!value.empty()) {
                    cell.sum += std::stod(value);
                    ++cell.count;
                }
            }
            if (axis.row_labels.empty()) continue;
            std::sort(axis.row_labels.begin(), axis.row_labels.end(),
                      [](const auto& a, const auto& b) { return a.second < b.second; });
            std::string name =
                std::string("plot_") + metric + (scalability ? "_scale" : "_density") + ".dat";
            std::string dat = "# x";
            for (const std::string& column : axis.columns) dat += " \"" + column + "\"";
            dat += "\n";
            for (const auto& [label, sort] : axis.row_labels) {
                dat += label;
                for (const std::string& column : axis.columns) {
                    auto it = axis.cells.find({label, column});
                    if (it == axis.cells.end() || it->second.count == 0) {
                        dat += " ?";
                    } else {
                        dat += " " + format_double(it->second.sum / it->second.count, 4);
                    }
                }
                dat += "\n";
            }
            write_text_file(dir / name, dat);
            gp += "set title \"" + std::string(metric) + "\"\nplot";
            for (std::size_t c = 0; c < axis.columns.size(); ++c) {
                if (c > 0) gp += ",";
                gp += " \"" + name + "\" using 1:" + std::to_string(c + 2) + " title \"" +
                      axis.columns[c] + "\"";
            }
            gp += "\npause -1\n";
        }
    }
    write_text_file(dir / "plot.gp", gp);
}

} // namespace minebench
