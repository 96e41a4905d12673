// Command-line front end: scenario generation, rendering, mining,
// grading, and the phased experiment runner.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minebench/experiment.hpp"
#include "minebench/generator.hpp"
#include "minebench/metrics.hpp"
#include "minebench/miner.hpp"
#include "minebench/prompts.hpp"
#include "minebench/provider.hpp"
#include "minebench/serialize.hpp"

namespace {

using namespace minebench;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

// Minimal key=value file with optional [section] headers; keys are
// flattened to "section.key".
std::map<std::string, std::string> parse_kv_file(const std::filesystem::path& path) {
    std::map<std::string, std::string> out;
    std::istringstream stream(read_text_file(path));
    std::string line;
    std::string section;
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(stream, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) continue;
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (!value.empty() && value.front() == '"' && value.back() == '"' && value.size() > 1) {
            value = value.substr(1, value.size() - 2);
        }
        out[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

std::vector<ProviderConfig> load_provider_configs(const std::filesystem::path& file,
                                                  const std::vector<std::string>& ids) {
    std::vector<ProviderConfig> configs;
    if (file.empty()) {
        if (!ids.empty()) {
            throw InvalidParams("--provider requires --providers-config in live mode");
        }
        return configs;
    }
    auto kv = parse_kv_file(file);
    std::vector<std::string> wanted = ids;
    if (wanted.empty()) {
        // every section named provider.<id>
        std::set<std::string> seen;
        for (const auto& [key, value] : kv) {
            if (key.rfind("provider.", 0) != 0) continue;
            std::size_t dot = key.find('.', 9);
            if (dot == std::string::npos) continue;
            seen.insert(key.substr(9, dot - 9));
        }
        wanted.assign(seen.begin(), seen.end());
    }
    for (const std::string& id : wanted) {
        std::string prefix = "provider." + id + ".";
        ProviderConfig config;
        config.provider_id = id;
        auto get = [&](const std::string& key) -> std::optional<std::string> {
            auto it = kv.find(prefix + key);
            if (it == kv.end()) return std::nullopt;
            return it->second;
        };
        if (auto v = get("model")) config.model_name = *v;
        if (auto v = get("endpoint")) config.endpoint = *v;
        if (auto v = get("wire")) config.wire = *v;
        if (auto v = get("credential_env")) config.credential_env = *v;
        if (auto v = get("timeout")) config.timeout_s = std::stoi(*v);
        if (auto v = get("max_output_tokens")) config.max_output_tokens = std::stoi(*v);
        if (auto v = get("extra_params")) config.extra_params_json = *v;
        if (config.endpoint.empty()) {
            throw InvalidParams("provider " + id + " has no endpoint in " + file.string());
        }
        configs.push_back(std::move(config));
    }
    return configs;
}

void print_report(const Scenario& scenario, const std::string& rules_name,
                  const MetricsReport& report) {
    Fraction d = density(scenario.acm);
    std::printf("scenario  %s\n", scenario.id.c_str());
    std::printf("cells     %lld (%dx%d)   ones %lld   density %.6f (%s)\n",
                static_cast<long long>(scenario.acm.cell_count()), scenario.acm.n_subjects(),
                scenario.acm.n_objects(), static_cast<long long>(scenario.acm.ones()), d.value(),
                d.exact_string().c_str());
    std::printf("rules     %lld mined (%s) / %lld ground truth   ratio %s (exact %s)\n",
                static_cast<long long>(report.mined_size), rules_name.c_str(),
                static_cast<long long>(report.ground_truth_size),
                report.size_ratio_rounded().c_str(), report.size_ratio.exact_string().c_str());
    std::printf("counts    tp %lld  tn %lld  fp %lld  fn %lld\n",
                static_cast<long long>(report.counts.tp), static_cast<long long>(report.counts.tn),
                static_cast<long long>(report.counts.fp),
                static_cast<long long>(report.counts.fn));
    std::printf("accuracy  %.6f\nprecision %.6f\nrecall    %.6f\nf1        %.6f\n",
                report.accuracy.value(), report.precision.value(), report.recall.value(),
                report.f1.value());
}

void append_csv_row(const std::filesystem::path& csv, const ResultRow& row) {
    std::string text = std::filesystem::exists(csv) ? read_text_file(csv)
                                                    : ResultRow::csv_header() + "\n";
    text += row.to_csv() + "\n";
    write_text_file(csv, text);
}

int cmd_generate(const std::string& preset_name, GenerationParams params, std::uint64_t seed,
                 std::optional<std::int64_t> exact_ones, const std::filesystem::path& out) {
    Scenario scenario = [&] {
        if (!preset_name.empty()) {
            auto preset = find_preset(preset_name);
            if (!preset) throw InvalidParams("unknown preset: " + preset_name);
            return generate_preset(*preset, seed);
        }
        params.seed = seed;
        params.exact_ones = exact_ones;
        return generate_scenario(params);
    }();

    std::filesystem::path dir = out / scenario.id;
    save_scenario(scenario, dir);
    Fraction d = density(scenario.acm);
    std::printf("scenario %s: %dx%d, %lld ones, density %.6f (%s), %d attempt(s)\n",
                scenario.id.c_str(), scenario.acm.n_subjects(), scenario.acm.n_objects(),
                static_cast<long long>(scenario.acm.ones()), d.value(), d.exact_string().c_str(),
                scenario.attempts);
    std::printf("wrote %s\n", dir.string().c_str());
    return kExitOk;
}

int cmd_render(const std::filesystem::path& scenario_dir, const std::string& method_name,
               bool verbose, std::filesystem::path out) {
    Scenario scenario = load_scenario(scenario_dir);
    if (out.empty()) out = scenario_dir;
    InputMethod method = input_method_from_string(method_name);
    switch (method) {
        case InputMethod::AccessData:
            if (verbose) {
                write_text_file(out / "access_data_verbose.txt",
                                render_verbose_access_data(scenario));
                std::printf("wrote %s\n", (out / "access_data_verbose.txt").string().c_str());
            } else {
                write_text_file(out / "access_data.txt", render_access_data(scenario));
                std::printf("wrote %s\n", (out / "access_data.txt").string().c_str());
            }
            break;
        case InputMethod::AcmPlusAttributes: {
            if (verbose) {
                write_text_file(out / "acm_verbose.txt", render_verbose_acm(scenario));
                std::printf("wrote %s\n", (out / "acm_verbose.txt").string().c_str());
                break;
            }
            auto [acm_text, attrs] = render_acm_input(scenario);
            write_text_file(out / "ACM.txt", acm_text);
            write_text_file(out / "output.json", attrs);
            std::printf("wrote %s and %s\n", (out / "ACM.txt").string().c_str(),
                        (out / "output.json").string().c_str());
            break;
        }
        case InputMethod::AclPlusAttributes: {
            if (verbose) {
                write_text_file(out / "acl_verbose.txt", render_verbose_acl(scenario));
                std::printf("wrote %s\n", (out / "acl_verbose.txt").string().c_str());
                break;
            }
            auto [acl_text, attrs] = render_acl_input(scenario);
            write_text_file(out / "ACL.txt", acl_text);
            write_text_file(out / "output.json", attrs);
            std::printf("wrote %s and %s\n", (out / "ACL.txt").string().c_str(),
                        (out / "output.json").string().c_str());
            break;
        }
    }
    return kExitOk;
}

int cmd_mine(const std::filesystem::path& scenario_dir, const std::string& engine_name,
             const std::string& strategy_name, const std::string& provider_id,
             const std::filesystem::path& providers_file, bool offline,
             const std::filesystem::path& fixtures, std::filesystem::path out_dir, int budget,
             bool allow_empty, const std::filesystem::path& prompts_dir) {
    Scenario scenario = load_scenario(scenario_dir);
    if (out_dir.empty()) out_dir = scenario_dir;
    Engine engine = engine_from_string(engine_name);

    if (engine == Engine::Reference || engine == Engine::Exact) {
        PolicySet mined = engine == Engine::Reference
                              ? mine_generalize_validate(scenario, allow_empty)
                              : exact_minimal_policy(scenario, budget);
        std::filesystem::path rules_path = out_dir / "mined.rules";
        write_text_file(rules_path, emit_policy(mined));
        MetricsReport report = grade(scenario, mined, Semantics::PermitOnly);
        print_report(scenario, engine_name, report);
        std::printf("wrote %s\n", rules_path.string().c_str());
        return kExitOk;
    }

    if (strategy_name.empty()) throw InvalidParams("llm engine requires --strategy");
    PromptStrategy strategy = strategy_from_string(strategy_name);
    PromptLibrary library(prompts_dir.empty() ? PromptLibrary::default_root() : prompts_dir);

    std::unique_ptr<Provider> provider;
    if (offline) {
        provider = std::make_unique<FixtureProvider>(
            fixtures.empty() ? out_dir / "fixtures" : fixtures,
            provider_id.empty() ? "fixture" : provider_id);
    } else {
        if (provider_id.empty()) throw InvalidParams("llm engine requires --provider");
        auto configs = load_provider_configs(providers_file, {provider_id});
        provider = std::make_unique<HttpProvider>(configs.at(0));
    }

    RunStore store(out_dir);
    MiningAttempt attempt = mine_with_regeneration(scenario, strategy, *provider, library, &store);
    if (attempt.failed || !attempt.metrics) {
        std::printf("scenario %s: * (no valid policy; cause: %s)\n", scenario.id.c_str(),
                    attempt.failure_cause.c_str());
        return kExitOk;  // failure is data
    }
    std::filesystem::path rules_path = out_dir / "mined.rules";
    write_text_file(rules_path, emit_policy(*attempt.policy));
    print_report(scenario, strategy_name, *attempt.metrics);
    std::printf("wrote %s\n", rules_path.string().c_str());
    return kExitOk;
}

int cmd_evaluate(const std::filesystem::path& scenario_dir, const std::filesystem::path& rules,
                 const std::string& semantics_name, const std::filesystem::path& csv,
                 const std::filesystem::path& json_out) {
    Scenario scenario = load_scenario(scenario_dir);
    Semantics sem;
    if (semantics_name == "permit-only") sem = Semantics::PermitOnly;
    else if (semantics_name == "deny-overrides") sem = Semantics::DenyOverrides;
    else throw InvalidParams("semantics must be permit-only or deny-overrides");

    ParsedRules parsed = parse_rule_lines(read_text_file(rules));
    if (parsed.skipped_lines > 0) {
        std::fprintf(stderr, "note: skipped %d non-rule line(s)\n", parsed.skipped_lines);
    }
    MetricsReport report = grade(scenario, parsed.policy, sem);
    print_report(scenario, rules.filename().string(), report);

    if (!csv.empty()) {
        ResultRow row;
        row.scenario_id = scenario.id;
        row.strategy = rules.stem().string();
        row.provider = "file";
        row.density = [&] {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", density(scenario.acm).value());
            return std::string(buf);
        }();
        row.mined_size = std::to_string(report.mined_size);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", report.size_ratio.value());
        row.ratio = buf;
        std::snprintf(buf, sizeof(buf), "%.6f", report.accuracy.value());
        row.accuracy = buf;
        std::snprintf(buf, sizeof(buf), "%.6f", report.precision.value());
        row.precision = buf;
        std::snprintf(buf, sizeof(buf), "%.6f", report.recall.value());
        row.recall = buf;
        std::snprintf(buf, sizeof(buf), "%.6f", report.f1.value());
        row.f1 = buf;
        append_csv_row(csv, row);
        std::printf("appended %s\n", csv.string().c_str());
    }
    if (!json_out.empty()) {
        write_text_file(json_out, report.to_json() + "\n");
        std::printf("wrote %s\n", json_out.string().c_str());
    }
    return kExitOk;
}

int cmd_experiment(ExperimentConfig config, const std::filesystem::path& providers_file,
                   const std::vector<std::string>& provider_ids) {
    if (!providers_file.empty() || !provider_ids.empty()) {
        config.providers = load_provider_configs(providers_file, provider_ids);
    } else if (config.offline && !provider_ids.empty()) {
        for (const std::string& id : provider_ids) {
            ProviderConfig pc;
            pc.provider_id = id;
            config.providers.push_back(pc);
        }
    }
    ExperimentResult result = run_experiment(config);
    std::printf("wrote %s (%zu rows)\n", result.csv_path.string().c_str(), result.rows.size());
    for (const auto& [metric, table] : build_summaries(read_text_file(result.csv_path))) {
        std::printf("\n%s", table.c_str());
    }
    return kExitOk;
}

int cmd_summarize(const std::filesystem::path& csv, std::filesystem::path out) {
    std::string text = read_text_file(csv);
    if (out.empty()) out = csv.parent_path();
    write_summary_files(out, text);
    for (const auto& [metric, table] : build_summaries(text)) {
        std::printf("\n%s", table.c_str());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ABAC policy mining benchmark toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file merged under CLI flags");

    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
    int jobs = 1;
    bool offline = false;
    app.add_option("--seed", seed, "base random seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--jobs", jobs, "parallel runs for experiments");
    app.add_flag("--offline", offline, "never contact live providers; use fixtures");

    // generate
    auto* generate = app.add_subcommand("generate", "synthesize a scenario");
    std::string preset_name;
    int subjects = 15, objects = 15, subject_attrs = 3, object_attrs = 3, cardinality = 5;
    int rules = 10, max_conditions = 3, max_attempts = 1000;
    double target_density = 0.3, tolerance = 0.02;
    std::int64_t exact_ones_value = -1;
    generate->add_option("--preset", preset_name, "TC1..TC5 or scal-<total>");
    generate->add_option("--subjects", subjects);
    generate->add_option("--objects", objects);
    generate->add_option("--subject-attrs", subject_attrs);
    generate->add_option("--object-attrs", object_attrs);
    generate->add_option("--cardinality", cardinality);
    generate->add_option("--rules", rules);
    generate->add_option("--density", target_density);
    generate->add_option("--tolerance", tolerance);
    generate->add_option("--max-conditions", max_conditions);
    generate->add_option("--max-attempts", max_attempts);
    generate->add_option("--exact-ones", exact_ones_value, "resample until this ones-count");

    // render
    auto* render = app.add_subcommand("render", "write a scenario in one input method");
    std::filesystem::path scenario_dir;
    std::string method = "access_data";
    bool verbose = false;
    render->add_option("--scenario", scenario_dir)->required();
    render->add_option("--method", method, "access_data | acm | acl");
    render->add_flag("--verbose-format", verbose, "human-readable variant");

    // mine
    auto* mine = app.add_subcommand("mine", "run a mining engine over a scenario");
    std::string engine = "reference", strategy_name, provider_id;
    std::filesystem::path providers_file, fixtures_dir, prompts_dir;
    int budget = 4;
    bool allow_empty = false;
    mine->add_option("--scenario", scenario_dir)->required();
    mine->add_option("--engine", engine, "reference | exact | llm");
    mine->add_option("--strategy", strategy_name, "prompt strategy (llm engine)");
    mine->add_option("--provider", provider_id, "provider id (llm engine)");
    mine->add_option("--providers-config", providers_file, "provider definitions file");
    mine->add_option("--fixtures", fixtures_dir, "recorded responses for --offline");
    mine->add_option("--prompts", prompts_dir, "prompt template directory");
    mine->add_option("--budget", budget, "size budget for the exact engine");
    mine->add_flag("--allow-empty", allow_empty, "all-zero matrix mines to an empty policy");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "grade a rules file against a scenario");
    std::filesystem::path rules_path, csv_path, json_path;
    std::string semantics_name = "permit-only";
    evaluate->add_option("--scenario", scenario_dir)->required();
    evaluate->add_option("--rules", rules_path)->required();
    evaluate->add_option("--semantics", semantics_name, "permit-only | deny-overrides");
    evaluate->add_option("--csv", csv_path, "append a results row here");
    evaluate->add_option("--json", json_path, "write the report as JSON");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a phase across presets");
    std::string phase_name = "custom";
    std::vector<std::string> preset_names, strategy_names, engine_names, provider_ids;
    std::vector<std::uint64_t> seeds;
    bool fresh = false;
    experiment->add_option("--phase", phase_name,
                           "model-screening | input-formats | prompt-study | scalability | custom");
    experiment->add_option("--presets", preset_names)->delimiter(',');
    experiment->add_option("--strategies", strategy_names)->delimiter(',');
    experiment->add_option("--engines", engine_names)->delimiter(',');
    experiment->add_option("--provider", provider_ids)->delimiter(',');
    experiment->add_option("--providers-config", providers_file);
    experiment->add_option("--seeds", seeds)->delimiter(',');
    experiment->add_option("--fixtures", fixtures_dir, "recorded responses for --offline");
    experiment->add_option("--prompts", prompts_dir, "prompt template directory");
    experiment->add_flag("--fresh-scenarios", fresh, "one scenario per configuration");

    // summarize
    auto* summarize = app.add_subcommand("summarize", "rebuild summary tables from a results CSV");
    summarize->add_option("--csv", csv_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            GenerationParams params = GenerationParams::uniform(
                subjects, objects, subject_attrs, object_attrs, cardinality, rules,
                target_density, tolerance, max_conditions, seed);
            params.max_attempts = max_attempts;
            std::optional<std::int64_t> exact;
            if (exact_ones_value >= 0) exact = exact_ones_value;
            return cmd_generate(preset_name, params, seed, exact,
                                out_dir.empty() ? "scenarios" : out_dir);
        }
        if (render->parsed()) return cmd_render(scenario_dir, method, verbose, out_dir);
        if (mine->parsed()) {
            return cmd_mine(scenario_dir, engine, strategy_name, provider_id, providers_file,
                            offline, fixtures_dir, out_dir, budget, allow_empty, prompts_dir);
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(scenario_dir, rules_path, semantics_name, csv_path, json_path);
        }
        if (experiment->parsed()) {
            ExperimentConfig config;
            config.phase = phase_from_string(phase_name);
            config.presets = preset_names;
            for (const std::string& s : strategy_names) {
                config.strategies.push_back(strategy_from_string(s));
            }
            for (const std::string& e : engine_names) {
                config.engines.push_back(engine_from_string(e));
            }
            if (!seeds.empty()) config.seeds = seeds;
            else config.seeds = {seed};
            config.out_dir = out_dir.empty() ? "runs" : out_dir;
            config.jobs = jobs;
            config.offline = offline;
            config.fixtures_dir = fixtures_dir;
            config.prompts_dir = prompts_dir;
            config.fresh_scenarios = fresh;
            return cmd_experiment(std::move(config), providers_file, provider_ids);
        }
        if (summarize->parsed()) return cmd_summarize(csv_path, out_dir);
    } catch (const InvalidParams& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const IncompatibleInputMethod& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
