#include "minebench/provider.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>

#include <httplib.h>
#include <json.hpp>

#include "minebench/serialize.hpp"

namespace minebench {

namespace {

std::string utc_now() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string flatten_bundle(const PromptBundle& bundle) {
    std::string text = bundle.text;
    for (const auto& [name, content] : bundle.attachments) {
        text += "\n\n--- FILE: " + name + " ---\n" + content;
    }
    return text;
}

std::string sanitize_component(const std::string& s) {
    std::string out;
    for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
    return out;
}

} // namespace

std::string ProviderConfig::resolved_credential_env() const {
    if (!credential_env.empty()) return credential_env;
    std::string upper;
    for (char c : provider_id) {
        upper += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return "MINEBENCH_" + upper + "_KEY";
}

StubProvider::StubProvider(std::vector<std::string> responses, std::string id)
    : responses_(std::move(responses)), id_(std::move(id)) {}

std::string StubProvider::complete(const PromptBundle&, const RequestContext&) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (responses_.empty()) throw TransportError("stub provider has no scripted responses");
    std::size_t index = std::min(static_cast<std::size_t>(calls_), responses_.size() - 1);
    ++calls_;
    return responses_[index];
}

int StubProvider::calls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
}

FixtureProvider::FixtureProvider(std::filesystem::path root, std::string id)
    : root_(std::move(root)), id_(std::move(id)) {}

std::string FixtureProvider::complete(const PromptBundle&, const RequestContext& ctx) {
    std::string base = sanitize_component(ctx.scenario_id) + "__" + sanitize_component(ctx.strategy);
    std::filesystem::path specific =
        root_ / (base + "__attempt" + std::to_string(ctx.attempt_index) + ".txt");
    if (std::filesystem::exists(specific)) return read_text_file(specific);
    std::filesystem::path generic = root_ / (base + ".txt");
    if (std::filesystem::exists(generic)) return read_text_file(generic);
    throw TransportError("no recorded response at " + specific.string());
}

HttpProvider::HttpProvider(ProviderConfig config) : config_(std::move(config)) {}

std::string HttpProvider::complete(const PromptBundle& bundle, const RequestContext&) {
    std::lock_guard<std::mutex> lock(rate_mutex_);  // serialize requests per provider

    std::size_t scheme_end = config_.endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw InvalidParams("endpoint must include a scheme: " + config_.endpoint);
    }
    std::size_t path_start = config_.endpoint.find('/', scheme_end + 3);
    std::string base = path_start == std::string::npos ? config_.endpoint
                                                       : config_.endpoint.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/"
                                                       : config_.endpoint.substr(path_start);

    const char* key = std::getenv(config_.resolved_credential_env().c_str());

    nlohmann::json body;
    std::string text = flatten_bundle(bundle);
    if (config_.wire == "gemini") {
        body = {{"contents", {{{"parts", {{{"text", text}}}}}}},
                {"generationConfig", {{"maxOutputTokens", config_.max_output_tokens}}}};
    } else if (config_.wire == "openai") {
        body = {{"model", config_.model_name},
                {"messages", {{{"role", "user"}, {"content", text}}}},
                {"max_tokens", config_.max_output_tokens}};
    } else {
        throw InvalidParams("unknown wire format: " + config_.wire);
    }
    nlohmann::json extra = nlohmann::json::parse(config_.extra_params_json);
    for (auto& [k, v] : extra.items()) body[k] = v;

    httplib::Client client(base);
    client.set_connection_timeout(config_.timeout_s, 0);
    client.set_read_timeout(config_.timeout_s, 0);
    httplib::Headers headers;
    if (key) {
        if (config_.wire == "gemini") {
            headers.emplace("x-goog-api-key", key);
        } else {
            headers.emplace("Authorization", std::string("Bearer ") + key);
        }
    }

    auto result = client.Post(path, headers, body.dump(), "application/json");
    if (!result) {
        throw TransportError("request to " + config_.provider_id +
                             " failed: " + httplib::to_string(result.error()));
    }
    if (result->status != 200) {
        throw TransportError("request to " + config_.provider_id + " returned HTTP " +
                             std::to_string(result->status));
    }

    try {
        nlohmann::json response = nlohmann::json::parse(result->body);
        if (config_.wire == "gemini") {
            std::string out;
            for (const auto& part : response.at("candidates").at(0).at("content").at("parts")) {
                out += part.at("text").get<std::string>();
            }
            return out;
        }
        return response.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw TransportError("unexpected response shape from " + config_.provider_id + ": " +
                             e.what());
    }
}

std::string MiningAttempt::to_json() const {
    nlohmann::ordered_json doc;
    doc["scenario_id"] = scenario_id;
    doc["strategy"] = strategy;
    doc["provider_id"] = provider_id;
    doc["model"] = model;
    doc["attempt_index"] = attempt_index;
    doc["timestamp"] = timestamp;
    doc["failed"] = failed;
    doc["failure_cause"] = failure_cause;
    doc["skipped_lines"] = skipped_lines;
    if (policy) {
        doc["rules"] = nlohmann::ordered_json::array();
        for (const Rule& r : policy->rules) doc["rules"].push_back(emit_rule_line(r));
    } else {
        doc["rules"] = nullptr;
    }
    if (metrics) {
        doc["metrics"] = nlohmann::ordered_json::parse(metrics->to_json());
    } else {
        doc["metrics"] = nullptr;
    }
    return doc.dump(4) + "\n";
}

RunStore::RunStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path RunStore::attempt_base(const MiningAttempt& attempt) const {
    return dir_ / "attempts" /
           (sanitize_component(attempt.scenario_id) + "__" + sanitize_component(attempt.strategy) +
            "__" + sanitize_component(attempt.provider_id) + "__a" +
            std::to_string(attempt.attempt_index));
}

void RunStore::persist_raw(const MiningAttempt& attempt) const {
    auto base = attempt_base(attempt);
    write_text_file(base.replace_extension(".txt"), attempt.raw_response);
}

void RunStore::persist_attempt(const MiningAttempt& attempt) const {
    auto base = attempt_base(attempt);
    write_text_file(base.replace_extension(".json"), attempt.to_json());
}

MiningAttempt mine_once(const Scenario& scenario, PromptStrategy strategy, Provider& provider,
                        const PromptLibrary& library, int attempt_index, const RunStore* store) {
    MiningAttempt attempt;
    attempt.scenario_id = scenario.id;
    attempt.strategy = to_string(strategy);
    attempt.provider_id = provider.id();
    attempt.model = provider.model();
    attempt.attempt_index = attempt_index;
    attempt.timestamp = utc_now();

    PromptBundle bundle = library.build_prompt(strategy, scenario);
    RequestContext ctx{scenario.id, to_string(strategy), attempt_index};

    try {
        attempt.raw_response = provider.complete(bundle, ctx);
    } catch (const TransportError&) {
        try {
            attempt.raw_response = provider.complete(bundle, ctx);
        } catch (const TransportError& retry_error) {
            attempt.failed = true;
            attempt.failure_cause = std::string("transport: ") + retry_error.what();
            if (store) store->persist_attempt(attempt);
            return attempt;
        }
    }
    if (store) store->persist_raw(attempt);

    try {
        ParsedRules parsed = parse_rule_lines(attempt.raw_response);
        attempt.skipped_lines = parsed.skipped_lines;
        attempt.policy = std::move(parsed.policy);
    } catch (const Error& e) {
        attempt.failed = true;
        attempt.failure_cause = std::string("parse: ") + e.what();
        if (store) store->persist_attempt(attempt);
        return attempt;
    }

    try {
        attempt.metrics = grade(scenario, *attempt.policy, expected_semantics(strategy));
    } catch (const Error& e) {
        attempt.failed = true;
        attempt.failure_cause = std::string("grade: ") + e.what();
        attempt.metrics.reset();
    }
    if (store) store->persist_attempt(attempt);
    return attempt;
}

bool is_anomalous(const MiningAttempt& attempt, const Scenario& scenario) {
    if (attempt.failed || !attempt.metrics) return true;
    const Fraction threshold(9, 10);
    if (attempt.metrics->accuracy < threshold) return true;
    if (attempt.metrics->precision < threshold) return true;
    return attempt.metrics->mined_size == scenario.acm.ones();
}

namespace {

// Higher F1 wins, then higher accuracy, then the smaller policy; the first
// attempt is kept on a full tie.
const MiningAttempt& better_attempt(const MiningAttempt& a, const MiningAttempt& b) {
    bool a_ok = !a.failed && a.metrics.has_value();
    bool b_ok = !b.failed && b.metrics.has_value();
    if (a_ok != b_ok) return a_ok ? a : b;
    if (!a_ok) return a;
    if (a.metrics->f1 != b.metrics->f1) return a.metrics->f1 > b.metrics->f1 ? a : b;
    if (a.metrics->accuracy != b.metrics->accuracy) {
        return a.metrics->accuracy > b.metrics->accuracy ? a : b;
    }
    if (a.metrics->mined_size != b.metrics->mined_size) {
        return a.metrics->mined_size < b.metrics->mined_size ? a : b;
    }
    return a;
}

} // namespace

MiningAttempt mine_with_regeneration(const Scenario& scenario, PromptStrategy strategy,
                                     Provider& provider, const PromptLibrary& library,
                                     const RunStore* store) {
    MiningAttempt first = mine_once(scenario, strategy, provider, library, 1, store);
    if (!is_anomalous(first, scenario)) return first;
    MiningAttempt second = mine_once(scenario, strategy, provider, library, 2, store);
    return better_attempt(first, second);
}

} // namespace minebench
