#pragma once

#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "minebench/core.hpp"
#include "minebench/metrics.hpp"
#include "minebench/prompts.hpp"

namespace minebench {

// Connection settings for one model endpoint. The credential itself is never
// stored or logged; only the name of the environment variable holding it.
struct ProviderConfig {
    std::string provider_id;
    std::string model_name;
    std::string endpoint;       // e.g. https://host/v1/chat/completions
    std::string wire = "openai";  // request/response shape: "openai" or "gemini"
    std::string credential_env;   // defaults to MINEBENCH_<PROVIDER>_KEY
    int timeout_s = 120;
    int max_output_tokens = 8192;
    // Decoding parameters forwarded opaquely into the request body.
    std::string extra_params_json = "{}";

    std::string resolved_credential_env() const;
};

// Identifies one request for fixtures and persistence.
struct RequestContext {
    std::string scenario_id;
    std::string strategy;
    int attempt_index = 1;
};

// Abstract completion backend. Implementations throw TransportError for
// network-level failures; any returned text counts as a model response.
class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string complete(const PromptBundle& bundle, const RequestContext& ctx) = 0;
    virtual std::string id() const = 0;
    virtual std::string model() const { return ""; }
};

// Scripted provider for tests: replays queued responses in order and counts
// calls. An exhausted queue repeats the last response.
class StubProvider : public Provider {
public:
    explicit StubProvider(std::vector<std::string> responses, std::string id = "stub");

    std::string complete(const PromptBundle& bundle, const RequestContext& ctx) override;
    std::string id() const override { return id_; }

    int calls() const;

private:
    std::vector<std::string> responses_;
    std::string id_;
    mutable std::mutex mutex_;
    int calls_ = 0;
};

// Replays recorded responses from files named
// <scenario>__<strategy>__attempt<k>.txt (falling back to
// <scenario>__<strategy>.txt). A missing recording is a transport failure,
// which mine_once records as a failed attempt.
class FixtureProvider : public Provider {
public:
    explicit FixtureProvider(std::filesystem::path root, std::string id = "fixture");

    std::string complete(const PromptBundle& bundle, const RequestContext& ctx) override;
    std::string id() const override { return id_; }

private:
    std::filesystem::path root_;
    std::string id_;
};

// Live HTTP adapter. The prompt text plus labeled attachment blocks go out
// as a single user message in the configured wire shape.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(ProviderConfig config);

    std::string complete(const PromptBundle& bundle, const RequestContext& ctx) override;
    std::string id() const override { return config_.provider_id; }
    std::string model() const override { return config_.model_name; }

private:
    ProviderConfig config_;
    std::mutex rate_mutex_;
};

// One mining run against one provider. `metrics` is present exactly when
// the response parsed and graded; otherwise `failure_cause` says why (the
// "*" outcome).
struct MiningAttempt {
    std::string scenario_id;
    std::string strategy;
    std::string provider_id;
    std::string model;
    int attempt_index = 1;
    std::string timestamp;
    std::string raw_response;
    bool failed = false;
    std::string failure_cause;
    std::optional<PolicySet> policy;
    std::optional<MetricsReport> metrics;
    int skipped_lines = 0;

    // Everything but the raw response, which lives in a sibling .txt file.
    std::string to_json() const;
};

// Append-only persistence for attempts: one JSON document plus the raw
// response text per attempt, under <dir>/attempts/.
class RunStore {
public:
    explicit RunStore(std::filesystem::path dir);

    void persist_raw(const MiningAttempt& attempt) const;
    void persist_attempt(const MiningAttempt& attempt) const;

private:
    std::filesystem::path attempt_base(const MiningAttempt& attempt) const;
    std::filesystem::path dir_;
};

// Builds the prompt, queries the provider (one retry on transport errors),
// parses and grades the response. Unusable model output becomes a failed
// attempt, not an exception; the raw response is persisted before grading.
MiningAttempt mine_once(const Scenario& scenario, PromptStrategy strategy, Provider& provider,
                        const PromptLibrary& library, int attempt_index = 1,
                        const RunStore* store = nullptr);

// Flags results worth one regeneration: failed runs, accuracy or precision
// below 0.9, or the trivial policy whose rule count equals the number of
// permit cells.
bool is_anomalous(const MiningAttempt& attempt, const Scenario& scenario);

// Runs mine_once; on an anomalous result runs exactly one more attempt and
// keeps the better one (higher F1, then higher accuracy, then smaller
// policy). Both attempts are persisted when a store is given.
MiningAttempt mine_with_regeneration(const Scenario& scenario, PromptStrategy strategy,
                                     Provider& provider, const PromptLibrary& library,
                                     const RunStore* store = nullptr);

} // namespace minebench
