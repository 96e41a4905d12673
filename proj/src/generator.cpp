#include "minebench/generator.hpp"

#include <set>
#include <sstream>

#include "minebench/decision.hpp"
#include "minebench/serialize.hpp"

namespace minebench {

namespace {

std::vector<EntityProfile> draw_profiles(int count, const std::vector<int>& cardinalities,
                                         Rng& rng) {
    std::vector<EntityProfile> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        EntityProfile p;
        p.values.reserve(cardinalities.size());
        for (int card : cardinalities) p.values.push_back(rng.uniform_int(1, card));
        out.push_back(std::move(p));
    }
    return out;
}

Rule draw_rule(const GenerationParams& params, Rng& rng) {
    int total_attrs = params.n_subject_attrs() + params.n_object_attrs();
    int k = rng.uniform_int(1, params.max_conditions_per_rule);

    // Partial Fisher-Yates over the combined attribute list; subject
    // attributes occupy slots [0, S), object attributes [S, S+O).
    std::vector<int> slots(static_cast<std::size_t>(total_attrs));
    for (int i = 0; i < total_attrs; ++i) slots[static_cast<std::size_t>(i)] = i;
    Rule rule;
    rule.decision = Decision::Permit;
    for (int i = 0; i < k; ++i) {
        int j = rng.uniform_int(i, total_attrs - 1);
        std::swap(slots[static_cast<std::size_t>(i)], slots[static_cast<std::size_t>(j)]);
        int slot = slots[static_cast<std::size_t>(i)];
        AttributeValue cond;
        if (slot < params.n_subject_attrs()) {
            cond.attr = {AttributeKind::Subject, slot + 1};
            cond.value_index =
                rng.uniform_int(1, params.subject_cardinalities[static_cast<std::size_t>(slot)]);
        } else {
            int oi = slot - params.n_subject_attrs();
            cond.attr = {AttributeKind::Object, oi + 1};
            cond.value_index =
                rng.uniform_int(1, params.object_cardinalities[static_cast<std::size_t>(oi)]);
        }
        rule.conditions.push_back(cond);
    }
    return normalize_rule(rule);
}

std::string default_id(const GenerationParams& params) {
    std::ostringstream os;
    os << params.n_subjects << "x" << params.n_objects << "-r" << params.n_rules << "-s"
       << params.seed;
    return os.str();
}

} // namespace

std::pair<std::vector<EntityProfile>, std::vector<EntityProfile>>
generate_profiles(const GenerationParams& params, Rng& rng) {
    params.validate();
    auto subjects = draw_profiles(params.n_subjects, params.subject_cardinalities, rng);
    auto objects = draw_profiles(params.n_objects, params.object_cardinalities, rng);
    return {std::move(subjects), std::move(objects)};
}

PolicySet generate_ground_truth(const GenerationParams& params, Rng& rng) {
    params.validate();
    PolicySet policy;
    std::set<std::string> seen;
    int redraws = 0;
    while (static_cast<int>(policy.rules.size()) < params.n_rules) {
        Rule rule = draw_rule(params, rng);
        if (seen.insert(emit_rule_line(rule)).second) {
            policy.rules.push_back(std::move(rule));
            continue;
        }
        if (++redraws > 1000) {
            throw GenerationExhausted("could not draw " + std::to_string(params.n_rules) +
                                      " distinct rules; attribute space too small");
        }
    }
    return policy;
}

Scenario generate_scenario(const GenerationParams& params, std::string scenario_id) {
    params.validate();
    if (scenario_id.empty()) scenario_id = default_id(params);

    Rng rng(params.seed);
    auto [subjects, objects] = generate_profiles(params, rng);

    std::int64_t cells = static_cast<std::int64_t>(params.n_subjects) * params.n_objects;
    int profile_resample_from = params.max_attempts / 2 + 1;

    for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
        if (attempt >= profile_resample_from) {
            auto fresh = generate_profiles(params, rng);
            subjects = std::move(fresh.first);
            objects = std::move(fresh.second);
        }
        PolicySet ground_truth = generate_ground_truth(params, rng);
        AccessMatrix acm =
            reconstruct_acm(ground_truth, subjects, objects, Semantics::PermitOnly);
        std::int64_t ones = acm.ones();

        bool hit;
        if (params.exact_ones) {
            hit = ones == *params.exact_ones;
        } else {
            double d = static_cast<double>(ones) / static_cast<double>(cells);
            hit = d >= params.target_density - params.density_tolerance &&
                  d <= params.target_density + params.density_tolerance;
        }
        if (hit) {
            return Scenario::create(scenario_id, std::move(subjects), std::move(objects),
                                    std::move(ground_truth), std::move(acm), params, attempt);
        }
    }
    throw DensityUnreachable("no rule set hit the density target for scenario " + scenario_id +
                             " within " + std::to_string(params.max_attempts) + " attempts");
}

} // namespace minebench
