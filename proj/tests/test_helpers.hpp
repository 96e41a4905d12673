#pragma once

#include <string>
#include <vector>

#include "minebench/core.hpp"
#include "minebench/decision.hpp"
#include "minebench/rng.hpp"

namespace minebench::test {

inline AttributeValue sa(int index, int value) {
    return {{AttributeKind::Subject, index}, value};
}

inline AttributeValue oa(int index, int value) {
    return {{AttributeKind::Object, index}, value};
}

inline Rule permit(std::vector<AttributeValue> conditions) {
    return Rule{std::move(conditions), Decision::Permit};
}

inline Rule deny(std::vector<AttributeValue> conditions) {
    return Rule{std::move(conditions), Decision::Deny};
}

inline EntityProfile profile(std::vector<int> values) { return EntityProfile{std::move(values)}; }

// Scenario assembled from explicit pieces; the matrix is derived from the
// policy so the construction invariant holds.
inline Scenario make_scenario(std::string id, std::vector<EntityProfile> subjects,
                              std::vector<EntityProfile> objects, PolicySet ground_truth) {
    GenerationParams params;
    params.n_subjects = static_cast<int>(subjects.size());
    params.n_objects = static_cast<int>(objects.size());
    int s_attrs = subjects.front().attribute_count();
    int o_attrs = objects.front().attribute_count();
    int max_value = 1;
    for (const auto& p : subjects)
        for (int v : p.values) max_value = std::max(max_value, v);
    for (const auto& p : objects)
        for (int v : p.values) max_value = std::max(max_value, v);
    for (const auto& r : ground_truth.rules)
        for (const auto& c : r.conditions) max_value = std::max(max_value, c.value_index);
    params.subject_cardinalities.assign(static_cast<std::size_t>(s_attrs), max_value);
    params.object_cardinalities.assign(static_cast<std::size_t>(o_attrs), max_value);
    params.n_rules = std::max<int>(1, static_cast<int>(ground_truth.rules.size()));
    params.target_density = 0.5;
    params.density_tolerance = 0.45;
    params.max_conditions_per_rule = s_attrs + o_attrs;

    AccessMatrix acm = reconstruct_acm(ground_truth, subjects, objects, Semantics::PermitOnly);
    return Scenario::create(std::move(id), std::move(subjects), std::move(objects),
                            std::move(ground_truth), std::move(acm), params, 1);
}

// The 4-subject / 4-object worked example used by the matrix and list
// prompts: two subjects carry SA_1 = 3 and are permitted everything.
inline Scenario appendix_matrix_scenario() {
    std::vector<EntityProfile> subjects = {
        profile({1, 3, 2}),
        profile({1, 2, 4}),
        profile({3, 2, 5}),
        profile({3, 1, 3}),
    };
    std::vector<EntityProfile> objects = {
        profile({5, 4, 1}),
        profile({3, 2, 2}),
        profile({1, 1, 4}),
        profile({2, 5, 3}),
    };
    PolicySet ground_truth;
    ground_truth.rules.push_back(permit({sa(1, 3)}));
    return make_scenario("appendix-4x4", std::move(subjects), std::move(objects),
                         std::move(ground_truth));
}

} // namespace minebench::test
