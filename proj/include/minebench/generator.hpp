#pragma once

#include <string>
#include <utility>
#include <vector>

#include "minebench/core.hpp"
#include "minebench/rng.hpp"

namespace minebench {

// Draws each profile value independently and uniformly from its attribute
// domain. Deterministic for a given generator state.
std::pair<std::vector<EntityProfile>, std::vector<EntityProfile>>
generate_profiles(const GenerationParams& params, Rng& rng);

// Draws exactly n_rules distinct, normalized permit rules. Each rule takes
// k conditions, k uniform in [1, max_conditions_per_rule], on distinct
// attributes with uniform values. Duplicates are redrawn; after 1000 failed
// redraws the attribute space is considered too small (GenerationExhausted).
PolicySet generate_ground_truth(const GenerationParams& params, Rng& rng);

// Full pipeline: profiles, ground truth, induced matrix, density check.
// Misses resample the rule set for the first half of the attempt budget and
// fresh profiles for the second half; DensityUnreachable after the budget.
Scenario generate_scenario(const GenerationParams& params, std::string scenario_id = "");

} // namespace minebench
