#pragma once

#include <vector>

#include "minebench/core.hpp"

namespace minebench {

// One observed access decision, the unit of a raw log.
struct AccessTriple {
    EntityProfile subject;
    EntityProfile object;
    bool permitted = false;
};

// Deterministic permit-only miner. Builds candidate rules two ways --
// per-permit-cell condition dropping and pairwise common attribute patterns
// -- validates every candidate against the deny cells, then covers the
// permit cells greedily. The result always classifies every given cell
// correctly (precision and recall 1.0).
//
// Throws NoPermits when no permitted entries exist unless allow_empty is
// set, in which case the empty policy is returned.
PolicySet mine_generalize_validate(const std::vector<AccessTriple>& dataset,
                                   bool allow_empty = false);

// Same procedure over every cell of a scenario's matrix.
PolicySet mine_generalize_validate(const Scenario& scenario, bool allow_empty = false);

// Exact minimal-policy search for tiny instances: enumerates every sound
// candidate rule and looks for an exact cover of the permit cells at sizes
// 1..size_budget, returning the lexicographically smallest minimal policy.
// Guarded by hard scale preconditions (ScaleExceeded): at most 6 total
// attributes, 64 cells, and a budget of 4. BudgetExceeded when no cover of
// the permitted size exists.
PolicySet exact_minimal_policy(const Scenario& scenario, int size_budget);

} // namespace minebench
