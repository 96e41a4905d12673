#pragma once

#include <vector>

#include "minebench/core.hpp"

namespace minebench {

// Evaluation semantics for a policy set.
//   PermitOnly:    permit iff some permit rule matches; deny rules are an
//                  input error, not silently ignored.
//   DenyOverrides: any matching deny rule wins; otherwise a matching permit
//                  rule permits; no match at all is an implicit deny.
enum class Semantics { PermitOnly, DenyOverrides };

const char* to_string(Semantics sem);

// Policy decision point for a single subject-object pair.
Decision decide(const PolicySet& policy, const EntityProfile& subject,
                const EntityProfile& object, Semantics sem);

// Evaluates every pair and assembles the induced matrix:
// cell (i,j) = 1 iff decide(policy, subjects[i], objects[j], sem) permits.
AccessMatrix reconstruct_acm(const PolicySet& policy,
                             const std::vector<EntityProfile>& subjects,
                             const std::vector<EntityProfile>& objects, Semantics sem);

} // namespace minebench
