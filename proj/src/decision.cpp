#include "minebench/decision.hpp"

namespace minebench {

const char* to_string(Semantics sem) {
    return sem == Semantics::PermitOnly ? "permit-only" : "deny-overrides";
}

Decision decide(const PolicySet& policy, const EntityProfile& subject,
                const EntityProfile& object, Semantics sem) {
    if (sem == Semantics::PermitOnly) {
        for (const Rule& r : policy.rules) {
            if (r.decision == Decision::Deny) {
                throw DenyRuleUnderPermitOnly("deny rule evaluated under permit-only semantics");
            }
        }
        for (const Rule& r : policy.rules) {
            if (rule_matches(r, subject, object)) return Decision::Permit;
        }
        return Decision::Deny;
    }

    bool permit_matched = false;
    for (const Rule& r : policy.rules) {
        if (!rule_matches(r, subject, object)) continue;
        if (r.decision == Decision::Deny) return Decision::Deny;
        permit_matched = true;
    }
    return permit_matched ? Decision::Permit : Decision::Deny;
}

AccessMatrix reconstruct_acm(const PolicySet& policy,
                             const std::vector<EntityProfile>& subjects,
                             const std::vector<EntityProfile>& objects, Semantics sem) {
    if (sem == Semantics::PermitOnly) {
        for (const Rule& r : policy.rules) {
            if (r.decision == Decision::Deny) {
                throw DenyRuleUnderPermitOnly("deny rule evaluated under permit-only semantics");
            }
        }
    }

    int n_subjects = static_cast<int>(subjects.size());
    int n_objects = static_cast<int>(objects.size());
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n_subjects) * n_objects, 0);

    // Exhaustive per-cell evaluation; at the scales handled here (<= 10^6
    // cells) no indexing structure is warranted.
    for (int i = 0; i < n_subjects; ++i) {
        for (int j = 0; j < n_objects; ++j) {
            bool permit = false;
            bool deny = false;
            for (const Rule& r : policy.rules) {
                if (!rule_matches(r, subjects[i], objects[j])) continue;
                if (r.decision == Decision::Deny) {
                    deny = true;
                    break;
                }
                permit = true;
                if (sem == Semantics::PermitOnly) break;
            }
            cells[static_cast<std::size_t>(i) * n_objects + j] =
                (permit && !deny) ? 1 : 0;
        }
    }
    return AccessMatrix(n_subjects, n_objects, std::move(cells));
}

} // namespace minebench
