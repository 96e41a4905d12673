#include "minebench/core.hpp"

#include <algorithm>

#include "minebench/decision.hpp"

namespace minebench {

int EntityProfile::value_of(int index) const {
    if (index < 1 || index > attribute_count()) {
        throw AttributeOutOfRange("attribute index " + std::to_string(index) +
                                  " out of range for profile with " +
                                  std::to_string(attribute_count()) + " attributes");
    }
    return values[static_cast<std::size_t>(index) - 1];
}

AccessMatrix::AccessMatrix(int n_subjects, int n_objects, std::vector<std::uint8_t> cells)
    : n_subjects_(n_subjects), n_objects_(n_objects), cells_(std::move(cells)) {
    if (n_subjects_ <= 0 || n_objects_ <= 0) {
        throw InvalidParams("access matrix dimensions must be positive");
    }
    if (cells_.size() != static_cast<std::size_t>(n_subjects_) * n_objects_) {
        throw DimensionMismatch("cell vector size does not match matrix dimensions");
    }
    for (std::uint8_t c : cells_) {
        if (c > 1) throw InvalidParams("access matrix cells must be 0 or 1");
    }
}

AccessMatrix AccessMatrix::zeros(int n_subjects, int n_objects) {
    return AccessMatrix(n_subjects, n_objects,
                        std::vector<std::uint8_t>(
                            static_cast<std::size_t>(n_subjects) * n_objects, 0));
}

std::int64_t AccessMatrix::ones() const {
    std::int64_t n = 0;
    for (std::uint8_t c : cells_) n += c;
    return n;
}

Fraction density(const AccessMatrix& acm) {
    if (acm.cell_count() == 0) throw EmptyMatrix("density of an empty matrix");
    return Fraction(acm.ones(), acm.cell_count());
}

GenerationParams GenerationParams::uniform(int n_subjects, int n_objects, int n_subject_attrs,
                                           int n_object_attrs, int cardinality, int n_rules,
                                           double target_density, double density_tolerance,
                                           int max_conditions_per_rule, std::uint64_t seed) {
    GenerationParams p;
    p.n_subjects = n_subjects;
    p.n_objects = n_objects;
    p.subject_cardinalities.assign(static_cast<std::size_t>(n_subject_attrs), cardinality);
    p.object_cardinalities.assign(static_cast<std::size_t>(n_object_attrs), cardinality);
    p.n_rules = n_rules;
    p.target_density = target_density;
    p.density_tolerance = density_tolerance;
    p.max_conditions_per_rule = max_conditions_per_rule;
    p.seed = seed;
    return p;
}

void GenerationParams::validate() const {
    if (n_subjects < 1 || n_objects < 1) throw InvalidParams("entity counts must be positive");
    if (subject_cardinalities.empty() || object_cardinalities.empty()) {
        throw InvalidParams("each entity kind needs at least one attribute");
    }
    for (int c : subject_cardinalities) {
        if (c < 1) throw InvalidParams("subject attribute cardinality must be positive");
    }
    for (int c : object_cardinalities) {
        if (c < 1) throw InvalidParams("object attribute cardinality must be positive");
    }
    if (n_rules < 1) throw InvalidParams("rule count must be positive");
    if (density_tolerance < 0) throw InvalidParams("density tolerance must be non-negative");
    if (target_density - density_tolerance <= 0.0 || target_density + density_tolerance >= 1.0) {
        throw InvalidParams("density window must stay strictly inside (0,1)");
    }
    if (max_conditions_per_rule < 1 ||
        max_conditions_per_rule > n_subject_attrs() + n_object_attrs()) {
        throw InvalidParams("max conditions per rule must be in [1, total attribute count]");
    }
    if (max_attempts < 1) throw InvalidParams("attempt budget must be positive");
    if (exact_ones) {
        std::int64_t cells = static_cast<std::int64_t>(n_subjects) * n_objects;
        if (*exact_ones < 1 || *exact_ones >= cells) {
            throw InvalidParams("exact ones-count must be in [1, cells-1]");
        }
    }
}

Scenario Scenario::create(std::string id, std::vector<EntityProfile> subjects,
                          std::vector<EntityProfile> objects, PolicySet ground_truth,
                          AccessMatrix acm, GenerationParams params, int attempts) {
    Scenario s;
    s.id = std::move(id);
    s.subjects = std::move(subjects);
    s.objects = std::move(objects);
    s.ground_truth = std::move(ground_truth);
    s.acm = std::move(acm);
    s.params = std::move(params);
    s.seed = s.params.seed;
    s.attempts = attempts;

    AccessMatrix induced =
        reconstruct_acm(s.ground_truth, s.subjects, s.objects, Semantics::PermitOnly);
    if (!(induced == s.acm)) {
        throw InvalidParams("scenario matrix does not match the one induced by its ground truth");
    }
    return s;
}

bool rule_matches(const Rule& rule, const EntityProfile& subject, const EntityProfile& object) {
    for (const AttributeValue& cond : rule.conditions) {
        const EntityProfile& profile =
            cond.attr.kind == AttributeKind::Subject ? subject : object;
        if (profile.value_of(cond.attr.index) != cond.value_index) return false;
    }
    return true;
}

Rule normalize_rule(const Rule& rule) {
    Rule out;
    out.decision = rule.decision;
    out.conditions = rule.conditions;
    std::stable_sort(out.conditions.begin(), out.conditions.end(),
                     [](const AttributeValue& a, const AttributeValue& b) {
                         return canonical_less(a.attr, b.attr);
                     });
    std::vector<AttributeValue> deduped;
    for (const AttributeValue& cond : out.conditions) {
        if (!deduped.empty() && deduped.back().attr == cond.attr) {
            if (deduped.back().value_index != cond.value_index) {
                throw ConflictingConditions("attribute " + cond.attr.name() +
                                            " bound to two different values");
            }
            continue;
        }
        deduped.push_back(cond);
    }
    out.conditions = std::move(deduped);
    return out;
}

PolicySet normalize_policy(const PolicySet& policy) {
    PolicySet out;
    out.rules.reserve(policy.rules.size());
    for (const Rule& r : policy.rules) out.rules.push_back(normalize_rule(r));
    return out;
}

} // namespace minebench
