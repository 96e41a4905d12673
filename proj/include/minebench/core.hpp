#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minebench/errors.hpp"
#include "minebench/fraction.hpp"

namespace minebench {

enum class AttributeKind { Subject, Object };

// Reference to one attribute of one entity kind. Indices are 1-based so the
// rendered names line up with the token grammar (SA_2 <-> S_2_*).
struct AttributeRef {
    AttributeKind kind = AttributeKind::Subject;
    int index = 1;

    std::string name() const {
        return (kind == AttributeKind::Subject ? "SA_" : "OA_") + std::to_string(index);
    }

    bool operator==(const AttributeRef& o) const = default;
};

// Canonical ordering: object attributes before subject attributes, then
// ascending index. This is the order rules are emitted in.
inline bool canonical_less(const AttributeRef& a, const AttributeRef& b) {
    int ka = a.kind == AttributeKind::Object ? 0 : 1;
    int kb = b.kind == AttributeKind::Object ? 0 : 1;
    if (ka != kb) return ka < kb;
    return a.index < b.index;
}

// One attribute-value condition. Token form is S_<i>_<j> / O_<i>_<j>.
struct AttributeValue {
    AttributeRef attr;
    int value_index = 1;

    std::string token() const {
        return (attr.kind == AttributeKind::Subject ? "S_" : "O_") +
               std::to_string(attr.index) + "_" + std::to_string(value_index);
    }

    bool operator==(const AttributeValue& o) const = default;
};

// Full attribute assignment of one subject or object: values[k] holds the
// value index of attribute k+1.
struct EntityProfile {
    std::vector<int> values;

    int attribute_count() const { return static_cast<int>(values.size()); }

    // Value of the 1-based attribute `index`; throws when out of range.
    int value_of(int index) const;

    bool operator==(const EntityProfile& o) const = default;
};

enum class Decision { Permit, Deny };

inline const char* to_string(Decision d) { return d == Decision::Permit ? "permit" : "deny"; }

// A conjunction of equality conditions plus a decision. An empty condition
// list is a wildcard that matches every pair.
struct Rule {
    std::vector<AttributeValue> conditions;
    Decision decision = Decision::Permit;

    bool operator==(const Rule& o) const = default;
};

// Ordered rule list. Order is preserved from the source for reporting;
// evaluation itself is order-independent.
struct PolicySet {
    std::vector<Rule> rules;

    std::size_t size() const { return rules.size(); }
    bool empty() const { return rules.empty(); }

    bool operator==(const PolicySet& o) const = default;
};

// Dense binary subject x object decision matrix. Cells are fixed after
// construction.
class AccessMatrix {
public:
    AccessMatrix() = default;

    AccessMatrix(int n_subjects, int n_objects, std::vector<std::uint8_t> cells);

    // All-zero matrix of the given shape.
    static AccessMatrix zeros(int n_subjects, int n_objects);

    int n_subjects() const { return n_subjects_; }
    int n_objects() const { return n_objects_; }
    std::int64_t cell_count() const {
        return static_cast<std::int64_t>(n_subjects_) * n_objects_;
    }

    std::uint8_t at(int subject, int object) const {
        return cells_[static_cast<std::size_t>(subject) * n_objects_ + object];
    }

    std::int64_t ones() const;

    bool operator==(const AccessMatrix& o) const = default;

private:
    int n_subjects_ = 0;
    int n_objects_ = 0;
    std::vector<std::uint8_t> cells_;
};

// Fraction of permit cells in the matrix.
Fraction density(const AccessMatrix& acm);

// Generation knobs for one scenario. Cardinalities are per attribute;
// the scalar convenience constructor applies one value everywhere.
struct GenerationParams {
    int n_subjects = 1;
    int n_objects = 1;
    std::vector<int> subject_cardinalities;  // size n_subject_attrs
    std::vector<int> object_cardinalities;   // size n_object_attrs
    int n_rules = 1;
    double target_density = 0.5;
    double density_tolerance = 0.02;
    int max_conditions_per_rule = 1;
    std::uint64_t seed = 0;
    // When set, resample until the ones-count matches exactly instead of
    // accepting anything inside the density window.
    std::optional<std::int64_t> exact_ones;
    int max_attempts = 1000;

    int n_subject_attrs() const { return static_cast<int>(subject_cardinalities.size()); }
    int n_object_attrs() const { return static_cast<int>(object_cardinalities.size()); }

    static GenerationParams uniform(int n_subjects, int n_objects, int n_subject_attrs,
                                    int n_object_attrs, int cardinality, int n_rules,
                                    double target_density, double density_tolerance,
                                    int max_conditions_per_rule, std::uint64_t seed);

    // Throws InvalidParams when any invariant is violated.
    void validate() const;
};

// A full synthetic instance: profiles, the ground-truth policy, and the
// matrix it induces. Construction re-derives the matrix and rejects any
// mismatch, so a Scenario in hand is always internally consistent.
struct Scenario {
    std::string id;
    std::vector<EntityProfile> subjects;
    std::vector<EntityProfile> objects;
    PolicySet ground_truth;
    AccessMatrix acm;
    GenerationParams params;
    std::uint64_t seed = 0;
    int attempts = 1;

    static Scenario create(std::string id, std::vector<EntityProfile> subjects,
                           std::vector<EntityProfile> objects, PolicySet ground_truth,
                           AccessMatrix acm, GenerationParams params, int attempts);
};

// True iff every condition of `rule` equals the corresponding profile value.
// Conditions on attribute indices the profiles do not have raise
// AttributeOutOfRange instead of answering false.
bool rule_matches(const Rule& rule, const EntityProfile& subject, const EntityProfile& object);

// Canonical form: conditions deduplicated and sorted object-attributes first
// then subject-attributes, each group by ascending index. Throws
// ConflictingConditions when one attribute is bound to two values.
Rule normalize_rule(const Rule& rule);

PolicySet normalize_policy(const PolicySet& policy);

} // namespace minebench
