#include <doctest.h>

#include "minebench/decision.hpp"
#include "minebench/rng.hpp"
#include "test_helpers.hpp"

using namespace minebench;
using namespace minebench::test;

namespace {

// The two-rule deny-overrides worked example: a broad permit on object
// (1,1) with a specific deny carved out for subject (3,1).
PolicySet deny_overrides_example() {
    PolicySet p;
    p.rules.push_back(permit({oa(1, 1), oa(2, 1)}));
    p.rules.push_back(deny({sa(1, 3), sa(2, 1), oa(1, 1), oa(2, 1)}));
    return p;
}

} // namespace

TEST_SUITE("decision") {

TEST_CASE("deny-overrides worked example classifies all four entries") {
    PolicySet p = deny_overrides_example();
    EntityProfile object = profile({1, 1});
    CHECK(decide(p, profile({1, 1}), object, Semantics::DenyOverrides) == Decision::Permit);
    CHECK(decide(p, profile({2, 2}), object, Semantics::DenyOverrides) == Decision::Permit);
    CHECK(decide(p, profile({3, 1}), object, Semantics::DenyOverrides) == Decision::Deny);
    CHECK(decide(p, profile({4, 1}), object, Semantics::DenyOverrides) == Decision::Permit);
}

TEST_CASE("empty policy is an implicit deny under deny-overrides") {
    CHECK(decide({}, profile({1}), profile({1}), Semantics::DenyOverrides) == Decision::Deny);
}

TEST_CASE("deny rules are rejected under permit-only semantics") {
    PolicySet p;
    p.rules.push_back(deny({sa(1, 1)}));
    CHECK_THROWS_AS(decide(p, profile({1}), profile({1}), Semantics::PermitOnly),
                    DenyRuleUnderPermitOnly);
    CHECK_THROWS_AS(reconstruct_acm(p, {profile({1})}, {profile({1})}, Semantics::PermitOnly),
                    DenyRuleUnderPermitOnly);
}

TEST_CASE("matrix prompt example reconstructs two permitted rows") {
    Scenario s = appendix_matrix_scenario();
    PolicySet p;
    p.rules.push_back(permit({sa(1, 3)}));
    AccessMatrix acm = reconstruct_acm(p, s.subjects, s.objects, Semantics::PermitOnly);
    for (int j = 0; j < 4; ++j) {
        CHECK(acm.at(0, j) == 0);
        CHECK(acm.at(1, j) == 0);
        CHECK(acm.at(2, j) == 1);
        CHECK(acm.at(3, j) == 1);
    }
}

TEST_CASE("single wildcard permit rule yields the all-ones matrix") {
    PolicySet p;
    p.rules.push_back(permit({}));
    AccessMatrix acm = reconstruct_acm(p, {profile({1}), profile({2})},
                                       {profile({1}), profile({2}), profile({3})},
                                       Semantics::PermitOnly);
    CHECK(acm.ones() == 6);
}

TEST_CASE("scenario ground truth reconstructs its own matrix") {
    Scenario s = appendix_matrix_scenario();
    AccessMatrix acm =
        reconstruct_acm(s.ground_truth, s.subjects, s.objects, Semantics::PermitOnly);
    CHECK(acm == s.acm);
}

namespace {

PolicySet random_policy(Rng& rng, bool allow_deny) {
    PolicySet p;
    int n = rng.uniform_int(0, 4);
    for (int i = 0; i < n; ++i) {
        Rule r;
        r.decision = allow_deny && rng.uniform_int(0, 1) ? Decision::Deny : Decision::Permit;
        int conds = rng.uniform_int(0, 3);
        for (int c = 0; c < conds; ++c) {
            bool subject = rng.uniform_int(0, 1) == 0;
            int index = rng.uniform_int(1, 2);
            int value = rng.uniform_int(1, 3);
            r.conditions.push_back(subject ? sa(index, value) : oa(index, value));
        }
        try {
            r = normalize_rule(r);
        } catch (const ConflictingConditions&) {
            --i;
            continue;
        }
        p.rules.push_back(r);
    }
    return p;
}

EntityProfile random_profile(Rng& rng) {
    return profile({rng.uniform_int(1, 3), rng.uniform_int(1, 3)});
}

} // namespace

TEST_CASE("decision is independent of rule order") {
    Rng rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        PolicySet p = random_policy(rng, true);
        EntityProfile s = random_profile(rng);
        EntityProfile o = random_profile(rng);
        Decision before = decide(p, s, o, Semantics::DenyOverrides);
        // rotate rule order
        if (!p.rules.empty()) {
            std::rotate(p.rules.begin(), p.rules.begin() + 1, p.rules.end());
        }
        CHECK(decide(p, s, o, Semantics::DenyOverrides) == before);
    }
}

TEST_CASE("adding a permit rule never drops a cell under permit-only") {
    Rng rng(777);
    for (int trial = 0; trial < 300; ++trial) {
        PolicySet p = random_policy(rng, false);
        EntityProfile s = random_profile(rng);
        EntityProfile o = random_profile(rng);
        Decision before = decide(p, s, o, Semantics::PermitOnly);
        PolicySet extended = p;
        PolicySet extra = random_policy(rng, false);
        extended.rules.push_back(extra.rules.empty() ? permit({}) : extra.rules.front());
        extended.rules.back().decision = Decision::Permit;
        if (before == Decision::Permit) {
            CHECK(decide(extended, s, o, Semantics::PermitOnly) == Decision::Permit);
        }
    }
}

TEST_CASE("adding a deny rule never grants a cell under deny-overrides") {
    Rng rng(888);
    for (int trial = 0; trial < 300; ++trial) {
        PolicySet p = random_policy(rng, true);
        EntityProfile s = random_profile(rng);
        EntityProfile o = random_profile(rng);
        Decision before = decide(p, s, o, Semantics::DenyOverrides);
        PolicySet extended = p;
        PolicySet donor = random_policy(rng, false);
        Rule extra = donor.rules.empty() ? deny({}) : donor.rules.front();
        extra.decision = Decision::Deny;
        extended.rules.push_back(extra);
        if (before == Decision::Deny) {
            CHECK(decide(extended, s, o, Semantics::DenyOverrides) == Decision::Deny);
        }
    }
}

} // TEST_SUITE
