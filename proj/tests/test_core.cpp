#include <doctest.h>

#include "minebench/core.hpp"
#include "minebench/rng.hpp"
#include "test_helpers.hpp"

using namespace minebench;
using namespace minebench::test;

TEST_SUITE("core") {

TEST_CASE("attribute names and value tokens follow the grammar") {
    CHECK(AttributeRef{AttributeKind::Subject, 2}.name() == "SA_2");
    CHECK(AttributeRef{AttributeKind::Object, 11}.name() == "OA_11");
    CHECK(sa(1, 2).token() == "S_1_2");
    CHECK(oa(3, 14).token() == "O_3_14");
}

TEST_CASE("library example rule matches the faculty/journal pair") {
    // role=Faculty, department=Science -> subject (2, 1); type=Journal -> object (2)
    Rule r2 = permit({sa(1, 2), sa(2, 1), oa(1, 2)});
    CHECK(rule_matches(r2, profile({2, 1}), profile({2})));
    CHECK_FALSE(rule_matches(r2, profile({1, 1}), profile({2})));
    CHECK_FALSE(rule_matches(r2, profile({2, 1}), profile({1})));
}

TEST_CASE("wildcard rule matches every pair") {
    Rule wildcard = permit({});
    CHECK(rule_matches(wildcard, profile({1}), profile({1})));
    CHECK(rule_matches(wildcard, profile({3, 1, 4}), profile({2, 7})));
}

TEST_CASE("single mismatched condition fails") {
    CHECK_FALSE(rule_matches(permit({sa(1, 3)}), profile({1}), profile({1})));
}

TEST_CASE("conditions beyond the profile raise instead of answering false") {
    CHECK_THROWS_AS(rule_matches(permit({sa(2, 1)}), profile({1}), profile({1})),
                    AttributeOutOfRange);
    CHECK_THROWS_AS(rule_matches(permit({oa(5, 1)}), profile({1}), profile({1, 2})),
                    AttributeOutOfRange);
}

TEST_CASE("normalize orders object attributes before subject attributes") {
    Rule r = permit({sa(2, 2), oa(1, 7)});
    Rule n = normalize_rule(r);
    REQUIRE(n.conditions.size() == 2);
    CHECK(n.conditions[0] == oa(1, 7));
    CHECK(n.conditions[1] == sa(2, 2));
}

TEST_CASE("normalize is idempotent and collapses duplicates") {
    Rule r = permit({sa(1, 1), sa(1, 1)});
    Rule n = normalize_rule(r);
    CHECK(n.conditions.size() == 1);
    CHECK(normalize_rule(n) == n);

    Rule mixed = permit({sa(3, 2), oa(2, 1), sa(1, 5), oa(1, 4)});
    CHECK(normalize_rule(normalize_rule(mixed)) == normalize_rule(mixed));
}

TEST_CASE("conflicting bindings on one attribute are an error") {
    CHECK_THROWS_AS(normalize_rule(permit({sa(1, 1), sa(1, 2)})), ConflictingConditions);
}

TEST_CASE("normalization never changes match behavior") {
    Rng rng(20250809);
    for (int trial = 0; trial < 200; ++trial) {
        Rule r;
        r.decision = Decision::Permit;
        int conds = rng.uniform_int(0, 4);
        for (int c = 0; c < conds; ++c) {
            bool subject = rng.uniform_int(0, 1) == 0;
            int index = rng.uniform_int(1, 3);
            int value = rng.uniform_int(1, 3);
            r.conditions.push_back(subject ? sa(index, value) : oa(index, value));
        }
        EntityProfile s = profile({rng.uniform_int(1, 3), rng.uniform_int(1, 3),
                                   rng.uniform_int(1, 3)});
        EntityProfile o = profile({rng.uniform_int(1, 3), rng.uniform_int(1, 3),
                                   rng.uniform_int(1, 3)});
        Rule n;
        try {
            n = normalize_rule(r);
        } catch (const ConflictingConditions&) {
            continue;
        }
        CHECK(rule_matches(n, s, o) == rule_matches(r, s, o));
    }
}

TEST_CASE("matching is monotone in the condition set") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<AttributeValue> base;
        int conds = rng.uniform_int(1, 4);
        for (int c = 0; c < conds; ++c) {
            bool subject = rng.uniform_int(0, 1) == 0;
            base.push_back(subject ? sa(rng.uniform_int(1, 3), rng.uniform_int(1, 3))
                                   : oa(rng.uniform_int(1, 3), rng.uniform_int(1, 3)));
        }
        std::vector<AttributeValue> subset;
        for (const auto& cond : base) {
            if (rng.uniform_int(0, 1)) subset.push_back(cond);
        }
        EntityProfile s = profile({rng.uniform_int(1, 3), rng.uniform_int(1, 3),
                                   rng.uniform_int(1, 3)});
        EntityProfile o = profile({rng.uniform_int(1, 3), rng.uniform_int(1, 3),
                                   rng.uniform_int(1, 3)});
        if (rule_matches(permit(base), s, o)) CHECK(rule_matches(permit(subset), s, o));
    }
}

TEST_CASE("access matrix rejects bad shapes and values") {
    CHECK_THROWS_AS(AccessMatrix(0, 1, {}), InvalidParams);
    CHECK_THROWS_AS(AccessMatrix(1, 1, {2}), InvalidParams);
    CHECK_THROWS_AS(AccessMatrix(2, 2, {1, 0, 1}), DimensionMismatch);
    AccessMatrix m(2, 2, {1, 0, 0, 1});
    CHECK(m.ones() == 2);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 0);
}

TEST_CASE("density is the exact fraction of ones") {
    AccessMatrix m = AccessMatrix::zeros(15, 15);
    CHECK(density(m) == Fraction(0, 1));
    CHECK_THROWS_AS(density(AccessMatrix()), EmptyMatrix);

    std::vector<std::uint8_t> cells(225, 0);
    for (int i = 0; i < 29; ++i) cells[static_cast<std::size_t>(i)] = 1;
    CHECK(density(AccessMatrix(15, 15, cells)) == Fraction(29, 225));
    CHECK(density(AccessMatrix(15, 15, cells)).value() == doctest::Approx(0.1288888889));

    std::vector<std::uint8_t> tc5(225, 0);
    for (int i = 0; i < 118; ++i) tc5[static_cast<std::size_t>(i)] = 1;
    CHECK(density(AccessMatrix(15, 15, tc5)).value() == doctest::Approx(0.5244444444));
}

TEST_CASE("scenario construction re-derives the matrix") {
    PolicySet gt;
    gt.rules.push_back(permit({sa(1, 1)}));
    std::vector<EntityProfile> subjects = {profile({1}), profile({2})};
    std::vector<EntityProfile> objects = {profile({1})};

    GenerationParams params = GenerationParams::uniform(2, 1, 1, 1, 2, 1, 0.5, 0.45, 1, 0);
    CHECK_THROWS_AS(Scenario::create("bad", subjects, objects, gt,
                                     AccessMatrix(2, 1, {1, 1}), params, 1),
                    InvalidParams);
    Scenario ok = Scenario::create("ok", subjects, objects, gt, AccessMatrix(2, 1, {1, 0}),
                                   params, 1);
    CHECK(ok.acm.ones() == 1);
}

TEST_CASE("generation params validation") {
    GenerationParams p = GenerationParams::uniform(15, 15, 3, 3, 5, 10, 0.3, 0.02, 3, 7);
    CHECK_NOTHROW(p.validate());

    GenerationParams bad = p;
    bad.target_density = 0.01;  // window leaves (0,1)
    CHECK_THROWS_AS(bad.validate(), InvalidParams);

    bad = p;
    bad.max_conditions_per_rule = 7;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);

    bad = p;
    bad.exact_ones = 225;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);
}

} // TEST_SUITE
