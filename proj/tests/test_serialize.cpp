#include <doctest.h>

#include "minebench/generator.hpp"
#include "minebench/serialize.hpp"
#include "test_helpers.hpp"

using namespace minebench;
using namespace minebench::test;

TEST_SUITE("serialize") {

TEST_CASE("smallest access-data instance") {
    PolicySet gt;
    gt.rules.push_back(permit({sa(1, 1)}));
    Scenario s = make_scenario("tiny", {profile({1})}, {profile({1})}, std::move(gt));
    CHECK(render_access_data(s) == "S_1_1 O_1_1 1\n");
}

TEST_CASE("2x2 sample renders four row-major lines with decisions 1,0,0,1") {
    // two subjects permitted exactly their own object
    PolicySet gt;
    gt.rules.push_back(permit({sa(1, 1), oa(1, 1)}));
    gt.rules.push_back(permit({sa(1, 2), oa(1, 2)}));
    Scenario s = make_scenario("sample-2x2", {profile({1, 1}), profile({2, 2})},
                               {profile({1, 1}), profile({2, 2})}, std::move(gt));
    CHECK(render_access_data(s) ==
          "S_1_1 S_2_1 O_1_1 O_2_1 1\n"
          "S_1_1 S_2_1 O_1_2 O_2_2 0\n"
          "S_1_2 S_2_2 O_1_1 O_2_1 0\n"
          "S_1_2 S_2_2 O_1_2 O_2_2 1\n");
}

TEST_CASE("access-data line count equals the cell count and decisions round-trip") {
    GenerationParams p = GenerationParams::uniform(7, 9, 2, 2, 3, 4, 0.35, 0.25, 3, 5);
    Scenario s = generate_scenario(p);
    std::string text = render_access_data(s);
    int lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 63);
    CHECK(parse_access_data_decisions(text, 7, 9) == s.acm);
}

TEST_CASE("worked example matrix text is byte-exact") {
    Scenario s = appendix_matrix_scenario();
    auto [acm_text, attrs_json] = render_acm_input(s);
    CHECK(acm_text == "0 0 0 0\n0 0 0 0\n1 1 1 1\n1 1 1 1\n");
    // attributes JSON opens with the subject list, 4-space indented
    const std::string expected_prefix =
        "{\n"
        "    \"SV\": [\n"
        "        [\n"
        "            \"S_1_1\",\n"
        "            \"S_2_3\",\n"
        "            \"S_3_2\"\n"
        "        ],\n";
    CHECK(attrs_json.substr(0, expected_prefix.size()) == expected_prefix);
    const std::string expected_objects =
        "    \"OV\": [\n"
        "        [\n"
        "            \"O_1_5\",\n"
        "            \"O_2_4\",\n"
        "            \"O_3_1\"\n"
        "        ],\n"
        "        [\n"
        "            \"O_1_3\",";
    CHECK(attrs_json.find(expected_objects) != std::string::npos);
}

TEST_CASE("worked example access lists are byte-exact") {
    Scenario s = appendix_matrix_scenario();
    auto [acl_text, attrs_json] = render_acl_input(s);
    CHECK(acl_text == "0: 2 3\n1: 2 3\n2: 2 3\n3: 2 3\n");
    CHECK(attrs_json == render_acm_input(s).second);
}

TEST_CASE("objects with no permitted subjects render bare lines") {
    PolicySet gt;
    gt.rules.push_back(permit({oa(1, 1)}));
    Scenario s = make_scenario("acl-empty", {profile({1}), profile({2})},
                               {profile({2}), profile({3})}, std::move(gt));
    auto [acl_text, unused] = render_acl_input(s);
    CHECK(acl_text == "0:\n1:\n");
}

TEST_CASE("list and matrix renderings describe the same permit set") {
    GenerationParams p = GenerationParams::uniform(9, 8, 2, 2, 3, 4, 0.35, 0.25, 3, 21);
    Scenario s = generate_scenario(p);
    auto [acl_text, unused1] = render_acl_input(s);
    auto [acm_text, unused2] = render_acm_input(s);
    CHECK(parse_acl_text(acl_text, 9, 8) == parse_acm_text(acm_text));
}

TEST_CASE("verbose matrix layout matches the aligned sample") {
    PolicySet gt;
    gt.rules.push_back(permit({sa(1, 1), oa(1, 1)}));
    gt.rules.push_back(permit({sa(1, 2), oa(1, 2)}));
    Scenario s = make_scenario("sample-2x2", {profile({1, 1}), profile({2, 2})},
                               {profile({1, 1}), profile({2, 2})}, std::move(gt));
    std::string expected =
        "ACM:\n"
        "        O1  O2\n"
        "S1      1   0\n"
        "S2      0   1\n"
        "\n"
        "Subject Attributes:\n"
        "S1: SA1=S_1_1, SA2=S_2_1\n"
        "S2: SA1=S_1_2, SA2=S_2_2\n"
        "\n"
        "Object Attributes:\n"
        "O1: OA1=O_1_1, OA2=O_2_1\n"
        "O2: OA1=O_1_2, OA2=O_2_2\n";
    CHECK(render_verbose_acm(s) == expected);

    std::string log = render_verbose_access_data(s);
    CHECK(log.find("S1: SA1=S_1_1, SA2=S_2_1 | O1: OA1=O_1_1, OA2=O_2_1 | Decision=1\n") !=
          std::string::npos);
    CHECK(log.find("| Decision=0\n") != std::string::npos);

    std::string acl = render_verbose_acl(s);
    CHECK(acl.find("Access Control Lists:\nO1: [S1]\nO2: [S2]\n") != std::string::npos);
}

TEST_CASE("rule emission follows the exact grammar") {
    CHECK(emit_rule_line(permit({oa(1, 1), oa(2, 1)})) ==
          "{'rule': [('OA_1', 'O_1_1'), ('OA_2', 'O_2_1')], 'decision': 'permit'}");
    CHECK(emit_rule_line(permit({sa(2, 2), oa(1, 7)})) ==
          "{'rule': [('OA_1', 'O_1_7'), ('SA_2', 'S_2_2')], 'decision': 'permit'}");
    CHECK(emit_rule_line(deny({sa(1, 3)})) ==
          "{'rule': [('SA_1', 'S_1_3')], 'decision': 'deny'}");
    CHECK(emit_rule_line(permit({})) == "{'rule': [], 'decision': 'permit'}");
}

TEST_CASE("single rule line parses") {
    ParsedRules r = parse_rule_lines("{'rule': [('SA_1', 'S_1_3')], 'decision': 'permit'}");
    REQUIRE(r.policy.rules.size() == 1);
    CHECK(r.policy.rules[0] == permit({sa(1, 3)}));
    CHECK(r.skipped_lines == 0);
}

TEST_CASE("empty condition list is a wildcard rule") {
    ParsedRules r = parse_rule_lines("{'rule': [], 'decision': 'permit'}");
    REQUIRE(r.policy.rules.size() == 1);
    CHECK(r.policy.rules[0].conditions.empty());
}

TEST_CASE("prose and fences are skipped and counted") {
    std::string text =
        "Here are the rules you asked for:\n"
        "```\n"
        "{'rule': [('OA_1', 'O_1_1')], 'decision': 'permit'}\n"
        "{'rule': [('SA_2', 'S_2_2')], 'decision': 'deny'}\n"
        "```\n";
    ParsedRules r = parse_rule_lines(text);
    CHECK(r.policy.rules.size() == 2);
    CHECK(r.skipped_lines == 3);
    CHECK(r.skipped_line_numbers == std::vector<int>{1, 2, 5});
}

TEST_CASE("one preamble line plus two rules records one skip") {
    std::string text =
        "The minimal policy follows.\n"
        "{'rule': [('OA_1', 'O_1_1')], 'decision': 'permit'}\n"
        "{'rule': [('OA_2', 'O_2_1')], 'decision': 'permit'}\n";
    ParsedRules r = parse_rule_lines(text);
    CHECK(r.policy.rules.size() == 2);
    CHECK(r.skipped_lines == 1);
}

TEST_CASE("double quotes and loose whitespace are tolerated") {
    ParsedRules r = parse_rule_lines(
        "{ \"rule\" : [ ( \"OA_1\" ,\t\"O_1_7\" ) , ('SA_2','S_2_2') ] , \"decision\" : "
        "\"permit\" }");
    REQUIRE(r.policy.rules.size() == 1);
    CHECK(r.policy.rules[0] == permit({oa(1, 7), sa(2, 2)}));
}

TEST_CASE("zero parsable lines is the * outcome") {
    CHECK_THROWS_AS(parse_rule_lines("I am sorry, I cannot help with that.\n"), NoRulesFound);
    CHECK_THROWS_AS(parse_rule_lines(""), NoRulesFound);
}

TEST_CASE("rule-shaped lines that do not parse are loud errors") {
    CHECK_THROWS_AS(parse_rule_lines("{'rule': [('OA_1', 'O_1_1')], 'decision':}\n"),
                    MalformedRule);
    CHECK_THROWS_AS(parse_rule_lines("{'rule': [('OA_1', 'O_1_1')]}\n"), MalformedRule);
    CHECK_THROWS_AS(parse_rule_lines("{'rule': 3, 'decision': 'permit'}\n"), MalformedRule);
    try {
        parse_rule_lines("ok\n{'rule': [bad], 'decision': 'permit'}\n");
        FAIL("expected MalformedRule");
    } catch (const MalformedRule& e) {
        CHECK(e.line_number == 2);
    }
}

TEST_CASE("kind mismatches are rejected") {
    CHECK_THROWS_AS(parse_rule_lines("{'rule': [('SA_1', 'O_1_2')], 'decision': 'permit'}"),
                    KindMismatch);
    CHECK_THROWS_AS(parse_rule_lines("{'rule': [('SA_1', 'S_2_2')], 'decision': 'permit'}"),
                    KindMismatch);
}

TEST_CASE("conflicting conditions in one line are rejected") {
    CHECK_THROWS_AS(
        parse_rule_lines(
            "{'rule': [('SA_1', 'S_1_1'), ('SA_1', 'S_1_2')], 'decision': 'permit'}"),
        ConflictingConditions);
}

TEST_CASE("strict mode rejects any non-rule line") {
    CHECK_THROWS_AS(parse_rule_lines("preamble\n{'rule': [], 'decision': 'permit'}\n",
                                     /*strict=*/true),
                    MalformedRule);
}

TEST_CASE("emit then parse is the identity on random policies") {
    Rng rng(314159);
    for (int trial = 0; trial < 200; ++trial) {
        PolicySet policy;
        int n = rng.uniform_int(1, 6);
        for (int i = 0; i < n; ++i) {
            Rule r;
            r.decision = rng.uniform_int(0, 1) ? Decision::Permit : Decision::Deny;
            int conds = rng.uniform_int(0, 5);
            for (int c = 0; c < conds; ++c) {
                bool subject = rng.uniform_int(0, 1) == 0;
                int index = rng.uniform_int(1, 9);
                int value = rng.uniform_int(1, 12);
                AttributeValue cond =
                    subject ? sa(index, value) : oa(index, value);
                bool duplicate = false;
                for (const auto& existing : r.conditions) {
                    if (existing.attr == cond.attr) duplicate = true;
                }
                if (!duplicate) r.conditions.push_back(cond);
            }
            policy.rules.push_back(normalize_rule(r));
        }
        std::string text = emit_policy(policy);
        ParsedRules parsed = parse_rule_lines(text);
        CHECK(parsed.policy == policy);
        CHECK(emit_policy(parsed.policy) == text);
    }
}

} // TEST_SUITE
