#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "minebench/core.hpp"

namespace minebench {

// The three data representations a scenario can be rendered into.
enum class InputMethod { AccessData, AcmPlusAttributes, AclPlusAttributes };

const char* to_string(InputMethod m);
InputMethod input_method_from_string(const std::string& s);

// One access-data line: subject tokens, object tokens, then the decision,
// single-space separated ("S_1_1 S_2_1 O_1_1 O_2_1 1").
std::string render_access_line(const EntityProfile& subject, const EntityProfile& object,
                               int decision);

// Every cell in row-major order, one line each, LF endings, trailing newline.
std::string render_access_data(const Scenario& scenario);

// Matrix rows of space-separated 0/1 plus the attributes JSON ("SV" then
// "OV", 4-space indentation).
std::pair<std::string, std::string> render_acm_input(const Scenario& scenario);

// Per-object permit lists ("j: i1 i2 ...", 0-based, ascending; bare "j:"
// when nothing is permitted) plus the same attributes JSON.
std::pair<std::string, std::string> render_acl_input(const Scenario& scenario);

// Human-readable variants: aligned matrix table, "S1: SA1=..., | ... |
// Decision=d" log lines, and bracketed per-object lists, each followed by
// attribute listings where applicable.
std::string render_verbose_acm(const Scenario& scenario);
std::string render_verbose_access_data(const Scenario& scenario);
std::string render_verbose_acl(const Scenario& scenario);

struct ParsedRules {
    PolicySet policy;
    int skipped_lines = 0;
    std::vector<int> skipped_line_numbers;
};

// Parses rule lines of the form
//   {'rule': [('OA_1', 'O_1_7'), ('SA_2', 'S_2_2')], 'decision': 'permit'}
// Tolerates double quotes, arbitrary internal whitespace and, unless
// `strict`, prose/fence lines (skipped and counted). Lines that open with
// '{' must parse (MalformedRule otherwise); attribute names must agree with
// their value tokens (KindMismatch); zero parsable lines is NoRulesFound.
// Rules come back normalized, in source order.
ParsedRules parse_rule_lines(const std::string& text, bool strict = false);

// Exact emission grammar: single quotes, ", " separators, canonical
// condition order. parse(emit(p)) == p for normalized policies.
std::string emit_rule_line(const Rule& rule);
std::string emit_policy(const PolicySet& policy);

// Round-trip readers for the rendered data formats.
AccessMatrix parse_access_data_decisions(const std::string& text, int n_subjects, int n_objects);
AccessMatrix parse_acl_text(const std::string& text, int n_subjects, int n_objects);
AccessMatrix parse_acm_text(const std::string& text);

// Scenario directory layout: output.json (SV/OV token lists), ACM.txt,
// groundtruth.rules, meta.json (params, seed, attempt count).
void save_scenario(const Scenario& scenario, const std::filesystem::path& dir);
Scenario load_scenario(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace minebench
