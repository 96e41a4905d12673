#include "minebench/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace minebench {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string subject_label(int i) { return "S" + std::to_string(i + 1); }
std::string object_label(int j) { return "O" + std::to_string(j + 1); }

std::string profile_attr_list(const EntityProfile& p, AttributeKind kind) {
    std::string out;
    const char* attr_prefix = kind == AttributeKind::Subject ? "SA" : "OA";
    for (int k = 0; k < p.attribute_count(); ++k) {
        if (k > 0) out += ", ";
        AttributeValue v{{kind, k + 1}, p.values[static_cast<std::size_t>(k)]};
        out += attr_prefix + std::to_string(k + 1) + "=" + v.token();
    }
    return out;
}

ordered_json profiles_to_json(const std::vector<EntityProfile>& profiles, AttributeKind kind) {
    ordered_json arr = ordered_json::array();
    for (const EntityProfile& p : profiles) {
        ordered_json tokens = ordered_json::array();
        for (int k = 0; k < p.attribute_count(); ++k) {
            AttributeValue v{{kind, k + 1}, p.values[static_cast<std::size_t>(k)]};
            tokens.push_back(v.token());
        }
        arr.push_back(std::move(tokens));
    }
    return arr;
}

std::string attributes_json_text(const Scenario& scenario) {
    ordered_json doc;
    doc["SV"] = profiles_to_json(scenario.subjects, AttributeKind::Subject);
    doc["OV"] = profiles_to_json(scenario.objects, AttributeKind::Object);
    return doc.dump(4) + "\n";
}

std::vector<EntityProfile> profiles_from_json(const ordered_json& arr, char kind_letter) {
    std::vector<EntityProfile> out;
    for (const auto& entry : arr) {
        EntityProfile p;
        int expected_index = 1;
        for (const auto& token : entry) {
            std::string t = token.get<std::string>();
            if (t.size() < 5 || t[0] != kind_letter || t[1] != '_') {
                throw IoError("bad attribute token in output.json: " + t);
            }
            std::size_t second = t.find('_', 2);
            if (second == std::string::npos) {
                throw IoError("bad attribute token in output.json: " + t);
            }
            int attr_index = std::stoi(t.substr(2, second - 2));
            int value_index = std::stoi(t.substr(second + 1));
            if (attr_index != expected_index) {
                throw IoError("attribute tokens out of order in output.json: " + t);
            }
            ++expected_index;
            p.values.push_back(value_index);
        }
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

const char* to_string(InputMethod m) {
    switch (m) {
        case InputMethod::AccessData: return "access_data";
        case InputMethod::AcmPlusAttributes: return "acm";
        case InputMethod::AclPlusAttributes: return "acl";
    }
    return "?";
}

InputMethod input_method_from_string(const std::string& s) {
    if (s == "access_data") return InputMethod::AccessData;
    if (s == "acm") return InputMethod::AcmPlusAttributes;
    if (s == "acl") return InputMethod::AclPlusAttributes;
    throw InvalidParams("unknown input method: " + s);
}

std::string render_access_line(const EntityProfile& subject, const EntityProfile& object,
                               int decision) {
    std::string line;
    for (int k = 0; k < subject.attribute_count(); ++k) {
        AttributeValue v{{AttributeKind::Subject, k + 1}, subject.values[static_cast<std::size_t>(k)]};
        line += v.token();
        line += ' ';
    }
    for (int k = 0; k < object.attribute_count(); ++k) {
        AttributeValue v{{AttributeKind::Object, k + 1}, object.values[static_cast<std::size_t>(k)]};
        line += v.token();
        line += ' ';
    }
    line += decision ? '1' : '0';
    return line;
}

std::string render_access_data(const Scenario& scenario) {
    std::string out;
    for (std::size_t i = 0; i < scenario.subjects.size(); ++i) {
        for (std::size_t j = 0; j < scenario.objects.size(); ++j) {
            out += render_access_line(scenario.subjects[i], scenario.objects[j],
                                      scenario.acm.at(static_cast<int>(i), static_cast<int>(j)));
            out += '\n';
        }
    }
    return out;
}

std::pair<std::string, std::string> render_acm_input(const Scenario& scenario) {
    std::string acm_text;
    for (int i = 0; i < scenario.acm.n_subjects(); ++i) {
        for (int j = 0; j < scenario.acm.n_objects(); ++j) {
            if (j > 0) acm_text += ' ';
            acm_text += scenario.acm.at(i, j) ? '1' : '0';
        }
        acm_text += '\n';
    }
    return {std::move(acm_text), attributes_json_text(scenario)};
}

std::pair<std::string, std::string> render_acl_input(const Scenario& scenario) {
    std::string acl_text;
    for (int j = 0; j < scenario.acm.n_objects(); ++j) {
        acl_text += std::to_string(j) + ":";
        for (int i = 0; i < scenario.acm.n_subjects(); ++i) {
            if (scenario.acm.at(i, j)) {
                acl_text += ' ';
                acl_text += std::to_string(i);
            }
        }
        acl_text += '\n';
    }
    return {std::move(acl_text), attributes_json_text(scenario)};
}

std::string render_verbose_acm(const Scenario& scenario) {
    std::size_t label_width = 8;
    std::size_t col_width = 4;
    for (int j = 0; j < scenario.acm.n_objects(); ++j) {
        col_width = std::max(col_width, object_label(j).size() + 2);
    }
    for (int i = 0; i < scenario.acm.n_subjects(); ++i) {
        label_width = std::max(label_width, subject_label(i).size() + 2);
    }

    auto pad = [](std::string s, std::size_t width) {
        if (s.size() < width) s.append(width - s.size(), ' ');
        return s;
    };

    std::string out = "ACM:\n";
    std::string header(label_width, ' ');
    for (int j = 0; j < scenario.acm.n_objects(); ++j) header += pad(object_label(j), col_width);
    while (!header.empty() && header.back() == ' ') header.pop_back();
    out += header + "\n";
    for (int i = 0; i < scenario.acm.n_subjects(); ++i) {
        std::string row = pad(subject_label(i), label_width);
        for (int j = 0; j < scenario.acm.n_objects(); ++j) {
            row += pad(scenario.acm.at(i, j) ? "1" : "0", col_width);
        }
        while (!row.empty() && row.back() == ' ') row.pop_back();
        out += row + "\n";
    }

    out += "\nSubject Attributes:\n";
    for (std::size_t i = 0; i < scenario.subjects.size(); ++i) {
        out += subject_label(static_cast<int>(i)) + ": " +
               profile_attr_list(scenario.subjects[i], AttributeKind::Subject) + "\n";
    }
    out += "\nObject Attributes:\n";
    for (std::size_t j = 0; j < scenario.objects.size(); ++j) {
        out += object_label(static_cast<int>(j)) + ": " +
               profile_attr_list(scenario.objects[j], AttributeKind::Object) + "\n";
    }
    return out;
}

std::string render_verbose_access_data(const Scenario& scenario) {
    std::string out;
    for (std::size_t i = 0; i < scenario.subjects.size(); ++i) {
        for (std::size_t j = 0; j < scenario.objects.size(); ++j) {
            out += subject_label(static_cast<int>(i)) + ": " +
                   profile_attr_list(scenario.subjects[i], AttributeKind::Subject) + " | " +
                   object_label(static_cast<int>(j)) + ": " +
                   profile_attr_list(scenario.objects[j], AttributeKind::Object) +
                   " | Decision=" +
                   (scenario.acm.at(static_cast<int>(i), static_cast<int>(j)) ? "1" : "0") + "\n";
        }
    }
    return out;
}

std::string render_verbose_acl(const Scenario& scenario) {
    std::string out = "Access Control Lists:\n";
    for (int j = 0; j < scenario.acm.n_objects(); ++j) {
        out += object_label(j) + ": [";
        bool first = true;
        for (int i = 0; i < scenario.acm.n_subjects(); ++i) {
            if (!scenario.acm.at(i, j)) continue;
            if (!first) out += ", ";
            out += subject_label(i);
            first = false;
        }
        out += "]\n";
    }
    out += "\nSubject Attributes:\n";
    for (std::size_t i = 0; i < scenario.subjects.size(); ++i) {
        out += subject_label(static_cast<int>(i)) + ": " +
               profile_attr_list(scenario.subjects[i], AttributeKind::Subject) + "\n";
    }
    out += "\nObject Attributes:\n";
    for (std::size_t j = 0; j < scenario.objects.size(); ++j) {
        out += object_label(static_cast<int>(j)) + ": " +
               profile_attr_list(scenario.objects[j], AttributeKind::Object) + "\n";
    }
    return out;
}

namespace {

// Cursor-based scanner for one rule line.
class RuleLineScanner {
public:
    RuleLineScanner(const std::string& line, int line_number)
        : line_(line), line_number_(line_number) {}

    Rule parse() {
        expect('{');
        Rule rule;
        bool have_rule = false;
        bool have_decision = false;
        while (true) {
            std::string key = quoted_string();
            expect(':');
            if (key == "rule") {
                if (have_rule) fail("duplicate 'rule' key");
                rule.conditions = condition_list();
                have_rule = true;
            } else if (key == "decision") {
                if (have_decision) fail("duplicate 'decision' key");
                rule.decision = decision_value();
                have_decision = true;
            } else {
                fail("unexpected key '" + key + "'");
            }
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            break;
        }
        expect('}');
        skip_ws();
        if (pos_ != line_.size()) fail("trailing content after rule");
        if (!have_rule) fail("missing 'rule' key");
        if (!have_decision) fail("missing 'decision' key");
        return rule;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw MalformedRule(line_number_, msg); }

    char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string quoted_string() {
        skip_ws();
        char quote = peek();
        if (quote != '\'' && quote != '"') fail("expected quoted string");
        ++pos_;
        std::string out;
        while (pos_ < line_.size() && line_[pos_] != quote) out += line_[pos_++];
        if (pos_ == line_.size()) fail("unterminated string");
        ++pos_;
        return out;
    }

    Decision decision_value() {
        std::string value = quoted_string();
        std::string lower;
        for (char c : value) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (lower == "permit") return Decision::Permit;
        if (lower == "deny") return Decision::Deny;
        fail("decision must be 'permit' or 'deny', got '" + value + "'");
    }

    std::vector<AttributeValue> condition_list() {
        std::vector<AttributeValue> conditions;
        expect('[');
        skip_ws();
        if (peek() == ']') {
            ++pos_;
            return conditions;
        }
        while (true) {
            skip_ws();
            if (peek() == ']') {  // tolerate a trailing comma
                ++pos_;
                break;
            }
            conditions.push_back(condition_tuple());
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(']');
            break;
        }
        return conditions;
    }

    AttributeValue condition_tuple() {
        expect('(');
        std::string name = quoted_string();
        expect(',');
        std::string token = quoted_string();
        expect(')');
        return resolve(name, token);
    }

    AttributeValue resolve(const std::string& name, const std::string& token) {
        AttributeKind name_kind;
        std::size_t name_digits;
        if (name.rfind("SA_", 0) == 0) {
            name_kind = AttributeKind::Subject;
            name_digits = 3;
        } else if (name.rfind("OA_", 0) == 0) {
            name_kind = AttributeKind::Object;
            name_digits = 3;
        } else {
            fail("bad attribute name '" + name + "'");
        }
        int name_index = parse_positive(name.substr(name_digits), "attribute name " + name);

        AttributeKind token_kind;
        if (token.rfind("S_", 0) == 0) {
            token_kind = AttributeKind::Subject;
        } else if (token.rfind("O_", 0) == 0) {
            token_kind = AttributeKind::Object;
        } else {
            fail("bad value token '" + token + "'");
        }
        std::size_t second = token.find('_', 2);
        if (second == std::string::npos) fail("bad value token '" + token + "'");
        int token_index = parse_positive(token.substr(2, second - 2), "value token " + token);
        int value_index = parse_positive(token.substr(second + 1), "value token " + token);

        if (token_kind != name_kind || token_index != name_index) {
            throw KindMismatch("line " + std::to_string(line_number_) + ": value token '" +
                               token + "' does not belong to attribute '" + name + "'");
        }
        return AttributeValue{{name_kind, name_index}, value_index};
    }

    int parse_positive(const std::string& digits, const std::string& what) {
        if (digits.empty() ||
            !std::all_of(digits.begin(), digits.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            fail("non-numeric index in " + what);
        }
        int value = std::stoi(digits);
        if (value < 1) fail("index must be >= 1 in " + what);
        return value;
    }

    const std::string& line_;
    int line_number_;
    std::size_t pos_ = 0;
};

} // namespace

ParsedRules parse_rule_lines(const std::string& text, bool strict) {
    ParsedRules result;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] != '{') {
            if (strict) throw MalformedRule(line_number, "expected a rule line");
            ++result.skipped_lines;
            result.skipped_line_numbers.push_back(line_number);
            continue;
        }
        Rule rule = RuleLineScanner(line, line_number).parse();
        result.policy.rules.push_back(normalize_rule(rule));
    }
    if (result.policy.rules.empty()) {
        throw NoRulesFound("no parsable rule lines in input (" +
                           std::to_string(result.skipped_lines) + " lines skipped)");
    }
    return result;
}

std::string emit_rule_line(const Rule& rule) {
    Rule r = normalize_rule(rule);
    std::string out = "{'rule': [";
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        if (i > 0) out += ", ";
        out += "('" + r.conditions[i].attr.name() + "', '" + r.conditions[i].token() + "')";
    }
    out += "], 'decision': '";
    out += to_string(r.decision);
    out += "'}";
    return out;
}

std::string emit_policy(const PolicySet& policy) {
    std::string out;
    for (const Rule& r : policy.rules) {
        out += emit_rule_line(r);
        out += '\n';
    }
    return out;
}

AccessMatrix parse_access_data_decisions(const std::string& text, int n_subjects, int n_objects) {
    std::vector<std::uint8_t> cells;
    cells.reserve(static_cast<std::size_t>(n_subjects) * n_objects);
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        std::size_t last_space = line.find_last_of(' ');
        std::string decision = last_space == std::string::npos ? line : line.substr(last_space + 1);
        if (decision != "0" && decision != "1") throw IoError("bad decision in line: " + line);
        cells.push_back(decision == "1" ? 1 : 0);
    }
    if (cells.size() != static_cast<std::size_t>(n_subjects) * n_objects) {
        throw DimensionMismatch("access data line count does not match the matrix size");
    }
    return AccessMatrix(n_subjects, n_objects, std::move(cells));
}

AccessMatrix parse_acl_text(const std::string& text, int n_subjects, int n_objects) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n_subjects) * n_objects, 0);
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw IoError("bad access list line: " + line);
        int object = std::stoi(line.substr(0, colon));
        std::istringstream subjects(line.substr(colon + 1));
        int subject;
        while (subjects >> subject) {
            if (subject < 0 || subject >= n_subjects || object < 0 || object >= n_objects) {
                throw IoError("access list index out of range: " + line);
            }
            cells[static_cast<std::size_t>(subject) * n_objects + object] = 1;
        }
    }
    return AccessMatrix(n_subjects, n_objects, std::move(cells));
}

AccessMatrix parse_acm_text(const std::string& text) {
    std::vector<std::uint8_t> cells;
    int n_objects = -1;
    int n_subjects = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        int count = 0;
        std::string token;
        while (row >> token) {
            if (token != "0" && token != "1") throw IoError("bad matrix cell: " + token);
            cells.push_back(token == "1" ? 1 : 0);
            ++count;
        }
        if (n_objects == -1) {
            n_objects = count;
        } else if (count != n_objects) {
            throw DimensionMismatch("ragged matrix rows");
        }
        ++n_subjects;
    }
    if (n_subjects == 0) throw EmptyMatrix("matrix text has no rows");
    return AccessMatrix(n_subjects, n_objects, std::move(cells));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed writing " + path.string());
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto [acm_text, attrs_json] = render_acm_input(scenario);
    write_text_file(dir / "output.json", attrs_json);
    write_text_file(dir / "ACM.txt", acm_text);
    write_text_file(dir / "groundtruth.rules", emit_policy(scenario.ground_truth));

    ordered_json params;
    params["n_subjects"] = scenario.params.n_subjects;
    params["n_objects"] = scenario.params.n_objects;
    params["subject_cardinalities"] = scenario.params.subject_cardinalities;
    params["object_cardinalities"] = scenario.params.object_cardinalities;
    params["n_rules"] = scenario.params.n_rules;
    params["target_density"] = scenario.params.target_density;
    params["density_tolerance"] = scenario.params.density_tolerance;
    params["max_conditions_per_rule"] = scenario.params.max_conditions_per_rule;
    params["seed"] = scenario.params.seed;
    if (scenario.params.exact_ones) {
        params["exact_ones"] = *scenario.params.exact_ones;
    } else {
        params["exact_ones"] = nullptr;
    }
    params["max_attempts"] = scenario.params.max_attempts;

    ordered_json meta;
    meta["scenario_id"] = scenario.id;
    meta["seed"] = scenario.seed;
    meta["attempts"] = scenario.attempts;
    meta["params"] = params;
    write_text_file(dir / "meta.json", meta.dump(4) + "\n");
}

Scenario load_scenario(const std::filesystem::path& dir) {
    ordered_json meta = ordered_json::parse(read_text_file(dir / "meta.json"));
    ordered_json attrs = ordered_json::parse(read_text_file(dir / "output.json"));

    GenerationParams params;
    const auto& p = meta.at("params");
    params.n_subjects = p.at("n_subjects").get<int>();
    params.n_objects = p.at("n_objects").get<int>();
    params.subject_cardinalities = p.at("subject_cardinalities").get<std::vector<int>>();
    params.object_cardinalities = p.at("object_cardinalities").get<std::vector<int>>();
    params.n_rules = p.at("n_rules").get<int>();
    params.target_density = p.at("target_density").get<double>();
    params.density_tolerance = p.at("density_tolerance").get<double>();
    params.max_conditions_per_rule = p.at("max_conditions_per_rule").get<int>();
    params.seed = p.at("seed").get<std::uint64_t>();
    if (!p.at("exact_ones").is_null()) params.exact_ones = p.at("exact_ones").get<std::int64_t>();
    params.max_attempts = p.at("max_attempts").get<int>();

    auto subjects = profiles_from_json(attrs.at("SV"), 'S');
    auto objects = profiles_from_json(attrs.at("OV"), 'O');
    AccessMatrix acm = parse_acm_text(read_text_file(dir / "ACM.txt"));
    PolicySet ground_truth =
        parse_rule_lines(read_text_file(dir / "groundtruth.rules"), /*strict=*/true).policy;

    return Scenario::create(meta.at("scenario_id").get<std::string>(), std::move(subjects),
                            std::move(objects), std::move(ground_truth), std::move(acm), params,
                            meta.at("attempts").get<int>());
}

} // namespace minebench
