#include "minebench/prompts.hpp"

#include <cstdlib>

namespace minebench {

const char* to_string(PromptStrategy s) {
    switch (s) {
        case PromptStrategy::Prompt1: return "prompt1";
        case PromptStrategy::Prompt2ZeroShot: return "prompt2_zero_shot";
        case PromptStrategy::Prompt3Examples: return "prompt3_examples";
        case PromptStrategy::ChainOfThought: return "chain_of_thought";
        case PromptStrategy::No0To1: return "no_0_to_1";
        case PromptStrategy::DenyAllowed: return "deny_allowed";
        case PromptStrategy::AcmPrompt: return "acm";
        case PromptStrategy::AclPrompt: return "acl";
    }
    return "?";
}

PromptStrategy strategy_from_string(const std::string& s) {
    for (PromptStrategy strategy : all_strategies()) {
        if (s == to_string(strategy)) return strategy;
    }
    throw InvalidParams("unknown prompt strategy: " + s);
}

std::vector<PromptStrategy> all_strategies() {
    return {PromptStrategy::Prompt1,        PromptStrategy::Prompt2ZeroShot,
            PromptStrategy::Prompt3Examples, PromptStrategy::ChainOfThought,
            PromptStrategy::No0To1,          PromptStrategy::DenyAllowed,
            PromptStrategy::AcmPrompt,       PromptStrategy::AclPrompt};
}

InputMethod input_method(PromptStrategy s) {
    switch (s) {
        case PromptStrategy::AcmPrompt: return InputMethod::AcmPlusAttributes;
        case PromptStrategy::AclPrompt: return InputMethod::AclPlusAttributes;
        default: return InputMethod::AccessData;
    }
}

Semantics expected_semantics(PromptStrategy s) {
    return s == PromptStrategy::DenyAllowed ? Semantics::DenyOverrides : Semantics::PermitOnly;
}

namespace {

std::string strip_header(const std::string& raw) {
    std::size_t pos = 0;
    while (raw.compare(pos, 2, "#:") == 0) {
        std::size_t eol = raw.find('\n', pos);
        if (eol == std::string::npos) return "";
        pos = eol + 1;
    }
    return raw.substr(pos);
}

std::string trim_trailing_newlines(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

} // namespace

PromptLibrary::PromptLibrary(std::filesystem::path root) : root_(std::move(root)) {
    for (PromptStrategy s : all_strategies()) {
        std::filesystem::path file = root_ / (std::string(to_string(s)) + ".txt");
        templates_[s] = strip_header(read_text_file(file));
    }
}

std::filesystem::path PromptLibrary::default_root() {
    if (const char* env = std::getenv("MINEBENCH_PROMPTS_DIR")) return env;
#ifdef MINEBENCH_DEFAULT_PROMPTS_DIR
    return MINEBENCH_DEFAULT_PROMPTS_DIR;
#else
    return "prompts";
#endif
}

const std::string& PromptLibrary::template_text(PromptStrategy s) const {
    return templates_.at(s);
}

PromptBundle PromptLibrary::build_prompt(PromptStrategy s, const Scenario& scenario,
                                         std::optional<InputMethod> method) const {
    InputMethod expected = input_method(s);
    if (method && *method != expected) {
        throw IncompatibleInputMethod(std::string("strategy ") + to_string(s) +
                                      " requires input method " + to_string(expected));
    }

    PromptBundle bundle;
    const std::string& tmpl = templates_.at(s);
    switch (expected) {
        case InputMethod::AccessData:
            bundle.text =
                trim_trailing_newlines(tmpl) + "\n\nDATASET:\n" + render_access_data(scenario);
            break;
        case InputMethod::AcmPlusAttributes: {
            auto [acm_text, attrs_json] = render_acm_input(scenario);
            bundle.text = tmpl;
            bundle.attachments.emplace_back("output.json", std::move(attrs_json));
            bundle.attachments.emplace_back("ACM.txt", std::move(acm_text));
            break;
        }
        case InputMethod::AclPlusAttributes: {
            auto [acl_text, attrs_json] = render_acl_input(scenario);
            bundle.text = tmpl;
            bundle.attachments.emplace_back("output.json", std::move(attrs_json));
            bundle.attachments.emplace_back("ACL.txt", std::move(acl_text));
            break;
        }
    }
    return bundle;
}

} // namespace minebench
