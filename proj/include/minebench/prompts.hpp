#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minebench/core.hpp"
#include "minebench/decision.hpp"
#include "minebench/serialize.hpp"

namespace minebench {

// The eight prompting strategies. Acm/Acl carry their data as file
// attachments; everything else splices rendered access-data lines into the
// prompt text.
enum class PromptStrategy {
    Prompt1,
    Prompt2ZeroShot,
    Prompt3Examples,
    ChainOfThought,
    No0To1,
    DenyAllowed,
    AcmPrompt,
    AclPrompt,
};

const char* to_string(PromptStrategy s);
PromptStrategy strategy_from_string(const std::string& s);
std::vector<PromptStrategy> all_strategies();

InputMethod input_method(PromptStrategy s);

// Semantics a mined policy is graded under: deny rules are only legal for
// the deny-allowed strategy, everything else is permit-only.
Semantics expected_semantics(PromptStrategy s);

struct PromptBundle {
    std::string text;
    // (filename, content) pairs for strategies that ship data as files.
    std::vector<std::pair<std::string, std::string>> attachments;
};

// Loads the frozen template files once and assembles prompts from them.
// Templates live in <root>/<strategy>.txt; the leading "#:" header lines
// are stripped before dispatch and the template body is never modified.
class PromptLibrary {
public:
    explicit PromptLibrary(std::filesystem::path root = default_root());

    // MINEBENCH_PROMPTS_DIR when set, otherwise the build-time default.
    static std::filesystem::path default_root();

    const std::string& template_text(PromptStrategy s) const;

    PromptBundle build_prompt(PromptStrategy s, const Scenario& scenario,
                              std::optional<InputMethod> method = std::nullopt) const;

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    std::map<PromptStrategy, std::string> templates_;
};

} // namespace minebench
