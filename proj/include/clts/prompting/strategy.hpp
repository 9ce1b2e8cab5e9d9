#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "clts/common/language.hpp"

namespace clts::prompting {

enum class Strategy { direct, comp_ts, comp_st, decomp_ts, decomp_st };

inline constexpr std::array<Strategy, 5> kAllStrategies = {
    Strategy::direct, Strategy::comp_ts, Strategy::comp_st, Strategy::decomp_ts, Strategy::decomp_st};

/// Identifier used in config files and JSONL: Direct, CompTS, CompST, DecompTS, DecompST.
std::string to_string(Strategy s);
/// Label used in report tables, e.g. "T>S Comp.".
std::string display_name(Strategy s);
/// Throws ConfigError listing the valid names.
Strategy parse_strategy(std::string_view name);

/// Backend calls per item: 2 for decomposition strategies, 1 otherwise.
constexpr int calls_required(Strategy s) {
    return (s == Strategy::decomp_ts || s == Strategy::decomp_st) ? 2 : 1;
}
constexpr bool is_decomposition(Strategy s) { return calls_required(s) == 2; }

/// One prompt of a strategy. The payload is the source text for the first
/// step and the trimmed previous response for later steps.
struct PromptStep {
    std::string prefix;
    bool takes_previous_output = false;

    std::string render(std::string_view payload) const { return prefix + std::string(payload); }
};

std::vector<PromptStep> prompt_steps(Strategy s, Language target);

/// Placeholder rendered into later steps by build_prompts.
inline constexpr std::string_view kPreviousOutputPlaceholder = "<step-1 output>";

/// Fully rendered prompt list. Steps after the first carry
/// kPreviousOutputPlaceholder as their payload. Throws InvalidArgument on an
/// empty source.
std::vector<std::string> build_prompts(Strategy s, std::string_view source, Language target);

/// Default system instruction sent with every request.
inline constexpr std::string_view kDefaultSystemPrompt =
    "You are a text-to-text model. Your sole purpose is to provide the final output of a "
    "requested task. Do not include any interim steps, intermediate results, or conversational "
    "filler. Your response must begin directly with the final, complete answer.";

}  // namespace clts::prompting
