#include "clts/prompting/strategy.hpp"

#include "clts/common/error.hpp"
#include "clts/common/utf8.hpp"

namespace clts::prompting {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::direct: return "Direct";
        case Strategy::comp_ts: return "CompTS";
        case Strategy::comp_st: return "CompST";
        case Strategy::decomp_ts: return "DecompTS";
        case Strategy::decomp_st: return "DecompST";
    }
    return "?";
}

std::string display_name(Strategy s) {
    switch (s) {
        case Strategy::direct: return "Direct";
        case Strategy::comp_ts: return "T>S Comp.";
        case Strategy::comp_st: return "S>T Comp.";
        case Strategy::decomp_ts: return "T>S Decomp.";
        case Strategy::decomp_st: return "S>T Decomp.";
    }
    return "?";
}

Strategy parse_strategy(std::string_view name) {
    for (Strategy s : kAllStrategies)
        if (to_string(s) == name) return s;
    throw ConfigError("unknown strategy '" + std::string(name) +
                      "'; valid strategies: Direct, CompTS, CompST, DecompTS, DecompST");
}

std::vector<PromptStep> prompt_steps(Strategy s, Language target) {
    const std::string lang = language_name(target);
    const std::string simplify_in = "Please simplify the following text in " + lang + ": ";
    const std::string translate_to = "Please translate the following text to " + lang + ": ";
    switch (s) {
        case Strategy::direct:
            return {{simplify_in, false}};
        case Strategy::comp_ts:
            return {{"Please first translate the following text to " + lang +
                         " and then simplify the translated text in " + lang + ": ",
                     false}};
        case Strategy::comp_st:
            return {{"Please first simplify the following text and then translate the "
                     "simplification to " + lang + ": ",
                     false}};
        case Strategy::decomp_ts:
            return {{translate_to, false}, {simplify_in, true}};
        case Strategy::decomp_st:
            return {{"Please simplify the following text: ", false}, {translate_to, true}};
    }
    return {};
}

std::vector<std::string> build_prompts(Strategy s, std::string_view source, Language target) {
    if (utf8::trim(source).empty()) throw InvalidArgument("cannot build prompts for an empty source");
    std::vector<std::string> out;
    for (const auto& step : prompt_steps(s, target))
        out.push_back(step.render(step.takes_previous_output ? kPreviousOutputPlaceholder : source));
    return out;
}

}  // namespace clts::prompting
