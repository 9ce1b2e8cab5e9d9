#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clts/prompting/strategy.hpp"

namespace clts::prompting {

struct PromptExchange {
    std::string system_prompt;
    std::string user_prompt;
    std::string raw_response;

    bool operator==(const PromptExchange&) const = default;
};

/// Hypothesis produced by one (strategy, model, item) triple.
/// Invariants: intermediate is set iff the strategy is a decomposition;
/// prompt_log.size() == calls_required(strategy).
struct SystemOutput {
    std::string pair_id;
    std::string corpus_id;
    Strategy strategy = Strategy::direct;
    std::string model_id;
    std::string hypothesis;
    std::optional<std::string> intermediate;
    std::vector<PromptExchange> prompt_log;
    std::string created_at;  // ISO-8601 UTC

    bool operator==(const SystemOutput&) const = default;
};

/// Identity of an output within a run: model, strategy and pair.
std::string output_key(const std::string& model_id, Strategy strategy, const std::string& pair_id);
inline std::string output_key(const SystemOutput& o) { return output_key(o.model_id, o.strategy, o.pair_id); }

nlohmann::json to_json(const SystemOutput& o);
/// Throws std::invalid_argument or nlohmann::json::exception.
SystemOutput output_from_json(const nlohmann::json& j);

/// Reads an outputs JSONL file. A truncated final line (from an interrupted
/// run) is ignored; any other malformed line throws FormatError.
std::vector<SystemOutput> load_outputs(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace clts::prompting
