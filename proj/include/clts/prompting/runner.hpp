#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clts/corpus/sentence_pair.hpp"
#include "clts/prompting/backend.hpp"
#include "clts/prompting/cache.hpp"
#include "clts/prompting/output.hpp"

namespace clts::prompting {

struct GenerationConfig {
    double temperature = 1.0;
    double top_p = 1.0;
    std::string system_prompt = std::string(kDefaultSystemPrompt);
    int max_retries = 3;
    std::size_t parallelism = 4;
    /// First backoff step; later retries double it, with jitter.
    std::chrono::milliseconds retry_base_delay{500};

    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

/// Optional collaborators for run_strategy.
struct RunHooks {
    ResponseCache* cache = nullptr;
    std::function<std::string()> clock = utc_timestamp;
};

/// Runs one strategy on one pair. Decomposition steps run sequentially and
/// the first response is whitespace-trimmed before being spliced into the
/// second prompt. Each backend call is retried up to cfg.max_retries times
/// on BackendError.
///
/// Throws BackendError once retries are exhausted and EmptyResponse when a
/// response is blank.
SystemOutput run_strategy(Strategy strategy, const corpus::SentencePair& pair, GenerationBackend& backend,
                          const GenerationConfig& cfg, const RunHooks& hooks = {});

struct ItemError {
    std::string pair_id;
    Strategy strategy;
    std::string model_id;
    std::string message;
};

nlohmann::json to_json(const ItemError& e);

struct MatrixOptions {
    /// Append-only outputs file; existing entries are reused, not re-requested.
    std::optional<std::filesystem::path> outputs_path;
    /// Append-only failure ledger.
    std::optional<std::filesystem::path> errors_path;
    ResponseCache* cache = nullptr;
    std::function<std::string()> clock = utc_timestamp;
};

struct MatrixResult {
    /// Ordered by pair, then strategy, then backend (input order).
    std::vector<SystemOutput> outputs;
    std::vector<ItemError> errors;
    long backend_calls = 0;  // requests that reached a backend in this run
    std::size_t resumed = 0;  // items taken from an earlier run
};

/// Runs the full pairs x strategies x backends cross product. Per-item
/// failures go to the error ledger and never abort the run; only a run in
/// which every attempted item fails with a backend error throws BackendError.
MatrixResult run_matrix(const std::vector<corpus::SentencePair>& pairs, const std::vector<Strategy>& strategies,
                        const std::vector<GenerationBackend*>& backends, const GenerationConfig& cfg,
                        const MatrixOptions& options = {});

}  // namespace clts::prompting
