#include "clts/prompting/runner.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <mutex>

#include "clts/common/error.hpp"
#include "clts/common/hash.hpp"
#include "clts/common/parallel.hpp"
#include "clts/common/retry.hpp"
#include "clts/common/utf8.hpp"

namespace clts::prompting {

void GenerationConfig::validate() const {
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ConfigError("temperature must be >= 0");
    if (!(top_p > 0.0 && top_p <= 1.0)) throw ConfigError("top_p must be in (0, 1]");
    if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
    if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
}

SystemOutput run_strategy(Strategy strategy, const corpus::SentencePair& pair, GenerationBackend& backend,
                          const GenerationConfig& cfg, const RunHooks& hooks) {
    const RetryPolicy policy{cfg.max_retries, cfg.retry_base_delay, std::chrono::milliseconds{30000}};
    const auto steps = prompt_steps(strategy, pair.target_lang);
    if (utf8::trim(pair.source).empty()) throw InvalidArgument("pair " + pair.id + " has an empty source");

    SystemOutput out;
    out.pair_id = pair.id;
    out.corpus_id = pair.corpus_id;
    out.strategy = strategy;
    out.model_id = backend.model_id();

    std::string payload = pair.source;
    std::string created_at;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        ChatRequest request{cfg.system_prompt, steps[i].render(payload), cfg.temperature, cfg.top_p};
        const std::string key = ResponseCache::key(out.model_id, strategy, pair.id, request);

        std::optional<CachedResponse> cached = hooks.cache ? hooks.cache->find(key) : std::nullopt;
        if (!cached) {
            std::string response;
            int attempts = 0;
            try {
                response = with_retries<BackendError>(policy, fnv1a64(key), [&] {
                    ++attempts;
                    return backend.complete(request);
                });
            } catch (const BackendError& e) {
                throw BackendError(out.model_id + " failed after " + std::to_string(attempts) +
                                   " attempts: " + e.what());
            }
            if (utf8::trim(response).empty())
                throw EmptyResponse(out.model_id + " returned an empty response for pair " + pair.id);
            cached = CachedResponse{std::move(response), hooks.clock ? hooks.clock() : std::string{}};
            if (hooks.cache) hooks.cache->store(key, *cached);
        }
        out.prompt_log.push_back({request.system_prompt, request.user_prompt, cached->response});
        payload = utf8::trim(cached->response);
        if (i + 1 < steps.size()) out.intermediate = payload;
        created_at = cached->created_at;
    }
    out.hypothesis = payload;
    out.created_at = created_at;
    return out;
}

nlohmann::json to_json(const ItemError& e) {
    return {{"pair_id", e.pair_id},
            {"strategy", to_string(e.strategy)},
            {"model_id", e.model_id},
            {"message", e.message}};
}

MatrixResult run_matrix(const std::vector<corpus::SentencePair>& pairs, const std::vector<Strategy>& strategies,
                        const std::vector<GenerationBackend*>& backends, const GenerationConfig& cfg,
                        const MatrixOptions& options) {
    if (pairs.empty() || strategies.empty() || backends.empty())
        throw InvalidArgument("run_matrix needs at least one pair, strategy and backend");
    cfg.validate();

    std::map<std::string, SystemOutput> done;
    if (options.outputs_path && std::filesystem::exists(*options.outputs_path))
        for (auto& o : load_outputs(*options.outputs_path)) done.emplace(output_key(o), std::move(o));

    std::ofstream outputs_file;
    std::ofstream errors_file;
    if (options.outputs_path) {
        outputs_file.open(*options.outputs_path, std::ios::app);
        if (!outputs_file) throw IoError("cannot append to " + options.outputs_path->string());
    }
    if (options.errors_path) {
        errors_file.open(*options.errors_path, std::ios::app);
        if (!errors_file) throw IoError("cannot append to " + options.errors_path->string());
    }

    struct Item {
        std::size_t pair;
        Strategy strategy;
        std::size_t backend;
    };
    std::vector<Item> items;
    for (std::size_t p = 0; p < pairs.size(); ++p)
        for (Strategy s : strategies)
            for (std::size_t b = 0; b < backends.size(); ++b) items.push_back({p, s, b});

    std::vector<std::unique_ptr<CountingBackend>> counted;
    for (auto* b : backends) counted.push_back(std::make_unique<CountingBackend>(*b));

    MatrixResult result;
    std::vector<std::optional<SystemOutput>> produced(items.size());
    std::vector<std::optional<ItemError>> failed(items.size());
    std::vector<bool> backend_failure(items.size(), false);
    std::mutex io_mutex;
    const RunHooks hooks{options.cache, options.clock};

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto key = output_key(backends[items[i].backend]->model_id(), items[i].strategy,
                                    pairs[items[i].pair].id);
        if (auto it = done.find(key); it != done.end()) {
            produced[i] = it->second;
            ++result.resumed;
        } else {
            todo.push_back(i);
        }
    }

    parallel_for(todo.size(), cfg.parallelism, [&](std::size_t t) {
        const std::size_t i = todo[t];
        const Item& item = items[i];
        const auto& pair = pairs[item.pair];
        auto& backend = *counted[item.backend];
        try {
            SystemOutput o = run_strategy(item.strategy, pair, backend, cfg, hooks);
            std::lock_guard lock(io_mutex);
            if (outputs_file.is_open()) {
                outputs_file << to_json(o).dump() << '\n';
                outputs_file.flush();
            }
            produced[i] = std::move(o);
        } catch (const Error& e) {
            ItemError err{pair.id, item.strategy, backend.model_id(), e.what()};
            std::lock_guard lock(io_mutex);
            backend_failure[i] = e.category() == ErrorCategory::backend;
            if (errors_file.is_open()) {
                errors_file << to_json(err).dump() << '\n';
                errors_file.flush();
            }
            failed[i] = std::move(err);
        }
    });

    for (const auto& c : counted) result.backend_calls += c->calls();
    std::size_t backend_failures = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (produced[i]) result.outputs.push_back(std::move(*produced[i]));
        if (failed[i]) result.errors.push_back(std::move(*failed[i]));
        if (backend_failure[i]) ++backend_failures;
    }
    if (!todo.empty() && backend_failures == todo.size() && result.resumed == 0)
        throw BackendError("all " + std::to_string(todo.size()) +
                           " requested items failed; first error: " + result.errors.front().message);
    return result;
}

}  // namespace clts::prompting
