#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "clts/prompting/backend.hpp"
#include "clts/prompting/strategy.hpp"

namespace clts::prompting {

struct CachedResponse {
    std::string response;
    std::string created_at;
};

/// Backend responses keyed by (model_id, strategy, pair_id, prompt hash).
/// Backed by an append-only JSONL file when a path is given, in-memory
/// otherwise. Safe for concurrent readers and writers.
class ResponseCache {
public:
    ResponseCache() = default;
    /// Loads existing entries; a truncated last line is ignored.
    explicit ResponseCache(const std::filesystem::path& path);

    static std::string key(const std::string& model_id, Strategy strategy, const std::string& pair_id,
                           const ChatRequest& request);

    std::optional<CachedResponse> find(const std::string& key) const;
    void store(const std::string& key, const CachedResponse& value);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::unordered_map<std::string, CachedResponse> entries_;
    std::ofstream file_;
};

}  // namespace clts::prompting
