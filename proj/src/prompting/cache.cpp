#include "clts/prompting/cache.hpp"

#include <nlohmann/json.hpp>

#include "clts/common/csv.hpp"
#include "clts/common/error.hpp"
#include "clts/common/hash.hpp"

namespace clts::prompting {

ResponseCache::ResponseCache(const std::filesystem::path& path) {
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot read cache " + path.string());
        for (std::string line; std::getline(in, line);) {
            if (line.empty()) continue;
            try {
                const auto j = nlohmann::json::parse(line);
                entries_[j.at("key").get<std::string>()] = {j.at("response").get<std::string>(),
                                                             j.value("created_at", std::string{})};
            } catch (const nlohmann::json::exception&) {
                // interrupted write; the entry will be requested again
            }
        }
    }
    file_.open(path, std::ios::app);
    if (!file_) throw IoError("cannot open cache " + path.string() + " for appending");
}

std::string ResponseCache::key(const std::string& model_id, Strategy strategy, const std::string& pair_id,
                               const ChatRequest& request) {
    const std::string prompt = request.system_prompt + '\x1f' + request.user_prompt + '\x1f' +
                               csv::format_number(request.temperature, 6) + '\x1f' +
                               csv::format_number(request.top_p, 6);
    return sha256_hex(model_id + '\x1f' + to_string(strategy) + '\x1f' + pair_id + '\x1f' +
                      sha256_hex(prompt));
}

std::optional<CachedResponse> ResponseCache::find(const std::string& key) const {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::store(const std::string& key, const CachedResponse& value) {
    std::lock_guard lock(mutex_);
    entries_[key] = value;
    if (file_.is_open()) {
        file_ << nlohmann::json{{"key", key}, {"response", value.response}, {"created_at", value.created_at}}.dump()
              << '\n';
        file_.flush();
    }
}

std::size_t ResponseCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

}  // namespace clts::prompting
