#include "clts/prompting/output.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "clts/common/error.hpp"
#include "clts/common/utf8.hpp"

namespace clts::prompting {

std::string output_key(const std::string& model_id, Strategy strategy, const std::string& pair_id) {
    return model_id + "|" + to_string(strategy) + "|" + pair_id;
}

nlohmann::json to_json(const SystemOutput& o) {
    nlohmann::json log = nlohmann::json::array();
    for (const auto& ex : o.prompt_log)
        log.push_back({{"system_prompt", ex.system_prompt},
                       {"user_prompt", ex.user_prompt},
                       {"raw_response", ex.raw_response}});
    return {
        {"pair_id", o.pair_id},
        {"corpus_id", o.corpus_id},
        {"strategy", to_string(o.strategy)},
        {"model_id", o.model_id},
        {"hypothesis", o.hypothesis},
        {"intermediate", o.intermediate ? nlohmann::json(*o.intermediate) : nlohmann::json(nullptr)},
        {"prompt_log", std::move(log)},
        {"created_at", o.created_at},
    };
}

SystemOutput output_from_json(const nlohmann::json& j) {
    SystemOutput o;
    o.pair_id = j.at("pair_id").get<std::string>();
    o.corpus_id = j.value("corpus_id", std::string{});
    o.strategy = parse_strategy(j.at("strategy").get<std::string>());
    o.model_id = j.at("model_id").get<std::string>();
    o.hypothesis = j.at("hypothesis").get<std::string>();
    if (j.contains("intermediate") && !j.at("intermediate").is_null())
        o.intermediate = j.at("intermediate").get<std::string>();
    for (const auto& ex : j.at("prompt_log"))
        o.prompt_log.push_back({ex.at("system_prompt").get<std::string>(),
                                ex.at("user_prompt").get<std::string>(),
                                ex.at("raw_response").get<std::string>()});
    o.created_at = j.value("created_at", std::string{});
    if (o.intermediate.has_value() != is_decomposition(o.strategy))
        throw std::invalid_argument("intermediate presence does not match strategy " + to_string(o.strategy));
    if (static_cast<int>(o.prompt_log.size()) != calls_required(o.strategy))
        throw std::invalid_argument("prompt_log length does not match strategy " + to_string(o.strategy));
    return o;
}

std::vector<SystemOutput> load_outputs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read outputs file " + path.string());
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
    std::vector<SystemOutput> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (utf8::trim(lines[i]).empty()) continue;
        try {
            out.push_back(output_from_json(nlohmann::json::parse(lines[i])));
        } catch (const std::exception& e) {
            const bool last = i + 1 == lines.size();
            if (last && dynamic_cast<const nlohmann::json::parse_error*>(&e)) break;
            throw FormatError(i + 1, std::string("outputs: ") + e.what());
        }
    }
    return out;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace clts::prompting
