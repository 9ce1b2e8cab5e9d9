#include "clts/pipeline/config.hpp"

#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "clts/common/error.hpp"
#include "clts/common/hash.hpp"

namespace clts::pipeline {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

template <typename T>
T get_or(const toml::node_view<const toml::node>& node, const std::string& key, T fallback) {
    if (!node) return fallback;
    if (const auto v = node.value<T>()) return *v;
    throw ConfigError("config key '" + key + "' has the wrong type");
}

std::string require_string(const toml::node_view<const toml::node>& node, const std::string& key) {
    if (!node) throw ConfigError("config key '" + key + "' is required");
    if (const auto v = node.value<std::string>()) return *v;
    throw ConfigError("config key '" + key + "' must be a string");
}

std::vector<std::string> string_list(const toml::node_view<const toml::node>& node, const std::string& key) {
    std::vector<std::string> out;
    if (!node) return out;
    const auto* array = node.as_array();
    if (array == nullptr) throw ConfigError("config key '" + key + "' must be an array of strings");
    for (const auto& item : *array) {
        const auto v = item.value<std::string>();
        if (!v) throw ConfigError("config key '" + key + "' must be an array of strings");
        out.push_back(*v);
    }
    return out;
}

corpus::ServiceConfig service(const toml::node_view<const toml::node>& node, const std::string& key,
                              corpus::ServiceConfig fallback) {
    if (!node) return fallback;
    if (const auto endpoint = node.value<std::string>()) {
        fallback.endpoint = *endpoint;
        return fallback;
    }
    fallback.endpoint = get_or<std::string>(node["endpoint"], key + ".endpoint", fallback.endpoint);
    fallback.key_env = get_or<std::string>(node["key_env"], key + ".key_env", fallback.key_env);
    fallback.timeout = std::chrono::seconds(
        get_or<std::int64_t>(node["timeout_seconds"], key + ".timeout_seconds", fallback.timeout.count()));
    fallback.batch_size = static_cast<std::size_t>(
        get_or<std::int64_t>(node["batch_size"], key + ".batch_size", static_cast<std::int64_t>(fallback.batch_size)));
    fallback.retry.max_retries =
        static_cast<int>(get_or<std::int64_t>(node["max_retries"], key + ".max_retries", fallback.retry.max_retries));
    return fallback;
}

std::pair<Language, Language> parse_direction(const std::string& direction) {
    const auto dash = direction.find('-');
    if (dash == std::string::npos)
        throw ConfigError("corpus direction '" + direction + "' must look like en-fr");
    return {parse_language(direction.substr(0, dash)), parse_language(direction.substr(dash + 1))};
}

LanguageResourceSpec resources(const toml::node_view<const toml::node>& node, const std::filesystem::path& base) {
    LanguageResourceSpec spec;
    if (!node) return spec;
    if (const auto p = node["patterns"].value<std::string>()) spec.patterns = resolve(base, *p);
    if (const auto f = node["frequencies"].value<std::string>()) spec.frequencies = resolve(base, *f);
    return spec;
}

}  // namespace

void RunConfig::validate() const {
    if (corpora.empty()) throw ConfigError("config lists no corpora");
    if (backends.empty()) throw ConfigError("config lists no backends");
    if (strategies.empty()) throw ConfigError("config lists no strategies");
    if (!(thresholds.similarity >= -1.0 && thresholds.similarity <= 1.0))
        throw ConfigError("thresholds.similarity must be in [-1, 1]");
    if (thresholds.features.infrequent_top_k < 1 || thresholds.features.long_word_min_letters < 1 ||
        thresholds.features.short_sentence_max_words < 1)
        throw ConfigError("feature thresholds must be positive");
    if (iaa.n_repeats < 1) throw ConfigError("iaa.n_repeats must be at least 1");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    generation.validate();
    for (const auto& spec : corpora)
        if (spec.monolingual && spec.target_lang != other_language(spec.source_lang))
            throw ConfigError("monolingual corpus '" + spec.id + "' must be translated into the other language");
    for (std::size_t i = 0; i < corpora.size(); ++i)
        for (std::size_t j = i + 1; j < corpora.size(); ++j)
            if (corpora[i].id == corpora[j].id) throw ConfigError("duplicate corpus id '" + corpora[i].id + "'");
    for (std::size_t i = 0; i < backends.size(); ++i)
        for (std::size_t j = i + 1; j < backends.size(); ++j)
            if (backends[i].name == backends[j].name)
                throw ConfigError("duplicate backend name '" + backends[i].name + "'");
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << "config syntax error at line " << e.source().begin.line << ": " << e.description();
        throw ConfigError(msg.str());
    }
    const toml::node_view<const toml::node> cfg{static_cast<const toml::node&>(root)};

    RunConfig c;
    c.hash = sha256_hex(text);
    c.seed = static_cast<std::uint64_t>(get_or<std::int64_t>(cfg["seed"], "seed", 0));
    c.workers = static_cast<std::size_t>(get_or<std::int64_t>(cfg["workers"], "workers", 4));
    c.output_dir = resolve(base_dir, get_or<std::string>(cfg["output_dir"], "output_dir", "run"));

    const auto strategy_names = string_list(cfg["strategies"], "strategies");
    if (!cfg["strategies"]) {
        c.strategies.assign(prompting::kAllStrategies.begin(), prompting::kAllStrategies.end());
    } else {
        for (const auto& name : strategy_names) c.strategies.push_back(prompting::parse_strategy(name));
    }

    if (const auto* corpora = cfg["corpora"].as_array()) {
        for (std::size_t i = 0; i < corpora->size(); ++i) {
            const toml::node_view<const toml::node> entry{corpora->get(i)};
            const std::string key = "corpora[" + std::to_string(i) + "]";
            CorpusSpec spec;
            spec.id = require_string(entry["id"], key + ".id");
            spec.path = resolve(base_dir, require_string(entry["path"], key + ".path"));
            try {
                spec.format = corpus::parse_corpus_format(get_or<std::string>(entry["format"], key + ".format", "jsonl"));
            } catch (const std::exception& e) {
                throw ConfigError(key + ".format: " + e.what());
            }
            std::tie(spec.source_lang, spec.target_lang) =
                parse_direction(require_string(entry["direction"], key + ".direction"));
            spec.monolingual = get_or<bool>(entry["monolingual"], key + ".monolingual", false);
            for (const auto& a : string_list(entry["annotations"], key + ".annotations"))
                spec.annotations.push_back(resolve(base_dir, a));
            c.corpora.push_back(std::move(spec));
        }
    } else if (cfg["corpora"]) {
        throw ConfigError("'corpora' must be an array of tables ([[corpora]])");
    }

    if (const auto* backends = cfg["backends"].as_array()) {
        for (std::size_t i = 0; i < backends->size(); ++i) {
            const toml::node_view<const toml::node> entry{backends->get(i)};
            const std::string key = "backends[" + std::to_string(i) + "]";
            prompting::BackendConfig b;
            b.model = require_string(entry["model"], key + ".model");
            b.name = get_or<std::string>(entry["name"], key + ".name", b.model);
            b.base_url = require_string(entry["base_url"], key + ".base_url");
            b.key_env = get_or<std::string>(entry["key_env"], key + ".key_env", "");
            b.timeout = std::chrono::seconds(get_or<std::int64_t>(entry["timeout_seconds"], key + ".timeout_seconds", 120));
            if (entry["api_key"]) throw ConfigError(key + ": API keys must come from the environment (use key_env)");
            c.backends.push_back(std::move(b));
        }
    } else if (cfg["backends"]) {
        throw ConfigError("'backends' must be an array of tables ([[backends]])");
    }

    const auto th = cfg["thresholds"];
    c.thresholds.similarity = get_or<double>(th["similarity"], "thresholds.similarity", 0.6);
    c.thresholds.filter_after_translation =
        get_or<bool>(th["filter_after_translation"], "thresholds.filter_after_translation", true);
    c.thresholds.features.infrequent_top_k =
        get_or<std::int64_t>(th["infrequent_top_k"], "thresholds.infrequent_top_k", 5000);
    c.thresholds.features.long_word_min_letters =
        static_cast<int>(get_or<std::int64_t>(th["long_word_min_letters"], "thresholds.long_word_min_letters", 7));
    c.thresholds.features.short_sentence_max_words = static_cast<int>(
        get_or<std::int64_t>(th["short_sentence_max_words"], "thresholds.short_sentence_max_words", 10));

    const auto gen = cfg["generation"];
    c.generation.temperature = get_or<double>(gen["temperature"], "generation.temperature", 1.0);
    c.generation.top_p = get_or<double>(gen["top_p"], "generation.top_p", 1.0);
    c.generation.system_prompt =
        get_or<std::string>(gen["system_prompt"], "generation.system_prompt", c.generation.system_prompt);
    c.generation.max_retries = static_cast<int>(get_or<std::int64_t>(gen["max_retries"], "generation.max_retries", 3));
    c.generation.parallelism = static_cast<std::size_t>(
        get_or<std::int64_t>(gen["parallelism"], "generation.parallelism", static_cast<std::int64_t>(c.workers)));
    c.generation.retry_base_delay =
        std::chrono::milliseconds(get_or<std::int64_t>(gen["retry_base_delay_ms"], "generation.retry_base_delay_ms", 500));

    const auto svc = cfg["services"];
    c.services.translator = service(svc["translator"], "services.translator", c.services.translator);
    c.services.embedder = service(svc["embedder"], "services.embedder", c.services.embedder);
    c.services.token_embedder_en =
        service(svc["token_embedder"], "services.token_embedder", c.services.token_embedder_en);
    c.services.token_embedder_fr = c.services.token_embedder_en;
    c.services.token_embedder_en =
        service(svc["token_embedder_en"], "services.token_embedder_en", c.services.token_embedder_en);
    c.services.token_embedder_fr =
        service(svc["token_embedder_fr"], "services.token_embedder_fr", c.services.token_embedder_fr);
    for (auto* s : {&c.services.translator, &c.services.embedder, &c.services.token_embedder_en,
                    &c.services.token_embedder_fr})
        if (s->endpoint.rfind("file:", 0) == 0) s->endpoint = "file:" + resolve(base_dir, s->endpoint.substr(5)).string();

    const auto res = cfg["resources"];
    c.resources_en = resources(res["en"], base_dir);
    c.resources_fr = resources(res["fr"], base_dir);

    const auto iaa = cfg["iaa"];
    if (const auto r = iaa["ratings"].value<std::string>()) c.iaa.ratings = resolve(base_dir, *r);
    c.iaa.n_repeats = static_cast<int>(get_or<std::int64_t>(iaa["n_repeats"], "iaa.n_repeats", 1000));

    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

}  // namespace clts::pipeline
