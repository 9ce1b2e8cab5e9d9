#include "clts/corpus/sentence_pair.hpp"

#include <stdexcept>

#include "clts/common/utf8.hpp"

namespace clts::corpus {

std::string to_string(Split split) { return split == Split::train ? "train" : "test"; }

Split parse_split(const std::string& text) {
    if (text == "train") return Split::train;
    if (text == "test") return Split::test;
    throw std::invalid_argument("split must be \"train\" or \"test\", got \"" + text + "\"");
}

std::string validation_error(const SentencePair& pair) {
    if (utf8::trim(pair.id).empty()) return "id is empty";
    if (utf8::trim(pair.source).empty()) return "source is empty";
    if (pair.references.empty()) return "references is empty";
    for (std::size_t i = 0; i < pair.references.size(); ++i)
        if (utf8::trim(pair.references[i]).empty())
            return "reference " + std::to_string(i) + " is empty";
    if (utf8::trim(pair.corpus_id).empty()) return "corpus_id is empty";
    if (pair.source_lang == pair.target_lang && !pair.monolingual_origin)
        return "source_lang equals target_lang but pair is not flagged monolingual_origin";
    if (pair.monolingual_origin && pair.source_lang != pair.target_lang)
        return "monolingual_origin pair must have source_lang == target_lang";
    return {};
}

nlohmann::json to_json(const SentencePair& pair) {
    nlohmann::json j = {
        {"id", pair.id},
        {"source", pair.source},
        {"references", pair.references},
        {"source_lang", clts::to_string(pair.source_lang)},
        {"target_lang", clts::to_string(pair.target_lang)},
        {"corpus_id", pair.corpus_id},
        {"split", to_string(pair.split)},
    };
    if (pair.monolingual_origin) j["monolingual_origin"] = true;
    if (pair.provenance) {
        const auto& p = *pair.provenance;
        j["provenance"] = {
            {"original_lang", clts::to_string(p.original_lang)},
            {"original_source", p.original_source},
            {"original_references", p.original_references},
            {"translated_source", p.translated_source},
            {"translator", p.translator},
        };
    }
    return j;
}

namespace {

std::string require_string(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    if (!j.at(key).is_string())
        throw std::invalid_argument(std::string("field \"") + key + "\" is not a string");
    return j.at(key).get<std::string>();
}

std::vector<std::string> require_string_array(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    const auto& arr = j.at(key);
    if (!arr.is_array())
        throw std::invalid_argument(std::string("field \"") + key + "\" is not an array");
    std::vector<std::string> out;
    for (const auto& v : arr) {
        if (!v.is_string())
            throw std::invalid_argument(std::string("field \"") + key + "\" has a non-string element");
        out.push_back(v.get<std::string>());
    }
    return out;
}

Language require_language(const nlohmann::json& j, const char* key) {
    const std::string code = require_string(j, key);
    if (code != "en" && code != "fr")
        throw std::invalid_argument(std::string("field \"") + key + "\" must be \"en\" or \"fr\"");
    return parse_language(code);
}

}  // namespace

SentencePair pair_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("row is not a JSON object");
    SentencePair p;
    p.id = require_string(j, "id");
    p.source = require_string(j, "source");
    p.references = require_string_array(j, "references");
    p.source_lang = require_language(j, "source_lang");
    p.target_lang = require_language(j, "target_lang");
    p.corpus_id = require_string(j, "corpus_id");
    p.split = parse_split(require_string(j, "split"));
    if (j.contains("monolingual_origin")) {
        if (!j.at("monolingual_origin").is_boolean())
            throw std::invalid_argument("field \"monolingual_origin\" is not a boolean");
        p.monolingual_origin = j.at("monolingual_origin").get<bool>();
    }
    if (j.contains("provenance")) {
        const auto& pj = j.at("provenance");
        Provenance prov;
        prov.original_lang = require_language(pj, "original_lang");
        prov.original_source = require_string(pj, "original_source");
        prov.original_references = require_string_array(pj, "original_references");
        prov.translated_source = require_string(pj, "translated_source");
        if (pj.contains("translator")) prov.translator = require_string(pj, "translator");
        p.provenance = std::move(prov);
    }
    if (const auto err = validation_error(p); !err.empty()) throw std::invalid_argument(err);
    return p;
}

}  // namespace clts::corpus
