#include "clts/metrics/scoring.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>
#include <unordered_map>

#include "clts/common/csv.hpp"
#include "clts/common/error.hpp"
#include "clts/common/utf8.hpp"
#include "clts/metrics/bleu.hpp"
#include "clts/metrics/sari.hpp"
#include "clts/metrics/semantic.hpp"

namespace clts::metrics {

namespace {

const std::vector<std::string> kCsvHeader = {"corpus", "model", "strategy", "n_items",
                                             "bleu", "sari", "semantic_f1"};

std::size_t strategy_rank(const std::string& name) {
    for (std::size_t i = 0; i < std::size(prompting::kAllStrategies); ++i)
        if (prompting::to_string(prompting::kAllStrategies[i]) == name) return i;
    return std::size(prompting::kAllStrategies);
}

/// Embeds each distinct text once per language.
class EmbeddingCache {
public:
    void request(Language lang, const std::string& text) { pending_[lang].push_back(text); }

    void resolve(const EmbedderByLanguage& embedders) {
        for (auto& [lang, texts] : pending_) {
            const auto it = embedders.find(lang);
            if (it == embedders.end() || it->second == nullptr) continue;
            std::sort(texts.begin(), texts.end());
            texts.erase(std::unique(texts.begin(), texts.end()), texts.end());
            auto embedded = it->second->embed(texts, lang);
            if (embedded.size() != texts.size())
                throw EmbeddingBackendError(it->second->name() + ": wrong number of embeddings");
            for (std::size_t i = 0; i < texts.size(); ++i)
                done_[{lang, texts[i]}] = std::move(embedded[i]);
        }
    }

    const TokenEmbedding* find(Language lang, const std::string& text) const {
        const auto it = done_.find({lang, text});
        return it == done_.end() ? nullptr : &it->second;
    }

private:
    std::map<Language, std::vector<std::string>> pending_;
    std::map<std::pair<Language, std::string>, TokenEmbedding> done_;
};

}  // namespace

ScoreResult score_outputs(std::span<const prompting::SystemOutput> outputs,
                          std::span<const corpus::SentencePair> pairs,
                          const EmbedderByLanguage& embedders) {
    std::unordered_map<std::string, const corpus::SentencePair*> by_id;
    for (const auto& p : pairs) by_id.emplace(p.id, &p);

    std::vector<const corpus::SentencePair*> resolved;
    resolved.reserve(outputs.size());
    EmbeddingCache cache;
    for (const auto& o : outputs) {
        const auto it = by_id.find(o.pair_id);
        if (it == by_id.end()) throw MissingPair("output refers to unknown pair '" + o.pair_id + "'");
        resolved.push_back(it->second);
        const Language lang = it->second->target_lang;
        cache.request(lang, o.hypothesis);
        for (const auto& ref : it->second->references) cache.request(lang, ref);
    }
    cache.resolve(embedders);

    struct Group {
        std::vector<Tokens> hypotheses;
        std::vector<std::vector<Tokens>> references;
        double sari_sum = 0;
        double semantic_sum = 0;
        std::size_t semantic_n = 0;
    };
    using GroupKey = std::tuple<std::string, std::string, std::size_t, std::string>;
    std::map<GroupKey, Group> groups;

    ScoreResult result;
    result.records.reserve(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const auto& o = outputs[i];
        const auto& pair = *resolved[i];
        const Language lang = pair.target_lang;
        MetricRecord r;
        r.pair_id = o.pair_id;
        r.corpus_id = o.corpus_id.empty() ? pair.corpus_id : o.corpus_id;
        r.strategy = prompting::to_string(o.strategy);
        r.model_id = o.model_id;

        const Tokens hyp = tokenize_for_metrics(o.hypothesis, lang);
        std::vector<Tokens> refs;
        for (const auto& ref : pair.references) refs.push_back(tokenize_for_metrics(ref, lang));
        const bool translated = pair.provenance && !pair.provenance->translated_source.empty();
        r.sari_source = translated ? "translated_source" : "original_source";
        const Tokens src = tokenize_for_metrics(translated ? pair.provenance->translated_source : pair.source,
                                                translated ? lang : pair.source_lang);
        r.bleu = sentence_bleu(hyp, refs);
        r.sari = sentence_sari(src, hyp, refs);

        const TokenEmbedding* h = cache.find(lang, o.hypothesis);
        if (h == nullptr) {
            r.semantic_reason = "no_embedder";
        } else if (h->tokens.empty()) {
            r.semantic_reason = "empty_hypothesis";
        } else {
            // Best match over the reference set.
            for (const auto& ref : pair.references) {
                const TokenEmbedding* e = cache.find(lang, ref);
                if (e == nullptr || e->tokens.empty()) continue;
                const double f1 = greedy_match(h->vectors, e->vectors).f1;
                if (!r.semantic || f1 > *r.semantic) r.semantic = f1;
            }
            if (!r.semantic) r.semantic_reason = "empty_references";
        }

        auto& g = groups[{r.corpus_id, r.model_id, strategy_rank(r.strategy), r.strategy}];
        g.hypotheses.push_back(hyp);
        g.references.push_back(std::move(refs));
        g.sari_sum += r.sari;
        if (r.semantic) {
            g.semantic_sum += *r.semantic;
            ++g.semantic_n;
        }
        result.records.push_back(std::move(r));
    }

    for (const auto& [key, g] : groups) {
        MetricAggregate a;
        a.corpus_id = std::get<0>(key);
        a.model_id = std::get<1>(key);
        a.strategy = std::get<3>(key);
        a.n_items = g.hypotheses.size();
        a.bleu = bleu(g.hypotheses, g.references);
        a.sari = g.sari_sum / static_cast<double>(a.n_items);
        if (g.semantic_n > 0) a.semantic_f1 = g.semantic_sum / static_cast<double>(g.semantic_n);
        result.aggregates.push_back(std::move(a));
    }
    return result;
}

nlohmann::json to_json(const MetricRecord& r) {
    nlohmann::json j = {{"pair_id", r.pair_id},   {"corpus_id", r.corpus_id}, {"strategy", r.strategy},
                        {"model_id", r.model_id}, {"bleu", r.bleu},           {"sari", r.sari},
                        {"sari_source", r.sari_source}};
    if (r.semantic) {
        j["semantic"] = *r.semantic;
    } else {
        j["semantic"] = nullptr;
        j["semantic_reason"] = r.semantic_reason;
    }
    return j;
}

MetricRecord metric_record_from_json(const nlohmann::json& j) {
    MetricRecord r;
    r.pair_id = j.at("pair_id").get<std::string>();
    r.corpus_id = j.at("corpus_id").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.bleu = j.at("bleu").get<double>();
    r.sari = j.at("sari").get<double>();
    r.sari_source = j.value("sari_source", "");
    if (const auto& s = j.at("semantic"); !s.is_null()) r.semantic = s.get<double>();
    else r.semantic_reason = j.value("semantic_reason", "");
    return r;
}

std::vector<MetricRecord> load_metric_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open metric records " + path.string());
    std::vector<MetricRecord> out;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (utf8::trim(line).empty()) continue;
        try {
            out.push_back(metric_record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(row, std::string("metric record: ") + e.what());
        }
    }
    return out;
}

void write_metric_csv(std::ostream& out, std::span<const MetricAggregate> aggregates) {
    csv::write_row(out, kCsvHeader);
    for (const auto& a : aggregates)
        csv::write_row(out, {a.corpus_id, a.model_id, a.strategy, std::to_string(a.n_items),
                             csv::format_number(a.bleu), csv::format_number(a.sari),
                             a.semantic_f1 ? csv::format_number(*a.semantic_f1) : ""});
}

std::vector<MetricAggregate> read_metric_csv(std::istream& in) {
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!csv::read_row(in, fields, line) || fields != kCsvHeader)
        throw FormatError(1, "unexpected metric table header");
    std::vector<MetricAggregate> out;
    while (csv::read_row(in, fields, line)) {
        if (fields.size() != kCsvHeader.size())
            throw FormatError(line, "expected " + std::to_string(kCsvHeader.size()) + " columns");
        try {
            MetricAggregate a;
            a.corpus_id = fields[0];
            a.model_id = fields[1];
            a.strategy = fields[2];
            a.n_items = std::stoul(fields[3]);
            a.bleu = std::stod(fields[4]);
            a.sari = std::stod(fields[5]);
            if (!fields[6].empty()) a.semantic_f1 = std::stod(fields[6]);
            out.push_back(std::move(a));
        } catch (const std::logic_error&) {
            throw FormatError(line, "non-numeric metric value");
        }
    }
    return out;
}

}  // namespace clts::metrics
