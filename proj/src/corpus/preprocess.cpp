#include "clts/corpus/preprocess.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "clts/common/error.hpp"
#include "clts/common/parallel.hpp"
#include "clts/common/vector_math.hpp"

namespace clts::corpus {

AugmentResult augment_with_translation(const std::vector<SentencePair>& pairs, Translator& translator,
                                       std::size_t parallelism) {
    std::vector<std::optional<SentencePair>> translated(pairs.size());
    std::vector<std::string> errors(pairs.size());

    parallel_for(pairs.size(), parallelism, [&](std::size_t i) {
        const SentencePair& in = pairs[i];
        if (!in.monolingual_origin) {
            translated[i] = in;
            return;
        }
        const Language from = in.source_lang;
        const Language to = other_language(from);
        std::vector<std::string> texts;
        texts.reserve(in.references.size() + 1);
        texts.push_back(in.source);
        texts.insert(texts.end(), in.references.begin(), in.references.end());
        try {
            auto out = translator.translate(texts, from, to);
            if (out.size() != texts.size())
                throw TranslationBackendError("translator returned " + std::to_string(out.size()) +
                                              " texts for " + std::to_string(texts.size()));
            SentencePair p = in;
            p.target_lang = to;
            p.monolingual_origin = false;
            p.references.assign(out.begin() + 1, out.end());
            p.provenance = Provenance{from, in.source, in.references, out.front(), translator.name()};
            if (const auto err = validation_error(p); !err.empty())
                throw TranslationBackendError("translated pair invalid: " + err);
            translated[i] = std::move(p);
        } catch (const TranslationBackendError& e) {
            errors[i] = e.what();
        }
    });

    AugmentResult result;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (translated[i]) result.pairs.push_back(std::move(*translated[i]));
        else result.failures.push_back({pairs[i].id, errors[i]});
    }
    return result;
}

FilterResult filter_by_similarity(const std::vector<SentencePair>& pairs, Embedder& embedder,
                                  double threshold) {
    if (std::isnan(threshold)) throw InvalidArgument("similarity threshold is NaN");

    // Embed each distinct text once.
    std::map<std::string, std::size_t> slot;
    std::vector<std::string> texts;
    auto intern = [&](const std::string& t) {
        if (slot.emplace(t, texts.size()).second) texts.push_back(t);
    };
    for (const auto& p : pairs) {
        intern(p.source);
        for (const auto& r : p.references) intern(r);
    }
    const auto vectors = embedder.embed(texts);
    if (vectors.size() != texts.size())
        throw EmbeddingBackendError(embedder.name() + " returned " + std::to_string(vectors.size()) +
                                    " vectors for " + std::to_string(texts.size()) + " texts");
    for (const auto& v : vectors)
        if (v.size() != vectors.front().size())
            throw DimensionMismatch("embedding dimensions differ across texts");

    FilterResult result;
    result.decisions.reserve(pairs.size());
    for (const auto& p : pairs) {
        const auto& src = vectors[slot.at(p.source)];
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& r : p.references)
            best = std::max(best, cosine_similarity(src, vectors[slot.at(r)]));
        const bool kept = best >= threshold;
        result.decisions.push_back({p.id, best, kept, threshold});
        (kept ? result.kept : result.filtered).push_back(p);
    }
    return result;
}

nlohmann::json to_json(const SimilarityDecision& d) {
    return {{"pair_id", d.pair_id}, {"score", d.score}, {"kept", d.kept}, {"threshold", d.threshold}};
}

}  // namespace clts::corpus
