#include "clts/metrics/bleu.hpp"

#include <cmath>
#include <cstdlib>

#include "clts/common/error.hpp"

namespace clts::metrics {

BleuStats& BleuStats::operator+=(const BleuStats& other) {
    for (int n = 0; n < kMaxOrder; ++n) {
        matches[n] += other.matches[n];
        totals[n] += other.totals[n];
    }
    hypothesis_length += other.hypothesis_length;
    reference_length += other.reference_length;
    return *this;
}

BleuStats bleu_stats(const Tokens& hypothesis, const std::vector<Tokens>& references) {
    if (references.empty()) throw EmptyReference("reference set is empty");

    Vocabulary vocab;
    const auto hyp_ids = vocab.ids(hypothesis);
    std::vector<std::vector<std::uint32_t>> ref_ids;
    ref_ids.reserve(references.size());
    for (const auto& r : references) ref_ids.push_back(vocab.ids(r));

    BleuStats stats;
    stats.hypothesis_length = static_cast<long>(hypothesis.size());

    long best = static_cast<long>(references.front().size());
    for (const auto& r : references) {
        const long len = static_cast<long>(r.size());
        const long d = std::labs(len - stats.hypothesis_length);
        const long best_d = std::labs(best - stats.hypothesis_length);
        if (d < best_d || (d == best_d && len < best)) best = len;
    }
    stats.reference_length = best;

    for (int n = 1; n <= kMaxOrder; ++n) {
        const NGramMultiset hyp(hyp_ids, n);
        NGramMultiset max_ref(std::span<const std::uint32_t>{}, n);
        for (const auto& r : ref_ids) max_ref = max_ref.unite(NGramMultiset(r, n));
        stats.matches[n - 1] = hyp.intersect(max_ref).total();
        stats.totals[n - 1] = hyp.total();
    }
    return stats;
}

double bleu_from_stats(const BleuStats& stats, BleuSmoothing smoothing) {
    double log_sum = 0.0;
    for (int n = 0; n < kMaxOrder; ++n) {
        const long total = stats.totals[n];
        const long match = stats.matches[n];
        if (total == 0) continue;  // precision 1
        if (match == 0) {
            if (smoothing == BleuSmoothing::none) return 0.0;
            log_sum += std::log(1.0 / static_cast<double>(total + 1));
        } else {
            log_sum += std::log(static_cast<double>(match) / static_cast<double>(total));
        }
    }
    double log_bp = 0.0;
    const long c = stats.hypothesis_length;
    const long r = stats.reference_length;
    if (c < r) {
        if (c == 0) return 0.0;
        log_bp = 1.0 - static_cast<double>(r) / static_cast<double>(c);
    }
    return 100.0 * std::exp(log_bp + log_sum / kMaxOrder);
}

double bleu(std::span<const Tokens> hypotheses, std::span<const std::vector<Tokens>> reference_sets) {
    if (hypotheses.size() != reference_sets.size())
        throw LengthMismatch("bleu: " + std::to_string(hypotheses.size()) + " hypotheses vs " +
                             std::to_string(reference_sets.size()) + " reference sets");
    if (hypotheses.empty()) return 0.0;
    BleuStats total;
    for (std::size_t i = 0; i < hypotheses.size(); ++i)
        total += bleu_stats(hypotheses[i], reference_sets[i]);
    return bleu_from_stats(total);
}

double sentence_bleu(const Tokens& hypothesis, const std::vector<Tokens>& references) {
    return bleu_from_stats(bleu_stats(hypothesis, references), BleuSmoothing::add_one);
}

}  // namespace clts::metrics
