#pragma once

#include <array>
#include <span>
#include <vector>

#include "clts/metrics/ngram.hpp"
#include "clts/metrics/tokenize.hpp"

namespace clts::metrics {

/// Sufficient statistics for BLEU-4. Corpus BLEU sums these over sentences,
/// which makes it independent of item order.
struct BleuStats {
    std::array<long, kMaxOrder> matches{};  // clipped n-gram matches
    std::array<long, kMaxOrder> totals{};   // hypothesis n-gram counts
    long hypothesis_length = 0;
    long reference_length = 0;  // closest reference length, ties to the shorter

    BleuStats& operator+=(const BleuStats& other);
};

/// Throws EmptyReference if `references` is empty.
BleuStats bleu_stats(const Tokens& hypothesis, const std::vector<Tokens>& references);

enum class BleuSmoothing {
    none,    // an order with zero matches gives BLEU 0
    add_one  // orders with zero matches use 1 / (total + 1)
};

/// Geometric mean of the four modified precisions times the brevity
/// penalty, on a 0..100 scale. An order whose hypothesis side is empty
/// (fewer tokens than the order) has precision 1.
double bleu_from_stats(const BleuStats& stats, BleuSmoothing smoothing = BleuSmoothing::none);

/// Corpus-level BLEU-4. Throws LengthMismatch or EmptyReference.
double bleu(std::span<const Tokens> hypotheses, std::span<const std::vector<Tokens>> reference_sets);

/// Sentence-level BLEU with add-one smoothing, for per-item diagnostics.
double sentence_bleu(const Tokens& hypothesis, const std::vector<Tokens>& references);

}  // namespace clts::metrics
