#pragma once

#include <array>
#include <span>
#include <vector>

#include "clts/metrics/ngram.hpp"
#include "clts/metrics/tokenize.hpp"

namespace clts::metrics {

/// Per-order SARI operation scores, each in [0, 1].
struct SariComponents {
    std::array<double, kMaxOrder> add_f1{};
    std::array<double, kMaxOrder> keep_f1{};
    std::array<double, kMaxOrder> delete_precision{};

    double add() const;
    double keep() const;
    double del() const;
    /// Mean of the three operation averages, scaled to 0..100.
    double score() const;
};

/// Sentence-level SARI in the original multi-reference formulation:
/// source and candidate n-gram counts are replicated by the number of
/// references, ADD and KEEP are scored by F1 and DELETE by precision only.
/// Any ratio whose denominator is empty is 1 (its numerator is then empty too).
SariComponents sari_components(const Tokens& source, const Tokens& hypothesis,
                               const std::vector<Tokens>& references);

double sentence_sari(const Tokens& source, const Tokens& hypothesis,
                     const std::vector<Tokens>& references);

/// Corpus SARI: mean of sentence scores. Throws LengthMismatch or EmptyReference.
double sari(std::span<const Tokens> sources, std::span<const Tokens> hypotheses,
            std::span<const std::vector<Tokens>> reference_sets);

}  // namespace clts::metrics
