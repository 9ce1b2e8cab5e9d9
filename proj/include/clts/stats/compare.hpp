#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "clts/stats/welch.hpp"

namespace clts::stats {

/// One per-item observation of a metric or feature.
struct ScoreRow {
    std::string corpus_id;
    std::string model;
    std::string strategy;
    std::string metric;
    double value = 0;
};

struct Comparison {
    std::string corpus_id;
    std::string model;
    TestResult test;  // metric_name, group_a, group_b filled in
    /// Significant after dividing alpha by the number of tests in the cell.
    bool bonferroni_significant = false;
};

/// For every (corpus, model, metric) cell, Welch tests between every pair of
/// strategies present in the cell. Strategies are ordered by canonical
/// strategy order, unknown names after them alphabetically. Cells come out
/// sorted by corpus, model, metric.
std::vector<Comparison> compare_strategies(std::span<const ScoreRow> rows,
                                           double alpha = kDefaultAlpha);

/// Columns: corpus, model, metric, strategy_a, strategy_b, t, df, p,
/// significant, bonferroni_significant.
void write_significance_csv(std::ostream& out, std::span<const Comparison> comparisons);
/// Throws IoError or FormatError.
std::vector<Comparison> read_significance_csv(std::istream& in);

}  // namespace clts::stats
