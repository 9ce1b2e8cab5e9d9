#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace clts::stats {

enum class ComparisonBase { source, translation };
enum class Dimension { simplicity, added, removed };

inline constexpr Dimension kAllDimensions[] = {Dimension::simplicity, Dimension::added,
                                               Dimension::removed};

std::string to_string(ComparisonBase base);
std::string to_string(Dimension dim);
/// Throws ConfigError for unknown names.
Dimension parse_dimension(std::string_view name);

/// Ordered scale of a dimension: -2..2 for simplicity, 0..5 otherwise.
std::vector<int> dimension_categories(Dimension dim);

struct RatingRecord {
    std::string item_id;
    std::string annotator_id;
    int simplicity = 0;
    int added = 0;
    int removed = 0;
    ComparisonBase comparison_base = ComparisonBase::source;
    // Optional grouping columns used for per-strategy summaries.
    std::string corpus_id;
    std::string strategy;

    int value(Dimension dim) const;
    /// Item key including the optional grouping columns.
    std::string item_key() const;
};

/// CSV with header columns item_id, annotator_id, comparison_base,
/// simplicity, added, removed (any order) plus optional corpus and
/// strategy. Throws IoError, FormatError(row) or ScaleViolation.
std::vector<RatingRecord> load_ratings(const std::filesystem::path& path);

struct HumanMeans {
    std::string corpus_id;
    std::string strategy;
    std::size_t n = 0;
    double simplicity = 0;
    double added = 0;
    double removed = 0;
};

/// Arithmetic means per (corpus, strategy), sorted by corpus then strategy.
std::vector<HumanMeans> human_eval_summary(std::span<const RatingRecord> ratings);

void write_human_means_csv(std::ostream& out, std::span<const HumanMeans> means);
/// Throws FormatError.
std::vector<HumanMeans> read_human_means_csv(std::istream& in);

}  // namespace clts::stats
