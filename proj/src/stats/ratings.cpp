#include "clts/stats/ratings.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include "clts/common/csv.hpp"
#include "clts/common/error.hpp"

namespace clts::stats {

namespace {

int parse_int(const std::string& cell, std::size_t row, const std::string& column) {
    int value = 0;
    const char* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    if (ec != std::errc() || ptr != end || cell.empty())
        throw FormatError(row, "column " + column + ": '" + cell + "' is not an integer");
    return value;
}

void check_scale(int value, int lo, int hi, std::size_t row, const std::string& column) {
    if (value < lo || value > hi)
        throw ScaleViolation("row " + std::to_string(row) + ": " + column + " = " +
                             std::to_string(value) + " outside [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
}

}  // namespace

std::string to_string(ComparisonBase base) {
    return base == ComparisonBase::source ? "source" : "translation";
}

std::string to_string(Dimension dim) {
    switch (dim) {
        case Dimension::simplicity: return "simplicity";
        case Dimension::added: return "added";
        case Dimension::removed: return "removed";
    }
    return {};
}

Dimension parse_dimension(std::string_view name) {
    for (Dimension d : kAllDimensions)
        if (to_string(d) == name) return d;
    throw ConfigError("unknown rating dimension '" + std::string(name) +
                      "' (expected simplicity, added or removed)");
}

std::vector<int> dimension_categories(Dimension dim) {
    if (dim == Dimension::simplicity) return {-2, -1, 0, 1, 2};
    return {0, 1, 2, 3, 4, 5};
}

int RatingRecord::value(Dimension dim) const {
    switch (dim) {
        case Dimension::simplicity: return simplicity;
        case Dimension::added: return added;
        case Dimension::removed: return removed;
    }
    return 0;
}

std::string RatingRecord::item_key() const {
    return corpus_id + '\x1f' + strategy + '\x1f' + item_id;
}

std::vector<RatingRecord> load_ratings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ratings file " + path.string());

    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!csv::read_row(in, fields, line)) throw FormatError(1, "ratings file is empty");
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < fields.size(); ++i) column[fields[i]] = i;
    for (const char* required :
         {"item_id", "annotator_id", "comparison_base", "simplicity", "added", "removed"})
        if (!column.contains(required))
            throw FormatError(1, std::string("missing column ") + required);
    const std::size_t width = fields.size();
    auto optional_column = [&](const char* name) -> std::optional<std::size_t> {
        const auto it = column.find(name);
        return it == column.end() ? std::nullopt : std::optional(it->second);
    };
    const auto corpus_col = optional_column("corpus");
    const auto strategy_col = optional_column("strategy");

    std::vector<RatingRecord> out;
    std::set<std::string> seen;
    while (csv::read_row(in, fields, line)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != width)
            throw FormatError(line, "expected " + std::to_string(width) + " columns, got " +
                                        std::to_string(fields.size()));
        RatingRecord r;
        r.item_id = fields[column["item_id"]];
        r.annotator_id = fields[column["annotator_id"]];
        if (r.item_id.empty() || r.annotator_id.empty())
            throw FormatError(line, "item_id and annotator_id must be non-empty");
        const std::string& base = fields[column["comparison_base"]];
        if (base == "source") {
            r.comparison_base = ComparisonBase::source;
        } else if (base == "translation") {
            r.comparison_base = ComparisonBase::translation;
        } else {
            throw FormatError(line, "comparison_base must be source or translation, got '" + base + "'");
        }
        r.simplicity = parse_int(fields[column["simplicity"]], line, "simplicity");
        r.added = parse_int(fields[column["added"]], line, "added");
        r.removed = parse_int(fields[column["removed"]], line, "removed");
        check_scale(r.simplicity, -2, 2, line, "simplicity");
        check_scale(r.added, 0, 5, line, "added");
        check_scale(r.removed, 0, 5, line, "removed");
        if (corpus_col) r.corpus_id = fields[*corpus_col];
        if (strategy_col) r.strategy = fields[*strategy_col];
        if (!seen.insert(r.item_key() + '\x1f' + r.annotator_id).second)
            throw FormatError(line, "duplicate rating of item '" + r.item_id + "' by annotator '" +
                                        r.annotator_id + "'");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<HumanMeans> human_eval_summary(std::span<const RatingRecord> ratings) {
    struct Sums {
        std::size_t n = 0;
        long simplicity = 0, added = 0, removed = 0;
    };
    std::map<std::pair<std::string, std::string>, Sums> groups;
    for (const auto& r : ratings) {
        auto& g = groups[{r.corpus_id, r.strategy}];
        ++g.n;
        g.simplicity += r.simplicity;
        g.added += r.added;
        g.removed += r.removed;
    }
    std::vector<HumanMeans> out;
    for (const auto& [key, g] : groups) {
        const double n = static_cast<double>(g.n);
        out.push_back({key.first, key.second, g.n, static_cast<double>(g.simplicity) / n,
                       static_cast<double>(g.added) / n, static_cast<double>(g.removed) / n});
    }
    return out;
}

void write_human_means_csv(std::ostream& out, std::span<const HumanMeans> means) {
    csv::write_row(out, {"corpus", "strategy", "n", "simplicity", "added", "removed"});
    for (const auto& m : means)
        csv::write_row(out, {m.corpus_id, m.strategy, std::to_string(m.n), csv::format_number(m.simplicity),
                             csv::format_number(m.added), csv::format_number(m.removed)});
}

std::vector<HumanMeans> read_human_means_csv(std::istream& in) {
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!csv::read_row(in, fields, line) ||
        fields != std::vector<std::string>{"corpus", "strategy", "n", "simplicity", "added", "removed"})
        throw FormatError(1, "unexpected human means header");
    std::vector<HumanMeans> out;
    while (csv::read_row(in, fields, line)) {
        if (fields.size() != 6) throw FormatError(line, "expected 6 columns");
        try {
            out.push_back({fields[0], fields[1], std::stoul(fields[2]), std::stod(fields[3]), std::stod(fields[4]),
                           std::stod(fields[5])});
        } catch (const std::logic_error&) {
            throw FormatError(line, "malformed human means row");
        }
    }
    return out;
}

}  // namespace clts::stats
