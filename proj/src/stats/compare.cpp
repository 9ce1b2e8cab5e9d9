#include "clts/stats/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <tuple>

#include "clts/common/csv.hpp"
#include "clts/common/error.hpp"
#include "clts/prompting/strategy.hpp"

namespace clts::stats {

namespace {

std::size_t strategy_order(const std::string& name) {
    for (std::size_t i = 0; i < std::size(prompting::kAllStrategies); ++i)
        if (prompting::to_string(prompting::kAllStrategies[i]) == name) return i;
    return std::size(prompting::kAllStrategies);
}

bool strategy_less(const std::string& a, const std::string& b) {
    return std::make_tuple(strategy_order(a), a) < std::make_tuple(strategy_order(b), b);
}

std::string format_stat(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return csv::format_number(value);
}

double parse_double(const std::string& cell, std::size_t line) {
    if (cell == "inf") return INFINITY;
    if (cell == "-inf") return -INFINITY;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || *end != '\0') throw FormatError(line, "'" + cell + "' is not a number");
    return v;
}

bool parse_bool(const std::string& cell, std::size_t line) {
    if (cell == "true") return true;
    if (cell == "false") return false;
    throw FormatError(line, "'" + cell + "' is not true/false");
}

const std::vector<std::string> kHeader = {"corpus", "model", "metric", "strategy_a", "strategy_b", "t",
                                          "df", "p", "significant", "bonferroni_significant"};

}  // namespace

std::vector<Comparison> compare_strategies(std::span<const ScoreRow> rows, double alpha) {
    using CellKey = std::tuple<std::string, std::string, std::string>;
    std::map<CellKey, std::map<std::string, std::vector<double>, decltype(&strategy_less)>> cells;
    for (const auto& r : rows) {
        auto [it, inserted] = cells.try_emplace({r.corpus_id, r.model, r.metric}, &strategy_less);
        it->second[r.strategy].push_back(r.value);
    }

    std::vector<Comparison> out;
    for (const auto& [key, by_strategy] : cells) {
        const auto& [corpus, model, metric] = key;
        std::vector<const std::pair<const std::string, std::vector<double>>*> groups;
        for (const auto& entry : by_strategy) groups.push_back(&entry);
        const std::size_t cell_start = out.size();
        for (std::size_t i = 0; i < groups.size(); ++i) {
            for (std::size_t j = i + 1; j < groups.size(); ++j) {
                Comparison c{corpus, model, welch_t_test(groups[i]->second, groups[j]->second, alpha), false};
                c.test.group_a = groups[i]->first;
                c.test.group_b = groups[j]->first;
                c.test.metric_name = metric;
                out.push_back(std::move(c));
            }
        }
        const double tests = static_cast<double>(out.size() - cell_start);
        for (std::size_t k = cell_start; k < out.size(); ++k)
            out[k].bonferroni_significant = out[k].test.p_value < alpha / tests;
    }
    return out;
}

void write_significance_csv(std::ostream& out, std::span<const Comparison> comparisons) {
    csv::write_row(out, kHeader);
    for (const auto& c : comparisons) {
        csv::write_row(out, {c.corpus_id, c.model, c.test.metric_name, c.test.group_a, c.test.group_b,
                             format_stat(c.test.t_stat), format_stat(c.test.df),
                             csv::format_number(c.test.p_value), c.test.significant ? "true" : "false",
                             c.bonferroni_significant ? "true" : "false"});
    }
}

std::vector<Comparison> read_significance_csv(std::istream& in) {
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!csv::read_row(in, fields, line) || fields != kHeader)
        throw FormatError(1, "unexpected significance table header");
    std::vector<Comparison> out;
    while (csv::read_row(in, fields, line)) {
        if (fields.size() != kHeader.size())
            throw FormatError(line, "expected " + std::to_string(kHeader.size()) + " columns");
        Comparison c;
        c.corpus_id = fields[0];
        c.model = fields[1];
        c.test.metric_name = fields[2];
        c.test.group_a = fields[3];
        c.test.group_b = fields[4];
        c.test.t_stat = parse_double(fields[5], line);
        c.test.df = parse_double(fields[6], line);
        c.test.p_value = parse_double(fields[7], line);
        c.test.significant = parse_bool(fields[8], line);
        c.bonferroni_significant = parse_bool(fields[9], line);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace clts::stats
