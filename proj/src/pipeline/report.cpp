#include "clts/pipeline/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

#include "clts/common/csv.hpp"
#include "clts/common/error.hpp"
#include "clts/prompting/strategy.hpp"

namespace clts::pipeline {

namespace {

std::size_t strategy_rank(const std::string& name) {
    for (std::size_t i = 0; i < prompting::kAllStrategies.size(); ++i)
        if (prompting::to_string(prompting::kAllStrategies[i]) == name) return i;
    return prompting::kAllStrategies.size();
}

std::string strategy_label(const std::string& name) {
    const std::size_t rank = strategy_rank(name);
    return rank < prompting::kAllStrategies.size() ? prompting::display_name(prompting::kAllStrategies[rank])
                                                    : name;
}

/// Strategy names in canonical order.
std::vector<std::string> ordered_strategies(std::set<std::string> names) {
    std::vector<std::string> out(names.begin(), names.end());
    std::stable_sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        return strategy_rank(a) < strategy_rank(b);
    });
    return out;
}

std::string fixed(double value, int digits) {
    if (std::isnan(value)) return "n/a";
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << (value == 0.0 ? 0.0 : value);
    return s.str();
}

void markdown_row(std::ostream& out, const std::vector<std::string>& cells) {
    out << '|';
    for (const auto& c : cells) out << ' ' << c << " |";
    out << '\n';
}

void markdown_rule(std::ostream& out, std::size_t columns) {
    out << '|';
    for (std::size_t i = 0; i < columns; ++i) out << " --- |";
    out << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
}

struct SelectedFeature {
    std::string_view name;
    std::string_view label;
    int digits;
};

// The readability-oriented subset shown in the Markdown feature tables.
constexpr SelectedFeature kSelectedFeatures[] = {
    {"lexical_richness", "Lex. Rich. (lower)", 3},
    {"syntactic_tree_depth", "Tree Depth (lower)", 3},
    {"sentences_number", "Sent. # (higher)", 3},
    {"words_per_sentence", "Words/Sent. (lower)", 3},
    {"short_sentences_ratio", "Short S. (higher)", 3},
    {"flesch_kincaid_grade", "FK Grade (lower)", 3},
    {"flesch_reading_ease", "FR Ease (higher)", 2},
};

double feature_value(const features::FeatureVector& v, std::string_view name) {
    for (const auto& f : features::kFeatureFields)
        if (f.name == name) return v.*f.member;
    return NAN;
}

using GroupKey = std::tuple<std::string, std::string, std::size_t, std::string>;  // corpus, model, rank, strategy

std::map<GroupKey, std::pair<features::FeatureVector, std::size_t>> feature_means(
    const std::vector<features::FeatureRecord>& records) {
    std::map<GroupKey, std::pair<features::FeatureVector, std::size_t>> sums;
    for (const auto& r : records) {
        auto& [sum, n] = sums[{r.corpus_id, r.model, strategy_rank(r.strategy), r.strategy}];
        for (const auto& f : features::kFeatureFields) sum.*f.member += r.values.*f.member;
        ++n;
    }
    for (auto& [key, entry] : sums)
        for (const auto& f : features::kFeatureFields)
            entry.first.*f.member /= static_cast<double>(entry.second);
    return sums;
}

}  // namespace

std::vector<std::vector<bool>> best_per_column(const std::vector<std::vector<double>>& table) {
    std::vector<std::vector<bool>> marks(table.size());
    std::size_t columns = 0;
    for (std::size_t r = 0; r < table.size(); ++r) {
        marks[r].assign(table[r].size(), false);
        columns = std::max(columns, table[r].size());
    }
    for (std::size_t c = 0; c < columns; ++c) {
        double best = -INFINITY;
        bool any = false;
        for (const auto& row : table)
            if (c < row.size() && !std::isnan(row[c]) && (!any || row[c] > best)) {
                best = row[c];
                any = true;
            }
        if (!any) continue;
        for (std::size_t r = 0; r < table.size(); ++r)
            if (c < table[r].size() && table[r][c] == best) marks[r][c] = true;
    }
    return marks;
}

std::string render_metric_table(const std::string& corpus_id,
                                const std::vector<metrics::MetricAggregate>& aggregates) {
    std::set<std::string> model_set, strategy_set;
    std::map<std::pair<std::string, std::string>, const metrics::MetricAggregate*> cell;
    for (const auto& a : aggregates) {
        if (a.corpus_id != corpus_id) continue;
        model_set.insert(a.model_id);
        strategy_set.insert(a.strategy);
        cell[{a.model_id, a.strategy}] = &a;
    }
    const std::vector<std::string> models(model_set.begin(), model_set.end());
    const std::vector<std::string> strategies = ordered_strategies(strategy_set);

    std::vector<std::vector<double>> values;
    for (const auto& s : strategies) {
        std::vector<double> row;
        for (const auto& m : models) {
            const auto it = cell.find({m, s});
            if (it == cell.end()) {
                row.insert(row.end(), {NAN, NAN, NAN});
            } else {
                const auto& a = *it->second;
                row.push_back(a.bleu);
                row.push_back(a.sari);
                row.push_back(a.semantic_f1.value_or(NAN));
            }
        }
        values.push_back(std::move(row));
    }
    const auto bold = best_per_column(values);

    std::ostringstream out;
    std::vector<std::string> header = {"Method"};
    for (const auto& m : models)
        for (const char* metric : {"B", "S", "C"}) header.push_back(m + " " + metric);
    markdown_row(out, header);
    markdown_rule(out, header.size());
    for (std::size_t r = 0; r < strategies.size(); ++r) {
        std::vector<std::string> row = {strategy_label(strategies[r])};
        for (std::size_t c = 0; c < values[r].size(); ++c) {
            const std::string text = fixed(values[r][c], 2);
            row.push_back(bold[r][c] ? "**" + text + "**" : text);
        }
        markdown_row(out, row);
    }
    return out.str();
}

std::vector<std::string> write_report(const std::filesystem::path& dir, const ReportInputs& inputs) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;
    std::ostringstream md;
    md << "# Cross-lingual simplification evaluation report\n\n";

    std::set<std::string> corpora;
    for (const auto& a : inputs.metrics) corpora.insert(a.corpus_id);
    for (const auto& f : inputs.features) corpora.insert(f.corpus_id);

    md << "## Automatic metrics\n\n"
       << "B = corpus BLEU-4, S = SARI (mean of sentence scores), C = token-embedding F1. "
          "Best value per column in bold.\n\n";
    if (inputs.metrics.empty()) md << "No scored outputs.\n\n";
    for (const auto& corpus : corpora) {
        bool has_rows = false;
        for (const auto& a : inputs.metrics) has_rows = has_rows || a.corpus_id == corpus;
        if (!has_rows) continue;
        const auto dir_it = inputs.directions.find(corpus);
        md << "### " << corpus;
        if (dir_it != inputs.directions.end()) md << " (" << dir_it->second << ")";
        md << "\n\n" << render_metric_table(corpus, inputs.metrics) << '\n';
    }
    {
        std::ostringstream csv_out;
        metrics::write_metric_csv(csv_out, inputs.metrics);
        write_file(dir / "metrics.csv", csv_out.str());
    }

    md << "## Human evaluation averages\n\n";
    if (inputs.human_means) {
        std::vector<stats::HumanMeans> means = *inputs.human_means;
        std::stable_sort(means.begin(), means.end(), [](const auto& a, const auto& b) {
            return std::make_tuple(a.corpus_id, strategy_rank(a.strategy), a.strategy) <
                   std::make_tuple(b.corpus_id, strategy_rank(b.strategy), b.strategy);
        });
        markdown_row(md, {"Corpus", "Strategy", "n", "Simp.", "Add.", "Rem."});
        markdown_rule(md, 6);
        for (const auto& m : means)
            markdown_row(md, {m.corpus_id, strategy_label(m.strategy), std::to_string(m.n),
                              fixed(m.simplicity, 2), fixed(m.added, 2), fixed(m.removed, 2)});
        md << '\n';
        std::ostringstream csv_out;
        stats::write_human_means_csv(csv_out, means);
        write_file(dir / "human_means.csv", csv_out.str());
    } else {
        md << "No ratings were supplied.\n\n";
    }
    if (inputs.agreement) {
        md << "Agreement (quadratic weighted kappa, median over repeats with the 2.5-97.5 "
              "percentile interval of the repeat distribution):\n\n";
        markdown_row(md, {"Dimension", "Median kappa", "Interval", "Repeats"});
        markdown_rule(md, 4);
        for (const auto& k : *inputs.agreement)
            markdown_row(md, {stats::to_string(k.dimension), fixed(k.median_kappa, 3),
                              "[" + fixed(k.ci_low, 3) + ", " + fixed(k.ci_high, 3) + "]",
                              std::to_string(k.n_repeats)});
        md << '\n';
    }

    md << "## Linguistic features\n\n"
       << "Per-document feature values averaged over each (model, strategy). "
          "The full feature set is in features.csv.\n\n";
    const auto means = feature_means(inputs.features);
    if (means.empty()) md << "No annotated outputs.\n\n";
    for (const auto& corpus : corpora) {
        bool header_done = false;
        for (const auto& [key, entry] : means) {
            if (std::get<0>(key) != corpus) continue;
            if (!header_done) {
                md << "### " << corpus << "\n\n";
                std::vector<std::string> header = {"Model", "Prompt"};
                for (const auto& f : kSelectedFeatures) header.emplace_back(f.label);
                markdown_row(md, header);
                markdown_rule(md, header.size());
                header_done = true;
            }
            std::vector<std::string> row = {std::get<1>(key), strategy_label(std::get<3>(key))};
            for (const auto& f : kSelectedFeatures) row.push_back(fixed(feature_value(entry.first, f.name), f.digits));
            markdown_row(md, row);
        }
        if (header_done) md << '\n';
    }
    {
        std::ostringstream csv_out;
        std::vector<std::string> header = {"corpus", "model", "strategy", "n_docs"};
        for (const auto& f : features::kFeatureFields) header.emplace_back(f.name);
        csv::write_row(csv_out, header);
        for (const auto& [key, entry] : means) {
            std::vector<std::string> row = {std::get<0>(key), std::get<1>(key), std::get<3>(key),
                                            std::to_string(entry.second)};
            for (const auto& f : features::kFeatureFields) row.push_back(csv::format_number(entry.first.*f.member));
            csv::write_row(csv_out, row);
        }
        write_file(dir / "features.csv", csv_out.str());
    }

    md << "## Significance\n\n"
       << "Welch t-tests between every pair of strategies for each corpus, model and metric "
          "(alpha 0.05, uncorrected; a Bonferroni-corrected flag is included in significance.csv).\n\n";
    std::size_t significant = 0;
    for (const auto& c : inputs.significance) significant += c.test.significant ? 1 : 0;
    md << "Tests: " << inputs.significance.size() << ", significant: " << significant << ".\n\n";
    {
        bool any = false;
        for (const auto& c : inputs.significance) {
            if (c.test.metric_name != "bleu" && c.test.metric_name != "sari" && c.test.metric_name != "semantic")
                continue;
            if (!any) {
                markdown_row(md, {"Corpus", "Model", "Metric", "A", "B", "t", "df", "p", "Sig."});
                markdown_rule(md, 9);
                any = true;
            }
            const auto stat = [](double v) { return std::isinf(v) ? std::string(v > 0 ? "inf" : "-inf") : fixed(v, 3); };
            markdown_row(md, {c.corpus_id, c.model, c.test.metric_name, strategy_label(c.test.group_a),
                              strategy_label(c.test.group_b), stat(c.test.t_stat), stat(c.test.df),
                              fixed(c.test.p_value, 4), c.test.significant ? "yes" : "no"});
        }
        if (any) md << '\n';
        std::ostringstream csv_out;
        stats::write_significance_csv(csv_out, inputs.significance);
        write_file(dir / "significance.csv", csv_out.str());
    }

    md << "## Notes\n\n"
       << "- SARI uses the translated source (same language as the outputs) when one exists; "
          "otherwise the original source.\n"
       << "- French reading ease uses the Kandel-Moles constants (207, 1.015, 73.6); the "
          "Flesch-Kincaid grade uses the English constants for both languages.\n"
       << "- Entity identity is the case-folded surface string. Entity distances are gaps between "
          "mention starts in document tokens; documents with fewer than two mentions score 0.\n"
       << "- unique_entities_average is the number of distinct entities per sentence, averaged over "
          "sentences; consecutive_entity_distance is the mean gap between consecutive mentions of "
          "any entity.\n"
       << "- Relative clause and apposition ratios are the fraction of sentences containing one.\n";

    write_file(dir / "report.md", md.str());
    written = {"report.md", "metrics.csv"};
    if (inputs.human_means) written.push_back("human_means.csv");
    written.push_back("features.csv");
    written.push_back("significance.csv");
    return written;
}

}  // namespace clts::pipeline
