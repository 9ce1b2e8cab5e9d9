#include "clts/stats/iaa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "clts/common/csv.hpp"
#include "clts/common/error.hpp"
#include "clts/common/parallel.hpp"
#include "clts/stats/kappa.hpp"

namespace clts::stats {

namespace {

struct ItemRatings {
    std::string item_id;
    std::vector<std::size_t> annotators;  // indices into the annotator list
    std::vector<int> values;
};

}  // namespace

std::mt19937_64 repeat_engine(std::uint64_t seed, std::uint64_t repeat) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(repeat), static_cast<std::uint32_t>(repeat >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw = engine();
    while (draw >= limit) draw = engine();
    return draw % n;
}

double percentile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw InvalidArgument("percentile of an empty sample");
    const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

KappaSimResult iaa_simulation(std::span<const RatingRecord> ratings, Dimension dimension,
                              const IaaOptions& options) {
    if (options.n_repeats < 1) throw InvalidArgument("n_repeats must be at least 1");
    if (ratings.empty()) throw InvalidArgument("no ratings to simulate agreement over");

    std::map<std::string, std::size_t> annotator_index;
    for (const auto& r : ratings) annotator_index.emplace(r.annotator_id, 0);
    std::size_t next = 0;
    for (auto& [id, index] : annotator_index) index = next++;

    std::map<std::string, ItemRatings> by_item;
    for (const auto& r : ratings) {
        auto& item = by_item[r.item_key()];
        item.item_id = r.item_id;
        item.annotators.push_back(annotator_index.at(r.annotator_id));
        item.values.push_back(r.value(dimension));
    }
    std::vector<ItemRatings> items;
    items.reserve(by_item.size());
    for (auto& [key, item] : by_item) {
        if (item.values.size() < 2)
            throw InsufficientRatings("item '" + item.item_id + "' has " +
                                      std::to_string(item.values.size()) + " rating(s); need 2");
        items.push_back(std::move(item));
    }

    const std::vector<int> categories = dimension_categories(dimension);
    const std::size_t n_annotators = annotator_index.size();
    KappaSimResult result;
    result.dimension = dimension;
    result.n_repeats = options.n_repeats;
    result.seed = options.seed;
    result.items = items.size();
    result.kappas.resize(static_cast<std::size_t>(options.n_repeats));

    parallel_for(result.kappas.size(), options.workers, [&](std::size_t repeat) {
        auto engine = repeat_engine(options.seed, repeat);
        std::vector<std::size_t> rank(n_annotators);
        std::iota(rank.begin(), rank.end(), std::size_t{0});
        for (std::size_t i = n_annotators; i > 1; --i)
            std::swap(rank[i - 1], rank[uniform_index(engine, i)]);

        std::vector<int> primary, secondary;
        primary.reserve(items.size());
        secondary.reserve(items.size());
        for (const auto& item : items) {
            std::size_t chosen = 0;
            for (std::size_t j = 1; j < item.values.size(); ++j)
                if (rank[item.annotators[j]] < rank[item.annotators[chosen]]) chosen = j;
            long rest = 0;
            for (std::size_t j = 0; j < item.values.size(); ++j)
                if (j != chosen) rest += item.values[j];
            const double mean = static_cast<double>(rest) / static_cast<double>(item.values.size() - 1);
            primary.push_back(item.values[chosen]);
            secondary.push_back(static_cast<int>(std::round(mean)));
        }
        result.kappas[repeat] = quadratic_weighted_kappa(primary, secondary, categories);
    });

    std::vector<double> sorted = result.kappas;
    std::sort(sorted.begin(), sorted.end());
    result.median_kappa = percentile(sorted, 50.0);
    result.ci_low = percentile(sorted, 2.5);
    result.ci_high = percentile(sorted, 97.5);
    return result;
}

void write_iaa_csv(std::ostream& out, std::span<const KappaSimResult> results) {
    csv::write_row(out, {"dimension", "median_kappa", "ci_low", "ci_high", "n_repeats", "seed"});
    for (const auto& r : results)
        csv::write_row(out, {to_string(r.dimension), csv::format_number(r.median_kappa),
                             csv::format_number(r.ci_low), csv::format_number(r.ci_high),
                             std::to_string(r.n_repeats), std::to_string(r.seed)});
}

std::vector<KappaSimResult> read_iaa_csv(std::istream& in) {
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!csv::read_row(in, fields, line) ||
        fields != std::vector<std::string>{"dimension", "median_kappa", "ci_low", "ci_high", "n_repeats", "seed"})
        throw FormatError(1, "unexpected agreement table header");
    std::vector<KappaSimResult> out;
    while (csv::read_row(in, fields, line)) {
        if (fields.size() != 6) throw FormatError(line, "expected 6 columns");
        try {
            KappaSimResult r;
            r.dimension = parse_dimension(fields[0]);
            r.median_kappa = std::stod(fields[1]);
            r.ci_low = std::stod(fields[2]);
            r.ci_high = std::stod(fields[3]);
            r.n_repeats = std::stoi(fields[4]);
            r.seed = std::stoull(fields[5]);
            out.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw FormatError(line, "malformed agreement row");
        } catch (const ConfigError& e) {
            throw FormatError(line, e.what());
        }
    }
    return out;
}

}  // namespace clts::stats
