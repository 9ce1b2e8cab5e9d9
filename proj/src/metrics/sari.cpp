#include "clts/metrics/sari.hpp"

#include <numeric>

#include "clts/common/error.hpp"

namespace clts::metrics {
namespace {

double mean(const std::array<double, kMaxOrder>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / kMaxOrder;
}

double f1(double p, double r) { return (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0; }

// Distinct n-grams of `a` absent from `b` (set semantics for ADD).
std::size_t distinct_not_in(const NGramMultiset& a, const NGramMultiset& b) {
    std::size_t n = 0;
    for (const auto& [key, count] : a.entries())
        if (b.count(key) == 0) ++n;
    return n;
}

}  // namespace

double SariComponents::add() const { return mean(add_f1); }
double SariComponents::keep() const { return mean(keep_f1); }
double SariComponents::del() const { return mean(delete_precision); }
double SariComponents::score() const { return 100.0 * (add() + keep() + del()) / 3.0; }

SariComponents sari_components(const Tokens& source, const Tokens& hypothesis,
                               const std::vector<Tokens>& references) {
    if (references.empty()) throw EmptyReference("sari: reference set is empty");

    Vocabulary vocab;
    const auto src_ids = vocab.ids(source);
    const auto hyp_ids = vocab.ids(hypothesis);
    std::vector<std::vector<std::uint32_t>> ref_ids;
    for (const auto& r : references) ref_ids.push_back(vocab.ids(r));
    const int num_refs = static_cast<int>(references.size());

    SariComponents out;
    for (int n = 1; n <= kMaxOrder; ++n) {
        const int i = n - 1;
        const NGramMultiset src(src_ids, n);
        const NGramMultiset hyp(hyp_ids, n);
        NGramMultiset refs(std::span<const std::uint32_t>{}, n);
        for (const auto& r : ref_ids) refs = refs.add(NGramMultiset(r, n));

        const NGramMultiset src_rep = src.scaled(num_refs);
        const NGramMultiset hyp_rep = hyp.scaled(num_refs);

        // KEEP
        const NGramMultiset keep = src_rep.intersect(hyp_rep);
        const NGramMultiset keep_good = keep.intersect(refs);
        const NGramMultiset keep_all = src_rep.intersect(refs);
        double keep_p_sum = 0.0;
        double keep_r_sum = 0.0;
        for (const auto& [key, count] : keep.entries()) {
            const int good = keep_good.count(key);
            keep_p_sum += static_cast<double>(good) / count;
            if (good > 0) keep_r_sum += static_cast<double>(good) / keep_all.count(key);
        }
        const double keep_p = keep.empty() ? 1.0 : keep_p_sum / keep.distinct();
        const double keep_r = keep_all.empty() ? 1.0 : keep_r_sum / keep_all.distinct();
        out.keep_f1[i] = f1(keep_p, keep_r);

        // DELETE (precision only)
        const NGramMultiset del = src_rep.subtract(hyp_rep);
        const NGramMultiset del_good = del.subtract(refs);
        double del_p_sum = 0.0;
        for (const auto& [key, count] : del.entries())
            del_p_sum += static_cast<double>(del_good.count(key)) / count;
        out.delete_precision[i] = del.empty() ? 1.0 : del_p_sum / del.distinct();

        // ADD (set semantics)
        const std::size_t added = distinct_not_in(hyp, src);
        std::size_t added_good = 0;
        for (const auto& [key, count] : hyp.entries())
            if (src.count(key) == 0 && refs.count(key) > 0) ++added_good;
        const std::size_t addable = distinct_not_in(refs, src);
        const double add_p = added == 0 ? 1.0 : static_cast<double>(added_good) / added;
        const double add_r = addable == 0 ? 1.0 : static_cast<double>(added_good) / addable;
        out.add_f1[i] = f1(add_p, add_r);
    }
    return out;
}

double sentence_sari(const Tokens& source, const Tokens& hypothesis,
                     const std::vector<Tokens>& references) {
    return sari_components(source, hypothesis, references).score();
}

double sari(std::span<const Tokens> sources, std::span<const Tokens> hypotheses,
            std::span<const std::vector<Tokens>> reference_sets) {
    if (sources.size() != hypotheses.size() || hypotheses.size() != reference_sets.size())
        throw LengthMismatch("sari: sources, hypotheses and reference sets differ in length");
    if (hypotheses.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < hypotheses.size(); ++i)
        sum += sentence_sari(sources[i], hypotheses[i], reference_sets[i]);
    return sum / static_cast<double>(hypotheses.size());
}

}  // namespace clts::metrics
