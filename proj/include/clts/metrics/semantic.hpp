#pragma once

#include <Eigen/Core>

#include "clts/common/error.hpp"
#include "clts/common/vector_math.hpp"

namespace clts::metrics {

template <typename Scalar>
struct GreedyMatch {
    Scalar precision;
    Scalar recall;
    Scalar f1;
};

/// Greedy-matching token-embedding similarity. Rows of `hypothesis` and
/// `reference` are token vectors. Precision averages, over hypothesis tokens,
/// the best cosine against any reference token; recall is the mirror image.
/// No IDF weighting and no baseline rescaling.
///
/// f1 is the harmonic mean when both precision and recall are positive and
/// min(precision, recall) otherwise, so f1 stays in [-1, 1] and never
/// exceeds max(precision, recall).
template <typename DerivedH, typename DerivedR>
GreedyMatch<typename DerivedH::Scalar> greedy_match(const Eigen::MatrixBase<DerivedH>& hypothesis,
                                                    const Eigen::MatrixBase<DerivedR>& reference) {
    using Scalar = typename DerivedH::Scalar;
    if (hypothesis.rows() == 0 || reference.rows() == 0)
        throw EmptySequence("greedy_match: empty token sequence");
    if (hypothesis.cols() != reference.cols())
        throw DimensionMismatch("greedy_match: embedding dimensions differ (" +
                                std::to_string(hypothesis.cols()) + " vs " +
                                std::to_string(reference.cols()) + ")");

    const auto h = normalized_rows(hypothesis);
    const auto r = normalized_rows(reference);
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sim = h * r.transpose();

    GreedyMatch<Scalar> out;
    out.precision = sim.rowwise().maxCoeff().mean();
    out.recall = sim.colwise().maxCoeff().mean();
    if (out.precision > 0 && out.recall > 0)
        out.f1 = 2 * out.precision * out.recall / (out.precision + out.recall);
    else
        out.f1 = std::min(out.precision, out.recall);
    return out;
}

}  // namespace clts::metrics
