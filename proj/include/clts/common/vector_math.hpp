#pragma once

#include <Eigen/Core>

#include "clts/common/error.hpp"

namespace clts {

/// Cosine of the angle between two vectors of equal length. Throws
/// DimensionMismatch on unequal lengths and ZeroNormVector when either norm
/// is zero.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_similarity(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vector lengths differ: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    const auto na = a.norm();
    const auto nb = b.norm();
    if (na == 0 || nb == 0) throw ZeroNormVector("cosine of a zero-norm vector is undefined");
    return a.dot(b) / (na * nb);
}

/// Scales every row to unit norm. Throws ZeroNormVector on a zero row.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> normalized_rows(
    const Eigen::MatrixBase<Derived>& m) {
    auto norms = m.rowwise().norm().eval();
    if ((norms.array() == 0).any()) throw ZeroNormVector("zero-norm row vector");
    return norms.cwiseInverse().asDiagonal() * m;
}

}  // namespace clts
