#include "clts/stats/kappa.hpp"

#include <algorithm>
#include <cstdint>

#include <Eigen/Core>

#include "clts/common/error.hpp"

namespace clts::stats {

namespace {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

Eigen::Index category_index(std::span<const int> categories, int value) {
    const auto it = std::find(categories.begin(), categories.end(), value);
    if (it == categories.end())
        throw OutOfRangeCategory("rating " + std::to_string(value) + " is not a listed category");
    return static_cast<Eigen::Index>(it - categories.begin());
}

}  // namespace

double quadratic_weighted_kappa(std::span<const int> ratings_a, std::span<const int> ratings_b,
                                std::span<const int> categories) {
    if (ratings_a.size() != ratings_b.size())
        throw LengthMismatch("kappa rating vectors differ in length (" +
                             std::to_string(ratings_a.size()) + " vs " +
                             std::to_string(ratings_b.size()) + ")");
    if (ratings_a.empty()) throw InvalidArgument("kappa needs at least one rating pair");
    if (categories.empty()) throw InvalidArgument("kappa needs at least one category");

    const auto k = static_cast<Eigen::Index>(categories.size());
    IntMatrix observed = IntMatrix::Zero(k, k);
    for (std::size_t i = 0; i < ratings_a.size(); ++i)
        ++observed(category_index(categories, ratings_a[i]), category_index(categories, ratings_b[i]));

    // Integer weights (i-j)^2; the (k-1)^2 normalisation and the 1/n on the
    // expected matrix cancel into the factor n below, keeping both sums exact.
    IntMatrix weights(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) weights(i, j) = (i - j) * (i - j);

    const IntVector rows = observed.rowwise().sum();
    const IntVector cols = observed.colwise().sum().transpose();
    const std::int64_t n = static_cast<std::int64_t>(ratings_a.size());
    const std::int64_t disagreement = weights.cwiseProduct(observed).sum();
    const std::int64_t chance = rows.dot(weights * cols);

    if (chance == 0) {
        if (disagreement == 0) return 1.0;
        throw SingleCategoryDegenerate("kappa undefined: expected disagreement is zero");
    }
    return 1.0 - static_cast<double>(n * disagreement) / static_cast<double>(chance);
}

}  // namespace clts::stats
