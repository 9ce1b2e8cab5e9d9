#pragma once

#include <span>

namespace clts::stats {

/// Cohen's kappa with quadratic weights (i-j)^2/(k-1)^2 over the ordered
/// `categories`. Both raters identical on a single category gives 1.
///
/// Throws LengthMismatch, OutOfRangeCategory, InvalidArgument (empty input)
/// or SingleCategoryDegenerate.
double quadratic_weighted_kappa(std::span<const int> ratings_a, std::span<const int> ratings_b,
                                std::span<const int> categories);

}  // namespace clts::stats
