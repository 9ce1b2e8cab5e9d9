#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "clts/stats/ratings.hpp"

namespace clts::stats {

struct KappaSimResult {
    Dimension dimension = Dimension::simplicity;
    double median_kappa = 0;
    double ci_low = 0;
    double ci_high = 0;
    int n_repeats = 0;
    std::uint64_t seed = 0;
    std::size_t items = 0;
    std::vector<double> kappas;  // one per repeat, in repeat order
};

struct IaaOptions {
    int n_repeats = 1000;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
};

/// Generator for one repeat; depends only on (seed, repeat).
std::mt19937_64 repeat_engine(std::uint64_t seed, std::uint64_t repeat);

/// Uniform integer in [0, n) by rejection sampling, identical on every
/// standard library.
std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n);

/// Linear-interpolation percentile (q in [0, 100]) of ascending `sorted`.
double percentile(std::span<const double> sorted, double q);

/// Agreement simulation. Each repeat draws a random ordering of the
/// annotators; every item's primary rating comes from its highest-ordered
/// annotator, so each of an item's ratings is equally likely to be primary.
/// The secondary rating is the mean of the other ratings rounded half away
/// from zero. Reports the median kappa over repeats and the 2.5/97.5
/// percentile interval.
///
/// Throws InsufficientRatings when an item has fewer than two ratings and
/// InvalidArgument when n_repeats < 1 or there are no ratings.
KappaSimResult iaa_simulation(std::span<const RatingRecord> ratings, Dimension dimension,
                              const IaaOptions& options = {});

void write_iaa_csv(std::ostream& out, std::span<const KappaSimResult> results);
/// Reads the summary columns back (kappas stay empty). Throws FormatError.
std::vector<KappaSimResult> read_iaa_csv(std::istream& in);

}  // namespace clts::stats
