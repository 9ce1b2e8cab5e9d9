#pragma once

#include <span>
#include <string>

namespace clts::stats {

inline constexpr double kDefaultAlpha = 0.05;

struct TestResult {
    std::string group_a;
    std::string group_b;
    std::string metric_name;
    double t_stat = 0;
    double df = 0;
    double p_value = 1;
    bool significant = false;
    /// Both samples had zero variance; p is 1 (equal means) or 0 (different).
    bool degenerate = false;
};

/// Regularized incomplete beta I_x(a, b), by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df`
/// degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// Welch's unequal-variance t-test with Welch-Satterthwaite df. Throws
/// InsufficientData when either sample has fewer than two values.
TestResult welch_t_test(std::span<const double> a, std::span<const double> b,
                        double alpha = kDefaultAlpha);

}  // namespace clts::stats
