#include "clts/stats/welch.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "clts/common/error.hpp"

namespace clts::stats {

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

struct Moments {
    double mean;
    double variance;  // unbiased
};

Moments moments(std::span<const double> xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, ss / (n - 1.0)};
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (std::isinf(t)) return 0.0;
    if (t == 0.0) return 1.0;
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

TestResult welch_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
    if (a.size() < 2 || b.size() < 2)
        throw InsufficientData("welch_t_test needs at least two values per sample (got " +
                               std::to_string(a.size()) + " and " + std::to_string(b.size()) + ")");
    const Moments ma = moments(a);
    const Moments mb = moments(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double sa = ma.variance / na;
    const double sb = mb.variance / nb;

    TestResult r;
    if (sa + sb == 0.0) {
        r.degenerate = true;
        r.df = na + nb - 2.0;
        if (ma.mean == mb.mean) {
            r.t_stat = 0.0;
            r.p_value = 1.0;
        } else {
            r.t_stat = ma.mean > mb.mean ? std::numeric_limits<double>::infinity()
                                         : -std::numeric_limits<double>::infinity();
            r.p_value = 0.0;
        }
    } else {
        r.t_stat = (ma.mean - mb.mean) / std::sqrt(sa + sb);
        r.df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
        r.p_value = student_t_two_sided_p(r.t_stat, r.df);
    }
    r.significant = r.p_value < alpha;
    return r;
}

}  // namespace clts::stats
