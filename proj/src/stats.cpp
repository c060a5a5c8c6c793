#include "krigopt/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace krigopt {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kInvSqrt2 = 0.7071067811865475244008444;

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double incbeta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        // even step
        double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        // odd step
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return h;
}

double incbeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * incbeta_cf(a, b, x) / a;
    return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - lbeta) *
                     incbeta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double student_t_cdf(double x, int df) {
    if (df < 1) throw std::invalid_argument("student_t_cdf: df must be >= 1");
    const double v = static_cast<double>(df);
    const double ib = incbeta(v / 2.0, 0.5, v / (v + x * x));
    return x >= 0.0 ? 1.0 - 0.5 * ib : 0.5 * ib;
}

double student_t_quantile(double prob, int df) {
    if (df < 1) throw std::invalid_argument("student_t_quantile: df must be >= 1");
    if (prob <= 0.0 || prob >= 1.0)
        throw std::invalid_argument("student_t_quantile: prob must be in (0,1)");
    if (prob == 0.5) return 0.0;
    // Symmetric, so solve for the upper tail and mirror.
    const bool upper = prob > 0.5;
    const double p = upper ? prob : 1.0 - prob;
    double lo = 0.0, hi = 1.0;
    while (student_t_cdf(hi, df) < p) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    const double q = 0.5 * (lo + hi);
    return upper ? q : -q;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(n - 1);
}

}  // namespace krigopt
