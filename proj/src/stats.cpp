#include "fidelity/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fidelity/errors.hpp"

namespace fidelity::stats {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Series expansion of the lower regularized gamma, valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for the upper regularized gamma, x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// log of the inverse-gamma kernel x^-(shape+1) exp(-rate/x), x > 0.
double log_ig_kernel(double x, double shape, double rate) {
    return -(shape + 1.0) * std::log(x) - rate / x;
}

// Cumulative kernel mass on [low, x] for every x of a log-spaced grid,
// trapezoid rule with the peak factored out so nothing underflows.
struct KernelCdf {
    std::vector<double> x;
    std::vector<double> cumulative;  // same length, cumulative[0] == 0
};

KernelCdf integrate_kernel(double shape, double rate, double low, double high) {
    constexpr int kPanels = 8192;
    KernelCdf out;
    out.x.resize(kPanels + 1);
    out.cumulative.resize(kPanels + 1);

    const double lt = std::log(low);
    const double ht = std::log(high);
    std::vector<double> logf(kPanels + 1);
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kPanels; ++i) {
        const double t = lt + (ht - lt) * i / kPanels;
        const double xi = std::exp(t);
        out.x[i] = xi;
        // integrating in log space: f(x) dx = x f(x) dt
        logf[i] = log_ig_kernel(xi, shape, rate) + t;
        peak = std::max(peak, logf[i]);
    }
    const double dt = (ht - lt) / kPanels;
    double acc = 0.0;
    out.cumulative[0] = 0.0;
    for (int i = 1; i <= kPanels; ++i) {
        const double fa = std::exp(logf[i - 1] - peak);
        const double fb = std::exp(logf[i] - peak);
        acc += 0.5 * (fa + fb) * dt;
        out.cumulative[i] = acc;
    }
    return out;
}

double quantile_from_kernel_cdf(const KernelCdf& cdf, double u) {
    const double total = cdf.cumulative.back();
    if (!(total > 0.0)) return cdf.x.front();
    const double target = u * total;
    auto it = std::lower_bound(cdf.cumulative.begin(), cdf.cumulative.end(), target);
    if (it == cdf.cumulative.begin()) return cdf.x.front();
    if (it == cdf.cumulative.end()) return cdf.x.back();
    const std::size_t hi = static_cast<std::size_t>(it - cdf.cumulative.begin());
    const std::size_t lo = hi - 1;
    const double span = cdf.cumulative[hi] - cdf.cumulative[lo];
    const double w = span > 0.0 ? (target - cdf.cumulative[lo]) / span : 0.0;
    return cdf.x[lo] + w * (cdf.x[hi] - cdf.x[lo]);
}

}  // namespace

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_cdf_general(double x, double mean, double sd) {
    if (!(sd > 0.0)) throw ConfigError("normal_cdf_general: sd must be positive");
    return normal_cdf((x - mean) / sd);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("normal_quantile: p must lie strictly inside (0, 1)");

    // Acklam's rational approximation, then one Newton step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double err = normal_cdf(x) - p;
    const double dens = normal_pdf(x);
    if (dens > 0.0) x -= err / dens;
    return x;
}

double lower_regularized_gamma(double a, double x) {
    if (!(a > 0.0)) throw ConfigError("lower_regularized_gamma: a must be positive");
    if (x < 0.0) throw ConfigError("lower_regularized_gamma: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double upper_regularized_gamma(double a, double x) {
    return 1.0 - lower_regularized_gamma(a, x);
}

Moments sample_moments(std::span<const double> xs) {
    if (xs.size() < 2) throw ConfigError("sample_moments: need at least 2 samples");
    double sum = 0.0;
    for (const double v : xs) sum += v;
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (const double v : xs) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

double truncated_inverse_gamma_quantile(double shape, double rate, double low,
                                        double high, double u) {
    if (!(low > 0.0 && high > low))
        throw ConfigError("truncated_inverse_gamma_quantile: need 0 < low < high");
    if (!(u >= 0.0 && u <= 1.0))
        throw ConfigError("truncated_inverse_gamma_quantile: u outside [0, 1]");
    if (!(rate > 0.0))
        throw ConfigError("truncated_inverse_gamma_quantile: rate must be positive");

    if (high - low <= 1e-14 * low) return low;

    // Unnormalized CDF in x via the upper regularized gamma: substituting
    // s = rate / x maps the kernel mass on [low, x] to Q(shape, rate/x) -
    // Q(shape, rate/low), increasing in x.
    if (shape > 0.0) {
        const double f_low = upper_regularized_gamma(shape, rate / low);
        const double f_high = upper_regularized_gamma(shape, rate / high);
        const double denom = f_high - f_low;
        if (denom > 1e-8) {
            const double target = f_low + u * denom;
            double lo = low;
            double hi = high;
            for (int i = 0; i < 200 && hi - lo > 1e-10 * hi; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (upper_regularized_gamma(shape, rate / mid) < target)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
    }

    // Far tails or nonpositive shape: the regularized CDF cancels to noise,
    // but the kernel itself is well behaved after rescaling by its peak.
    const KernelCdf cdf = integrate_kernel(shape, rate, low, high);
    return quantile_from_kernel_cdf(cdf, u);
}

}  // namespace fidelity::stats
