#pragma once

#include <span>

namespace fidelity::stats {

double normal_pdf(double z);

// Standard normal CDF, absolute error well below 1e-12.
double normal_cdf(double z);

// Inverse of normal_cdf on (0, 1); rational approximation plus one Newton
// refinement step.
double normal_quantile(double p);

double normal_cdf_general(double x, double mean, double sd);

// Regularized incomplete gamma functions, a > 0.
double lower_regularized_gamma(double a, double x);
double upper_regularized_gamma(double a, double x);

struct Moments {
    double mean;
    double sd;  // n-1 denominator
};
Moments sample_moments(std::span<const double> xs);

// Quantile of the density proportional to x^-(shape+1) * exp(-rate/x) on
// [low, high], found by bisection to 1e-10 relative interval width. Uses
// the regularized incomplete gamma CDF when shape > 0 and the truncated
// mass does not cancel away in double precision; otherwise integrates the
// kernel numerically (the kernel is proper on any bounded interval, which
// also covers shape <= 0).
double truncated_inverse_gamma_quantile(double shape, double rate, double low,
                                        double high, double u);

}  // namespace fidelity::stats
