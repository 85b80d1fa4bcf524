// Independent reference implementations used only by tests. These
// deliberately avoid the library's own solver and special-function paths:
// least squares is re-derived from the normal equations by Gaussian
// elimination, the normal CDF by direct quadrature of the density, and the
// truncated inverse-gamma moments by quadrature of the kernel.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracles {

// Simpson's rule for the standard normal density on [0, b], refined until
// successive estimates agree to 1e-15.
inline double normal_mass_from_zero(double b) {
    auto density = [](long double t) {
        return std::exp(-0.5L * t * t) * 0.39894228040143267794L;
    };
    long double previous = 0.0L;
    for (int panels = 64; panels <= (1 << 22); panels *= 2) {
        const long double h = static_cast<long double>(b) / panels;
        long double sum = density(0.0L) + density(b);
        for (int i = 1; i < panels; ++i)
            sum += density(i * h) * ((i % 2) ? 4.0L : 2.0L);
        const long double estimate = sum * h / 3.0L;
        if (panels > 64 && std::fabs(static_cast<double>(estimate - previous)) < 1e-15)
            return static_cast<double>(estimate);
        previous = estimate;
    }
    return static_cast<double>(previous);
}

inline double normal_cdf(double z) {
    if (z == 0.0) return 0.5;
    if (z > 40.0) return 1.0;
    if (z < -40.0) return 0.0;
    const double mass = normal_mass_from_zero(std::fabs(z));
    return z > 0.0 ? 0.5 + mass : 0.5 - mass;
}

// Gaussian elimination with partial pivoting in long double.
inline std::vector<double> gauss_solve(std::vector<std::vector<long double>> a,
                                       std::vector<long double> b) {
    const int n = static_cast<int>(a.size());
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(static_cast<double>(a[i][k])) >
                std::fabs(static_cast<double>(a[pivot][k])))
                pivot = i;
        if (a[pivot][k] == 0.0L) throw std::runtime_error("gauss_solve: singular matrix");
        std::swap(a[k], a[pivot]);
        std::swap(b[k], b[pivot]);
        for (int i = k + 1; i < n; ++i) {
            const long double f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        long double acc = b[i];
        for (int j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
        x[i] = static_cast<double>(acc / a[i][i]);
    }
    return x;
}

// Least squares via the normal equations X'X b = X'y.
inline Eigen::VectorXd normal_equation_fit(const Eigen::MatrixXd& design,
                                           const Eigen::VectorXd& y) {
    const int p = static_cast<int>(design.cols());
    std::vector<std::vector<long double>> a(p, std::vector<long double>(p, 0.0L));
    std::vector<long double> b(p, 0.0L);
    for (int i = 0; i < design.rows(); ++i) {
        for (int j = 0; j < p; ++j) {
            for (int k = 0; k < p; ++k)
                a[j][k] += static_cast<long double>(design(i, j)) * design(i, k);
            b[j] += static_cast<long double>(design(i, j)) * y(i);
        }
    }
    const auto x = gauss_solve(std::move(a), std::move(b));
    Eigen::VectorXd out(p);
    for (int j = 0; j < p; ++j) out(j) = x[j];
    return out;
}

struct ConjugatePosterior {
    Eigen::VectorXd mean;
    Eigen::VectorXd sd;
};

// Closed-form Gaussian posterior for fixed sigma2:
//   precision A = diag(1/tau^2) + X'X / sigma2,
//   mean = A^-1 (mu/tau^2 + X'y / sigma2),  covariance = A^-1.
// The inverse is computed by Gauss-Jordan elimination in long double.
inline ConjugatePosterior conjugate_posterior(const Eigen::MatrixXd& design,
                                              const Eigen::VectorXd& y,
                                              const Eigen::VectorXd& prior_mean,
                                              const Eigen::VectorXd& prior_sd, double sigma2) {
    const int p = static_cast<int>(design.cols());
    std::vector<std::vector<long double>> a(p, std::vector<long double>(p, 0.0L));
    std::vector<long double> b(p, 0.0L);
    for (int i = 0; i < design.rows(); ++i)
        for (int j = 0; j < p; ++j) {
            for (int k = 0; k < p; ++k)
                a[j][k] += static_cast<long double>(design(i, j)) * design(i, k) / sigma2;
            b[j] += static_cast<long double>(design(i, j)) * y(i) / sigma2;
        }
    for (int j = 0; j < p; ++j) {
        const long double tau2 =
            static_cast<long double>(prior_sd(j)) * static_cast<long double>(prior_sd(j));
        a[j][j] += 1.0L / tau2;
        b[j] += static_cast<long double>(prior_mean(j)) / tau2;
    }

    // Gauss-Jordan inverse of a.
    std::vector<std::vector<long double>> inv(p, std::vector<long double>(p, 0.0L));
    for (int j = 0; j < p; ++j) inv[j][j] = 1.0L;
    auto work = a;
    for (int k = 0; k < p; ++k) {
        int pivot = k;
        for (int i = k + 1; i < p; ++i)
            if (std::fabs(static_cast<double>(work[i][k])) >
                std::fabs(static_cast<double>(work[pivot][k])))
                pivot = i;
        std::swap(work[k], work[pivot]);
        std::swap(inv[k], inv[pivot]);
        const long double d = work[k][k];
        for (int j = 0; j < p; ++j) {
            work[k][j] /= d;
            inv[k][j] /= d;
        }
        for (int i = 0; i < p; ++i) {
            if (i == k) continue;
            const long double f = work[i][k];
            for (int j = 0; j < p; ++j) {
                work[i][j] -= f * work[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }

    ConjugatePosterior posterior;
    posterior.mean.resize(p);
    posterior.sd.resize(p);
    const auto mean = gauss_solve(a, b);
    for (int j = 0; j < p; ++j) {
        posterior.mean(j) = mean[j];
        posterior.sd(j) = std::sqrt(static_cast<double>(inv[j][j]));
    }
    return posterior;
}

// Mean of the density proportional to x^-(shape+1) exp(-rate/x) on
// [low, high], by Simpson quadrature in log space with the peak factored
// out.
inline double truncated_inverse_gamma_mean(double shape, double rate, double low, double high) {
    const int panels = 200000;
    const double lt = std::log(low);
    const double ht = std::log(high);
    const double h = (ht - lt) / panels;
    auto log_weight = [&](double t) { return -shape * t - rate * std::exp(-t); };
    double peak = -1e300;
    for (int i = 0; i <= panels; ++i) peak = std::max(peak, log_weight(lt + i * h));
    long double mass = 0.0L, first = 0.0L;
    for (int i = 0; i <= panels; ++i) {
        const double t = lt + i * h;
        const double w = (i == 0 || i == panels) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
        const long double f = std::exp(log_weight(t) - peak);
        mass += w * f;
        first += w * f * std::exp(t);
    }
    return static_cast<double>(first / mass);
}

}  // namespace oracles
