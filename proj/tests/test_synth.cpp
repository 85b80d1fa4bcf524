#include <cmath>

#include "doctest.h"
#include "fidelity/errors.hpp"
#include "fidelity/linreg.hpp"
#include "fidelity/synth.hpp"
#include "oracles.hpp"

using namespace fidelity;

TEST_SUITE("synth") {

TEST_CASE("noiseless generation satisfies the true model exactly") {
    GeneratorSpec spec;
    spec.m = 1;
    spec.true_coefficients.resize(2);
    spec.true_coefficients << 5.0, 2.0;
    spec.noise_sd = 0.0;
    spec.predictor_ranges = {{0.0, 10.0}};
    spec.n = 100;
    spec.seed = 4;
    const auto data = generate(spec);
    for (int i = 0; i < data.n(); ++i) CHECK(data.y(i) == 5.0 + 2.0 * data.x(i, 0));
}

TEST_CASE("same spec and seed give identical datasets") {
    const auto a = generate(facility_like(200, 17));
    const auto b = generate(facility_like(200, 17));
    CHECK(identical(a, b));
    const auto c = generate(facility_like(200, 18));
    CHECK(!identical(a, c));
}

TEST_CASE("predictors stay inside their declared ranges") {
    const auto spec = facility_like(500, 23);
    const auto data = generate(spec);
    for (int i = 0; i < data.n(); ++i)
        for (int j = 0; j < data.m(); ++j) {
            CHECK(data.x(i, j) >= spec.predictor_ranges[static_cast<std::size_t>(j)].first);
            CHECK(data.x(i, j) <= spec.predictor_ranges[static_cast<std::size_t>(j)].second);
        }
}

TEST_CASE("facility_like is recovered by a full-data fit") {
    const auto spec = facility_like(2000, 1142);
    const auto data = generate(spec);
    const auto fit = ols_fit(data);

    // coefficient standard errors from the normal-equation inverse
    const Eigen::MatrixXd design = design_matrix(data);
    const Eigen::MatrixXd gram_inverse =
        (design.transpose() * design).ldlt().solve(Eigen::MatrixXd::Identity(9, 9));
    for (int j = 0; j < 9; ++j) {
        const double se = std::sqrt(fit.residual_variance * gram_inverse(j, j));
        CHECK(std::fabs(fit.coefficients(j) - spec.true_coefficients(j)) < 3.0 * se);
    }

    // empirical residual sd converges to the generator's noise level
    CHECK(std::sqrt(fit.residual_variance) == doctest::Approx(spec.noise_sd).epsilon(0.10));
}

TEST_CASE("generator validation") {
    GeneratorSpec spec = facility_like(100, 1);
    spec.n = 5;  // below m + 2
    CHECK_THROWS_AS(generate(spec), ConfigError);
    spec = facility_like(100, 1);
    spec.noise_sd = -1.0;
    CHECK_THROWS_AS(generate(spec), ConfigError);
    spec = facility_like(100, 1);
    spec.predictor_ranges[0] = {5.0, 2.0};
    CHECK_THROWS_AS(generate(spec), ConfigError);
    spec = facility_like(100, 1);
    spec.true_coefficients.resize(3);
    CHECK_THROWS_AS(generate(spec), ConfigError);
}

}  // TEST_SUITE
