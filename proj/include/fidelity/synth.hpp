#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "fidelity/dataset.hpp"

namespace fidelity {

// Synthetic facility dataset with known ground truth: predictors drawn
// uniformly from per-column ranges (minutes), response from the true linear
// combination plus normal noise.
struct GeneratorSpec {
    int m = 1;
    Eigen::VectorXd true_coefficients;  // intercept first, length m + 1
    double noise_sd = 0.0;
    std::vector<std::pair<double, double>> predictor_ranges;  // per predictor
    int n = 0;
    std::uint64_t seed = 0;
};

void validate(const GeneratorSpec& spec);

ObservationDataset generate(const GeneratorSpec& spec);

// Eight predictors, capacity-scale intercept with small negative slopes,
// moderate noise; the stock desk-scale stand-in for real facility data.
GeneratorSpec facility_like(int n = 2000, std::uint64_t seed = 1142);

}  // namespace fidelity
