#include "fidelity/synth.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fidelity/errors.hpp"
#include "fidelity/rng.hpp"

namespace fidelity {

void validate(const GeneratorSpec& spec) {
    if (spec.m < 1) throw ConfigError("generator: m must be at least 1");
    if (spec.true_coefficients.size() != spec.m + 1)
        throw ConfigError("generator: true_coefficients must have length m + 1");
    if (static_cast<int>(spec.predictor_ranges.size()) != spec.m)
        throw ConfigError("generator: need one (low, high) range per predictor");
    for (const auto& [low, high] : spec.predictor_ranges)
        if (!(low >= 0.0) || !(high >= low))
            throw ConfigError("generator: ranges must satisfy 0 <= low <= high");
    if (!(spec.noise_sd >= 0.0)) throw ConfigError("generator: noise_sd must be nonnegative");
    if (spec.n < spec.m + 2) {
        std::ostringstream msg;
        msg << "generator: n = " << spec.n << " is below the dataset minimum m + 2 = "
            << spec.m + 2;
        throw ConfigError(msg.str());
    }
}

ObservationDataset generate(const GeneratorSpec& spec) {
    validate(spec);
    auto rng = make_engine(spec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    ObservationDataset data;
    data.predictor_names.reserve(spec.m);
    for (int j = 1; j <= spec.m; ++j) data.predictor_names.push_back("x" + std::to_string(j));
    data.x.resize(spec.n, spec.m);
    data.y.resize(spec.n);

    for (int i = 0; i < spec.n; ++i) {
        double y = spec.true_coefficients(0);
        for (int j = 0; j < spec.m; ++j) {
            const auto& [low, high] = spec.predictor_ranges[static_cast<std::size_t>(j)];
            const double v = std::uniform_real_distribution<double>(low, high)(rng);
            data.x(i, j) = v;
            y += spec.true_coefficients(j + 1) * v;
        }
        if (spec.noise_sd > 0.0) y += spec.noise_sd * noise(rng);
        data.y(i) = y;
    }
    validate(data);
    return data;
}

GeneratorSpec facility_like(int n, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.m = 8;
    spec.true_coefficients.resize(9);
    spec.true_coefficients << 108.0, -0.022, -0.021, -0.016, -0.023, -0.0046, -0.0013, -0.0053,
        -0.0086;
    // four grafting-process times, four material-handling times (minutes)
    spec.predictor_ranges = {{2.0, 12.0}, {2.0, 12.0}, {3.0, 15.0}, {2.0, 10.0},
                             {10.0, 45.0}, {8.0, 35.0}, {10.0, 40.0}, {12.0, 48.0}};
    spec.noise_sd = 1.8;
    spec.n = n;
    spec.seed = seed;
    return spec;
}

}  // namespace fidelity
