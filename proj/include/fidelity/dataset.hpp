#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fidelity {

// Observation table: m predictor durations (minutes) per row and the
// production capacity y (trays) achieved under them. Treated as immutable
// once built; all library code takes it by const reference, so sharing one
// instance across concurrent tasks is safe.
struct ObservationDataset {
    std::vector<std::string> predictor_names;  // size m
    std::string response_name = "y";
    Eigen::MatrixXd x;  // n x m
    Eigen::VectorXd y;  // n

    int m() const { return static_cast<int>(x.cols()); }
    int n() const { return static_cast<int>(x.rows()); }
};

// Enforces the dataset invariants: m >= 1, n >= m + 2, all cells finite,
// predictors nonnegative. Throws DataError naming the offending cell.
void validate(const ObservationDataset& data);

// CSV interchange: header `x1,...,xm,y`, UTF-8, '.' decimal separator.
// The last header column is the response. Rows with missing or non-numeric
// cells are rejected with the row number and column name.
ObservationDataset load_csv(const std::filesystem::path& path);
void write_csv(const ObservationDataset& data, const std::filesystem::path& path);

// Uniform resample with replacement; deterministic given the seed. The
// input only needs rows, not full dataset validity, so degenerate sources
// can still be resampled up to a valid size.
ObservationDataset bootstrap_resample(const ObservationDataset& data, int size,
                                      std::uint64_t seed);

// Plain-text summary: name, m, n, per-column mean/sd.
std::string summary_text(const ObservationDataset& data, const std::string& name);

bool identical(const ObservationDataset& a, const ObservationDataset& b);

}  // namespace fidelity
