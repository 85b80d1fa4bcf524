#include "fidelity/linreg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fidelity/errors.hpp"

namespace fidelity {

Eigen::MatrixXd design_matrix(const ObservationDataset& data) {
    Eigen::MatrixXd design(data.n(), data.m() + 1);
    design.col(0).setOnes();
    design.rightCols(data.m()) = data.x;
    return design;
}

LinearFit ols_fit_design(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(design.rows());
    const int p = static_cast<int>(design.cols());
    if (y.size() != n) throw DataError("ols_fit: response length does not match design rows");
    if (n < p + 1) throw DataError("ols_fit: need at least one residual degree of freedom");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::MatrixXd& r = qr.matrixR();
    double max_diag = 0.0;
    double min_diag = std::numeric_limits<double>::infinity();
    for (int k = 0; k < p; ++k) {
        const double d = std::fabs(r(k, k));
        max_diag = std::max(max_diag, d);
        min_diag = std::min(min_diag, d);
    }
    if (!(min_diag > 1e-10 * max_diag)) {
        std::ostringstream msg;
        msg << "ols_fit: rank-deficient design (|R| diagonal ratio "
            << (max_diag > 0.0 ? min_diag / max_diag : 0.0) << " below 1e-10)";
        throw RankError(msg.str());
    }

    LinearFit fit;
    fit.coefficients = qr.solve(y);
    const Eigen::VectorXd residuals = y - design * fit.coefficients;
    fit.sse = residuals.squaredNorm();
    fit.n = n;
    fit.residual_variance = fit.sse / static_cast<double>(n - p);
    if (!fit.coefficients.allFinite())
        throw RankError("ols_fit: solver produced non-finite coefficients");
    return fit;
}

LinearFit ols_fit(const ObservationDataset& data) {
    return ols_fit_design(design_matrix(data), data.y);
}

}  // namespace fidelity
