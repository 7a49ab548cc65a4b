#include "surrox/linalg.hpp"

#include "surrox/errors.hpp"

#include <string>

namespace surrox {

Eigen::MatrixXd ols_solve(const Eigen::MatrixXd& design, const Eigen::MatrixXd& response,
                          double rank_tol) {
    const auto n = design.rows();
    const auto m = design.cols();
    if (response.rows() != n) {
        throw Error(ErrorCode::InvalidArgument, "design and response row counts differ");
    }
    if (m == 0) return Eigen::MatrixXd::Zero(0, response.cols());
    if (n < m) {
        throw Error(ErrorCode::InsufficientSample,
                    std::to_string(n) + " rows cannot identify " + std::to_string(m) +
                        " coefficients");
    }
    if (!design.allFinite() || !response.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "least-squares inputs contain non-finite values");
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double largest = sv(0);
    const double smallest = sv(m - 1);
    if (!(largest > 0.0) || smallest / largest < rank_tol) {
        // Columns loading on the weakest right singular vector span the near-null direction.
        const Eigen::VectorXd null_dir = svd.matrixV().col(m - 1);
        const double peak = null_dir.cwiseAbs().maxCoeff();
        std::string cols;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (std::abs(null_dir(j)) > 0.1 * peak) {
                if (!cols.empty()) cols += ",";
                cols += std::to_string(j);
            }
        }
        throw Error(ErrorCode::RankDeficient,
                    "design is rank deficient; near-collinear columns: " + cols);
    }
    return svd.solve(response);
}

}  // namespace surrox
