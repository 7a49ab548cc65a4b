#pragma once

// Independent reference computations used as test oracles. None of these call
// into the library's numerical code paths.

#include "surrox/errors.hpp"
#include "surrox/panel.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace surrox::test {

/// OLS through the normal equations with a Cholesky solve.
inline Eigen::MatrixXd normal_equations(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return (x.transpose() * x).ldlt().solve(x.transpose() * y);
}

/// (A^r)_{11} by repeated dense multiplication.
inline double companion_power_11(const Eigen::VectorXd& alpha, int r) {
    const Eigen::Index q = alpha.size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(q, q);
    a.row(0) = alpha.transpose();
    for (Eigen::Index i = 1; i < q; ++i) a(i, i - 1) = 1.0;
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(q, q);
    for (int i = 0; i < r; ++i) p = p * a;
    return p(0, 0);
}

inline double dense_companion_weight(const Eigen::VectorXd& alpha, int h) {
    double s = 0.0;
    for (int r = 0; r < h; ++r) {
        const double v = companion_power_11(alpha, r);
        s += v * v;
    }
    return std::sqrt(s);
}

inline std::vector<Month> months(Eigen::Index n, int year = 2020, unsigned month = 1) {
    return month_range(std::chrono::year{year} / std::chrono::month{month}, n);
}

inline Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
    return m;
}

/// Sample lag-1 autocorrelation.
inline double lag1_autocorrelation(const Eigen::VectorXd& v) {
    const double mean = v.mean();
    const Eigen::VectorXd c = v.array() - mean;
    return c.head(c.size() - 1).dot(c.tail(c.size() - 1)) / c.squaredNorm();
}

inline double correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const Eigen::VectorXd ca = a.array() - a.mean();
    const Eigen::VectorXd cb = b.array() - b.mean();
    return ca.dot(cb) / std::sqrt(ca.squaredNorm() * cb.squaredNorm());
}

inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    return correlation(Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size())),
                       Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())));
}

}  // namespace surrox::test

#define EXPECT_SURROX_ERROR(stmt, expected_code)                                  \
    do {                                                                          \
        try {                                                                     \
            stmt;                                                                 \
            ADD_FAILURE() << "expected " << ::surrox::to_string(expected_code);   \
        } catch (const ::surrox::Error& e_) {                                     \
            EXPECT_EQ(e_.code(), expected_code) << e_.what();                     \
        }                                                                         \
    } while (0)
