#pragma once

// Linear readout trained by minimum-norm least squares (Moore-Penrose
// pseudoinverse), and NRMSE scoring.

#include "snnrc/error.hpp"

#include <Eigen/Core>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <span>
#include <string_view>

namespace snnrc {

enum class nrmse_norm { std_dev, range };

std::string_view to_string(nrmse_norm n);
nrmse_norm nrmse_norm_from_string(std::string_view s);

template <typename Scalar>
struct target_stats {
    Scalar mean{0};
    Scalar std_dev{0};
    Scalar min{0};
    Scalar max{0};
};

template <typename Scalar>
struct readout_model {
    using matrix_type = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    /// P x (M + 1).
    matrix_type w_out;
    target_stats<Scalar> stats;
};

/// Singular values below rtol * sigma_max are treated as zero.
inline constexpr double pinv_rtol = 1e-10;

/// Moore-Penrose pseudoinverse via a QR-preconditioned Jacobi SVD of the tall
/// orientation of `a`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
pseudo_inverse(const Eigen::MatrixBase<Derived>& a, double rtol = pinv_rtol)
{
    using Scalar = typename Derived::Scalar;
    using matrix_type = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.rows() == 0 || a.cols() == 0) return matrix_type::Zero(a.cols(), a.rows());
    const bool wide = a.rows() < a.cols();
    const matrix_type tall = wide ? matrix_type{a.adjoint()} : matrix_type{a};
    Eigen::JacobiSVD<matrix_type, Eigen::ColPivHouseholderQRPreconditioner> svd(
      tall, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const Scalar cutoff = static_cast<Scalar>(rtol) * sigma(0);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> inv_sigma(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        inv_sigma(i) = (sigma(i) > cutoff && sigma(i) > Scalar(0)) ? Scalar(1) / sigma(i) : Scalar(0);
    }
    // tall = U S V^*, so tall^+ = V S^+ U^* and a^+ = (tall^+)^* when a is wide.
    matrix_type pinv = svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().adjoint();
    if (wide) return pinv.adjoint();
    return pinv;
}

template <typename Scalar>
target_stats<Scalar> describe(std::span<const Scalar> values)
{
    target_stats<Scalar> s;
    if (values.empty()) return s;
    const auto n = static_cast<Scalar>(values.size());
    Scalar sum{0};
    for (Scalar v : values) sum += v;
    s.mean = sum / n;
    Scalar ss{0};
    for (Scalar v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(ss / n);
    const auto [lo, hi] = std::ranges::minmax(values);
    s.min = lo;
    s.max = hi;
    return s;
}

/// W_out = Y X^+, the minimum-norm minimizer of ||W X - Y||_F.
template <typename DerivedX, typename DerivedY>
readout_model<typename DerivedX::Scalar> train(const Eigen::MatrixBase<DerivedX>& states,
                                                const Eigen::MatrixBase<DerivedY>& targets)
{
    using Scalar = typename DerivedX::Scalar;
    if (states.rows() == 0 || states.cols() == 0 || targets.rows() == 0) {
        throw config_error{"readout: empty state or target matrix"};
    }
    if (states.cols() != targets.cols()) throw config_error{"readout: state and target column counts differ"};
    readout_model<Scalar> model;
    model.w_out = targets * pseudo_inverse(states);
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> first = targets.row(0).transpose();
    model.stats = describe<Scalar>(std::span<const Scalar>{first.data(), static_cast<std::size_t>(first.size())});
    return model;
}

template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> predict(const readout_model<Scalar>& model,
                                                              const Eigen::MatrixBase<Derived>& states)
{
    if (model.w_out.cols() != states.rows()) throw config_error{"readout: state rows do not match w_out columns"};
    return model.w_out * states;
}

struct score {
    double rmse = 0.0;
    double nrmse = 0.0;
    nrmse_norm normalization = nrmse_norm::std_dev;
};

/// rmse / std(targets) or rmse / (max - min)(targets). The standard
/// deviation is the population one.
score nrmse(std::span<const double> predictions, std::span<const double> targets,
            nrmse_norm normalization = nrmse_norm::std_dev);

}  // namespace snnrc
