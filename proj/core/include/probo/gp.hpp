#pragma once

#include <probo/kernel.hpp>
#include <probo/types.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace probo {

enum class MeanForm {
  ConstantEstimated,  // ordinary kriging: constant trend by generalized least squares
  ConstantFixed,
  LinearFixed,
  QuadraticFixed,
};

std::string_view to_string(MeanForm form);
MeanForm parse_mean_form(std::string_view name);

// Prior trend m(x). Fixed polynomial forms carry their coefficients in the order
//   intercept, x_1 .. x_p, then x_i * x_j for i <= j (row-major over i).
struct MeanSpec {
  MeanForm form = MeanForm::ConstantEstimated;
  std::vector<double> coefficients;

  static std::size_t coefficient_count(MeanForm form, std::size_t dim);

  void validate(std::size_t dim) const;

  // Expands a compact, dimension-free coefficient list to `dim` inputs:
  //   linear-fixed    [intercept, slope]                  -> slope on every x_i
  //   quadratic-fixed [intercept, slope, square, cross]   -> same value on every
  //                                                          x_i, x_i^2, x_i x_j
  // Specs that already match `dim` are returned unchanged.
  MeanSpec with_dimension(std::size_t dim) const;

  // Trend value for a fixed form. Not defined for ConstantEstimated.
  double evaluate(PointView x) const;

  bool is_estimated() const { return form == MeanForm::ConstantEstimated; }

  bool operator==(const MeanSpec&) const = default;
};

struct Prediction {
  double mu = 0.0;
  double var = 0.0;
};

struct BatchPrediction {
  Eigen::VectorXd mu;
  Eigen::VectorXd var;
};

// Noiseless GP regression. All solves go through the Cholesky factor of the
// base kernel matrix; the model is immutable once fitted.
//
// For the constant-estimated mean the predictive variance carries the
// ordinary-kriging correction for estimating the trend:
//   var(x) = k(x,x) - k_x^T K^{-1} k_x + (1 - k_x^T s_k)^2 / S_k
// with s_k = K^{-1} 1 and S_k = 1^T K^{-1} 1. Fixed trends use the plain
// conditional variance.
class GpModel {
 public:
  static GpModel fit(KernelSpec kernel, MeanSpec mean, Design X, Eigen::VectorXd y);

  Prediction predict(PointView x) const;
  BatchPrediction predict_batch(const Design& Q) const;
  // Cross-covariances of the training inputs with the rows of Q, including
  // the factorization jitter where a query coincides with a training point.
  Eigen::MatrixXd cross_covariance(const Design& Q) const;
  // `cross` must be cross_covariance(Q).
  BatchPrediction predict_batch(const Design& Q, const Eigen::MatrixXd& cross) const;

  // log N(y | m(X), K + jitter I); for the estimated constant the GLS estimate
  // is plugged in (profile likelihood).
  double log_marginal_likelihood() const;

  const KernelSpec& kernel() const { return kernel_; }
  const MeanSpec& mean() const { return mean_; }
  const Design& inputs() const { return X_; }
  const Eigen::VectorXd& targets() const { return y_; }
  const BaseKernelMatrix& base_matrix() const { return K_; }
  Eigen::Index size() const { return X_.rows(); }
  std::size_t dimension() const { return static_cast<std::size_t>(X_.cols()); }

  // K^{-1} (y - m(X))
  const Eigen::VectorXd& alpha() const { return alpha_; }
  // K^{-1} y, independent of the trend.
  const Eigen::VectorXd& kinv_y() const { return kinv_y_; }
  const Eigen::VectorXd& s_k() const { return s_k_; }
  double S_k() const { return S_k_; }
  // s_k^T y / S_k for the estimated constant; empty for fixed trends.
  std::optional<double> beta_hat() const { return beta_hat_; }

 private:
  GpModel(KernelSpec kernel, MeanSpec mean, Design X, Eigen::VectorXd y, BaseKernelMatrix K);

  double trend(PointView x) const;

  KernelSpec kernel_;
  MeanSpec mean_;
  Design X_;
  Eigen::VectorXd y_;
  BaseKernelMatrix K_;
  Eigen::VectorXd residual_;  // y - m(X)
  Eigen::VectorXd alpha_;
  Eigen::VectorXd kinv_y_;
  Eigen::VectorXd s_k_;
  double S_k_ = 0.0;
  std::optional<double> beta_hat_;
};

inline GpModel fit_gp(KernelSpec kernel, MeanSpec mean, Design X, Eigen::VectorXd y) {
  return GpModel::fit(std::move(kernel), std::move(mean), std::move(X), std::move(y));
}

inline Prediction predict(const GpModel& model, PointView x) { return model.predict(x); }

inline double log_marginal_likelihood(const GpModel& model) { return model.log_marginal_likelihood(); }

// Log-uniform random search over lengthscales and signal variance, keeping
// the candidate with the highest log marginal likelihood. Lengthscales range
// over [1e-2, 1e1] times the per-dimension data span, the signal variance
// over [1e-2, 1e2] times the sample variance of y. Candidates that fail to
// factorize are skipped; if all fail a ConditioningError is thrown.
KernelSpec fit_hyperparameters(KernelFamily family, const MeanSpec& mean, const Design& X,
                               const Eigen::VectorXd& y, std::size_t budget, std::uint64_t seed,
                               double power = 2.0);

}  // namespace probo
