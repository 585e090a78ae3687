#pragma once

#include <probo/types.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace probo {

enum class KernelFamily {
  SquaredExponential,
  PowerExponential,
  Matern32,
  Matern52,
};

std::string_view to_string(KernelFamily family);

// Accepts the canonical names ("squared-exponential", "power-exponential",
// "matern-3/2", "matern-5/2") and a few common aliases ("gauss", "powexp",
// "matern3_2", "matern5_2").
KernelFamily parse_kernel_family(std::string_view name);

// Stationary kernel over the scaled Euclidean distance
//   d^2 = sum_i ((x_i - x'_i) / l_i)^2
// with
//   squared-exponential  s2 * exp(-d^2 / 2)
//   power-exponential    s2 * exp(-d^p / 2)
//   matern-3/2           s2 * (1 + sqrt(3) d) exp(-sqrt(3) d)
//   matern-5/2           s2 * (1 + sqrt(5) d + 5 d^2 / 3) exp(-sqrt(5) d)
struct KernelSpec {
  KernelFamily family = KernelFamily::SquaredExponential;
  std::vector<double> lengthscales{1.0};
  double signal_variance = 1.0;
  // Only used by the power-exponential family; p = 2 is the squared exponential.
  double power = 2.0;

  std::size_t dimension() const { return lengthscales.size(); }

  // Throws InvalidArgument on non-positive lengthscales or variance, or a
  // power outside (0, 2].
  void validate() const;

  // Broadcasts a single (isotropic) lengthscale to `dim` dimensions. A spec
  // that already has `dim` lengthscales is returned unchanged.
  KernelSpec with_dimension(std::size_t dim) const;

  bool operator==(const KernelSpec&) const = default;
};

// Covariance as a function of the squared scaled distance.
double kernel_from_sq_distance(const KernelSpec& spec, double d2);

double kernel_eval(const KernelSpec& spec, PointView x, PointView x_prime);

// Gram matrix over the training inputs with its Cholesky factor. The stored
// matrix is the pure kernel matrix; the factor is of matrix + jitter * I.
// There is no nugget: the jitter only exists to make the factorization go
// through and starts at 1e-10 * s2, escalating x10 up to 1e-6 * s2.
class BaseKernelMatrix {
 public:
  static constexpr double kInitialRelativeJitter = 1e-10;
  static constexpr double kMaxRelativeJitter = 1e-6;
  static constexpr double kDuplicateTolerance = 1e-10;

  BaseKernelMatrix(const KernelSpec& spec, const Design& X);
  // Applies the same jitter policy to a precomputed symmetric matrix whose
  // diagonal scale is `signal_variance`.
  BaseKernelMatrix(Eigen::MatrixXd matrix, double signal_variance);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  double jitter() const { return jitter_; }
  Eigen::Index size() const { return matrix_.rows(); }

  // Lower-triangular L with L L^T = matrix + jitter * I.
  Eigen::MatrixXd cholesky_factor() const { return llt_.matrixL(); }
  const Eigen::LLT<Eigen::MatrixXd>& llt() const { return llt_; }

  // (K + jitter I)^{-1} b
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return llt_.solve(b); }

  // log det(K + jitter I)
  double log_determinant() const;

 private:
  void factorize(double signal_variance);

  Eigen::MatrixXd matrix_;
  double jitter_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

BaseKernelMatrix build_base_kernel_matrix(const KernelSpec& spec, const Design& X);

// k_x = [k(x, x_1), ..., k(x, x_n)]^T
//
// `coincident_jitter` is added to entries whose query coincides with the
// training point (within kDuplicateTolerance). Passing the jitter of the
// factorized matrix makes k_x at x_i equal the i-th column of K + jitter I,
// so predictions interpolate the data to rounding error.
Eigen::VectorXd cross_covariance(const KernelSpec& spec, const Design& X, PointView x,
                                 double coincident_jitter = 0.0);

// n x m matrix whose column j is the cross-covariance vector of Q.row(j).
Eigen::MatrixXd cross_covariance_matrix(const KernelSpec& spec, const Design& X, const Design& Q,
                                        double coincident_jitter = 0.0);

}  // namespace probo
