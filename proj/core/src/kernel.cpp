#include <probo/kernel.hpp>

#include <probo/error.hpp>

#include <cmath>
#include <sstream>

namespace probo {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463415059;
constexpr double kSqrt5 = 2.2360679774997896964091736687313;

void check_dimension(const KernelSpec& spec, std::size_t dim, const char* what) {
  if (dim != spec.dimension()) {
    std::ostringstream msg;
    msg << what << " has dimension " << dim << " but the kernel has " << spec.dimension()
        << " lengthscales";
    throw DimensionError(msg.str());
  }
}

double scaled_sq_distance(const KernelSpec& spec, const double* a, const double* b) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < spec.lengthscales.size(); ++i) {
    const double t = (a[i] - b[i]) / spec.lengthscales[i];
    d2 += t * t;
  }
  return d2;
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::SquaredExponential: return "squared-exponential";
    case KernelFamily::PowerExponential: return "power-exponential";
    case KernelFamily::Matern32: return "matern-3/2";
    case KernelFamily::Matern52: return "matern-5/2";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "squared-exponential" || name == "se" || name == "gauss" || name == "gaussian") {
    return KernelFamily::SquaredExponential;
  }
  if (name == "power-exponential" || name == "powexp") return KernelFamily::PowerExponential;
  if (name == "matern-3/2" || name == "matern3_2" || name == "matern32") return KernelFamily::Matern32;
  if (name == "matern-5/2" || name == "matern5_2" || name == "matern52") return KernelFamily::Matern52;
  throw InvalidArgument("unknown kernel family '" + std::string(name) +
                        "' (expected squared-exponential, power-exponential, matern-3/2 or matern-5/2)");
}

void KernelSpec::validate() const {
  if (lengthscales.empty()) throw InvalidArgument("kernel needs at least one lengthscale");
  for (double l : lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("kernel lengthscales must be positive and finite");
  }
  if (!(signal_variance > 0.0) || !std::isfinite(signal_variance)) {
    throw InvalidArgument("kernel signal variance must be positive and finite");
  }
  if (family == KernelFamily::PowerExponential && !(power > 0.0 && power <= 2.0)) {
    throw InvalidArgument("power-exponential kernel needs a power in (0, 2]");
  }
}

KernelSpec KernelSpec::with_dimension(std::size_t dim) const {
  if (lengthscales.size() == dim) return *this;
  if (lengthscales.size() != 1) {
    std::ostringstream msg;
    msg << "kernel has " << lengthscales.size() << " lengthscales; cannot adapt to dimension " << dim;
    throw DimensionError(msg.str());
  }
  KernelSpec out = *this;
  out.lengthscales.assign(dim, lengthscales.front());
  return out;
}

double kernel_from_sq_distance(const KernelSpec& spec, double d2) {
  switch (spec.family) {
    case KernelFamily::SquaredExponential:
      return spec.signal_variance * std::exp(-0.5 * d2);
    case KernelFamily::PowerExponential:
      // pow(d2, 1) is exact, so p = 2 reproduces the squared exponential bit for bit.
      return spec.signal_variance * std::exp(-0.5 * std::pow(d2, 0.5 * spec.power));
    case KernelFamily::Matern32: {
      const double r = kSqrt3 * std::sqrt(d2);
      return spec.signal_variance * (1.0 + r) * std::exp(-r);
    }
    case KernelFamily::Matern52: {
      const double r = kSqrt5 * std::sqrt(d2);
      return spec.signal_variance * (1.0 + r + r * r / 3.0) * std::exp(-r);
    }
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& spec, PointView x, PointView x_prime) {
  check_dimension(spec, x.size(), "first point");
  check_dimension(spec, x_prime.size(), "second point");
  // Symmetric in (x, x') exactly: each squared term is sign-invariant.
  return kernel_from_sq_distance(spec, scaled_sq_distance(spec, x.data(), x_prime.data()));
}

BaseKernelMatrix::BaseKernelMatrix(const KernelSpec& spec, const Design& X) {
  spec.validate();
  const Eigen::Index n = X.rows();
  if (n < 1) throw InvalidArgument("base kernel matrix needs at least one training point");
  check_dimension(spec, static_cast<std::size_t>(X.cols()), "training design");

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if ((X.row(i) - X.row(j)).norm() <= kDuplicateTolerance) {
        std::ostringstream msg;
        msg << "training points " << i << " and " << j << " coincide within " << kDuplicateTolerance;
        throw InvalidArgument(msg.str());
      }
    }
  }

  matrix_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    matrix_(i, i) = spec.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double k = kernel_from_sq_distance(spec, scaled_sq_distance(spec, X.row(i).data(), X.row(j).data()));
      matrix_(i, j) = k;
      matrix_(j, i) = k;
    }
  }

  factorize(spec.signal_variance);
}

BaseKernelMatrix::BaseKernelMatrix(Eigen::MatrixXd matrix, double signal_variance) : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) throw DimensionError("expected a non-empty square matrix");
  if (!(signal_variance > 0.0)) throw InvalidArgument("signal variance must be positive");
  factorize(signal_variance);
}

void BaseKernelMatrix::factorize(double s2) {
  const Eigen::Index n = matrix_.rows();
  for (double rel = kInitialRelativeJitter; rel <= kMaxRelativeJitter * (1.0 + 1e-9); rel *= 10.0) {
    jitter_ = rel * s2;
    Eigen::MatrixXd shifted = matrix_;
    shifted.diagonal().array() += jitter_;
    llt_.compute(shifted);
    if (llt_.info() == Eigen::Success && (llt_.matrixLLT().diagonal().array() > 0.0).all()) return;
  }
  std::ostringstream msg;
  msg << "base kernel matrix (n=" << n << ") is not positive definite even with jitter "
      << kMaxRelativeJitter << " * signal variance; the design is too ill-conditioned for this kernel";
  throw ConditioningError(msg.str());
}

double BaseKernelMatrix::log_determinant() const {
  return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

BaseKernelMatrix build_base_kernel_matrix(const KernelSpec& spec, const Design& X) {
  return BaseKernelMatrix(spec, X);
}

Eigen::VectorXd cross_covariance(const KernelSpec& spec, const Design& X, PointView x, double coincident_jitter) {
  check_dimension(spec, x.size(), "query point");
  Design Q(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t d = 0; d < x.size(); ++d) Q(0, static_cast<Eigen::Index>(d)) = x[d];
  return cross_covariance_matrix(spec, X, Q, coincident_jitter).col(0);
}

Eigen::MatrixXd cross_covariance_matrix(const KernelSpec& spec, const Design& X, const Design& Q,
                                        double coincident_jitter) {
  check_dimension(spec, static_cast<std::size_t>(Q.cols()), "query design");
  check_dimension(spec, static_cast<std::size_t>(X.cols()), "training design");
  constexpr double tol2 = BaseKernelMatrix::kDuplicateTolerance * BaseKernelMatrix::kDuplicateTolerance;
  const auto p = static_cast<std::size_t>(X.cols());
  Eigen::MatrixXd K(X.rows(), Q.rows());
  for (Eigen::Index j = 0; j < Q.rows(); ++j) {
    const double* q = Q.row(j).data();
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const double* x = X.row(i).data();
      K(i, j) = kernel_from_sq_distance(spec, scaled_sq_distance(spec, q, x));
      if (coincident_jitter > 0.0) {
        double e2 = 0.0;
        for (std::size_t d = 0; d < p; ++d) e2 += (q[d] - x[d]) * (q[d] - x[d]);
        if (e2 <= tol2) K(i, j) += coincident_jitter;
      }
    }
  }
  return K;
}

}  // namespace probo
