#include <probo/gp.hpp>

#include <probo/error.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace probo {

std::string_view to_string(MeanForm form) {
  switch (form) {
    case MeanForm::ConstantEstimated: return "constant-estimated";
    case MeanForm::ConstantFixed: return "constant-fixed";
    case MeanForm::LinearFixed: return "linear-fixed";
    case MeanForm::QuadraticFixed: return "quadratic-fixed";
  }
  return "unknown";
}

MeanForm parse_mean_form(std::string_view name) {
  if (name == "constant-estimated") return MeanForm::ConstantEstimated;
  if (name == "constant-fixed") return MeanForm::ConstantFixed;
  if (name == "linear-fixed") return MeanForm::LinearFixed;
  if (name == "quadratic-fixed") return MeanForm::QuadraticFixed;
  throw InvalidArgument("unknown mean form '" + std::string(name) +
                        "' (expected constant-estimated, constant-fixed, linear-fixed or quadratic-fixed)");
}

std::size_t MeanSpec::coefficient_count(MeanForm form, std::size_t dim) {
  switch (form) {
    case MeanForm::ConstantEstimated: return 0;
    case MeanForm::ConstantFixed: return 1;
    case MeanForm::LinearFixed: return 1 + dim;
    case MeanForm::QuadraticFixed: return 1 + dim + dim * (dim + 1) / 2;
  }
  return 0;
}

void MeanSpec::validate(std::size_t dim) const {
  const std::size_t expected = coefficient_count(form, dim);
  if (coefficients.size() != expected) {
    std::ostringstream msg;
    msg << to_string(form) << " mean in dimension " << dim << " needs " << expected << " coefficients, got "
        << coefficients.size();
    throw InvalidArgument(msg.str());
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw InvalidArgument("mean coefficients must be finite");
  }
}

MeanSpec MeanSpec::with_dimension(std::size_t dim) const {
  if (coefficients.size() == coefficient_count(form, dim)) return *this;
  MeanSpec out{form, {}};
  if (form == MeanForm::LinearFixed && coefficients.size() == 2) {
    out.coefficients.push_back(coefficients[0]);
    out.coefficients.insert(out.coefficients.end(), dim, coefficients[1]);
    return out;
  }
  if (form == MeanForm::QuadraticFixed && coefficients.size() == 4) {
    out.coefficients.push_back(coefficients[0]);
    out.coefficients.insert(out.coefficients.end(), dim, coefficients[1]);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) out.coefficients.push_back(i == j ? coefficients[2] : coefficients[3]);
    }
    return out;
  }
  return *this;  // validate() reports the mismatch
}

double MeanSpec::evaluate(PointView x) const {
  if (form == MeanForm::ConstantEstimated) {
    throw InvalidArgument("the estimated constant trend has no fixed value");
  }
  validate(x.size());
  double value = coefficients[0];
  if (form == MeanForm::ConstantFixed) return value;
  const std::size_t p = x.size();
  for (std::size_t i = 0; i < p; ++i) value += coefficients[1 + i] * x[i];
  if (form == MeanForm::LinearFixed) return value;
  std::size_t idx = 1 + p;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) value += coefficients[idx++] * x[i] * x[j];
  }
  return value;
}

GpModel::GpModel(KernelSpec kernel, MeanSpec mean, Design X, Eigen::VectorXd y, BaseKernelMatrix K)
    : kernel_(std::move(kernel)),
      mean_(std::move(mean)),
      X_(std::move(X)),
      y_(std::move(y)),
      K_(std::move(K)) {}

GpModel GpModel::fit(KernelSpec kernel, MeanSpec mean, Design X, Eigen::VectorXd y) {
  if (X.rows() != y.size()) {
    std::ostringstream msg;
    msg << "design has " << X.rows() << " rows but " << y.size() << " targets were given";
    throw DimensionError(msg.str());
  }
  if (X.rows() < 1) throw InvalidArgument("cannot fit a GP to zero points");
  if (!y.allFinite()) throw InvalidArgument("GP targets must be finite");
  mean.validate(static_cast<std::size_t>(X.cols()));

  BaseKernelMatrix K(kernel, X);
  GpModel model(std::move(kernel), std::move(mean), std::move(X), std::move(y), std::move(K));

  const Eigen::Index n = model.X_.rows();
  model.kinv_y_ = model.K_.solve(model.y_);
  model.s_k_ = model.K_.solve(Eigen::VectorXd::Ones(n));
  model.S_k_ = model.s_k_.sum();

  model.residual_.resize(n);
  if (model.mean_.is_estimated()) {
    const double beta = model.s_k_.dot(model.y_) / model.S_k_;
    model.beta_hat_ = beta;
    model.residual_ = model.y_.array() - beta;
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      model.residual_(i) = model.y_(i) - model.mean_.evaluate(row_view(model.X_, i));
    }
  }
  model.alpha_ = model.K_.solve(model.residual_);
  return model;
}

double GpModel::trend(PointView x) const {
  return beta_hat_ ? *beta_hat_ : mean_.evaluate(x);
}

Prediction GpModel::predict(PointView x) const {
  if (x.size() != dimension()) {
    std::ostringstream msg;
    msg << "query point has dimension " << x.size() << ", model has " << dimension();
    throw DimensionError(msg.str());
  }
  Design Q(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) Q(0, static_cast<Eigen::Index>(i)) = x[i];
  const BatchPrediction batch = predict_batch(Q);
  return {batch.mu(0), batch.var(0)};
}

BatchPrediction GpModel::predict_batch(const Design& Q) const {
  return predict_batch(Q, cross_covariance(Q));
}

Eigen::MatrixXd GpModel::cross_covariance(const Design& Q) const {
  return cross_covariance_matrix(kernel_, X_, Q, K_.jitter());
}

BatchPrediction GpModel::predict_batch(const Design& Q, const Eigen::MatrixXd& cross) const {
  if (static_cast<std::size_t>(Q.cols()) != dimension()) {
    throw DimensionError("query design dimension does not match the model");
  }
  const Eigen::Index m = Q.rows();
  BatchPrediction out;
  out.mu = cross.transpose() * alpha_;
  if (beta_hat_) {
    out.mu.array() += *beta_hat_;
  } else {
    for (Eigen::Index j = 0; j < m; ++j) out.mu(j) += mean_.evaluate(row_view(Q, j));
  }

  const Eigen::MatrixXd V = K_.llt().matrixL().solve(cross);
  out.var = Eigen::VectorXd::Constant(m, kernel_.signal_variance) - V.colwise().squaredNorm().transpose();
  if (beta_hat_) {
    const Eigen::ArrayXd u = 1.0 - (cross.transpose() * s_k_).array();
    out.var.array() += u.square() / S_k_;
  }
  out.var = out.var.cwiseMax(0.0);
  return out;
}

double GpModel::log_marginal_likelihood() const {
  const double n = static_cast<double>(y_.size());
  return -0.5 * residual_.dot(alpha_) - 0.5 * K_.log_determinant() - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

KernelSpec fit_hyperparameters(KernelFamily family, const MeanSpec& mean, const Design& X,
                               const Eigen::VectorXd& y, std::size_t budget, std::uint64_t seed,
                               double power) {
  if (budget < 1) throw InvalidArgument("hyperparameter search budget must be at least 1");
  if (X.rows() != y.size() || X.rows() < 1) throw DimensionError("design and targets disagree");

  const Eigen::Index p = X.cols();
  Eigen::VectorXd span = X.colwise().maxCoeff() - X.colwise().minCoeff();
  for (Eigen::Index d = 0; d < p; ++d) {
    if (!(span(d) > 0.0)) span(d) = 1.0;
  }
  double y_var = y.size() > 1 ? (y.array() - y.mean()).square().sum() / static_cast<double>(y.size() - 1) : 0.0;
  if (!(y_var > 1e-12)) y_var = 1.0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(rng)); };

  KernelSpec best;
  double best_lml = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t b = 0; b < budget; ++b) {
    KernelSpec candidate;
    candidate.family = family;
    candidate.power = power;
    candidate.lengthscales.resize(static_cast<std::size_t>(p));
    for (Eigen::Index d = 0; d < p; ++d) {
      candidate.lengthscales[static_cast<std::size_t>(d)] = log_uniform(1e-2 * span(d), 1e1 * span(d));
    }
    candidate.signal_variance = log_uniform(1e-2 * y_var, 1e2 * y_var);
    try {
      const double lml = GpModel::fit(candidate, mean, X, y).log_marginal_likelihood();
      if (std::isfinite(lml) && (!found || lml > best_lml)) {
        best = candidate;
        best_lml = lml;
        found = true;
      }
    } catch (const ConditioningError&) {
      continue;
    }
  }
  if (!found) throw ConditioningError("no hyperparameter candidate produced a factorizable kernel matrix");
  return best;
}

}  // namespace probo
