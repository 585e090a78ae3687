#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond plain data types: kernels are written out per family,
// conditioning uses dense inverses, and the estimated-constant predictor is
// solved as a bordered kriging system.

#include <probo/gp.hpp>
#include <probo/kernel.hpp>
#include <probo/types.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace probo::oracle {

inline double kernel(const KernelSpec& spec, const Point& a, const Point& b) {
  double r2 = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double l = spec.lengthscales.size() == 1 ? spec.lengthscales[0] : spec.lengthscales[static_cast<std::size_t>(i)];
    r2 += std::pow((a(i) - b(i)) / l, 2);
  }
  const double r = std::sqrt(r2);
  const double s2 = spec.signal_variance;
  switch (spec.family) {
    case KernelFamily::SquaredExponential: return s2 * std::exp(-0.5 * r * r);
    case KernelFamily::PowerExponential: return s2 * std::exp(-0.5 * std::pow(r, spec.power));
    case KernelFamily::Matern32: return s2 * (1.0 + std::sqrt(3.0) * r) * std::exp(-std::sqrt(3.0) * r);
    case KernelFamily::Matern52:
      return s2 * (1.0 + std::sqrt(5.0) * r + 5.0 * r * r / 3.0) * std::exp(-std::sqrt(5.0) * r);
  }
  return 0.0;
}

inline Eigen::MatrixXd gram(const KernelSpec& spec, const Design& X, double jitter) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) K(i, j) = kernel(spec, X.row(i).transpose(), X.row(j).transpose());
  }
  K.diagonal().array() += jitter;
  return K;
}

inline Eigen::VectorXd cross(const KernelSpec& spec, const Design& X, const Point& x) {
  Eigen::VectorXd k(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) k(i) = kernel(spec, X.row(i).transpose(), x);
  return k;
}

struct MuVar {
  double mu;
  double var;
};

// Gaussian conditioning of a GP with a known trend, via the dense inverse.
inline MuVar condition_fixed(const KernelSpec& spec, const MeanSpec& mean, const Design& X, const Eigen::VectorXd& y,
                             const Point& x, double jitter) {
  const Eigen::MatrixXd Kinv = gram(spec, X, jitter).inverse();
  const Eigen::VectorXd k = cross(spec, X, x);
  Eigen::VectorXd r(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) r(i) = y(i) - mean.evaluate(row_view(X, i));
  return {mean.evaluate(view(x)) + k.dot(Kinv * r), kernel(spec, x, x) - k.dot(Kinv * k)};
}

// Ordinary kriging: weights w and multiplier lambda from
//   [K 1; 1^T 0] [w; lambda] = [k; 1],  mu = w^T y,  var = k(x,x) - w^T k - lambda.
inline MuVar kriging(const KernelSpec& spec, const Design& X, const Eigen::VectorXd& y, const Point& x,
                     double jitter) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  A.topLeftCorner(n, n) = gram(spec, X, jitter);
  A.block(0, n, n, 1).setOnes();
  A.block(n, 0, 1, n).setOnes();
  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = cross(spec, X, x);
  rhs(n) = 1.0;
  const Eigen::VectorXd sol = A.fullPivLu().solve(rhs);
  const Eigen::VectorXd w = sol.head(n);
  return {w.dot(y), kernel(spec, x, x) - w.dot(rhs.head(n)) - sol(n)};
}

// Posterior mean under the prior GP(M h, k + (1 + M) / c), by dense solve.
inline double igp_member_mean(const KernelSpec& spec, const Design& X, const Eigen::VectorXd& y, const Point& x,
                              double c, double M, double h, double jitter) {
  // Long double: the rank-one term (1 + M) / c reaches 1e7 on the M grid.
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const long double extra = (1.0L + M) / c;
  MatL K = gram(spec, X, jitter).cast<long double>();
  K.array() += extra;
  VecL k = cross(spec, X, x).cast<long double>();
  k.array() += extra;
  const VecL r = (y.cast<long double>().array() - static_cast<long double>(M) * h).matrix();
  return static_cast<double>(M * h + k.dot(K.fullPivLu().solve(r)));
}

// Envelope of member means over h = +-1 and a log grid of M in [0, M_max].
inline std::pair<double, double> igp_envelope(const KernelSpec& spec, const Design& X, const Eigen::VectorXd& y,
                                              const Point& x, double c, double jitter, double M_max = 1e6,
                                              int grid = 400) {
  double lo = igp_member_mean(spec, X, y, x, c, 0.0, 1.0, jitter);
  double hi = lo;
  for (int i = 0; i <= grid; ++i) {
    const double M = std::pow(10.0, -6.0 + (std::log10(M_max) + 6.0) * i / grid);
    for (double h : {-1.0, 1.0}) {
      const double m = igp_member_mean(spec, X, y, x, c, M, h, jitter);
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
  }
  return {lo, hi};
}

struct McEstimate {
  double mean;
  double stderr_;
};

// E max(psi_min - Y, 0) for Y ~ N(mu, var).
inline McEstimate monte_carlo_ei(double mu, double var, double psi_min, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mu, std::sqrt(var));
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = std::max(psi_min - normal(rng), 0.0);
    sum += v;
    sum2 += v * v;
  }
  const double m = sum / samples;
  const double sd = std::sqrt(std::max(sum2 / samples - m * m, 0.0) * samples / (samples - 1));
  return {m, sd / std::sqrt(static_cast<double>(samples))};
}

// A random, well-conditioned regression instance on [0, 1]^dim.
struct Instance {
  KernelSpec kernel;
  Design X;
  Eigen::VectorXd y;
};

inline Instance random_instance(std::mt19937_64& rng, KernelFamily family, std::size_t n, std::size_t dim,
                                double min_separation = 0.15) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Instance inst;
  inst.kernel.family = family;
  inst.kernel.lengthscales.resize(dim);
  for (auto& l : inst.kernel.lengthscales) l = 0.15 + 0.35 * u(rng);
  inst.kernel.signal_variance = 0.5 + 1.5 * u(rng);
  inst.kernel.power = family == KernelFamily::PowerExponential ? 1.0 + u(rng) : 2.0;
  inst.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  // Rejection sampling; start over when greedy placement leaves no room.
  for (Eigen::Index i = 0, attempts = 0; i < inst.X.rows();) {
    for (Eigen::Index d = 0; d < inst.X.cols(); ++d) inst.X(i, d) = u(rng);
    bool ok = true;
    for (Eigen::Index j = 0; j < i; ++j) ok = ok && (inst.X.row(i) - inst.X.row(j)).norm() >= min_separation;
    if (ok) {
      ++i;
    } else if (++attempts > 1000) {
      i = 0;
      attempts = 0;
    }
  }
  inst.y.resize(static_cast<Eigen::Index>(n));
  for (auto& v : inst.y) v = 4.0 * u(rng) - 2.0;
  return inst;
}

inline Point random_point(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point x(static_cast<Eigen::Index>(dim));
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace probo::oracle
