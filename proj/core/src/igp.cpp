#include <probo/igp.hpp>

#include <probo/error.hpp>

#include <cmath>
#include <sstream>

namespace probo {

std::string_view to_string(IgpCase c) {
  return c == IgpCase::NearIgnorance ? "near-ignorance" : "extreme";
}

std::string_view to_string(BoundsRule rule) {
  return rule == BoundsRule::Exact ? "exact" : "literal";
}

BoundsRule parse_bounds_rule(std::string_view name) {
  if (name == "exact") return BoundsRule::Exact;
  if (name == "literal") return BoundsRule::Literal;
  throw InvalidArgument("unknown IGP bounds rule '" + std::string(name) + "' (expected exact or literal)");
}

namespace {

IgpCase classify(double sy, double S, double c) {
  return std::abs(sy / S) <= 1.0 + c / S ? IgpCase::NearIgnorance : IgpCase::Extreme;
}

}  // namespace

IgpCase case_condition(const GpModel& model, double c) {
  return classify(model.s_k().dot(model.targets()), model.S_k(), c);
}

ImpreciseGp::ImpreciseGp(const GpModel& model, double c, BoundsRule rule)
    : kernel_(model.kernel()),
      X_(model.inputs()),
      kinv_y_(model.kinv_y()),
      s_k_(model.s_k()),
      S_k_(model.S_k()),
      jitter_(model.base_matrix().jitter()),
      sy_(model.s_k().dot(model.targets())),
      c_(c),
      rule_(rule) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("degree of imprecision c must be positive and finite");
  case_ = classify(sy_, S_k_, c_);
}

ImpreciseGp::RawWidth ImpreciseGp::width_from(double k_s) const {
  const double u = 1.0 - k_s;
  if (case_ == IgpCase::NearIgnorance) return {2.0 * c_ * std::abs(u) / S_k_, false};
  if (rule_ == BoundsRule::Exact) {
    return {std::abs(u) * c_ * (c_ + S_k_ + std::abs(sy_)) / (S_k_ * (c_ + S_k_)), false};
  }
  const double raw = u * (sy_ / S_k_ + c_ / S_k_ - sy_ / (c_ + S_k_));
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

MeanBounds ImpreciseGp::bounds_from(double k_kinv_y, double k_s) const {
  const double u = 1.0 - k_s;
  MeanBounds b;
  b.igp_case = case_;
  if (case_ == IgpCase::NearIgnorance) {
    const double center = k_kinv_y + u * sy_ / S_k_;
    const double half = c_ * std::abs(u) / S_k_;
    b.lower = center - half;
    b.upper = center + half;
  } else if (rule_ == BoundsRule::Exact) {
    // Posterior mean is k_x^T K^{-1} y + u * g(M, h) with g monotone in M, so
    // its extremes sit at M = 0 or M -> infinity.
    const double at_zero = sy_ / (c_ + S_k_);
    const double g_hi = sy_ > 0.0 ? (c_ + sy_) / S_k_ : at_zero;
    const double g_lo = sy_ > 0.0 ? at_zero : (sy_ - c_) / S_k_;
    const double a = k_kinv_y + u * g_hi;
    const double z = k_kinv_y + u * g_lo;
    b.upper = u >= 0.0 ? a : z;
    b.lower = u >= 0.0 ? z : a;
  } else {
    b.upper = k_kinv_y + u * sy_ / S_k_ + c_ * u / S_k_;
    b.lower = k_kinv_y + u * sy_ / (c_ + S_k_);
    if (b.upper < b.lower) {
      const double mid = 0.5 * (b.upper + b.lower);
      b.upper = mid;
      b.lower = mid;
      b.clamped = true;
    }
  }
  b.width = width_from(k_s).value;
  return b;
}

MeanBounds ImpreciseGp::mean_bounds(PointView x) const {
  const Eigen::VectorXd k = cross_covariance(kernel_, X_, x, jitter_);
  return bounds_from(k.dot(kinv_y_), k.dot(s_k_));
}

double ImpreciseGp::mean_width(PointView x) const {
  const Eigen::VectorXd k = cross_covariance(kernel_, X_, x, jitter_);
  return width_from(k.dot(s_k_)).value;
}

WidthBatch ImpreciseGp::mean_width_batch(const Eigen::MatrixXd& cross) const {
  if (cross.rows() != X_.rows()) {
    std::ostringstream msg;
    msg << "cross-covariance has " << cross.rows() << " rows, model has " << X_.rows() << " points";
    throw DimensionError(msg.str());
  }
  const Eigen::VectorXd ks = cross.transpose() * s_k_;
  WidthBatch out;
  out.width.resize(ks.size());
  for (Eigen::Index j = 0; j < ks.size(); ++j) {
    const RawWidth w = width_from(ks(j));
    out.width(j) = w.value;
    out.clamped += w.clamped ? 1 : 0;
  }
  return out;
}

}  // namespace probo
