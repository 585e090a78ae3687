#pragma once

#include <probo/gp.hpp>
#include <probo/kernel.hpp>
#include <probo/types.hpp>

#include <Eigen/Core>

#include <cstddef>
#include <string_view>

namespace probo {

// Constant-mean imprecise GP: the set of GP priors
//   { GP(M h, k(x, x') + (1 + M) / c) : h = +-1, M >= 0 }
// over a fixed base kernel k, with degree of imprecision c > 0. M and h are
// eliminated analytically; the posterior mean over the whole set lies between
// the bounds computed here. Everything needed (K_n, k_x, s_k, S_k, y) comes
// from an already fitted GpModel, so no second surrogate is trained.
//
// Which pair of bound formulas applies depends on the x-independent condition
//   |s_k^T y / S_k| <= 1 + c / S_k.

enum class IgpCase {
  NearIgnorance = 1,  // condition holds: bounds symmetric around the kriging mean
  Extreme = 2,        // condition fails: one bound is attained at M = 0
};

std::string_view to_string(IgpCase c);

enum class BoundsRule {
  // Supremum / infimum of the posterior mean over the prior set. Agrees with
  // the literal extreme-case formulas whenever s_k^T y > 0 and
  // 1 - k_x^T s_k >= 0, and is sign-symmetric otherwise.
  Exact,
  // The extreme-case formulas taken literally (no absolute values). Can yield
  // upper < lower; such points are collapsed to the midpoint and counted as
  // clamped.
  Literal,
};

std::string_view to_string(BoundsRule rule);
BoundsRule parse_bounds_rule(std::string_view name);

struct MeanBounds {
  double lower = 0.0;
  double upper = 0.0;
  double width = 0.0;
  IgpCase igp_case = IgpCase::NearIgnorance;
  bool clamped = false;
};

struct WidthBatch {
  Eigen::VectorXd width;
  std::size_t clamped = 0;
};

IgpCase case_condition(const GpModel& model, double c);

class ImpreciseGp {
 public:
  ImpreciseGp(const GpModel& model, double c, BoundsRule rule = BoundsRule::Exact);

  double c() const { return c_; }
  BoundsRule rule() const { return rule_; }
  IgpCase igp_case() const { return case_; }

  MeanBounds mean_bounds(PointView x) const;

  // upper - lower, computed from the simplified width expressions (only
  // k_x^T s_k is needed) and clamped at zero.
  double mean_width(PointView x) const;

  // Widths for every column of a cross-covariance matrix (n x m).
  WidthBatch mean_width_batch(const Eigen::MatrixXd& cross) const;

 private:
  struct RawWidth {
    double value;
    bool clamped;
  };
  RawWidth width_from(double k_s) const;
  MeanBounds bounds_from(double k_kinv_y, double k_s) const;

  KernelSpec kernel_;
  Design X_;
  Eigen::VectorXd kinv_y_;
  Eigen::VectorXd s_k_;
  double S_k_;
  double jitter_;
  double sy_;  // s_k^T y
  double c_;
  BoundsRule rule_;
  IgpCase case_;
};

}  // namespace probo
