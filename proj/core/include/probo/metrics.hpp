#pragma once

#include <probo/engine.hpp>

#include <Eigen/Core>

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace probo {

// T x S matrix of mean optimization paths: one column per compared setting
// (prior specification or acquisition function), one row per BO iteration.
struct MopMatrix {
  Eigen::MatrixXd values;
  int repetitions = 0;
  std::vector<std::string> labels;

  Eigen::Index iterations() const { return values.rows(); }
  Eigen::Index settings() const { return values.cols(); }
};

// MOP_t = (1/R) sum_r incumbent_{r,t}. All paths must have the same length.
std::vector<double> mean_optimization_path(const std::vector<std::vector<double>>& incumbent_paths);
std::vector<double> mean_optimization_path(const std::vector<OptimizationTrace>& traces);

// Pointwise normal-approximation confidence half-width z * sd / sqrt(R), with
// the sample standard deviation (R - 1 denominator). Zero when R = 1.
std::vector<double> confidence_half_width(const std::vector<std::vector<double>>& incumbent_paths,
                                          double z = 1.96);

// AD = sum_t (max_s MOP_{t,s} - min_s MOP_{t,s}); needs S >= 2.
double accumulated_difference(const MopMatrix& mop);

enum class PriorAxis {
  MeanFunctionalForm,
  KernelFunctionalForm,
  MeanParameters,
  KernelParameters,
};

std::string_view to_string(PriorAxis axis);
PriorAxis parse_prior_axis(std::string_view name);

struct RelativeAdRow {
  std::string function;
  PriorAxis axis;
  double ad = 0.0;
  double relative = 0.0;
};

struct RelativeAdSummary {
  std::vector<RelativeAdRow> rows;
  std::map<PriorAxis, double> sums;
  // Functions whose ADs were all zero, so no relative AD exists.
  std::vector<std::string> excluded;
};

// Per function, AD per axis. Every function must cover the same axes.
using AdTable = std::vector<std::pair<std::string, std::map<PriorAxis, double>>>;

// Divides each AD by the mean AD of its function across axes and sums the
// relative values per axis over functions. MOP and AD depend on the scale of
// the target; relative ADs do not.
RelativeAdSummary relative_ad_summary(const AdTable& table);

}  // namespace probo
