#include <probo/metrics.hpp>

#include <probo/error.hpp>

#include <cmath>
#include <sstream>

namespace probo {

std::vector<double> mean_optimization_path(const std::vector<std::vector<double>>& incumbent_paths) {
  if (incumbent_paths.empty()) throw InvalidArgument("mean optimization path needs at least one repetition");
  const std::size_t T = incumbent_paths.front().size();
  std::vector<double> mop(T, 0.0);
  for (const auto& path : incumbent_paths) {
    if (path.size() != T) {
      std::ostringstream msg;
      msg << "optimization paths differ in length (" << path.size() << " vs " << T << ")";
      throw InvalidArgument(msg.str());
    }
    for (std::size_t t = 0; t < T; ++t) mop[t] += path[t];
  }
  const auto R = static_cast<double>(incumbent_paths.size());
  for (double& v : mop) v /= R;
  return mop;
}

std::vector<double> mean_optimization_path(const std::vector<OptimizationTrace>& traces) {
  std::vector<std::vector<double>> paths;
  paths.reserve(traces.size());
  for (const auto& trace : traces) paths.push_back(trace.incumbent_path());
  return mean_optimization_path(paths);
}

std::vector<double> confidence_half_width(const std::vector<std::vector<double>>& incumbent_paths, double z) {
  const std::vector<double> mop = mean_optimization_path(incumbent_paths);
  const std::size_t R = incumbent_paths.size();
  std::vector<double> half(mop.size(), 0.0);
  if (R < 2) return half;
  for (std::size_t t = 0; t < mop.size(); ++t) {
    double ss = 0.0;
    for (const auto& path : incumbent_paths) ss += (path[t] - mop[t]) * (path[t] - mop[t]);
    const double sd = std::sqrt(ss / static_cast<double>(R - 1));
    half[t] = z * sd / std::sqrt(static_cast<double>(R));
  }
  return half;
}

double accumulated_difference(const MopMatrix& mop) {
  if (mop.settings() < 2) throw InvalidArgument("accumulated difference needs at least two settings");
  double ad = 0.0;
  for (Eigen::Index t = 0; t < mop.iterations(); ++t) {
    ad += mop.values.row(t).maxCoeff() - mop.values.row(t).minCoeff();
  }
  return ad;
}

std::string_view to_string(PriorAxis axis) {
  switch (axis) {
    case PriorAxis::MeanFunctionalForm: return "mean-functional-form";
    case PriorAxis::KernelFunctionalForm: return "kernel-functional-form";
    case PriorAxis::MeanParameters: return "mean-parameters";
    case PriorAxis::KernelParameters: return "kernel-parameters";
  }
  return "unknown";
}

PriorAxis parse_prior_axis(std::string_view name) {
  for (PriorAxis a : {PriorAxis::MeanFunctionalForm, PriorAxis::KernelFunctionalForm, PriorAxis::MeanParameters,
                      PriorAxis::KernelParameters}) {
    if (name == to_string(a)) return a;
  }
  throw InvalidArgument("unknown prior axis '" + std::string(name) + "'");
}

RelativeAdSummary relative_ad_summary(const AdTable& table) {
  RelativeAdSummary summary;
  if (table.empty()) return summary;
  const auto& axes = table.front().second;
  if (axes.empty()) throw InvalidArgument("relative AD summary needs at least one axis");
  for (const auto& [axis, ad] : axes) summary.sums[axis] = 0.0;

  for (const auto& [function, ads] : table) {
    if (ads.size() != axes.size()) throw InvalidArgument("function '" + function + "' does not cover every axis");
    double total = 0.0;
    for (const auto& [axis, ad] : ads) {
      if (!axes.contains(axis)) throw InvalidArgument("function '" + function + "' does not cover every axis");
      if (!std::isfinite(ad) || ad < 0.0) throw InvalidArgument("function '" + function + "' has an invalid AD");
      total += ad;
    }
    const double mean = total / static_cast<double>(ads.size());
    if (!(mean > 0.0)) {
      summary.excluded.push_back(function);
      continue;
    }
    for (const auto& [axis, ad] : ads) {
      const double rel = ad / mean;
      summary.rows.push_back({function, axis, ad, rel});
      summary.sums[axis] += rel;
    }
  }
  return summary;
}

}  // namespace probo
