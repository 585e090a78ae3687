#pragma once

#include <probo/engine.hpp>
#include <probo/metrics.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace probo {

// Seed of repetition `rep` on the named function. Every compared setting uses
// it, so at a given repetition all settings share one initial design. Keyed by
// name rather than position so a function's results do not depend on which
// other functions are in the experiment.
std::uint64_t repetition_seed(std::uint64_t master_seed, const std::string& function, std::size_t rep);

// One full prior specification. Labels are used as directory names.
struct PriorVariant {
  std::string label;
  KernelSpec kernel;
  MeanSpec mean;
};

struct AxisPlan {
  PriorAxis axis = PriorAxis::MeanFunctionalForm;
  std::vector<PriorVariant> variants;
};

struct SensitivityPlan {
  std::vector<AxisPlan> axes;
  std::vector<TargetFunction> functions;
  int repetitions = 40;
  int iterations = 20;  // BO iterations after the initial design
  int n_init = 10;
  AcquisitionSpec acquisition{AcquisitionKind::LCB, 1.0};
  FocusSearchConfig infill{};
  bool standardize = true;

  void validate() const;
  // Configuration of one run; the variant's kernel and mean replace the prior.
  RunConfig run_config(const PriorVariant& variant, std::uint64_t seed) const;
};

// The shipped plan. All variants share a baseline of a squared-exponential
// kernel (lengthscale 0.2, unit variance, unit-cube inputs) and an estimated
// constant mean, and change one component:
//   mean-functional-form   constant (estimated) | linear | quadratic
//   mean-parameters        fixed constant 1 scaled by 0.5, 0.75, 1, 1.25, 1.5
//   kernel-functional-form squared-exponential | power-exponential 1.5 | Matern 5/2
//   kernel-parameters      lengthscale 0.2 scaled by 0.5, 0.75, 1, 1.25, 1.5
// Targets are standardized per iteration, so mean coefficients are in units of
// the sample standard deviation.
std::vector<AxisPlan> default_sensitivity_axes();

struct AxisResult {
  PriorAxis axis = PriorAxis::MeanFunctionalForm;
  MopMatrix mop;
  double ad = 0.0;
  std::vector<std::vector<OptimizationTrace>> traces;  // [variant][repetition]
};

struct FunctionSensitivity {
  std::string function;
  std::vector<AxisResult> axes;
  // Set when a run failed; the function is then left out of the summary.
  std::optional<std::string> failure;
};

struct SensitivityResult {
  std::vector<FunctionSensitivity> functions;
  RelativeAdSummary summary;
  std::vector<std::string> warnings;
};

// Runs every function x axis x variant x repetition cell on up to `jobs`
// threads (0 = all cores). Output depends only on the plan and seed.
SensitivityResult run_sensitivity_experiment(const SensitivityPlan& plan, std::uint64_t master_seed,
                                             std::size_t jobs = 0);

struct ComparisonPlan {
  std::vector<TargetFunction> functions;
  std::vector<AcquisitionSpec> acquisitions;
  int repetitions = 60;
  int budget = 90;
  int n_init = 10;
  KernelSpec kernel{KernelFamily::Matern52, {0.2}, 1.0, 2.0};
  MeanSpec mean{};
  FocusSearchConfig infill{};
  BoundsRule igp_bounds = BoundsRule::Exact;
  bool standardize = false;

  void validate() const;
  RunConfig run_config(const AcquisitionSpec& acquisition, std::uint64_t seed) const;
};

struct FunctionComparison {
  std::string function;
  MopMatrix mop;                // one column per acquisition
  Eigen::MatrixXd ci_half_width;  // same shape as mop.values
  double ad = 0.0;
  std::vector<std::vector<OptimizationTrace>> traces;  // [acquisition][repetition]
  std::optional<std::string> failure;
};

struct ComparisonResult {
  std::vector<FunctionComparison> functions;
  std::vector<std::string> warnings;
};

ComparisonResult run_acquisition_comparison(const ComparisonPlan& plan, std::uint64_t master_seed,
                                            std::size_t jobs = 0);

}  // namespace probo
