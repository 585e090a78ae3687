#pragma once

#include <probo/acquisition.hpp>
#include <probo/error.hpp>
#include <probo/gp.hpp>
#include <probo/igp.hpp>
#include <probo/kernel.hpp>
#include <probo/optimizer.hpp>
#include <probo/types.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace probo {

// Deterministic black-box objective, minimized over its bounds.
struct TargetFunction {
  std::string name;
  std::function<double(PointView)> evaluate;
  BoxBounds bounds;
  std::optional<double> known_optimum;
  std::optional<Point> known_minimizer;

  std::size_t dimension() const { return bounds.dimension(); }
};

// Everything that determines a single optimization run.
//
// The surrogate is fitted on inputs mapped to the unit cube, so lengthscales
// (and fixed polynomial trend coefficients) are in unit-cube coordinates. A
// single lengthscale is broadcast to every dimension.
struct RunConfig {
  KernelSpec kernel{KernelFamily::Matern52, {0.2}, 1.0, 2.0};
  MeanSpec mean{};
  AcquisitionSpec acquisition{};
  FocusSearchConfig infill{};
  BoundsRule igp_bounds = BoundsRule::Exact;
  int n_init = 10;
  int budget = 90;
  std::uint64_t seed = 1;
  // Re-select kernel hyperparameters by marginal likelihood every iteration.
  bool fit_hyperparameters = false;
  int hyperparameter_budget = 64;
  // Fit the surrogate to (y - mean(y)) / sd(y) of the current design.
  bool standardize = false;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

struct TraceRecord {
  int iteration = 0;  // 1-based; the first n_init records are the initial design
  Point x;
  double psi = 0.0;
  double incumbent = 0.0;
  // Acquisition value at the proposal; NaN for initial-design points.
  double acquisition_value = 0.0;
  // Active imprecise-GP case for GLCB proposals.
  std::optional<IgpCase> igp_case;
  // Candidates whose imprecision width was clamped during this proposal's search.
  std::size_t clamped = 0;
  // The proposal duplicated a design point and was nudged.
  bool perturbed = false;
};

struct OptimizationTrace {
  RunConfig config;
  std::string target_name;
  std::size_t dimension = 0;
  std::vector<TraceRecord> records;

  bool empty() const { return records.empty(); }
  // argmin over all evaluated points (first one on ties).
  const TraceRecord& best() const;
  // Incumbent after each BO iteration (excludes the initial design), i.e.
  // budget - n_init entries.
  std::vector<double> incumbent_path() const;
  std::size_t perturbed_count() const;
};

// A run failed part-way; the trace up to the failure is kept.
class RunError : public Error {
 public:
  RunError(const std::string& what, OptimizationTrace partial)
      : Error(what), partial_(std::move(partial)) {}
  const OptimizationTrace& partial_trace() const { return partial_; }

 private:
  OptimizationTrace partial_;
};

// Classic BO loop: LHS initial design, then fit -> propose -> evaluate ->
// update until `budget` evaluations. Acquisition must be EI or LCB.
OptimizationTrace run_bo(const RunConfig& config, const TargetFunction& target);

// Same loop, proposing by minimizing GLCB built from the precise GP and the
// imprecise-GP mean width. Acquisition must be GLCB.
OptimizationTrace run_probo(const RunConfig& config, const TargetFunction& target);

// Dispatches on the acquisition kind.
OptimizationTrace run_optimization(const RunConfig& config, const TargetFunction& target);

// The initial design a run with this seed uses, in target coordinates.
Design initial_design(const RunConfig& config, const TargetFunction& target);

}  // namespace probo
