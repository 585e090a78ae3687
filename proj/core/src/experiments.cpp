#include <probo/experiments.hpp>

#include <probo/error.hpp>
#include <probo/seeding.hpp>
#include <probo/work_pool.hpp>

#include <set>
#include <sstream>

namespace probo {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Outcome {
  std::optional<OptimizationTrace> trace;
  std::string error;
};

Outcome run_guarded(const RunConfig& config, const TargetFunction& target) {
  try {
    return {run_optimization(config, target), {}};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

void check_functions(const std::vector<TargetFunction>& functions) {
  if (functions.empty()) throw InvalidArgument("experiment needs at least one target function");
  std::set<std::string> names;
  for (const auto& f : functions) {
    if (!f.evaluate) throw InvalidArgument("target '" + f.name + "' has no evaluator");
    if (!names.insert(f.name).second) throw InvalidArgument("target '" + f.name + "' listed twice");
  }
}

// Stacks the MOPs of each setting column by column.
MopMatrix assemble_mop(const std::vector<std::vector<OptimizationTrace>>& traces,
                       const std::vector<std::string>& labels, int repetitions) {
  MopMatrix mop;
  mop.repetitions = repetitions;
  mop.labels = labels;
  for (std::size_t s = 0; s < traces.size(); ++s) {
    const std::vector<double> path = mean_optimization_path(traces[s]);
    if (s == 0) mop.values.resize(static_cast<Eigen::Index>(path.size()), static_cast<Eigen::Index>(traces.size()));
    for (std::size_t t = 0; t < path.size(); ++t) {
      mop.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = path[t];
    }
  }
  return mop;
}

}  // namespace

std::uint64_t repetition_seed(std::uint64_t master_seed, const std::string& function, std::size_t rep) {
  return derive_seed(derive_seed(master_seed, Stream::Repetition, fnv1a(function)), Stream::Repetition, rep);
}

void SensitivityPlan::validate() const {
  if (axes.empty()) throw InvalidArgument("sensitivity plan has no axes");
  std::set<PriorAxis> seen;
  for (const auto& axis : axes) {
    if (!seen.insert(axis.axis).second) {
      throw InvalidArgument("sensitivity axis '" + std::string(to_string(axis.axis)) + "' listed twice");
    }
    if (axis.variants.size() < 2) {
      throw InvalidArgument("sensitivity axis '" + std::string(to_string(axis.axis)) +
                            "' needs at least 2 variants");
    }
    std::set<std::string> labels;
    for (const auto& v : axis.variants) {
      if (v.label.empty() || v.label.find('/') != std::string::npos) {
        throw InvalidArgument("variant label '" + v.label + "' must be non-empty and contain no '/'");
      }
      if (!labels.insert(v.label).second) throw InvalidArgument("variant label '" + v.label + "' repeated");
    }
  }
  if (repetitions < 1) throw InvalidArgument("repetitions must be at least 1");
  if (iterations < 1) throw InvalidArgument("iterations must be at least 1");
  check_functions(functions);
  for (const auto& axis : axes) {
    for (const auto& v : axis.variants) {
      const RunConfig config = run_config(v, 0);
      config.validate();
      for (const auto& f : functions) {
        config.kernel.with_dimension(f.dimension()).validate();
        config.mean.with_dimension(f.dimension()).validate(f.dimension());
      }
    }
  }
}

RunConfig SensitivityPlan::run_config(const PriorVariant& variant, std::uint64_t seed) const {
  RunConfig config;
  config.kernel = variant.kernel;
  config.mean = variant.mean;
  config.acquisition = acquisition;
  config.infill = infill;
  config.n_init = n_init;
  config.budget = n_init + iterations;
  config.seed = seed;
  config.standardize = standardize;
  return config;
}

std::vector<AxisPlan> default_sensitivity_axes() {
  const KernelSpec se{KernelFamily::SquaredExponential, {0.2}, 1.0, 2.0};
  const MeanSpec estimated{};
  const std::vector<double> factors{0.5, 0.75, 1.0, 1.25, 1.5};
  const std::vector<std::string> factor_tags{"0.5", "0.75", "1", "1.25", "1.5"};

  AxisPlan mean_form{PriorAxis::MeanFunctionalForm, {}};
  mean_form.variants.push_back({"constant", se, estimated});
  mean_form.variants.push_back({"linear", se, {MeanForm::LinearFixed, {0.0, 1.0}}});
  mean_form.variants.push_back({"quadratic", se, {MeanForm::QuadraticFixed, {0.0, 0.0, 1.0, 0.0}}});

  AxisPlan mean_params{PriorAxis::MeanParameters, {}};
  AxisPlan kernel_params{PriorAxis::KernelParameters, {}};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    mean_params.variants.push_back({"beta-x" + factor_tags[i], se, {MeanForm::ConstantFixed, {factors[i]}}});
    KernelSpec scaled = se;
    scaled.lengthscales = {0.2 * factors[i]};
    kernel_params.variants.push_back({"lengthscale-x" + factor_tags[i], scaled, estimated});
  }

  AxisPlan kernel_form{PriorAxis::KernelFunctionalForm, {}};
  kernel_form.variants.push_back({"squared-exponential", se, estimated});
  kernel_form.variants.push_back(
      {"power-exponential-1.5", {KernelFamily::PowerExponential, {0.2}, 1.0, 1.5}, estimated});
  kernel_form.variants.push_back({"matern-5_2", {KernelFamily::Matern52, {0.2}, 1.0, 2.0}, estimated});

  return {mean_form, mean_params, kernel_form, kernel_params};
}

SensitivityResult run_sensitivity_experiment(const SensitivityPlan& plan, std::uint64_t master_seed,
                                             std::size_t jobs) {
  plan.validate();

  struct Cell {
    std::size_t function, axis, variant, rep;
  };
  std::vector<Cell> cells;
  const auto R = static_cast<std::size_t>(plan.repetitions);
  for (std::size_t f = 0; f < plan.functions.size(); ++f) {
    for (std::size_t a = 0; a < plan.axes.size(); ++a) {
      for (std::size_t v = 0; v < plan.axes[a].variants.size(); ++v) {
        for (std::size_t r = 0; r < R; ++r) cells.push_back({f, a, v, r});
      }
    }
  }

  std::vector<Outcome> outcomes(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    const Cell& c = cells[i];
    const TargetFunction& target = plan.functions[c.function];
    const RunConfig config = plan.run_config(plan.axes[c.axis].variants[c.variant],
                                             repetition_seed(master_seed, target.name, c.rep));
    outcomes[i] = run_guarded(config, target);
  });

  SensitivityResult result;
  AdTable table;
  std::size_t i = 0;
  for (const auto& target : plan.functions) {
    FunctionSensitivity fs;
    fs.function = target.name;
    for (const auto& axis : plan.axes) {
      AxisResult ar;
      ar.axis = axis.axis;
      ar.traces.resize(axis.variants.size());
      for (std::size_t v = 0; v < axis.variants.size(); ++v) {
        for (std::size_t r = 0; r < R; ++r, ++i) {
          Outcome& out = outcomes[i];
          if (out.trace) {
            ar.traces[v].push_back(std::move(*out.trace));
          } else if (!fs.failure) {
            std::ostringstream msg;
            msg << to_string(axis.axis) << "/" << axis.variants[v].label << " rep " << r << ": " << out.error;
            fs.failure = msg.str();
          }
        }
      }
      fs.axes.push_back(std::move(ar));
    }
    if (fs.failure) {
      result.warnings.push_back("function '" + target.name + "' dropped after a failed run (" + *fs.failure + ")");
    } else {
      std::map<PriorAxis, double> ads;
      for (std::size_t a = 0; a < fs.axes.size(); ++a) {
        AxisResult& ar = fs.axes[a];
        std::vector<std::string> labels;
        for (const auto& v : plan.axes[a].variants) labels.push_back(v.label);
        ar.mop = assemble_mop(ar.traces, labels, plan.repetitions);
        ar.ad = accumulated_difference(ar.mop);
        ads[ar.axis] = ar.ad;
      }
      table.emplace_back(target.name, std::move(ads));
    }
    result.functions.push_back(std::move(fs));
  }

  result.summary = relative_ad_summary(table);
  for (const auto& name : result.summary.excluded) {
    result.warnings.push_back("function '" + name + "' has zero AD on every axis; no relative AD");
  }
  return result;
}

void ComparisonPlan::validate() const {
  if (acquisitions.size() < 2) throw InvalidArgument("comparison needs at least 2 acquisition functions");
  std::set<std::string> labels;
  for (const auto& a : acquisitions) {
    a.validate();
    if (!labels.insert(a.label()).second) throw InvalidArgument("acquisition '" + a.label() + "' listed twice");
  }
  if (repetitions < 1) throw InvalidArgument("repetitions must be at least 1");
  if (budget <= n_init) throw InvalidArgument("comparison budget must exceed n_init");
  check_functions(functions);
  const RunConfig config = run_config(acquisitions.front(), 0);
  config.validate();
  for (const auto& f : functions) config.mean.with_dimension(f.dimension()).validate(f.dimension());
}

RunConfig ComparisonPlan::run_config(const AcquisitionSpec& acquisition, std::uint64_t seed) const {
  RunConfig config;
  config.kernel = kernel;
  config.mean = mean;
  config.acquisition = acquisition;
  config.infill = infill;
  config.igp_bounds = igp_bounds;
  config.n_init = n_init;
  config.budget = budget;
  config.seed = seed;
  config.standardize = standardize;
  return config;
}

ComparisonResult run_acquisition_comparison(const ComparisonPlan& plan, std::uint64_t master_seed,
                                            std::size_t jobs) {
  plan.validate();
  const std::size_t F = plan.functions.size();
  const std::size_t A = plan.acquisitions.size();
  const auto R = static_cast<std::size_t>(plan.repetitions);

  std::vector<Outcome> outcomes(F * A * R);
  parallel_for(outcomes.size(), jobs, [&](std::size_t i) {
    const std::size_t f = i / (A * R);
    const std::size_t a = (i / R) % A;
    const std::size_t r = i % R;
    const TargetFunction& target = plan.functions[f];
    outcomes[i] = run_guarded(plan.run_config(plan.acquisitions[a], repetition_seed(master_seed, target.name, r)),
                              target);
  });

  ComparisonResult result;
  std::vector<std::string> labels;
  for (const auto& a : plan.acquisitions) labels.push_back(a.label());
  for (std::size_t f = 0; f < F; ++f) {
    FunctionComparison fc;
    fc.function = plan.functions[f].name;
    fc.traces.resize(A);
    for (std::size_t a = 0; a < A; ++a) {
      for (std::size_t r = 0; r < R; ++r) {
        Outcome& out = outcomes[(f * A + a) * R + r];
        if (out.trace) {
          fc.traces[a].push_back(std::move(*out.trace));
        } else if (!fc.failure) {
          std::ostringstream msg;
          msg << labels[a] << " rep " << r << ": " << out.error;
          fc.failure = msg.str();
        }
      }
    }
    if (fc.failure) {
      result.warnings.push_back("function '" + fc.function + "' dropped after a failed run (" + *fc.failure + ")");
    } else {
      fc.mop = assemble_mop(fc.traces, labels, plan.repetitions);
      fc.ci_half_width.resize(fc.mop.values.rows(), fc.mop.values.cols());
      for (std::size_t a = 0; a < A; ++a) {
        std::vector<std::vector<double>> paths;
        for (const auto& t : fc.traces[a]) paths.push_back(t.incumbent_path());
        const std::vector<double> ci = confidence_half_width(paths);
        for (std::size_t t = 0; t < ci.size(); ++t) {
          fc.ci_half_width(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(a)) = ci[t];
        }
      }
      fc.ad = accumulated_difference(fc.mop);
    }
    result.functions.push_back(std::move(fc));
  }
  return result;
}

}  // namespace probo
