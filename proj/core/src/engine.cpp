#include <probo/engine.hpp>

#include <probo/seeding.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace probo {

namespace {

// Proposals this close (in unit-cube coordinates) to a design point would make
// the base kernel matrix singular.
constexpr double kDuplicateRadius = 1e-10;
constexpr double kPerturbRadius = 1e-6;
constexpr int kMaxPerturbAttempts = 1000;

bool is_duplicate(const Design& X, Eigen::Index rows, const Point& u) {
  for (Eigen::Index i = 0; i < rows; ++i) {
    if ((X.row(i).transpose() - u).norm() <= kDuplicateRadius) return true;
  }
  return false;
}

double evaluate_target(const TargetFunction& target, const Point& x, const OptimizationTrace& trace) {
  const double psi = target.evaluate(view(x));
  if (!std::isfinite(psi)) {
    std::ostringstream msg;
    msg << "target '" << target.name << "' returned a non-finite value at iteration " << trace.records.size() + 1;
    throw RunError(msg.str(), trace);
  }
  return psi;
}

void append(OptimizationTrace& trace, TraceRecord record) {
  const double prev = trace.records.empty() ? std::numeric_limits<double>::infinity() : trace.records.back().incumbent;
  record.iteration = static_cast<int>(trace.records.size()) + 1;
  record.incumbent = std::min(prev, record.psi);
  trace.records.push_back(std::move(record));
}

Eigen::VectorXd model_targets(const OptimizationTrace& trace, bool standardize) {
  const auto n = static_cast<Eigen::Index>(trace.records.size());
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = trace.records[static_cast<std::size_t>(i)].psi;
  if (!standardize) return y;
  const double mean = y.mean();
  double sd = n > 1 ? std::sqrt((y.array() - mean).square().sum() / static_cast<double>(n - 1)) : 0.0;
  if (!(sd > 0.0)) sd = 1.0;
  return ((y.array() - mean) / sd).matrix();
}

OptimizationTrace run_loop(const RunConfig& config, const TargetFunction& target) {
  config.validate();
  const std::size_t p = target.dimension();
  const KernelSpec base_kernel = config.kernel.with_dimension(p);
  base_kernel.validate();
  const MeanSpec mean = config.mean.with_dimension(p);
  mean.validate(p);
  const BoxBounds unit = BoxBounds::unit(p);

  OptimizationTrace trace;
  trace.config = config;
  trace.target_name = target.name;
  trace.dimension = p;
  trace.records.reserve(static_cast<std::size_t>(config.budget));

  // Unit-cube coordinates of every evaluated point, in evaluation order.
  Design U(config.budget, static_cast<Eigen::Index>(p));

  const Design init = latin_hypercube(static_cast<std::size_t>(config.n_init), unit,
                                      derive_seed(config.seed, Stream::InitialDesign));
  for (Eigen::Index i = 0; i < init.rows(); ++i) {
    U.row(i) = init.row(i);
    TraceRecord rec;
    rec.x = target.bounds.from_unit(row_view(init, i));
    rec.psi = evaluate_target(target, rec.x, trace);
    rec.acquisition_value = std::numeric_limits<double>::quiet_NaN();
    append(trace, std::move(rec));
  }

  const AcquisitionSpec& acq = config.acquisition;
  for (int t = config.n_init + 1; t <= config.budget; ++t) {
    const Eigen::Index n = t - 1;
    const Design X = U.topRows(n);
    const Eigen::VectorXd y = model_targets(trace, config.standardize);

    std::optional<GpModel> model;
    std::optional<ImpreciseGp> igp;
    try {
      KernelSpec kernel = base_kernel;
      if (config.fit_hyperparameters) {
        kernel = fit_hyperparameters(base_kernel.family, mean, X, y,
                                     static_cast<std::size_t>(config.hyperparameter_budget),
                                     derive_seed(config.seed, Stream::Hyperparameters, static_cast<std::uint64_t>(t)),
                                     base_kernel.power);
      }
      model.emplace(GpModel::fit(kernel, mean, X, y));
      if (acq.kind == AcquisitionKind::GLCB) igp.emplace(*model, acq.c, config.igp_bounds);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "surrogate fit failed at iteration " << t << ": " << e.what();
      throw RunError(msg.str(), trace);
    }

    const double psi_min = y.minCoeff();
    std::size_t clamped = 0;
    const BatchObjective objective = [&](const Design& Q) -> Eigen::VectorXd {
      const Eigen::MatrixXd cross = model->cross_covariance(Q);
      const BatchPrediction pred = model->predict_batch(Q, cross);
      Eigen::VectorXd scores(Q.rows());
      switch (acq.kind) {
        case AcquisitionKind::EI:
          for (Eigen::Index j = 0; j < Q.rows(); ++j) scores(j) = score_ei({pred.mu(j), pred.var(j)}, psi_min).value;
          break;
        case AcquisitionKind::LCB:
          for (Eigen::Index j = 0; j < Q.rows(); ++j) scores(j) = score_lcb({pred.mu(j), pred.var(j)}, acq.tau).value;
          break;
        case AcquisitionKind::GLCB: {
          const WidthBatch widths = igp->mean_width_batch(cross);
          clamped += widths.clamped;
          for (Eigen::Index j = 0; j < Q.rows(); ++j) {
            scores(j) = score_glcb({pred.mu(j), pred.var(j)}, widths.width(j), acq.tau, acq.rho).value;
          }
          break;
        }
      }
      return scores;
    };

    SearchResult proposal;
    try {
      proposal = focus_search(objective, unit, config.infill,
                              derive_seed(config.seed, Stream::Infill, static_cast<std::uint64_t>(t)));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "acquisition search failed at iteration " << t << ": " << e.what();
      throw RunError(msg.str(), trace);
    }

    Point u = proposal.point;
    bool perturbed = false;
    if (is_duplicate(X, n, u)) {
      std::mt19937_64 rng(derive_seed(config.seed, Stream::Perturbation, static_cast<std::uint64_t>(t)));
      std::uniform_real_distribution<double> jitter(-kPerturbRadius, kPerturbRadius);
      int attempts = 0;
      do {
        if (++attempts > kMaxPerturbAttempts) {
          throw RunError("could not move a duplicate proposal off the existing design", trace);
        }
        Point candidate = proposal.point;
        for (Eigen::Index d = 0; d < candidate.size(); ++d) candidate(d) += jitter(rng);
        u = candidate.cwiseMax(0.0).cwiseMin(1.0);
      } while (is_duplicate(X, n, u));
      perturbed = true;
    }

    U.row(n) = u.transpose();
    TraceRecord rec;
    rec.x = target.bounds.from_unit(view(u));
    rec.psi = evaluate_target(target, rec.x, trace);
    rec.acquisition_value = proposal.score;
    if (igp) rec.igp_case = igp->igp_case();
    rec.clamped = clamped;
    rec.perturbed = perturbed;
    append(trace, std::move(rec));
  }
  return trace;
}

}  // namespace

void RunConfig::validate() const {
  kernel.validate();
  acquisition.validate();
  infill.validate();
  if (n_init < 1) throw InvalidArgument("n_init must be at least 1");
  if (budget < n_init) throw InvalidArgument("budget must be at least n_init");
  if (fit_hyperparameters && hyperparameter_budget < 1) {
    throw InvalidArgument("hyperparameter_budget must be at least 1");
  }
}

const TraceRecord& OptimizationTrace::best() const {
  if (records.empty()) throw Error("empty trace has no best point");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].psi < records[best].psi) best = i;
  }
  return records[best];
}

std::vector<double> OptimizationTrace::incumbent_path() const {
  std::vector<double> path;
  for (std::size_t i = static_cast<std::size_t>(config.n_init); i < records.size(); ++i) {
    path.push_back(records[i].incumbent);
  }
  return path;
}

std::size_t OptimizationTrace::perturbed_count() const {
  std::size_t count = 0;
  for (const auto& r : records) count += r.perturbed ? 1 : 0;
  return count;
}

OptimizationTrace run_bo(const RunConfig& config, const TargetFunction& target) {
  if (config.acquisition.kind == AcquisitionKind::GLCB) {
    throw InvalidArgument("run_bo expects an EI or LCB acquisition; use run_probo for GLCB");
  }
  return run_loop(config, target);
}

OptimizationTrace run_probo(const RunConfig& config, const TargetFunction& target) {
  if (config.acquisition.kind != AcquisitionKind::GLCB) {
    throw InvalidArgument("run_probo expects a GLCB acquisition");
  }
  return run_loop(config, target);
}

OptimizationTrace run_optimization(const RunConfig& config, const TargetFunction& target) {
  return config.acquisition.kind == AcquisitionKind::GLCB ? run_probo(config, target) : run_bo(config, target);
}

Design initial_design(const RunConfig& config, const TargetFunction& target) {
  const std::size_t p = target.dimension();
  const Design unit = latin_hypercube(static_cast<std::size_t>(config.n_init), BoxBounds::unit(p),
                                      derive_seed(config.seed, Stream::InitialDesign));
  Design out(unit.rows(), unit.cols());
  for (Eigen::Index i = 0; i < unit.rows(); ++i) out.row(i) = target.bounds.from_unit(row_view(unit, i)).transpose();
  return out;
}

}  // namespace probo
