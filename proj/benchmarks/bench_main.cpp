#include <probo/acquisition.hpp>
#include <probo/engine.hpp>
#include <probo/functions.hpp>
#include <probo/gp.hpp>
#include <probo/igp.hpp>
#include <probo/kernel.hpp>
#include <probo/optimizer.hpp>

#include <benchmark/benchmark.h>

#include <algorithm>

namespace {

using namespace probo;

Design unit_design(std::size_t n, std::size_t dim) { return latin_hypercube(n, BoxBounds::unit(dim), 42); }

Eigen::VectorXd sphere_targets(const Design& X) {
  return X.rowwise().squaredNorm();
}

const KernelSpec kMatern{KernelFamily::Matern52, {0.2}, 1.0, 2.0};

void BM_BaseKernelMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Design X = unit_design(n, 3);
  const KernelSpec k = kMatern.with_dimension(3);
  for (auto _ : state) benchmark::DoNotOptimize(BaseKernelMatrix(k, X).jitter());
}
BENCHMARK(BM_BaseKernelMatrix)->Arg(10)->Arg(30)->Arg(90);

// One infill round's worth of batch predictions at n design points.
void BM_PredictBatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Design X = unit_design(n, 2);
  const GpModel m = GpModel::fit(kMatern.with_dimension(2), {}, X, sphere_targets(X));
  const Design Q = unit_design(1000, 2);
  for (auto _ : state) benchmark::DoNotOptimize(m.predict_batch(Q).mu.sum());
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_PredictBatch)->Arg(10)->Arg(30)->Arg(90);

void BM_GlcbBatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Design X = unit_design(n, 2);
  const GpModel m = GpModel::fit(kMatern.with_dimension(2), {}, X, sphere_targets(X));
  const ImpreciseGp igp(m, 100.0);
  const Design Q = unit_design(1000, 2);
  for (auto _ : state) {
    const Eigen::MatrixXd cross = m.cross_covariance(Q);
    const BatchPrediction p = m.predict_batch(Q, cross);
    const WidthBatch w = igp.mean_width_batch(cross);
    double best = 0.0;
    for (Eigen::Index j = 0; j < Q.rows(); ++j) {
      best = std::min(best, score_glcb({p.mu(j), p.var(j)}, w.width(j), 1.0, 1.0).value);
    }
    benchmark::DoNotOptimize(best);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_GlcbBatch)->Arg(10)->Arg(90);

void BM_FocusSearchDefaults(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto f = batched([](PointView x) {
    double s = 0.0;
    for (double v : x) s += (v - 0.3) * (v - 0.3);
    return s;
  });
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(focus_search(f, BoxBounds::unit(dim), {}, ++seed).score);
}
BENCHMARK(BM_FocusSearchDefaults)->Arg(1)->Arg(4);

// A short complete run: 10-point design plus 5 BO iterations with default infill.
void BM_BoRun(benchmark::State& state) {
  const TargetFunction f = registry_lookup("wiggly-1d");
  RunConfig c;
  c.acquisition = state.range(0) ? AcquisitionSpec::parse("glcb-1-100") : AcquisitionSpec::parse("lcb");
  c.budget = 15;
  for (auto _ : state) benchmark::DoNotOptimize(run_optimization(c, f).best().psi);
  state.SetLabel(state.range(0) ? "glcb" : "lcb");
}
BENCHMARK(BM_BoRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
