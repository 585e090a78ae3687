#include <probo/optimizer.hpp>

#include <probo/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

namespace probo {

BoxBounds::BoxBounds(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) throw DimensionError("box bounds: lower and upper differ in dimension");
  if (lower_.size() == 0) throw InvalidArgument("box bounds need at least one dimension");
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_(i)) || !std::isfinite(upper_(i)) || !(lower_(i) < upper_(i))) {
      std::ostringstream msg;
      msg << "box bounds: need finite lower < upper in dimension " << i << ", got [" << lower_(i) << ", "
          << upper_(i) << "]";
      throw InvalidArgument(msg.str());
    }
  }
}

BoxBounds BoxBounds::unit(std::size_t dim) {
  const auto p = static_cast<Eigen::Index>(dim);
  return BoxBounds(Point::Zero(p), Point::Ones(p));
}

bool BoxBounds::contains(PointView x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    if (!(x[i] >= lower_(j) && x[i] <= upper_(j))) return false;
  }
  return true;
}

Point BoxBounds::to_unit(PointView x) const {
  return ((to_point(x) - lower_).array() / (upper_ - lower_).array()).matrix();
}

Point BoxBounds::from_unit(PointView u) const {
  Point x = lower_ + ((upper_ - lower_).array() * to_point(u).array()).matrix();
  // Guard against rounding pushing x a hair outside the box.
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

void FocusSearchConfig::validate() const {
  if (evals_per_round < 1 || rounds < 1 || restarts < 1) {
    throw InvalidArgument("focus search needs positive evals_per_round, rounds and restarts");
  }
  if (!(shrink > 0.0 && shrink < 1.0)) throw InvalidArgument("focus search shrink factor must lie in (0, 1)");
}

BatchObjective batched(PointObjective f) {
  return [f = std::move(f)](const Design& Q) {
    Eigen::VectorXd out(Q.rows());
    for (Eigen::Index i = 0; i < Q.rows(); ++i) out(i) = f(row_view(Q, i));
    return out;
  };
}

namespace {

// Running argmin with first-encountered tie-breaking.
struct Incumbent {
  Point point;
  double score = std::numeric_limits<double>::infinity();
  bool found = false;

  void offer(const Design& Q, const Eigen::VectorXd& scores) {
    for (Eigen::Index i = 0; i < Q.rows(); ++i) {
      const double s = scores(i);
      if (!std::isfinite(s)) continue;
      if (!found || s < score) {
        score = s;
        point = Q.row(i).transpose();
        found = true;
      }
    }
  }
};

Eigen::VectorXd evaluate(const BatchObjective& objective, const Design& Q) {
  Eigen::VectorXd scores = objective(Q);
  if (scores.size() != Q.rows()) throw DimensionError("objective returned the wrong number of scores");
  return scores;
}

void sample_uniform(Design& Q, const Point& lo, const Point& hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Eigen::Index i = 0; i < Q.rows(); ++i) {
    for (Eigen::Index d = 0; d < Q.cols(); ++d) {
      Q(i, d) = std::min(hi(d), lo(d) + (hi(d) - lo(d)) * unit(rng));
    }
  }
}

SearchResult finish(const Incumbent& inc, std::size_t evaluations, const char* who) {
  if (!inc.found) {
    throw Error(std::string(who) + ": objective was non-finite at every evaluated point");
  }
  return {inc.point, inc.score, evaluations};
}

}  // namespace

Design latin_hypercube(std::size_t n, const BoxBounds& bounds, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("latin hypercube needs n >= 1");
  const auto p = static_cast<Eigen::Index>(bounds.dimension());
  const auto rows = static_cast<Eigen::Index>(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Design D(rows, p);
  std::vector<std::size_t> perm(n);
  for (Eigen::Index d = 0; d < p; ++d) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const double lo = bounds.lower()(d);
    const double w = bounds.upper()(d) - lo;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double u = (static_cast<double>(perm[static_cast<std::size_t>(i)]) + unit(rng)) / static_cast<double>(n);
      D(i, d) = std::min(lo + w * u, bounds.upper()(d));
    }
  }
  return D;
}

SearchResult focus_search(const BatchObjective& objective, const BoxBounds& bounds,
                          const FocusSearchConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  const auto p = static_cast<Eigen::Index>(bounds.dimension());
  Design Q(config.evals_per_round, p);
  Incumbent global;
  std::size_t evaluations = 0;

  for (int restart = 0; restart < config.restarts; ++restart) {
    Point lo = bounds.lower();
    Point hi = bounds.upper();
    Incumbent local;
    for (int round = 0; round < config.rounds; ++round) {
      sample_uniform(Q, lo, hi, rng);
      local.offer(Q, evaluate(objective, Q));
      evaluations += static_cast<std::size_t>(Q.rows());
      if (!local.found) continue;
      const Point half = 0.5 * config.shrink * (hi - lo);
      lo = (local.point - half).cwiseMax(bounds.lower());
      hi = (local.point + half).cwiseMin(bounds.upper());
    }
    if (local.found && (!global.found || local.score < global.score)) global = local;
  }
  return finish(global, evaluations, "focus search");
}

SearchResult random_search(const BatchObjective& objective, const BoxBounds& bounds, std::size_t n_evals,
                           std::uint64_t seed) {
  if (n_evals < 1) throw InvalidArgument("random search needs at least one evaluation");
  constexpr std::size_t kChunk = 1024;
  std::mt19937_64 rng(seed);
  const auto p = static_cast<Eigen::Index>(bounds.dimension());
  Incumbent inc;
  for (std::size_t done = 0; done < n_evals;) {
    const std::size_t m = std::min(kChunk, n_evals - done);
    Design Q(static_cast<Eigen::Index>(m), p);
    sample_uniform(Q, bounds.lower(), bounds.upper(), rng);
    inc.offer(Q, evaluate(objective, Q));
    done += m;
  }
  return finish(inc, n_evals, "random search");
}

SearchResult grid_search(const BatchObjective& objective, const BoxBounds& bounds, std::size_t points_per_dim) {
  if (points_per_dim < 2) throw InvalidArgument("grid search needs at least 2 points per dimension");
  const std::size_t p = bounds.dimension();
  double total = 1.0;
  for (std::size_t d = 0; d < p; ++d) total *= static_cast<double>(points_per_dim);
  if (total > static_cast<double>(kMaxGridPoints)) {
    std::ostringstream msg;
    msg << "grid search with " << points_per_dim << "^" << p << " points exceeds the cap of " << kMaxGridPoints;
    throw InvalidArgument(msg.str());
  }
  const auto count = static_cast<std::size_t>(total);

  // Odometer over grid indices with the first dimension varying slowest, so
  // iteration order is lexicographic order of the points.
  auto coordinate = [&](std::size_t d, std::size_t k) {
    const auto j = static_cast<Eigen::Index>(d);
    if (k + 1 == points_per_dim) return bounds.upper()(j);
    return bounds.lower()(j) + (bounds.upper()(j) - bounds.lower()(j)) * static_cast<double>(k) /
                                   static_cast<double>(points_per_dim - 1);
  };
  constexpr std::size_t kChunk = 4096;
  std::vector<std::size_t> idx(p, 0);
  Incumbent inc;
  for (std::size_t done = 0; done < count;) {
    const std::size_t m = std::min(kChunk, count - done);
    Design Q(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(p));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t d = 0; d < p; ++d) Q(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d)) = coordinate(d, idx[d]);
      for (std::size_t d = p; d-- > 0;) {
        if (++idx[d] < points_per_dim) break;
        idx[d] = 0;
      }
    }
    inc.offer(Q, evaluate(objective, Q));
    done += m;
  }
  return finish(inc, count, "grid search");
}

}  // namespace probo
