#pragma once

#include <probo/types.hpp>

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <functional>

namespace probo {

// Axis-aligned search box, lower[i] < upper[i].
class BoxBounds {
 public:
  BoxBounds(Point lower, Point upper);

  static BoxBounds unit(std::size_t dim);

  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  std::size_t dimension() const { return static_cast<std::size_t>(lower_.size()); }
  Point width() const { return upper_ - lower_; }
  bool contains(PointView x) const;

  // Affine maps between the box and [0, 1]^p.
  Point to_unit(PointView x) const;
  Point from_unit(PointView u) const;

 private:
  Point lower_;
  Point upper_;
};

struct FocusSearchConfig {
  int evals_per_round = 1000;
  int rounds = 5;
  int restarts = 5;
  double shrink = 0.5;

  void validate() const;
  bool operator==(const FocusSearchConfig&) const = default;
};

struct SearchResult {
  Point point;
  double score = 0.0;
  std::size_t evaluations = 0;
};

// Scores every row of a design; lower is better. Non-finite scores are
// treated as "no information" and never win.
using BatchObjective = std::function<Eigen::VectorXd(const Design&)>;
using PointObjective = std::function<double(PointView)>;

BatchObjective batched(PointObjective f);

// McKay construction: per dimension an independent random permutation of the
// n strata, jittered uniformly inside each stratum.
Design latin_hypercube(std::size_t n, const BoxBounds& bounds, std::uint64_t seed);

// Random search that repeatedly recenters a shrinking box on the incumbent.
// Each restart starts from the full box; after every round each side of the
// box is multiplied by `shrink`, recentered on the restart's best point and
// clipped to the original bounds. Uses exactly
// restarts * rounds * evals_per_round objective evaluations.
SearchResult focus_search(const BatchObjective& objective, const BoxBounds& bounds,
                          const FocusSearchConfig& config, std::uint64_t seed);

// Uniform sampling; the first k points for a given seed do not depend on
// n_evals, so the best score is nonincreasing in n_evals.
SearchResult random_search(const BatchObjective& objective, const BoxBounds& bounds, std::size_t n_evals,
                           std::uint64_t seed);

// Full Cartesian grid including both endpoints per dimension. Ties go to the
// lexicographically smallest point. At most kMaxGridPoints points.
inline constexpr std::size_t kMaxGridPoints = 10'000'000;
SearchResult grid_search(const BatchObjective& objective, const BoxBounds& bounds, std::size_t points_per_dim);

}  // namespace probo
