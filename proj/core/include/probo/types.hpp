#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>

namespace probo {

using Point = Eigen::VectorXd;

// Design matrices store one point per row. Row-major so that each row is a
// contiguous PointView.
using Design = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using PointView = std::span<const double>;

inline PointView view(const Point& p) {
  return {p.data(), static_cast<std::size_t>(p.size())};
}

inline PointView row_view(const Design& X, Eigen::Index i) {
  return {X.data() + i * X.cols(), static_cast<std::size_t>(X.cols())};
}

inline Point to_point(PointView v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace probo
