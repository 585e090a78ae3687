#pragma once

#include <probo/engine.hpp>

#include <istream>
#include <string>
#include <vector>

namespace probo {

// Samples (x, y) of a one-dimensional empirical target, sorted by x, with
// piecewise-linear interpolation between knots. Evaluating outside
// [min x, max x] is an error.
class TabulatedTarget {
 public:
  TabulatedTarget(std::vector<double> x, std::vector<double> y);

  double evaluate(double x) const;

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  double y_min() const;
  double y_max() const;

  // Wraps the interpolant as a minimization target; with `maximize` the
  // values are negated so the engine can stay minimization-only.
  TargetFunction as_target(std::string name, bool maximize = false) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

// Two numeric columns. A header row is optional; when present the columns
// named "x" and "y" are used, otherwise the first two columns.
TabulatedTarget parse_tabulated(std::istream& in, const std::string& source = "<stream>");
TabulatedTarget read_tabulated(const std::string& csv_path);

TargetFunction load_tabulated_target(const std::string& csv_path, bool maximize = false);

}  // namespace probo
