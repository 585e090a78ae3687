#include <probo/tabulated.hpp>

#include <probo/csv.hpp>
#include <probo/error.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>

namespace probo {

TabulatedTarget::TabulatedTarget(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw InvalidArgument("tabulated target: x and y differ in length");
  if (x.size() < 2) throw InvalidArgument("tabulated target needs at least 2 rows");
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  for (std::size_t i : order) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw InvalidArgument("tabulated target: non-finite value");
    x_.push_back(x[i]);
    y_.push_back(y[i]);
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) {
      std::ostringstream msg;
      msg << "tabulated target: duplicate x value " << x_[i];
      throw InvalidArgument(msg.str());
    }
  }
}

double TabulatedTarget::evaluate(double x) const {
  if (!(x >= x_.front() && x <= x_.back())) {
    std::ostringstream msg;
    msg << "tabulated target evaluated at " << x << ", outside [" << x_.front() << ", " << x_.back() << "]";
    throw InvalidArgument(msg.str());
  }
  if (x == x_.back()) return y_.back();
  // First knot strictly greater than x; the segment is [hi - 1, hi].
  const auto hi = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - x_[lo]) / (x_[hi] - x_[lo]);
  return y_[lo] + t * (y_[hi] - y_[lo]);
}

double TabulatedTarget::y_min() const { return *std::min_element(y_.begin(), y_.end()); }
double TabulatedTarget::y_max() const { return *std::max_element(y_.begin(), y_.end()); }

TargetFunction TabulatedTarget::as_target(std::string name, bool maximize) const {
  auto table = std::make_shared<const TabulatedTarget>(*this);
  const double sign = maximize ? -1.0 : 1.0;
  TargetFunction t{std::move(name),
                   [table, sign](PointView x) { return sign * table->evaluate(x[0]); },
                   BoxBounds(Point::Constant(1, x_min()), Point::Constant(1, x_max())),
                   std::nullopt,
                   std::nullopt};
  const auto best = maximize ? std::max_element(y_.begin(), y_.end()) : std::min_element(y_.begin(), y_.end());
  t.known_optimum = sign * *best;
  t.known_minimizer = Point::Constant(1, x_[static_cast<std::size_t>(best - y_.begin())]);
  return t;
}

namespace {

bool is_number(const std::string& cell) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  const auto res = std::from_chars(cell.data(), end, v);
  return !cell.empty() && res.ec == std::errc() && res.ptr == end;
}

}  // namespace

TabulatedTarget parse_tabulated(std::istream& in, const std::string& source) {
  CsvTable table = read_csv(in, /*has_header=*/false);
  if (table.rows.empty()) throw InvalidArgument(source + ": empty CSV");

  std::size_t xi = 0;
  std::size_t yi = 1;
  std::size_t width = table.rows.front().size();
  const bool header = std::none_of(table.rows.front().begin(), table.rows.front().end(), is_number);
  if (header) {
    table.header = table.rows.front();
    table.rows.erase(table.rows.begin());
    xi = table.column("x");
    yi = table.column("y");
  }
  if (width < 2) throw InvalidArgument(source + ": need two columns x and y");

  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = source + " row " + std::to_string(r + (header ? 2 : 1));
    if (row.size() != width) throw InvalidArgument(where + ": expected " + std::to_string(width) + " cells");
    x.push_back(parse_csv_number(row[xi], where));
    y.push_back(parse_csv_number(row[yi], where));
  }
  if (x.size() < 2) throw InvalidArgument(source + ": need at least 2 data rows");
  return TabulatedTarget(std::move(x), std::move(y));
}

TabulatedTarget read_tabulated(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw InvalidArgument("cannot open CSV file '" + csv_path + "'");
  return parse_tabulated(in, csv_path);
}

TargetFunction load_tabulated_target(const std::string& csv_path, bool maximize) {
  return read_tabulated(csv_path).as_target(csv_path, maximize);
}

}  // namespace probo
