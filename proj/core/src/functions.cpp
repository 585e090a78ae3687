#include <probo/functions.hpp>

#include <probo/error.hpp>

#include <cmath>
#include <numbers>

namespace probo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

BoxBounds cube(std::size_t dim, double lo, double hi) {
  const auto p = static_cast<Eigen::Index>(dim);
  return BoxBounds(Point::Constant(p, lo), Point::Constant(p, hi));
}

double sphere(PointView x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// Shift for the 7-D sphere variant; optimum off-centre and off-diagonal.
const double kShift7[7] = {1.0, -1.5, 2.0, -0.5, 0.25, -2.5, 3.0};

double shifted_sphere7(PointView x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - kShift7[i]) * (x[i] - kShift7[i]);
  return s;
}

double ackley(PointView x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(kTwoPi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double rastrigin(PointView x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(kTwoPi * v);
  return s;
}

double rosenbrock(PointView x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double schwefel(PointView x) {
  double s = 418.9828872724338 * static_cast<double>(x.size());
  for (double v : x) s -= v * std::sin(std::sqrt(std::abs(v)));
  return s;
}

double gramacy_lee(PointView x) {
  const double v = x[0];
  return std::sin(10.0 * std::numbers::pi * v) / (2.0 * v) + std::pow(v - 1.0, 4);
}

// Sinusoid riding on a line: many local minima, the deepest at the far end
// of the domain where the line pulls the curve down.
double wiggly(PointView x) {
  const double v = x[0];
  return std::sin(3.0 * v) + 0.5 * std::sin(7.0 * v) - 0.15 * v;
}

TargetFunction make(std::string name, double (*f)(PointView), BoxBounds bounds, std::optional<Point> argmin) {
  TargetFunction t{std::move(name), f, std::move(bounds), std::nullopt, std::move(argmin)};
  if (t.known_minimizer) t.known_optimum = f(view(*t.known_minimizer));
  return t;
}

}  // namespace

std::vector<std::string> registry_names() {
  return {"sphere-1d",      "sphere-2d",     "sphere-3d",      "sphere-4d",     "sphere-5d",
          "sphere-6d",      "sphere-7d",     "shifted-sphere-7d", "ackley-2d",  "rastrigin-2d",
          "rosenbrock-3d",  "rosenbrock-4d", "schwefel-4d",    "gramacy-lee-1d", "wiggly-1d"};
}

TargetFunction registry_lookup(const std::string& name) {
  for (int d = 1; d <= 7; ++d) {
    if (name == "sphere-" + std::to_string(d) + "d") {
      return make(name, sphere, cube(static_cast<std::size_t>(d), -5.12, 5.12), Point::Zero(d));
    }
  }
  if (name == "shifted-sphere-7d") {
    return make(name, shifted_sphere7, cube(7, -5.0, 5.0), Eigen::Map<const Point>(kShift7, 7));
  }
  if (name == "ackley-2d") return make(name, ackley, cube(2, -32.768, 32.768), Point::Zero(2));
  if (name == "rastrigin-2d") return make(name, rastrigin, cube(2, -5.12, 5.12), Point::Zero(2));
  if (name == "rosenbrock-3d") return make(name, rosenbrock, cube(3, -5.0, 10.0), Point::Ones(3));
  if (name == "rosenbrock-4d") return make(name, rosenbrock, cube(4, -5.0, 10.0), Point::Ones(4));
  if (name == "schwefel-4d") return make(name, schwefel, cube(4, -500.0, 500.0), Point::Constant(4, 420.968746));
  if (name == "gramacy-lee-1d") {
    return make(name, gramacy_lee, cube(1, 0.5, 2.5), Point::Constant(1, 0.5485634437614734));
  }
  if (name == "wiggly-1d") {
    return make(name, wiggly, cube(1, 0.0, 10.0), Point::Constant(1, 7.858459864751457));
  }
  std::string known;
  for (const auto& n : registry_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidArgument("unknown function '" + name + "'; available: " + known);
}

}  // namespace probo
