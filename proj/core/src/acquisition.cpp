#include <probo/acquisition.hpp>

#include <probo/error.hpp>
#include <probo/format.hpp>

#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace probo {

namespace {

double parse_double(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw InvalidArgument("acquisition '" + std::string(context) + "': '" + std::string(text) +
                          "' is not a number");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Splits "glcb-1-1e-3" into {"glcb", "1", "1e-3"}: a dash after an exponent
// marker belongs to the number.
std::vector<std::string_view> split_dashes(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '-') continue;
    if (i > start && (text[i - 1] == 'e' || text[i - 1] == 'E') && i - 1 > start) continue;
    parts.push_back(text.substr(start, i - start));
    start = i + 1;
  }
  parts.push_back(text.substr(start));
  return parts;
}

AcquisitionKind parse_kind(std::string_view name, std::string_view context) {
  if (name == "ei") return AcquisitionKind::EI;
  if (name == "lcb") return AcquisitionKind::LCB;
  if (name == "glcb") return AcquisitionKind::GLCB;
  throw InvalidArgument("unknown acquisition '" + std::string(context) + "' (expected ei, lcb or glcb)");
}

}  // namespace

AcquisitionSpec AcquisitionSpec::parse(std::string_view text) {
  AcquisitionSpec spec;
  const std::size_t colon = text.find(':');
  if (colon != std::string_view::npos) {
    spec.kind = parse_kind(text.substr(0, colon), text);
    for (std::string_view kv : split(text.substr(colon + 1), ',')) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string_view::npos) throw InvalidArgument("acquisition '" + std::string(text) + "': expected key=value");
      const std::string_view key = kv.substr(0, eq);
      const double value = parse_double(kv.substr(eq + 1), text);
      if (key == "tau" && spec.kind != AcquisitionKind::EI) {
        spec.tau = value;
      } else if (key == "rho" && spec.kind == AcquisitionKind::GLCB) {
        spec.rho = value;
      } else if (key == "c" && spec.kind == AcquisitionKind::GLCB) {
        spec.c = value;
      } else {
        throw InvalidArgument("acquisition '" + std::string(text) + "': unexpected parameter '" + std::string(key) + "'");
      }
    }
  } else {
    const std::vector<std::string_view> parts = split_dashes(text);
    spec.kind = parse_kind(parts.front(), text);
    std::vector<double> nums;
    for (std::size_t i = 1; i < parts.size(); ++i) nums.push_back(parse_double(parts[i], text));
    switch (spec.kind) {
      case AcquisitionKind::EI:
        if (!nums.empty()) throw InvalidArgument("acquisition 'ei' takes no parameters");
        break;
      case AcquisitionKind::LCB:
        if (nums.size() > 1) throw InvalidArgument("acquisition '" + std::string(text) + "': expected lcb-<tau>");
        if (nums.size() == 1) spec.tau = nums[0];
        break;
      case AcquisitionKind::GLCB:
        if (nums.size() == 2) {
          spec.rho = nums[0];
          spec.c = nums[1];
        } else if (nums.size() == 3) {
          spec.tau = nums[0];
          spec.rho = nums[1];
          spec.c = nums[2];
        } else if (!nums.empty()) {
          throw InvalidArgument("acquisition '" + std::string(text) +
                                "': expected glcb-<rho>-<c> or glcb-<tau>-<rho>-<c>");
        }
        break;
    }
  }
  spec.validate();
  return spec;
}

void AcquisitionSpec::validate() const {
  if (kind == AcquisitionKind::EI) return;
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("acquisition tau must be nonnegative");
  if (kind == AcquisitionKind::GLCB) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidArgument("acquisition rho must be nonnegative");
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("acquisition c must be positive");
  }
}

std::string AcquisitionSpec::to_string() const {
  switch (kind) {
    case AcquisitionKind::EI: return "ei";
    case AcquisitionKind::LCB: return "lcb:tau=" + format_number(tau);
    case AcquisitionKind::GLCB:
      return "glcb:tau=" + format_number(tau) + ",rho=" + format_number(rho) + ",c=" + format_number(c);
  }
  return {};
}

std::string AcquisitionSpec::label() const {
  switch (kind) {
    case AcquisitionKind::EI: return "ei";
    case AcquisitionKind::LCB: return "lcb-" + format_number(tau);
    case AcquisitionKind::GLCB:
      if (tau == 1.0) return "glcb-" + format_number(rho) + "-" + format_number(c);
      return "glcb-" + format_number(tau) + "-" + format_number(rho) + "-" + format_number(c);
  }
  return {};
}

bool AcquisitionSpec::operator==(const AcquisitionSpec& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case AcquisitionKind::EI: return true;
    case AcquisitionKind::LCB: return tau == other.tau;
    case AcquisitionKind::GLCB: return tau == other.tau && rho == other.rho && c == other.c;
  }
  return false;
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) {
  // erfc keeps full relative accuracy in the lower tail.
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double expected_improvement(const Prediction& pred, double psi_min) {
  const double diff = psi_min - pred.mu;
  const double sd = std::sqrt(std::max(pred.var, 0.0));
  if (sd == 0.0) return std::max(diff, 0.0);
  const double z = diff / sd;
  return std::max(diff * normal_cdf(z) + sd * normal_pdf(z), 0.0);
}

AcquisitionScore score_lcb(const Prediction& pred, double tau) {
  return {pred.mu - tau * std::sqrt(std::max(pred.var, 0.0))};
}

AcquisitionScore score_ei(const Prediction& pred, double psi_min) {
  return {-expected_improvement(pred, psi_min)};
}

AcquisitionScore score_glcb(const Prediction& pred, double width, double tau, double rho) {
  // Same expression as score_lcb before the imprecision term so rho = 0 is
  // bit-identical to LCB.
  return {score_lcb(pred, tau).value - rho * width};
}

}  // namespace probo
