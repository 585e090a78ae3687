#pragma once

#include <probo/gp.hpp>

#include <string>
#include <string_view>

namespace probo {

enum class AcquisitionKind { EI, LCB, GLCB };

// Which acquisition function to optimize, and its weights.
//   LCB(x)  = mu - tau * sqrt(var)
//   GLCB(x) = mu - tau * sqrt(var) - rho * (upper(x) - lower(x))
// with upper/lower the imprecise-GP mean bounds at imprecision c. In the
// near-ignorance case the width is 2 c |1 - k_x^T s_k| / S_k, so rho and c
// act only through their product there; both remain separate knobs.
struct AcquisitionSpec {
  AcquisitionKind kind = AcquisitionKind::LCB;
  double tau = 1.0;
  double rho = 1.0;
  double c = 100.0;

  // "ei", "lcb", "lcb:tau=2", "glcb:tau=1,rho=1,c=100", and the short forms
  // "lcb-2", "glcb-<rho>-<c>" (tau = 1) and "glcb-<tau>-<rho>-<c>".
  static AcquisitionSpec parse(std::string_view text);

  void validate() const;

  // Canonical "kind:key=value" form; parse(to_string()) reproduces the spec.
  std::string to_string() const;

  // Filesystem-friendly short label, e.g. "ei", "lcb-1", "glcb-1-100".
  std::string label() const;

  bool operator==(const AcquisitionSpec& other) const;
};

// Scores follow one convention everywhere: lower is better.
struct AcquisitionScore {
  double value = 0.0;
};

double normal_pdf(double z);
double normal_cdf(double z);

// E[max(psi_min - Y, 0)] for Y ~ N(mu, var). Always >= 0.
double expected_improvement(const Prediction& pred, double psi_min);

AcquisitionScore score_lcb(const Prediction& pred, double tau);
// Negated expected improvement.
AcquisitionScore score_ei(const Prediction& pred, double psi_min);
AcquisitionScore score_glcb(const Prediction& pred, double width, double tau, double rho);

}  // namespace probo
