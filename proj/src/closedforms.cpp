#include "zic/closedforms.hpp"

#include <algorithm>
#include <cmath>

#include "zic/errors.hpp"

namespace zic {

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

std::pair<double, double> rho_bounds(double p1, double p2) {
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  if (p1 == 1.0 || p2 == 1.0) return {0.0, 0.0};
  const double m3 = std::max(p1 * p1 * p1, p2 * p2 * p2);
  const double hi = 1.0 - m3;
  const double lo = (p1 + p2 <= 1.0) ? p1 * p1 * p1 + p2 * p2 * p2 - 1.0
                                     : -3.0 * ((1.0 - p1) * (1.0 - p2));
  return {lo, hi};
}

std::pair<double, double> gamma_bounds(double p1, double p2) {
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  if (p1 == 1.0 || p2 == 1.0) return {0.0, 0.0};
  const double m = std::max(p1, p2);
  const double l = std::min(p1, p2);
  double hi, lo;
  if (p1 + p2 <= 1.0) {
    const double s = 1.0 - (p1 + p2);
    hi = 1.0 - m * m - l * l * l / 3.0;
    lo = s * s - 2.0 * ((1.0 - p1) * (1.0 - p2)) - l * l * l / 3.0;
  } else {
    hi = 2.0 / 3.0 + m * (3.0 - 6.0 * m + m * m) / 3.0;
    lo = (p1 + p2 + l - 2.0) * (1.0 - m) - (1.0 - m * m * m) / 3.0;
  }
  return {lo, hi};
}

std::pair<double, double> phi_bounds(double p1, double p2) {
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  if (p1 == 1.0 || p2 == 1.0) return {0.0, 0.0};
  const double m = std::max(p1, p2);
  const double m3 = m * m * m;
  const double hi = 1.0 - 1.5 * m * m + 0.5 * m3;
  const double lo = 1.5 * std::max(0.0, p1 + p2 - 1.0) * (1.0 - m) - 0.5 * (1.0 - m3);
  return {lo, hi};
}

BoundsSet bounds_set(double p1, double p2) {
  BoundsSet b;
  std::tie(b.gamma_min, b.gamma_max) = gamma_bounds(p1, p2);
  std::tie(b.phi_min, b.phi_max) = phi_bounds(p1, p2);
  std::tie(b.rho_min, b.rho_max) = rho_bounds(p1, p2);
  return b;
}

QConstants q_constants(double p1, double p2) {
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  QConstants q;
  const double m = std::max(p1, p2);
  q.q_mm = 1.0 - m * m;
  const double s = std::max(0.0, 1.0 - (p1 + p2));
  q.q_ww = s * s - 2.0 * ((1.0 - p1) * (1.0 - p2));
  q.q_wm = (p1 + p2 <= 1.0) ? 0.0 : (p1 + p2 - 1.0) * (1.0 - m);
  const auto [rlo, rhi] = rho_bounds(p1, p2);
  q.q_pi_m = rhi / 3.0;
  q.q_pi_w = rlo / 3.0;
  return q;
}

TrueMeasures frechet_truth(double alpha, double p1, double p2) {
  check_prob(alpha, "alpha");
  const BoundsSet b = bounds_set(p1, p2);
  return {alpha * b.gamma_max, alpha * b.phi_max, alpha * b.rho_max};
}

}  // namespace zic
