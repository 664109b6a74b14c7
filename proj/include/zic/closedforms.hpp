#ifndef ZIC_CLOSEDFORMS_HPP
#define ZIC_CLOSEDFORMS_HPP

#include <utility>

namespace zic {

// Sharp attainable range of each measure given the zero masses (p1, p2).
struct BoundsSet {
  double gamma_min = 0, gamma_max = 0;
  double phi_min = 0, phi_max = 0;
  double rho_min = 0, rho_max = 0;
};

// Concordance-function values between the reference couplings of a pair of
// zero-inflated margins: comonotone (m), countermonotone (w), independent.
// q_pi_m and q_pi_w equal one third of the attainable rho bounds.
struct QConstants {
  double q_mm = 0;    // comonotone vs comonotone
  double q_ww = 0;    // countermonotone vs countermonotone
  double q_wm = 0;    // countermonotone vs comonotone
  double q_pi_m = 0;  // independent vs comonotone
  double q_pi_w = 0;  // independent vs countermonotone
};

struct TrueMeasures {
  double gamma = 0, phi = 0, rho = 0;
};

// All functions below validate p1, p2 (and alpha) in [0, 1] and throw
// InvalidInput otherwise.  At p1 + p2 == 1 the <=-branch formulas are used;
// both branches agree there.  Any margin with p == 1 gives all-zero output.
std::pair<double, double> rho_bounds(double p1, double p2);
std::pair<double, double> gamma_bounds(double p1, double p2);
std::pair<double, double> phi_bounds(double p1, double p2);
BoundsSet bounds_set(double p1, double p2);

QConstants q_constants(double p1, double p2);

// Population values of the three measures under the Frechet copula
// (1-alpha)*uv + alpha*min(u,v): each measure equals alpha times its upper
// bound, by linearity of the concordance function in its first argument.
TrueMeasures frechet_truth(double alpha, double p1, double p2);

}  // namespace zic

#endif  // ZIC_CLOSEDFORMS_HPP
