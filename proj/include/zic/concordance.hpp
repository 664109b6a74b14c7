#ifndef ZIC_CONCORDANCE_HPP
#define ZIC_CONCORDANCE_HPP

#include <optional>

#include "zic/coupling.hpp"
#include "zic/margins.hpp"

namespace zic {

// Q estimate together with its Monte Carlo standard error as an estimator of
// the population concordance: the usual two-sample U-statistic variance with
// one projection per sample.
struct QWithError {
  double q = 0;
  double se = 0;
};

// Sample concordance function: mean of sign((x_i - x'_j)(y_i - y'_j)) over
// all cross pairs, ties contributing zero.  O(n*m); this is the oracle the
// plug-in estimators are validated against, so no rank tricks.
double brute_force_q(const PairedSample& a, const PairedSample& b);
QWithError brute_force_q_se(const PairedSample& a, const PairedSample& b);

// Q(J, J*) via the CDF-expectation representation
//   E[J*(X,Y)] + E[J*(X,Y-)] + E[J*(X-,Y)] + E[J*(X-,Y-)] - 1,
// with J* the reference copula coupled through the margins of J.
//
// Analytic form: J is a coupling of two zero-inflated margins with
// continuous positive parts; the integrals are evaluated exactly by
// piecewise Gauss-Legendre in copula scale (the integrands are piecewise
// quadratics).  alpha is only read for CouplingKind::frechet.
double q_expectation_analytic(CopulaKind reference, CouplingKind joint, double alpha,
                              double p1, double p2);

// Empirical form: J is the empirical law of s, J* the reference copula
// through the empirical margins of s.  Exact (no sampling).
double q_expectation_empirical(CopulaKind reference, const PairedSample& s);

// Conditional exceedance probabilities between a sample and a reference
// pair law.  A value is absent whenever its conditioning event is empty on
// either side; downstream weights vanish with it.
struct ConditionalPi {
  std::optional<double> pi1;  // P(x over C11 exceeds X* | X*>0, Y*>0)
  std::optional<double> pi2;  // P(y over C11 exceeds Y* | X*>0, Y*>0)
  std::optional<double> pi3;  // P(y over C11 exceeds Y* | X*=0, Y*>0)
  std::optional<double> pi4;  // P(x over C11 exceeds X* | X*>0, Y*=0)
  std::optional<double> pi5;  // P(X* | X*>0, Y*=0 exceeds x over C10)
  std::optional<double> pi6;  // P(Y* | X*=0, Y*>0 exceeds y over C01)
};

// Reference law for the starred pair: one of the singular couplings of the
// sample's margins, independence, or a second independent draw of the data
// law itself (empirical conditional CDFs).
enum class ReferenceTag { upper_fh, lower_fh, independence, data };

// Exceedance probabilities are computed exactly under the discrete reference
// law induced by the empirical margins: P(x > X*) uses strict counts (the
// left-continuous empirical CDF), P(X* > x) the complementary one.
ConditionalPi estimate_pis(const PairedSample& s, ReferenceTag tag, double p1_hat,
                           double p2_hat);

}  // namespace zic

#endif  // ZIC_CONCORDANCE_HPP
