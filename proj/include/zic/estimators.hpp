#ifndef ZIC_ESTIMATORS_HPP
#define ZIC_ESTIMATORS_HPP

#include <cstdint>
#include <optional>

#include "zic/closedforms.hpp"
#include "zic/margins.hpp"

namespace zic {

// Full plug-in estimation result for one sample.
struct ConcordanceReport {
  double gamma_hat = 0;
  double phi_hat = 0;
  double rho_hat = 0;
  double q_upper_hat = 0;  // concordance vs the comonotone coupling of the margins
  double q_lower_hat = 0;  // concordance vs the countermonotone coupling

  BoundsSet bounds;  // attainable ranges evaluated at (p1_hat, p2_hat)
  CellMasses cells;
  double p1_hat = 0, p2_hat = 0;
  std::size_t n = 0;

  // Seed used to break positive ties upstream, when ingestion jittered.
  std::optional<std::uint64_t> tie_seed;

  // An estimate fell outside its own plug-in bounds (reported, not clamped).
  bool exceeds_bounds = false;
  // A conditional term with nonzero weight had too few observations and was
  // evaluated as zero.
  bool sparse_cells = false;
};

// Plug-in concordance of the sample law against the comonotone coupling of
// its margins.  Swap-symmetric; coordinates are swapped internally so the
// x margin carries the smaller zero mass.
double estimate_q_upper(const PairedSample& s);

// Same against the countermonotone coupling; branches on p1_hat + p2_hat
// (<= 1 at equality, both forms agree there).
double estimate_q_lower(const PairedSample& s);

// Spearman's rho adjusted for zero inflation: rank-based Spearman away from
// zero, combined with the mixed-cell and zero-cell comparison terms.
// Reduces exactly to classical Spearman when the sample has no zeros.
double estimate_rho(const PairedSample& s);

ConcordanceReport estimate_measures(const PairedSample& s);

// Closed-form attainable bounds evaluated at the sample zero proportions.
BoundsSet estimate_bounds(const PairedSample& s);

}  // namespace zic

#endif  // ZIC_ESTIMATORS_HPP
