#ifndef ZIC_MARGINS_HPP
#define ZIC_MARGINS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace zic {

// Margin of a zero-inflated continuous variable: an atom at zero of mass p
// plus a continuous distribution on (0, inf).  The positive part is either
// the analytic uniform(0,1) (simulation margins; all measures in this library
// are rank-based, so the choice is immaterial) or the empirical distribution
// of the observed positive values.
//
// Conventions:
//   cdf(0) = p, left_cdf(0) = 0, cdf is right-continuous, cdf(max value) = 1;
//   quantile(u) = 0 for u <= p, otherwise the left-continuous generalized
//   inverse of the positive part; for an empirical margin with k positive
//   points this is the ceil(k*v)-th order statistic, v = (u-p)/(1-p).
class ZeroInflatedMargin {
 public:
  static ZeroInflatedMargin uniform01(double zero_mass);
  // n_zeros / positives.size() fix the zero mass as an exact count ratio.
  static ZeroInflatedMargin empirical(std::size_t n_zeros, std::vector<double> positives);

  double zero_mass() const { return p_; }
  bool is_empirical() const { return !analytic_; }
  bool has_positive_part() const { return analytic_ || !positives_.empty(); }
  // Sorted ascending; empty for analytic margins.
  const std::vector<double>& positives() const { return positives_; }

  double cdf(double s) const;
  double left_cdf(double s) const;
  double quantile(double u) const;

 private:
  ZeroInflatedMargin() = default;
  double p_ = 0.0;
  bool analytic_ = true;
  std::size_t n_zeros_ = 0;
  std::vector<double> positives_;
};

// Finite sequence of nonnegative pairs; the universal estimator input.
// Stored column-wise.  Construction validates n >= 1 and that every
// coordinate is finite and nonnegative.
class PairedSample {
 public:
  PairedSample(std::vector<double> xs, std::vector<double> ys);

  std::size_t size() const { return xs_.size(); }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double x(std::size_t i) const { return xs_[i]; }
  double y(std::size_t i) const { return ys_[i]; }

  PairedSample swapped() const { return PairedSample(ys_, xs_); }

 private:
  std::vector<double> xs_, ys_;
};

// Relative frequencies of the four zero patterns, with the raw counts kept
// alongside so that downstream identities can be checked in exact arithmetic.
struct CellMasses {
  double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
  std::size_t c00 = 0, c01 = 0, c10 = 0, c11 = 0;
};

// Per-observation region assignment used by the concordance estimators.
// Two independent geometries share the struct:
//   - comonotone reference: x split at the p2-quantile of x into low/high;
//   - countermonotone reference: x split at the (1-p2)-quantile and y at
//     the (1-p1)-quantile, each into low (<= cut) and high (> cut).
// Thresholds are order statistics of the full coordinate samples (zeros
// included), computed in integer rank arithmetic.
struct RegionPartition {
  std::size_t n = 0;

  double x_cut_m = 0;             // x-quantile at level p2
  double x_cut_w = 0;             // x-quantile at level 1 - p2
  double y_cut_w = 0;             // y-quantile at level 1 - p1

  // Zone labels per observation: 0 = coordinate is zero, 1 = low, 2 = high.
  std::vector<std::uint8_t> x_zone_m;
  std::vector<std::uint8_t> x_zone_w;
  std::vector<std::uint8_t> y_zone_w;

  // Comonotone-side refinement of p11 and p10 by the x zone.
  double p11_m_low = 0, p11_m_high = 0, p10_m_low = 0, p10_m_high = 0;
  std::size_t n11_m_low = 0, n11_m_high = 0, n10_m_low = 0, n10_m_high = 0;

  // Countermonotone-side refinement of p11 by (x zone, y zone).
  double p11_low_low = 0, p11_low_high = 0, p11_high_low = 0, p11_high_high = 0;
  std::size_t n11_low_low = 0, n11_low_high = 0, n11_high_low = 0, n11_high_high = 0;

  // Marginal refinements (x zone only / y zone only) within the p11 cell.
  double p11_x_low = 0, p11_x_high = 0, p11_y_low = 0, p11_y_high = 0;
  std::size_t n11_x_low = 0, n11_x_high = 0, n11_y_low = 0, n11_y_high = 0;

  // Set when a requested cut falls inside the zero mass while the matching
  // region carries nonzero weight; reported, never fatal (zero-weight terms
  // contribute zero downstream).
  bool degenerate = false;
};

// Empirical margin of the values: p = (#zeros)/n, positive part = empirical
// distribution of the strictly positive values.
ZeroInflatedMargin fit_margin(std::span<const double> values);

CellMasses cell_masses(const PairedSample& s);

// p1_hat / p2_hat must come from the same sample (or at least be n-rational);
// the cuts are resolved to integer ranks before any value comparison.
RegionPartition partition_regions(const PairedSample& s, double p1_hat, double p2_hat);

}  // namespace zic

#endif  // ZIC_MARGINS_HPP
