#include "zic/margins.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zic/errors.hpp"

namespace zic {

namespace {

bool valid_coordinate(double v) { return std::isfinite(v) && v >= 0.0; }

// ceil(n*u) as an integer rank, snapped so that n-rational u (the only levels
// used by the estimators) never drifts across an integer from rounding.
std::size_t ceil_rank(double u, std::size_t n) {
  double t = u * static_cast<double>(n);
  double c = std::ceil(t - 1e-9);
  if (c < 0.0) c = 0.0;
  std::size_t r = static_cast<std::size_t>(c);
  return r > n ? n : r;
}

}  // namespace

ZeroInflatedMargin ZeroInflatedMargin::uniform01(double zero_mass) {
  if (!(zero_mass >= 0.0 && zero_mass <= 1.0))
    throw InvalidInput("zero mass must lie in [0, 1]");
  ZeroInflatedMargin m;
  m.p_ = zero_mass;
  m.analytic_ = true;
  return m;
}

ZeroInflatedMargin ZeroInflatedMargin::empirical(std::size_t n_zeros,
                                                 std::vector<double> positives) {
  if (n_zeros + positives.size() == 0) throw InvalidInput("empirical margin needs data");
  for (double v : positives)
    if (!std::isfinite(v) || v <= 0.0)
      throw InvalidInput("positive part must contain finite values > 0");
  ZeroInflatedMargin m;
  m.analytic_ = false;
  m.n_zeros_ = n_zeros;
  m.positives_ = std::move(positives);
  std::sort(m.positives_.begin(), m.positives_.end());
  m.p_ = static_cast<double>(n_zeros) /
         static_cast<double>(n_zeros + m.positives_.size());
  return m;
}

double ZeroInflatedMargin::cdf(double s) const {
  if (!(s >= 0.0)) throw InvalidInput("cdf argument must be >= 0");
  if (s == 0.0) return p_;
  if (analytic_) return p_ + (1.0 - p_) * std::min(s, 1.0);
  const std::size_t n = n_zeros_ + positives_.size();
  const auto below = std::upper_bound(positives_.begin(), positives_.end(), s);
  const std::size_t c = static_cast<std::size_t>(below - positives_.begin());
  return static_cast<double>(n_zeros_ + c) / static_cast<double>(n);
}

double ZeroInflatedMargin::left_cdf(double s) const {
  if (!(s >= 0.0)) throw InvalidInput("left_cdf argument must be >= 0");
  if (s == 0.0) return 0.0;
  if (analytic_) return p_ + (1.0 - p_) * std::min(s, 1.0);
  const std::size_t n = n_zeros_ + positives_.size();
  const auto below = std::lower_bound(positives_.begin(), positives_.end(), s);
  const std::size_t c = static_cast<std::size_t>(below - positives_.begin());
  return static_cast<double>(n_zeros_ + c) / static_cast<double>(n);
}

double ZeroInflatedMargin::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidInput("quantile level must lie in [0, 1]");
  if (u <= p_) return 0.0;
  const double v = (u - p_) / (1.0 - p_);
  if (analytic_) return v;
  if (positives_.empty())
    throw DegenerateMargin("quantile above the zero mass of a margin with no positive part");
  const std::size_t k = positives_.size();
  std::size_t idx = ceil_rank(v, k);
  if (idx == 0) idx = 1;
  return positives_[idx - 1];
}

PairedSample::PairedSample(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) throw InvalidInput("coordinate columns differ in length");
  if (xs_.empty()) throw InvalidInput("sample must contain at least one pair");
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (!valid_coordinate(xs_[i]) || !valid_coordinate(ys_[i]))
      throw InvalidInput("sample coordinates must be finite and >= 0 (pair " +
                         std::to_string(i) + ")");
}

ZeroInflatedMargin fit_margin(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("cannot fit a margin to an empty sequence");
  std::size_t zeros = 0;
  std::vector<double> positives;
  positives.reserve(values.size());
  for (double v : values) {
    if (!valid_coordinate(v)) throw InvalidInput("margin values must be finite and >= 0");
    if (v == 0.0)
      ++zeros;
    else
      positives.push_back(v);
  }
  return ZeroInflatedMargin::empirical(zeros, std::move(positives));
}

CellMasses cell_masses(const PairedSample& s) {
  CellMasses m;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool xpos = s.x(i) > 0.0, ypos = s.y(i) > 0.0;
    if (xpos && ypos)
      ++m.c11;
    else if (xpos)
      ++m.c10;
    else if (ypos)
      ++m.c01;
    else
      ++m.c00;
  }
  const double n = static_cast<double>(s.size());
  m.p00 = m.c00 / n;
  m.p01 = m.c01 / n;
  m.p10 = m.c10 / n;
  m.p11 = m.c11 / n;
  return m;
}

namespace {

// Order statistic of the full coordinate sample at the given level: rank
// ceil(n*u) overall, resolved against the zero block first.  Returns 0 when
// the rank lands inside the zeros.
double full_sample_cut(const std::vector<double>& sorted_pos, std::size_t n_zeros,
                       std::size_t n, double level) {
  std::size_t r = ceil_rank(level, n);
  if (r <= n_zeros) return 0.0;
  std::size_t j = r - n_zeros;  // 1-based rank among positives
  if (j > sorted_pos.size()) j = sorted_pos.size();
  return sorted_pos.empty() ? 0.0 : sorted_pos[j - 1];
}

}  // namespace

RegionPartition partition_regions(const PairedSample& s, double p1_hat, double p2_hat) {
  if (!(p1_hat >= 0.0 && p1_hat <= 1.0 && p2_hat >= 0.0 && p2_hat <= 1.0))
    throw InvalidInput("cell probabilities must lie in [0, 1]");

  const std::size_t n = s.size();
  RegionPartition r;
  r.n = n;

  std::size_t zx = 0, zy = 0;
  std::vector<double> xpos, ypos;
  xpos.reserve(n);
  ypos.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.x(i) == 0.0) ++zx; else xpos.push_back(s.x(i));
    if (s.y(i) == 0.0) ++zy; else ypos.push_back(s.y(i));
  }
  std::sort(xpos.begin(), xpos.end());
  std::sort(ypos.begin(), ypos.end());

  r.x_cut_m = full_sample_cut(xpos, zx, n, p2_hat);
  r.x_cut_w = full_sample_cut(xpos, zx, n, 1.0 - p2_hat);
  r.y_cut_w = full_sample_cut(ypos, zy, n, 1.0 - p1_hat);

  r.x_zone_m.resize(n);
  r.x_zone_w.resize(n);
  r.y_zone_w.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const double x = s.x(i), y = s.y(i);
    r.x_zone_m[i] = (x == 0.0) ? 0 : (x <= r.x_cut_m ? 1 : 2);
    r.x_zone_w[i] = (x == 0.0) ? 0 : (x <= r.x_cut_w ? 1 : 2);
    r.y_zone_w[i] = (y == 0.0) ? 0 : (y <= r.y_cut_w ? 1 : 2);

    const bool ypos_i = y > 0.0;
    if (x > 0.0 && ypos_i) {
      (r.x_zone_m[i] == 1 ? r.n11_m_low : r.n11_m_high)++;
      (r.x_zone_w[i] == 1 ? r.n11_x_low : r.n11_x_high)++;
      (r.y_zone_w[i] == 1 ? r.n11_y_low : r.n11_y_high)++;
      if (r.x_zone_w[i] == 1)
        (r.y_zone_w[i] == 1 ? r.n11_low_low : r.n11_low_high)++;
      else
        (r.y_zone_w[i] == 1 ? r.n11_high_low : r.n11_high_high)++;
    } else if (x > 0.0) {
      (r.x_zone_m[i] == 1 ? r.n10_m_low : r.n10_m_high)++;
    }
  }

  const double dn = static_cast<double>(n);
  r.p11_m_low = r.n11_m_low / dn;
  r.p11_m_high = r.n11_m_high / dn;
  r.p10_m_low = r.n10_m_low / dn;
  r.p10_m_high = r.n10_m_high / dn;
  r.p11_low_low = r.n11_low_low / dn;
  r.p11_low_high = r.n11_low_high / dn;
  r.p11_high_low = r.n11_high_low / dn;
  r.p11_high_high = r.n11_high_high / dn;
  r.p11_x_low = r.n11_x_low / dn;
  r.p11_x_high = r.n11_x_high / dn;
  r.p11_y_low = r.n11_y_low / dn;
  r.p11_y_high = r.n11_y_high / dn;

  // A cut swallowed by the zero block empties its low region; flag it when
  // the matching weight is nonzero.
  if (r.x_cut_m == 0.0 && p2_hat > p1_hat) r.degenerate = true;
  if (r.x_cut_w == 0.0 && 1.0 - p2_hat > p1_hat) r.degenerate = true;
  if (r.y_cut_w == 0.0 && 1.0 - p1_hat > p2_hat) r.degenerate = true;

  return r;
}

}  // namespace zic
