#include "zic/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "zic/errors.hpp"

namespace zic {

namespace {

double clip01(double t) { return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t); }

// Standard right-continuous empirical CDF of the sorted reference at t.
double ecdf_frac(const std::vector<double>& sorted_ref, double t) {
  const auto it = std::upper_bound(sorted_ref.begin(), sorted_ref.end(), t);
  return static_cast<double>(it - sorted_ref.begin()) /
         static_cast<double>(sorted_ref.size());
}

// n-exact right-continuous CDF of a coordinate column: (zeros + #{pos <= t})/n.
struct ColumnCdf {
  std::vector<double> pos;  // sorted positives
  std::size_t zeros = 0;
  std::size_t n = 0;

  explicit ColumnCdf(const std::vector<double>& col) {
    n = col.size();
    pos.reserve(n);
    for (double v : col)
      if (v == 0.0)
        ++zeros;
      else
        pos.push_back(v);
    std::sort(pos.begin(), pos.end());
  }

  double operator()(double t) const {
    const auto it = std::upper_bound(pos.begin(), pos.end(), t);
    return static_cast<double>(zeros + (it - pos.begin())) / static_cast<double>(n);
  }
};

std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t k = v.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(k);
  std::size_t i = 0;
  while (i < k) {
    std::size_t j = i;
    while (j + 1 < k && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

// Pearson correlation; 0 when either variance vanishes.
double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t k = a.size();
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < k; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= k;
  mb /= k;
  double saa = 0, sbb = 0, sab = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

struct ValueSparse {
  double value = 0;
  bool sparse = false;
};

struct Counts {
  std::size_t n = 0, zx = 0, zy = 0;
  CellMasses cells;
  double p1 = 0, p2 = 0;
};

Counts count_sample(const PairedSample& s) {
  Counts c;
  c.n = s.size();
  c.cells = cell_masses(s);
  c.zx = c.cells.c00 + c.cells.c01;
  c.zy = c.cells.c00 + c.cells.c10;
  c.p1 = static_cast<double>(c.zx) / static_cast<double>(c.n);
  c.p2 = static_cast<double>(c.zy) / static_cast<double>(c.n);
  return c;
}

// Concordance against the comonotone coupling, assuming the x margin has the
// smaller zero mass (caller swaps otherwise).  x is split at its p2-quantile;
// below the cut the comparison is decided by x against the reference's
// mixed-cell range, above it by the joint position of (x, y) among the
// region-conditional empirical laws.
ValueSparse q_upper_oriented(const PairedSample& s, const Counts& c) {
  const RegionPartition part = partition_regions(s, c.p1, c.p2);

  std::vector<double> x_low, x_high, y_pos;
  for (std::size_t i = 0; i < c.n; ++i) {
    if (s.x(i) > 0.0) (part.x_zone_m[i] == 1 ? x_low : x_high).push_back(s.x(i));
    if (s.y(i) > 0.0) y_pos.push_back(s.y(i));
  }
  std::sort(x_low.begin(), x_low.end());
  std::sort(x_high.begin(), x_high.end());
  std::sort(y_pos.begin(), y_pos.end());

  double cm_sum = 0, pi4_sum = 0;
  std::size_t cm_n = 0, pi4_n = 0;
  for (std::size_t i = 0; i < c.n; ++i) {
    if (!(s.x(i) > 0.0 && s.y(i) > 0.0)) continue;
    if (part.x_zone_m[i] == 2) {
      cm_sum += std::min(ecdf_frac(x_high, s.x(i)), ecdf_frac(y_pos, s.y(i)));
      ++cm_n;
    } else {
      pi4_sum += ecdf_frac(x_low, s.x(i));
      ++pi4_n;
    }
  }
  const double c_m = cm_n ? cm_sum / static_cast<double>(cm_n) : 0.0;
  const double pi4 = pi4_n ? pi4_sum / static_cast<double>(pi4_n) : 0.0;

  const double p1 = c.p1, p2 = c.p2;
  ValueSparse out;
  out.value = (1.0 - p2) * (part.p11_m_high * (4.0 * c_m - 1.0) + part.p10_m_low) +
              (p2 - p1) * (part.p11_m_low * (2.0 * pi4 - 1.0) + part.p11_m_high) +
              c.cells.p00 * (1.0 - p2) + c.cells.p11 * p1 -
              c.cells.p01 * (p2 - p1);
  out.sparse = (c.zy > c.zx && c.cells.c11 > 0 && part.n11_m_low == 0);
  return out;
}

ValueSparse q_upper_impl(const PairedSample& s) {
  const Counts c = count_sample(s);
  if (c.zx > c.zy) {
    const PairedSample t = s.swapped();
    return q_upper_oriented(t, count_sample(t));
  }
  return q_upper_oriented(s, c);
}

ValueSparse q_lower_impl(const PairedSample& s) {
  const Counts c = count_sample(s);
  const double p1 = c.p1, p2 = c.p2;
  ValueSparse out;

  if (c.zx + c.zy <= c.n) {
    const RegionPartition part = partition_regions(s, p1, p2);
    const ColumnCdf fx(s.xs()), fy(s.ys());
    const double smass = static_cast<double>(c.n - c.zx - c.zy) / static_cast<double>(c.n);

    double term_central = 0.0;
    if (smass > 0.0) {
      double cw_sum = 0, pi1_sum = 0, pi2_sum = 0;
      std::size_t cw_n = 0, pi1_n = 0, pi2_n = 0;
      for (std::size_t i = 0; i < c.n; ++i) {
        if (!(s.x(i) > 0.0 && s.y(i) > 0.0)) continue;
        const double u = clip01((fx(s.x(i)) - p1) / smass);
        const double v = clip01((fy(s.y(i)) - p2) / smass);
        const bool x_low = part.x_zone_w[i] == 1, y_low = part.y_zone_w[i] == 1;
        if (x_low && y_low) {
          cw_sum += clip01(u + v - 1.0);
          ++cw_n;
        } else if (x_low) {
          pi1_sum += u;
          ++pi1_n;
        } else if (y_low) {
          pi2_sum += v;
          ++pi2_n;
        }
      }
      const double c_w = cw_n ? cw_sum / static_cast<double>(cw_n) : 0.0;
      const double pi1 = pi1_n ? pi1_sum / static_cast<double>(pi1_n) : 0.0;
      const double pi2 = pi2_n ? pi2_sum / static_cast<double>(pi2_n) : 0.0;
      // The two mixed-zone terms are grouped as one sum so that swapping the
      // coordinates regroups nothing (IEEE addition commutes, association
      // does not); same pattern below.
      term_central = smass * ((4.0 * part.p11_low_low * c_w - 1.0 +
                               4.0 * part.p11_high_high) +
                              (4.0 * part.p11_low_high * pi1 +
                               4.0 * part.p11_high_low * pi2));
    }

    double term_x_zero = 0.0;  // reference pairs with X* = 0
    if (p1 > 0.0) {
      double pi3_sum = 0;
      std::size_t pi3_n = 0;
      for (std::size_t i = 0; i < c.n; ++i)
        if (s.x(i) > 0.0 && s.y(i) > 0.0 && part.y_zone_w[i] == 2) {
          pi3_sum += clip01((fy(s.y(i)) - (1.0 - p1)) / p1);
          ++pi3_n;
        }
      const double pi3 = pi3_n ? pi3_sum / static_cast<double>(pi3_n) : 0.0;
      term_x_zero = p1 * (2.0 * part.p11_y_high * pi3 - (1.0 - p1));
    }

    double term_y_zero = 0.0;  // reference pairs with Y* = 0
    if (p2 > 0.0) {
      double pi4_sum = 0;
      std::size_t pi4_n = 0;
      for (std::size_t i = 0; i < c.n; ++i)
        if (s.x(i) > 0.0 && s.y(i) > 0.0 && part.x_zone_w[i] == 2) {
          pi4_sum += clip01((fx(s.x(i)) - (1.0 - p2)) / p2);
          ++pi4_n;
        }
      const double pi4 = pi4_n ? pi4_sum / static_cast<double>(pi4_n) : 0.0;
      term_y_zero = p2 * (2.0 * part.p11_x_high * pi4 - (1.0 - p2));
    }

    out.value = term_central + (term_x_zero + term_y_zero);
    return out;
  }

  // p1 + p2 > 1: the countermonotone reference never has both coordinates
  // positive, so only the mixed-cell comparisons survive.
  double pi3 = 0, pi4 = 0;
  if (c.cells.c11 > 0) {
    const ColumnCdf fx(s.xs()), fy(s.ys());
    double s3 = 0, s4 = 0;
    for (std::size_t i = 0; i < c.n; ++i)
      if (s.x(i) > 0.0 && s.y(i) > 0.0) {
        s3 += clip01((fy(s.y(i)) - p2) / (1.0 - p2));
        s4 += clip01((fx(s.x(i)) - p1) / (1.0 - p1));
      }
    pi3 = s3 / static_cast<double>(c.cells.c11);
    pi4 = s4 / static_cast<double>(c.cells.c11);
  }
  out.value = (c.cells.p11 * (1.0 - p2) * (2.0 * pi3 - 1.0) +
               c.cells.p11 * (1.0 - p1) * (2.0 * pi4 - 1.0)) +
              c.cells.p11 * (p1 + p2 - 1.0) +
              (-(c.cells.p01 * (1.0 - p1)) + -(c.cells.p10 * (1.0 - p2)));
  return out;
}

ValueSparse rho_impl(const PairedSample& s) {
  const Counts c = count_sample(s);
  const CellMasses& m = c.cells;
  ValueSparse out;

  std::vector<double> x11, y11, x10, y01;
  for (std::size_t i = 0; i < c.n; ++i) {
    const bool xp = s.x(i) > 0.0, yp = s.y(i) > 0.0;
    if (xp && yp) {
      x11.push_back(s.x(i));
      y11.push_back(s.y(i));
    } else if (xp) {
      x10.push_back(s.x(i));
    } else if (yp) {
      y01.push_back(s.y(i));
    }
  }

  double spearman11 = 0.0;
  if (x11.size() >= 2) {
    spearman11 = pearson(average_ranks(x11), average_ranks(y11));
  } else if (!x11.empty()) {
    out.sparse = true;
  }

  std::vector<double> x11s = x11, y11s = y11, x10s = x10, y01s = y01;
  std::sort(x11s.begin(), x11s.end());
  std::sort(y11s.begin(), y11s.end());
  std::sort(x10s.begin(), x10s.end());
  std::sort(y01s.begin(), y01s.end());

  double q10 = 0, q01 = 0, q00 = 0, pi4 = 0, pi3 = 0;
  const std::size_t k = x11.size();
  if (k > 0) {
    double s10 = 0, s01 = 0, s00 = 0, s4 = 0, s3 = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double f10 = x10s.empty() ? 0.0 : ecdf_frac(x10s, x11[i]);
      const double g01 = y01s.empty() ? 0.0 : ecdf_frac(y01s, y11[i]);
      const double f11 = ecdf_frac(x11s, x11[i]);
      const double g11 = ecdf_frac(y11s, y11[i]);
      s10 += (2.0 * f10 - 1.0) * (2.0 * g11 - 1.0);
      s01 += (2.0 * f11 - 1.0) * (2.0 * g01 - 1.0);
      s00 += (2.0 * f10 - 1.0) * (2.0 * g01 - 1.0);
      s4 += f10;
      s3 += g01;
    }
    const double dk = static_cast<double>(k);
    q10 = s10 / dk;
    q01 = s01 / dk;
    q00 = s00 / dk;
    pi4 = s4 / dk;
    pi3 = s3 / dk;
  }

  // Terms whose conditioning cells are empty carry zero weight; the guards
  // only stop undefined conditional values from being evaluated.
  const double t_cells = 3.0 * (m.p11 * m.p00 - m.p10 * m.p01);
  const double t11 = m.p11 * m.p11 * m.p11 * spearman11;
  const double t10 = m.c10 > 0 ? 3.0 * m.p11 * m.p11 * m.p10 * q10 : 0.0;
  const double t01 = m.c01 > 0 ? 3.0 * m.p11 * m.p11 * m.p01 * q01 : 0.0;
  const double t00 = (m.c10 > 0 && m.c01 > 0) ? 3.0 * m.p11 * m.p10 * m.p01 * q00 : 0.0;
  const double t_mixed =
      3.0 * m.p11 *
      ((m.c10 > 0 ? m.p10 * (2.0 * pi4 - 1.0) : 0.0) +
       (m.c01 > 0 ? m.p01 * (2.0 * pi3 - 1.0) : 0.0));

  out.value = t_cells + t11 + (t10 + t01) + t00 + t_mixed;
  return out;
}

}  // namespace

double estimate_q_upper(const PairedSample& s) { return q_upper_impl(s).value; }

double estimate_q_lower(const PairedSample& s) { return q_lower_impl(s).value; }

double estimate_rho(const PairedSample& s) { return rho_impl(s).value; }

BoundsSet estimate_bounds(const PairedSample& s) {
  const Counts c = count_sample(s);
  return bounds_set(c.p1, c.p2);
}

ConcordanceReport estimate_measures(const PairedSample& s) {
  const Counts c = count_sample(s);
  const ValueSparse qu = q_upper_impl(s);
  const ValueSparse ql = q_lower_impl(s);
  const ValueSparse rho = rho_impl(s);
  const QConstants qc = q_constants(c.p1, c.p2);

  ConcordanceReport r;
  r.q_upper_hat = qu.value;
  r.q_lower_hat = ql.value;
  r.gamma_hat = qu.value + ql.value - qc.q_pi_m - qc.q_pi_w;
  r.phi_hat = 1.5 * (qu.value - qc.q_pi_m);
  r.rho_hat = rho.value;
  r.bounds = bounds_set(c.p1, c.p2);
  r.cells = c.cells;
  r.p1_hat = c.p1;
  r.p2_hat = c.p2;
  r.n = c.n;
  r.sparse_cells = qu.sparse || ql.sparse || rho.sparse;
  r.exceeds_bounds = r.gamma_hat < r.bounds.gamma_min || r.gamma_hat > r.bounds.gamma_max ||
                     r.phi_hat < r.bounds.phi_min || r.phi_hat > r.bounds.phi_max ||
                     r.rho_hat < r.bounds.rho_min || r.rho_hat > r.bounds.rho_max;
  return r;
}

}  // namespace zic
