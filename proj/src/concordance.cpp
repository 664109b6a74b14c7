#include "zic/concordance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zic/errors.hpp"

namespace zic {

namespace {

double copula(CopulaKind c, double u, double v) {
  switch (c) {
    case CopulaKind::independence:
      return u * v;
    case CopulaKind::upper:
      return std::min(u, v);
    case CopulaKind::lower:
      return std::max(u + v - 1.0, 0.0);
  }
  return 0.0;
}

// 5-point Gauss-Legendre; exact for the piecewise-quadratic integrands the
// expectation representation produces once kinks are made interval endpoints.
template <class F>
double gauss5(const F& f, double a, double b) {
  static constexpr double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                   0.5384693101056831, 0.9061798459386640};
  static constexpr double ws[5] = {0.2369268850561891, 0.4786286704993665,
                                   0.5688888888888889, 0.4786286704993665,
                                   0.2369268850561891};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += ws[i] * f(c + h * xs[i]);
  return s * h;
}

template <class F>
double integrate_01(const F& f, std::initializer_list<double> kinks) {
  std::vector<double> bs{0.0, 1.0};
  for (double k : kinks)
    if (k > 0.0 && k < 1.0) bs.push_back(k);
  std::sort(bs.begin(), bs.end());
  double total = 0.0;
  for (std::size_t i = 1; i < bs.size(); ++i)
    if (bs[i] > bs[i - 1]) total += gauss5(f, bs[i - 1], bs[i]);
  return total;
}

// Margin CDF values of the coupled pair as functions of the driving uniform:
// right-continuous version and left limit.
double f_right(double u, double p) { return std::max(u, p); }
double f_left(double u, double p) { return u > p ? u : 0.0; }

// Q(J, reference) when J couples the margins through a single uniform
// (comonotone u -> (u, u), countermonotone u -> (u, 1-u)).
double q_singular(CopulaKind ref, bool countermonotone, double p1, double p2) {
  double sum = 0.0;
  for (int vx = 0; vx < 2; ++vx) {
    for (int vy = 0; vy < 2; ++vy) {
      auto f = [&](double u) {
        const double a = vx == 0 ? f_right(u, p1) : f_left(u, p1);
        const double t = countermonotone ? 1.0 - u : u;
        const double b = vy == 0 ? f_right(t, p2) : f_left(t, p2);
        return copula(ref, a, b);
      };
      sum += integrate_01(f, {p1, p2, 1.0 - p1, 1.0 - p2, 0.5});
    }
  }
  return sum - 1.0;
}

// Closed-form inner integral over v of copula(ref, a, b(v)) with
// b(v) = max(v, p2) (right) or v*1(v > p2) (left limit).
double inner_integral(CopulaKind ref, double a, double p2, bool left) {
  if (!left) {
    switch (ref) {
      case CopulaKind::independence:
        return a * (1.0 + p2 * p2) / 2.0;
      case CopulaKind::upper:
        return a <= p2 ? a : a - a * a / 2.0 + p2 * p2 / 2.0;
      case CopulaKind::lower:
        return a <= 1.0 - p2 ? a * a / 2.0 : a - (1.0 - p2 * p2) / 2.0;
    }
  } else {
    switch (ref) {
      case CopulaKind::independence:
        return a * (1.0 - p2 * p2) / 2.0;
      case CopulaKind::upper:
        return a <= p2 ? a * (1.0 - p2) : (a * a - p2 * p2) / 2.0 + a * (1.0 - a);
      case CopulaKind::lower:
        return a <= 1.0 - p2 ? a * a / 2.0
                             : (a - 1.0) * (1.0 - p2) + (1.0 - p2 * p2) / 2.0;
    }
  }
  return 0.0;
}

double q_independent(CopulaKind ref, double p1, double p2) {
  double sum = 0.0;
  for (int vx = 0; vx < 2; ++vx) {
    for (int vy = 0; vy < 2; ++vy) {
      auto f = [&](double u) {
        const double a = vx == 0 ? f_right(u, p1) : f_left(u, p1);
        return inner_integral(ref, a, p2, vy == 1);
      };
      sum += integrate_01(f, {p1, p2, 1.0 - p2});
    }
  }
  return sum - 1.0;
}

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

double q_expectation_analytic(CopulaKind reference, CouplingKind joint, double alpha,
                              double p1, double p2) {
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  switch (joint) {
    case CouplingKind::independence:
      return q_independent(reference, p1, p2);
    case CouplingKind::upper_fh:
      return q_singular(reference, false, p1, p2);
    case CouplingKind::lower_fh:
      return q_singular(reference, true, p1, p2);
    case CouplingKind::frechet:
      check_prob(alpha, "alpha");
      return (1.0 - alpha) * q_independent(reference, p1, p2) +
             alpha * q_singular(reference, false, p1, p2);
  }
  return 0.0;
}

QWithError brute_force_q_se(const PairedSample& a, const PairedSample& b) {
  const std::size_t n = a.size(), m = b.size();
  const double* ax = a.xs().data();
  const double* ay = a.ys().data();
  std::int64_t total = 0;
  std::int64_t col_sq = 0;
  std::vector<std::int64_t> row(n, 0);
  for (std::size_t j = 0; j < m; ++j) {
    const double xb = b.x(j), yb = b.y(j);
    std::int64_t gj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int sx = (ax[i] > xb) - (ax[i] < xb);
      const int sy = (ay[i] > yb) - (ay[i] < yb);
      const int sg = sx * sy;
      gj += sg;
      row[i] += sg;
    }
    total += gj;
    col_sq += gj * gj;
  }
  QWithError out;
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  out.q = static_cast<double>(total) / (dn * dm);

  // Two-sample U-statistic variance: both projections contribute, the
  // b-side one averaged over its draws and the a-side one over the sample.
  double var = 0.0;
  if (m > 1) {
    const double mean = static_cast<double>(total) / dm;
    double v = (static_cast<double>(col_sq) - dm * mean * mean) / (dm - 1.0);
    if (v > 0.0) var += v / dm / (dn * dn);
  }
  if (n > 1) {
    const double mean = static_cast<double>(total) / dn;
    double row_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      row_sq += static_cast<double>(row[i]) * static_cast<double>(row[i]);
    double v = (row_sq - dn * mean * mean) / (dn - 1.0);
    if (v > 0.0) var += v / dn / (dm * dm);
  }
  out.se = std::sqrt(var);
  return out;
}

double brute_force_q(const PairedSample& a, const PairedSample& b) {
  return brute_force_q_se(a, b).q;
}

double q_expectation_empirical(CopulaKind reference, const PairedSample& s) {
  const ZeroInflatedMargin fx = fit_margin(s.xs());
  const ZeroInflatedMargin fy = fit_margin(s.ys());
  const std::size_t n = s.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = fx.cdf(s.x(i)), ul = fx.left_cdf(s.x(i));
    const double v = fy.cdf(s.y(i)), vl = fy.left_cdf(s.y(i));
    sum += copula(reference, u, v) + copula(reference, u, vl) +
           copula(reference, ul, v) + copula(reference, ul, vl);
  }
  return sum / static_cast<double>(n) - 1.0;
}

namespace {

struct Range {
  double lo = 0, hi = 0;
  bool valid() const { return hi > lo; }
};

double clip01(double t) { return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t); }

// P(coordinate > X*) under F(X*) ~ uniform on (r.lo, r.hi]; exact for the
// discrete law induced by an empirical margin, hence the left CDF.
double prob_data_above(const ZeroInflatedMargin& m, double v, const Range& r) {
  return clip01((m.left_cdf(v) - r.lo) / (r.hi - r.lo));
}

double prob_ref_above(const ZeroInflatedMargin& m, double v, const Range& r) {
  return clip01((r.hi - m.cdf(v)) / (r.hi - r.lo));
}

// Fraction of values in sorted_ref strictly below v.
double strict_fraction(const std::vector<double>& sorted_ref, double v) {
  const auto it = std::lower_bound(sorted_ref.begin(), sorted_ref.end(), v);
  return static_cast<double>(it - sorted_ref.begin()) /
         static_cast<double>(sorted_ref.size());
}

// Fraction of values in sorted_ref strictly above v.
double above_fraction(const std::vector<double>& sorted_ref, double v) {
  const auto it = std::upper_bound(sorted_ref.begin(), sorted_ref.end(), v);
  return static_cast<double>(sorted_ref.end() - it) /
         static_cast<double>(sorted_ref.size());
}

template <class F>
std::optional<double> subset_mean(const std::vector<std::size_t>& idx, const F& f) {
  if (idx.empty()) return std::nullopt;
  double s = 0.0;
  for (std::size_t i : idx) s += f(i);
  return s / static_cast<double>(idx.size());
}

}  // namespace

ConditionalPi estimate_pis(const PairedSample& s, ReferenceTag tag, double p1_hat,
                           double p2_hat) {
  check_prob(p1_hat, "p1_hat");
  check_prob(p2_hat, "p2_hat");

  std::vector<std::size_t> c11, c10, c01;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool xp = s.x(i) > 0.0, yp = s.y(i) > 0.0;
    if (xp && yp)
      c11.push_back(i);
    else if (xp)
      c10.push_back(i);
    else if (yp)
      c01.push_back(i);
  }

  ConditionalPi out;

  if (tag == ReferenceTag::data) {
    if (c11.empty()) return out;
    std::vector<double> x11, y11, x10, y01;
    for (std::size_t i : c11) x11.push_back(s.x(i));
    for (std::size_t i : c11) y11.push_back(s.y(i));
    for (std::size_t i : c10) x10.push_back(s.x(i));
    for (std::size_t i : c01) y01.push_back(s.y(i));
    std::sort(x11.begin(), x11.end());
    std::sort(y11.begin(), y11.end());
    std::sort(x10.begin(), x10.end());
    std::sort(y01.begin(), y01.end());

    out.pi1 = subset_mean(c11, [&](std::size_t i) { return strict_fraction(x11, s.x(i)); });
    out.pi2 = subset_mean(c11, [&](std::size_t i) { return strict_fraction(y11, s.y(i)); });
    if (!y01.empty())
      out.pi3 = subset_mean(c11, [&](std::size_t i) { return strict_fraction(y01, s.y(i)); });
    if (!x10.empty())
      out.pi4 = subset_mean(c11, [&](std::size_t i) { return strict_fraction(x10, s.x(i)); });
    if (!x10.empty())
      out.pi5 = subset_mean(c10, [&](std::size_t i) { return above_fraction(x10, s.x(i)); });
    if (!y01.empty())
      out.pi6 = subset_mean(c01, [&](std::size_t i) { return above_fraction(y01, s.y(i)); });
    return out;
  }

  // Reference-coordinate CDF ranges under the tagged coupling.
  const double p1 = p1_hat, p2 = p2_hat;
  Range f_both, g_both, f_mixed, g_mixed;  // mixed: the reference pair has one zero
  switch (tag) {
    case ReferenceTag::upper_fh: {
      const double m = std::max(p1, p2);
      f_both = {m, 1.0};
      g_both = {m, 1.0};
      f_mixed = {p1, p2};  // X* > 0, Y* = 0 requires p1 < p2
      g_mixed = {p2, p1};  // X* = 0, Y* > 0 requires p2 < p1
      break;
    }
    case ReferenceTag::lower_fh: {
      if (p1 + p2 <= 1.0) {
        f_both = {p1, 1.0 - p2};
        g_both = {p2, 1.0 - p1};
        f_mixed = {1.0 - p2, 1.0};
        g_mixed = {1.0 - p1, 1.0};
      } else {
        f_both = {0.0, 0.0};
        g_both = {0.0, 0.0};
        f_mixed = {p1, 1.0};
        g_mixed = {p2, 1.0};
      }
      break;
    }
    case ReferenceTag::independence: {
      f_both = {p1, 1.0};
      g_both = {p2, 1.0};
      f_mixed = {p1, 1.0};
      g_mixed = {p2, 1.0};
      break;
    }
    case ReferenceTag::data:
      break;
  }

  const ZeroInflatedMargin fx = fit_margin(s.xs());
  const ZeroInflatedMargin fy = fit_margin(s.ys());

  if (f_both.valid())
    out.pi1 = subset_mean(c11, [&](std::size_t i) { return prob_data_above(fx, s.x(i), f_both); });
  if (g_both.valid())
    out.pi2 = subset_mean(c11, [&](std::size_t i) { return prob_data_above(fy, s.y(i), g_both); });
  if (g_mixed.valid())
    out.pi3 = subset_mean(c11, [&](std::size_t i) { return prob_data_above(fy, s.y(i), g_mixed); });
  if (f_mixed.valid())
    out.pi4 = subset_mean(c11, [&](std::size_t i) { return prob_data_above(fx, s.x(i), f_mixed); });
  if (f_mixed.valid())
    out.pi5 = subset_mean(c10, [&](std::size_t i) { return prob_ref_above(fx, s.x(i), f_mixed); });
  if (g_mixed.valid())
    out.pi6 = subset_mean(c01, [&](std::size_t i) { return prob_ref_above(fy, s.y(i), g_mixed); });

  return out;
}

}  // namespace zic
