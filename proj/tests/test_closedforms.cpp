#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "zic/closedforms.hpp"
#include "zic/errors.hpp"

using namespace zic;

TEST_CASE("rho bounds") {
  auto [lo, hi] = rho_bounds(0.2, 0.2);
  CHECK(lo == doctest::Approx(-0.984).epsilon(1e-12));
  CHECK(hi == doctest::Approx(0.992).epsilon(1e-12));

  auto [lo0, hi0] = rho_bounds(0.0, 0.0);
  CHECK(lo0 == -1.0);
  CHECK(hi0 == 1.0);

  auto [lop, hip] = rho_bounds(0.884, 0.868);
  CHECK(hip == doctest::Approx(0.309).epsilon(2e-3));
  CHECK(lop == doctest::Approx(-0.046).epsilon(2e-2));

  CHECK_THROWS_AS(rho_bounds(-0.1, 0.5), InvalidInput);
  CHECK_THROWS_AS(rho_bounds(0.1, 1.5), InvalidInput);
}

TEST_CASE("gamma bounds") {
  auto [lo, hi] = gamma_bounds(0.2, 0.2);
  CHECK(lo == doctest::Approx(-0.9227).epsilon(1e-4));
  CHECK(hi == doctest::Approx(0.9573).epsilon(1e-4));

  auto [lo8, hi8] = gamma_bounds(0.8, 0.8);
  CHECK(lo8 == doctest::Approx(-0.0827).epsilon(1e-3));
  CHECK(hi8 == doctest::Approx(0.3573).epsilon(1e-4));

  auto [loi, hii] = gamma_bounds(0.225, 0.716);
  CHECK(loi == doctest::Approx(-0.4405).epsilon(1e-3));
  CHECK(hii == doctest::Approx(0.4836).epsilon(1e-3));
}

TEST_CASE("phi bounds") {
  auto [lo, hi] = phi_bounds(0.2, 0.2);
  CHECK(lo == doctest::Approx(-0.496).epsilon(1e-12));
  CHECK(hi == doctest::Approx(0.944).epsilon(1e-12));

  auto [lo0, hi0] = phi_bounds(0.0, 0.0);
  CHECK(lo0 == -0.5);
  CHECK(hi0 == 1.0);

  auto [lok, hik] = phi_bounds(0.884, 0.868);
  CHECK(lok == doctest::Approx(-0.0237).epsilon(2e-3));
  CHECK(hik == doctest::Approx(0.1732).epsilon(1e-3));
}

TEST_CASE("degenerate margins give zero bounds") {
  for (double other : {0.0, 0.3, 1.0}) {
    const BoundsSet a = bounds_set(1.0, other);
    const BoundsSet b = bounds_set(other, 1.0);
    for (const BoundsSet& s : {a, b}) {
      CHECK(s.gamma_min == 0.0);
      CHECK(s.gamma_max == 0.0);
      CHECK(s.phi_min == 0.0);
      CHECK(s.phi_max == 0.0);
      CHECK(s.rho_min == 0.0);
      CHECK(s.rho_max == 0.0);
    }
  }
}

TEST_CASE("q constants") {
  const QConstants q0 = q_constants(0.0, 0.0);
  CHECK(q0.q_mm == 1.0);
  CHECK(q0.q_ww == -1.0);
  CHECK(q0.q_wm == 0.0);
  CHECK(q0.q_pi_m == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(q0.q_pi_w == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

  const QConstants q2 = q_constants(0.2, 0.2);
  CHECK(q2.q_mm == doctest::Approx(0.96).epsilon(1e-12));
  CHECK(q2.q_ww == doctest::Approx(-0.92).epsilon(1e-12));
  CHECK(q2.q_wm == 0.0);

  const QConstants q8 = q_constants(0.8, 0.8);
  CHECK(q8.q_wm == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("bounds decompose through the q constants") {
  // gamma_max = Q(M,M)+Q(M,W)-Q(Pi,M)-Q(Pi,W); gamma_min likewise at W;
  // phi bounds are 1.5 * (q - q_pi_m).  Checked across the grid.
  for (double p1 = 0.0; p1 <= 1.0; p1 += 0.1) {
    for (double p2 = 0.0; p2 <= 1.0; p2 += 0.1) {
      if (p1 == 1.0 || p2 == 1.0) continue;
      const QConstants q = q_constants(p1, p2);
      const auto [glo, ghi] = gamma_bounds(p1, p2);
      const auto [flo, fhi] = phi_bounds(p1, p2);
      CHECK(ghi == doctest::Approx(q.q_mm + q.q_wm - q.q_pi_m - q.q_pi_w).epsilon(1e-12));
      CHECK(glo == doctest::Approx(q.q_wm + q.q_ww - q.q_pi_m - q.q_pi_w).epsilon(1e-12));
      CHECK(fhi == doctest::Approx(1.5 * (q.q_mm - q.q_pi_m)).epsilon(1e-12));
      CHECK(flo == doctest::Approx(1.5 * (q.q_wm - q.q_pi_m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("swap symmetry") {
  for (double p1 : {0.0, 0.15, 0.4, 0.7, 0.95}) {
    for (double p2 : {0.05, 0.3, 0.6, 0.9}) {
      const BoundsSet a = bounds_set(p1, p2), b = bounds_set(p2, p1);
      CHECK(a.gamma_min == b.gamma_min);
      CHECK(a.gamma_max == b.gamma_max);
      CHECK(a.phi_min == b.phi_min);
      CHECK(a.phi_max == b.phi_max);
      CHECK(a.rho_min == b.rho_min);
      CHECK(a.rho_max == b.rho_max);
      const QConstants qa = q_constants(p1, p2), qb = q_constants(p2, p1);
      CHECK(qa.q_mm == qb.q_mm);
      CHECK(qa.q_ww == qb.q_ww);
      CHECK(qa.q_wm == qb.q_wm);
    }
  }
}

TEST_CASE("branch formulas agree on the p1 + p2 = 1 line") {
  for (int i = 0; i <= 100; ++i) {
    const double p1 = i / 100.0, p2 = 1.0 - p1;
    const double m = std::max(p1, p2), l = std::min(p1, p2);

    const double gmax_le = 1.0 - m * m - l * l * l / 3.0;
    const double gmax_gt = 2.0 / 3.0 + m * (3.0 - 6.0 * m + m * m) / 3.0;
    CHECK(std::abs(gmax_le - gmax_gt) <= 1e-12);

    const double gmin_le =
        (1.0 - p1 - p2) * (1.0 - p1 - p2) - 2.0 * (1.0 - p1) * (1.0 - p2) - l * l * l / 3.0;
    const double gmin_gt = (p1 + p2 + l - 2.0) * (1.0 - m) - (1.0 - m * m * m) / 3.0;
    CHECK(std::abs(gmin_le - gmin_gt) <= 1e-12);

    const double rmin_le = p1 * p1 * p1 + p2 * p2 * p2 - 1.0;
    const double rmin_gt = -3.0 * (1.0 - p1) * (1.0 - p2);
    CHECK(std::abs(rmin_le - rmin_gt) <= 1e-12);
  }
}

TEST_CASE("rho_max is nonincreasing in each argument") {
  for (int i = 0; i <= 100; ++i) {
    double prev_row = 2.0;
    for (int j = 0; j <= 100; ++j) {
      const double v = rho_bounds(i / 100.0, j / 100.0).second;
      CHECK(v <= prev_row + 1e-15);
      prev_row = v;
      if (i > 0)
        CHECK(v <= rho_bounds((i - 1) / 100.0, j / 100.0).second + 1e-15);
    }
  }
}

TEST_CASE("frechet truth") {
  const TrueMeasures t = frechet_truth(0.5, 0.2, 0.2);
  CHECK(t.gamma == doctest::Approx(0.479).epsilon(2e-3));
  CHECK(t.phi == doctest::Approx(0.472).epsilon(1e-3));
  CHECK(t.rho == doctest::Approx(0.496).epsilon(1e-12));

  const TrueMeasures zero = frechet_truth(0.0, 0.3, 0.7);
  CHECK(zero.gamma == 0.0);
  CHECK(zero.phi == 0.0);
  CHECK(zero.rho == 0.0);

  const TrueMeasures mid = frechet_truth(0.8, 0.2, 0.8);
  CHECK(mid.gamma == doctest::Approx(0.286).epsilon(2e-3));
  CHECK(mid.phi == doctest::Approx(0.237).epsilon(2e-3));
  CHECK(mid.rho == doctest::Approx(0.390).epsilon(2e-3));

  // At alpha = 1 the truths coincide with the upper bounds exactly.
  const TrueMeasures one = frechet_truth(1.0, 0.35, 0.6);
  const BoundsSet b = bounds_set(0.35, 0.6);
  CHECK(one.gamma == b.gamma_max);
  CHECK(one.phi == b.phi_max);
  CHECK(one.rho == b.rho_max);

  CHECK_THROWS_AS(frechet_truth(1.2, 0.2, 0.2), InvalidInput);
}
