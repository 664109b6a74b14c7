// Acceptance suite: one test case per criterion, each printing a single
// [PASS]/[FAIL] line.  Tolerances are fixed here, in code.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "zic/closedforms.hpp"
#include "zic/concordance.hpp"
#include "zic/estimators.hpp"
#include "zic/rng.hpp"
#include "zic/samplers.hpp"
#include "zic/simharness.hpp"

using namespace zic;

namespace {

struct Criterion {
  std::string name;
  std::vector<std::string> failures;

  explicit Criterion(std::string n) : name(std::move(n)) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  void expect_near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: got %.6f want %.6f (tol %.4f)", what.c_str(),
                    got, want, tol);
      failures.push_back(buf);
    }
  }

  ~Criterion() {
    std::printf("[%s] %s\n", failures.empty() ? "PASS" : "FAIL", name.c_str());
    for (const std::string& f : failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
  }
};

CouplingSpec spec_of(CouplingKind kind, double alpha, double p1, double p2,
                     std::uint64_t seed) {
  return CouplingSpec{kind, alpha, ZeroInflatedMargin::uniform01(p1),
                      ZeroInflatedMargin::uniform01(p2), seed};
}

struct BoundRow {
  double p1, p2;
  double glo, ghi, flo, fhi, rlo, rhi;
};

}  // namespace

TEST_CASE("criterion 1: closed-form bounds match the reference simulation table") {
  Criterion c("criterion 1: closed-form bounds vs reference table (tol 0.005)");
  // Reference bound values, rounded to two decimals.  The phi lower bound
  // at (0.2, 0.8) is taken from the closed formula, which the reference's
  // own estimated-bounds row corroborates to this rounding.
  const std::vector<BoundRow> rows = {
      {0.2, 0.2, -0.92, 0.96, -0.50, 0.94, -0.98, 0.99},
      {0.2, 0.8, -0.32, 0.36, -0.24, 0.30, -0.48, 0.49},
      {0.8, 0.8, -0.08, 0.36, -0.06, 0.30, -0.12, 0.49},
  };
  for (const BoundRow& r : rows) {
    const auto [glo, ghi] = gamma_bounds(r.p1, r.p2);
    const auto [flo, fhi] = phi_bounds(r.p1, r.p2);
    const auto [rlo, rhi] = rho_bounds(r.p1, r.p2);
    const std::string tag = "(" + std::to_string(r.p1) + "," + std::to_string(r.p2) + ") ";
    c.expect_near(glo, r.glo, 0.005, tag + "gamma_min");
    c.expect_near(ghi, r.ghi, 0.005, tag + "gamma_max");
    c.expect_near(flo, r.flo, 0.005, tag + "phi_min");
    c.expect_near(fhi, r.fhi, 0.005, tag + "phi_max");
    c.expect_near(rlo, r.rlo, 0.005, tag + "rho_min");
    c.expect_near(rhi, r.rhi, 0.005, tag + "rho_max");
  }
  CHECK(c.failures.empty());
}

TEST_CASE("criterion 2: case-study bounds") {
  Criterion c("criterion 2: case-study bounds at the case-study zero proportions (tol 0.005)");
  const std::vector<BoundRow> rows = {
      {0.884, 0.868, -0.031, 0.218, -0.024, 0.173, -0.047, 0.309},
      {0.225, 0.716, -0.441, 0.484, -0.317, 0.415, -0.622, 0.633},
  };
  for (const BoundRow& r : rows) {
    const auto [glo, ghi] = gamma_bounds(r.p1, r.p2);
    const auto [flo, fhi] = phi_bounds(r.p1, r.p2);
    const auto [rlo, rhi] = rho_bounds(r.p1, r.p2);
    const std::string tag = "(" + std::to_string(r.p1) + "," + std::to_string(r.p2) + ") ";
    c.expect_near(glo, r.glo, 0.005, tag + "gamma_min");
    c.expect_near(ghi, r.ghi, 0.005, tag + "gamma_max");
    c.expect_near(flo, r.flo, 0.005, tag + "phi_min");
    c.expect_near(fhi, r.fhi, 0.005, tag + "phi_max");
    c.expect_near(rlo, r.rlo, 0.005, tag + "rho_min");
    c.expect_near(rhi, r.rhi, 0.005, tag + "rho_max");
  }
  CHECK(c.failures.empty());
}

namespace {

struct Table1Row {
  double p1, p2, alpha;
  double g_true, g_mean, g_mse;  // reference mse values are x100
  double f_true, f_mean, f_mse;
  double r_true, r_mean, r_mse;
};

const std::vector<Table1Row> kTable1 = {
    {0.2, 0.2, 0.2, 0.191, 0.196, 0.466, 0.189, 0.182, 0.314, 0.198, 0.189, 0.704},
    {0.2, 0.2, 0.5, 0.479, 0.478, 0.399, 0.472, 0.454, 0.347, 0.496, 0.493, 0.557},
    {0.2, 0.2, 0.8, 0.766, 0.765, 0.241, 0.755, 0.738, 0.251, 0.794, 0.791, 0.300},
    {0.2, 0.8, 0.2, 0.071, 0.074, 0.172, 0.059, 0.059, 0.106, 0.098, 0.094, 0.348},
    {0.2, 0.8, 0.5, 0.179, 0.181, 0.226, 0.148, 0.147, 0.154, 0.244, 0.241, 0.408},
    {0.2, 0.8, 0.8, 0.286, 0.288, 0.241, 0.237, 0.236, 0.180, 0.390, 0.385, 0.384},
    {0.8, 0.8, 0.2, 0.071, 0.072, 0.109, 0.059, 0.058, 0.070, 0.098, 0.098, 0.212},
    {0.8, 0.8, 0.5, 0.179, 0.178, 0.174, 0.148, 0.145, 0.126, 0.244, 0.244, 0.308},
    {0.8, 0.8, 0.8, 0.286, 0.285, 0.241, 0.237, 0.233, 0.191, 0.390, 0.388, 0.387},
};

}  // namespace

TEST_CASE("criterion 3: closed-form truths under the Frechet copula") {
  Criterion c("criterion 3: Frechet-copula truths, 27 entries (tol 0.001)");
  for (const Table1Row& row : kTable1) {
    const TrueMeasures t = frechet_truth(row.alpha, row.p1, row.p2);
    const std::string tag = "(" + std::to_string(row.p1) + "," + std::to_string(row.p2) +
                            ",a=" + std::to_string(row.alpha) + ") ";
    c.expect_near(t.gamma, row.g_true, 0.001, tag + "gamma");
    c.expect_near(t.phi, row.f_true, 0.001, tag + "phi");
    c.expect_near(t.rho, row.r_true, 0.001, tag + "rho");
  }
  CHECK(c.failures.empty());
}

TEST_CASE("criterion 4: simulation reproduction of estimator means and MSEs") {
  Criterion c("criterion 4: estimator means (tol 0.015) and MSE x100 (factor 1.5), N=150 x 1000");
  ExperimentSpec spec;
  for (const Table1Row& row : kTable1) spec.cells.push_back({row.p1, row.p2, row.alpha});
  spec.n_per_run = 150;
  spec.repetitions = 1000;
  spec.master_seed = 20240601;
  spec.run_bounds = false;
  const ExperimentSummary s = run_experiment(spec);

  auto mse_ok = [](double got_x100, double want_x100) {
    return got_x100 <= want_x100 * 1.5 && got_x100 >= want_x100 / 1.5;
  };
  for (std::size_t i = 0; i < kTable1.size(); ++i) {
    const Table1Row& row = kTable1[i];
    const CellSummary& cell = s.cells[i];
    const std::string tag = "(" + std::to_string(row.p1) + "," + std::to_string(row.p2) +
                            ",a=" + std::to_string(row.alpha) + ") ";
    c.expect_near(cell.gamma.mean, row.g_mean, 0.015, tag + "mean gamma");
    c.expect_near(cell.phi.mean, row.f_mean, 0.015, tag + "mean phi");
    c.expect_near(cell.rho.mean, row.r_mean, 0.015, tag + "mean rho");
    c.expect(mse_ok(cell.gamma.mse * 100.0, row.g_mse),
             tag + "gamma MSE x100 " + std::to_string(cell.gamma.mse * 100.0) + " vs " +
                 std::to_string(row.g_mse));
    c.expect(mse_ok(cell.phi.mse * 100.0, row.f_mse),
             tag + "phi MSE x100 " + std::to_string(cell.phi.mse * 100.0) + " vs " +
                 std::to_string(row.f_mse));
    c.expect(mse_ok(cell.rho.mse * 100.0, row.r_mse),
             tag + "rho MSE x100 " + std::to_string(cell.rho.mse * 100.0) + " vs " +
                 std::to_string(row.r_mse));
  }
  CHECK(c.failures.empty());
}

TEST_CASE("criterion 5: bounds-estimation reproduction") {
  Criterion c("criterion 5: mean estimated bounds vs reference table (tol 0.01), N=150 x 1000");
  // Reference estimated-bound rows.  The reference protocol does not pin
  // the coupling; comonotone pairing of the zero patterns reproduces it.
  const std::vector<BoundRow> rows = {
      {0.2, 0.2, -0.92, 0.96, -0.50, 0.94, -0.98, 0.99},
      {0.2, 0.8, -0.32, 0.36, -0.24, 0.30, -0.47, 0.49},
      {0.8, 0.8, -0.08, 0.36, -0.07, 0.30, -0.12, 0.49},
  };
  ExperimentSpec spec;
  for (const BoundRow& r : rows) spec.cells.push_back({r.p1, r.p2, 1.0});
  spec.n_per_run = 150;
  spec.repetitions = 1000;
  spec.master_seed = 998877;
  spec.run_measures = false;
  const ExperimentSummary s = run_experiment(spec);

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BoundRow& r = rows[i];
    const BoundsSet& mb = s.cells[i].mean_bounds;
    const std::string tag = "(" + std::to_string(r.p1) + "," + std::to_string(r.p2) + ") ";
    c.expect_near(mb.gamma_min, r.glo, 0.01, tag + "mean gamma_min");
    c.expect_near(mb.gamma_max, r.ghi, 0.01, tag + "mean gamma_max");
    c.expect_near(mb.phi_min, r.flo, 0.01, tag + "mean phi_min");
    c.expect_near(mb.phi_max, r.fhi, 0.01, tag + "mean phi_max");
    c.expect_near(mb.rho_min, r.rlo, 0.01, tag + "mean rho_min");
    c.expect_near(mb.rho_max, r.rhi, 0.01, tag + "mean rho_max");
  }
  CHECK(c.failures.empty());
}

TEST_CASE("criterion 6: oracle equivalence of the plug-in estimators") {
  Criterion c("criterion 6: plug-in estimators vs brute-force partner oracles (3 MC SE)");
  const std::vector<std::pair<double, double>> combos = {
      {0.2, 0.2}, {0.2, 0.8}, {0.3, 0.6}, {0.8, 0.8}};
  const std::vector<std::pair<CouplingKind, const char*>> kinds = {
      {CouplingKind::independence, "Pi"},
      {CouplingKind::upper_fh, "M"},
      {CouplingKind::lower_fh, "W"},
      {CouplingKind::frechet, "F(0.5)"}};
  const std::size_t n = 2000, m = 100000;
  std::uint64_t stream = 400;

  for (const auto& [p1, p2] : combos) {
    for (const auto& [kind, kname] : kinds) {
      const PairedSample s = sample(spec_of(kind, 0.5, p1, p2, mix_seed(1, ++stream)), n);
      const std::string tag = std::string(kname) + " p=(" + std::to_string(p1) + "," +
                              std::to_string(p2) + ") ";

      const QWithError bm =
          brute_force_q_se(s, sample_partner(s, CouplingKind::upper_fh, m, mix_seed(2, ++stream)));
      const double qu = estimate_q_upper(s);
      c.expect_near(qu, bm.q, 3.0 * bm.se, tag + "q_upper (3SE)");

      const QWithError bw =
          brute_force_q_se(s, sample_partner(s, CouplingKind::lower_fh, m, mix_seed(3, ++stream)));
      const double ql = estimate_q_lower(s);
      c.expect_near(ql, bw.q, 3.0 * bw.se, tag + "q_lower (3SE)");

      const QWithError bp = brute_force_q_se(
          s, sample_partner(s, CouplingKind::independence, m, mix_seed(4, ++stream)));
      const double rho = estimate_rho(s);
      c.expect_near(rho, 3.0 * bp.q, 9.0 * bp.se, tag + "rho vs 3Q (3SE)");
    }
  }
  CHECK(c.failures.empty());
}

TEST_CASE("criterion 7: analytic identity suite") {
  Criterion c("criterion 7: closed constants vs expectation form (1e-10), branch continuity, Q(Pi,Pi)");
  const double grid[] = {0.05, 0.2, 0.4, 0.65, 0.9};
  for (double p1 : grid) {
    for (double p2 : grid) {
      const QConstants q = q_constants(p1, p2);
      const std::string tag = "(" + std::to_string(p1) + "," + std::to_string(p2) + ") ";
      c.expect_near(q_expectation_analytic(CopulaKind::upper, CouplingKind::upper_fh, 0, p1, p2),
                    q.q_mm, 1e-10, tag + "q_mm");
      c.expect_near(q_expectation_analytic(CopulaKind::lower, CouplingKind::lower_fh, 0, p1, p2),
                    q.q_ww, 1e-10, tag + "q_ww");
      c.expect_near(q_expectation_analytic(CopulaKind::upper, CouplingKind::lower_fh, 0, p1, p2),
                    q.q_wm, 1e-10, tag + "q_wm");
      c.expect_near(q_expectation_analytic(CopulaKind::upper, CouplingKind::independence, 0, p1, p2),
                    q.q_pi_m, 1e-10, tag + "q_pi_m");
      c.expect_near(q_expectation_analytic(CopulaKind::lower, CouplingKind::independence, 0, p1, p2),
                    q.q_pi_w, 1e-10, tag + "q_pi_w");
      c.expect_near(
          q_expectation_analytic(CopulaKind::independence, CouplingKind::independence, 0, p1, p2),
          0.0, 1e-10, tag + "Q(Pi,Pi) analytic");
    }
  }

  for (int i = 0; i <= 100; ++i) {
    const double p1 = i / 100.0, p2 = 1.0 - p1;
    const double m = std::max(p1, p2), l = std::min(p1, p2);
    c.expect_near(1.0 - m * m - l * l * l / 3.0,
                  2.0 / 3.0 + m * (3.0 - 6.0 * m + m * m) / 3.0, 1e-12, "gamma_max branches");
    c.expect_near(
        (1.0 - p1 - p2) * (1.0 - p1 - p2) - 2.0 * (1.0 - p1) * (1.0 - p2) - l * l * l / 3.0,
        (p1 + p2 + l - 2.0) * (1.0 - m) - (1.0 - m * m * m) / 3.0, 1e-12, "gamma_min branches");
    c.expect_near(p1 * p1 * p1 + p2 * p2 * p2 - 1.0, -3.0 * (1.0 - p1) * (1.0 - p2), 1e-12,
                  "rho_min branches");
  }

  // Q(Pi,Pi) = 0 by Monte Carlo.
  const PairedSample s = sample(spec_of(CouplingKind::independence, 0, 0.3, 0.5, 5511), 3000);
  const QWithError q =
      brute_force_q_se(s, sample_partner(s, CouplingKind::independence, 100000, 5513));
  c.expect_near(q.q, 0.0, 3.0 * q.se + 0.002, "Q(Pi,Pi) Monte Carlo");
  CHECK(c.failures.empty());
}

TEST_CASE("criterion 8: property suite") {
  Criterion c("criterion 8: rank invariance, swap symmetry, continuous reduction, degeneracy, no NaN");

  // Rank invariance, bit-identical.
  {
    const auto s = zt::random_zi_sample(173, 0.25, 0.4, 0.5, 31);
    const ConcordanceReport base = estimate_measures(s);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < s.size(); ++i) {
      xs.push_back(s.x(i) > 0.0 ? std::log1p(s.x(i)) * 7.0 : 0.0);
      ys.push_back(s.y(i) > 0.0 ? std::exp(s.y(i)) : 0.0);
    }
    const ConcordanceReport t = estimate_measures(PairedSample(xs, ys));
    c.expect(t.gamma_hat == base.gamma_hat && t.phi_hat == base.phi_hat &&
                 t.rho_hat == base.rho_hat && t.q_upper_hat == base.q_upper_hat &&
                 t.q_lower_hat == base.q_lower_hat,
             "rank invariance not bit-identical");
  }

  // Swap symmetry, exact.
  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    const auto s = zt::random_zi_sample(97, 0.3, 0.5, 0.4, seed);
    const ConcordanceReport a = estimate_measures(s);
    const ConcordanceReport b = estimate_measures(s.swapped());
    c.expect(a.gamma_hat == b.gamma_hat && a.phi_hat == b.phi_hat && a.rho_hat == b.rho_hat,
             "swap symmetry violated at seed " + std::to_string(seed));
  }

  // Continuous reduction to classical Spearman, exact, 100 tie-free samples.
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    const auto s = zt::random_positive_sample(25, seed);
    const double classical = zt::classical_spearman(s.xs(), s.ys());
    if (std::abs(estimate_rho(s) - classical) > 1e-12)
      c.expect(false, "continuous Spearman mismatch at seed " + std::to_string(seed));
  }

  // Degenerate margins: everything zero.
  {
    const auto s = zt::make_sample({{0, 1}, {0, 0}, {0, 2}, {0, 5}});
    const ConcordanceReport r = estimate_measures(s);
    c.expect(r.gamma_hat == 0.0 && r.phi_hat == 0.0 && r.rho_hat == 0.0 &&
                 r.bounds.gamma_max == 0.0 && r.bounds.rho_min == 0.0,
             "degenerate margin did not collapse to zero");
  }

  // Empty-cell robustness: no NaN across a battery of boundary samples.
  {
    const std::vector<PairedSample> cases = {
        zt::make_sample({{1, 1}}),
        zt::make_sample({{0, 0}}),
        zt::make_sample({{0, 2}, {3, 0}}),
        zt::make_sample({{0, 0}, {1, 2}}),
        zt::make_sample({{2, 3}, {0, 1}, {4, 0}, {0, 0}}),
    };
    bool all_finite = true;
    for (const PairedSample& s : cases) {
      const ConcordanceReport r = estimate_measures(s);
      all_finite = all_finite && std::isfinite(r.gamma_hat) && std::isfinite(r.phi_hat) &&
                   std::isfinite(r.rho_hat) && std::isfinite(r.q_upper_hat) &&
                   std::isfinite(r.q_lower_hat);
    }
    c.expect(all_finite, "NaN reached a report");
  }

  CHECK(c.failures.empty());
}
