#include "zic/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zic/closedforms.hpp"
#include "zic/concordance.hpp"
#include "zic/errors.hpp"
#include "zic/estimators.hpp"
#include "zic/rng.hpp"
#include "zic/samplers.hpp"
#include "zic/simharness.hpp"

namespace zic {

namespace {

bool parse_double(const std::string& field, double& out) {
  const char* b = field.data();
  const char* e = b + field.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t')) --e;
  if (b == e) return false;
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t count_tied(const std::vector<double>& column) {
  std::vector<double> pos;
  for (double v : column)
    if (v > 0.0) pos.push_back(v);
  std::sort(pos.begin(), pos.end());
  std::size_t tied = 0, i = 0;
  while (i < pos.size()) {
    std::size_t j = i;
    while (j + 1 < pos.size() && pos[j + 1] == pos[i]) ++j;
    if (j > i) tied += j - i + 1;
    i = j + 1;
  }
  return tied;
}

// Replace positives with their ranks, ties ordered by a seeded random key.
void jitter_column(std::vector<double>& column, std::uint64_t seed) {
  struct Entry {
    double value;
    std::uint64_t key;
    std::size_t index;
  };
  SplitMix64 rng(seed);
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const std::uint64_t key = rng.next();  // one draw per row, zeros included
    if (column[i] > 0.0) entries.push_back({column[i], key, i});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.key < b.key;
  });
  for (std::size_t r = 0; r < entries.size(); ++r)
    column[entries[r].index] = static_cast<double>(r + 1);
}

}  // namespace

IngestResult ingest_csv_stream(std::istream& in, const TiePolicy& policy) {
  std::vector<double> xs, ys;
  bool header_skipped = false;
  std::string line;
  std::size_t lineno = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(),
                                 [](char c) { return c == ' ' || c == '\t'; }),
                  trimmed.end());
    if (trimmed.empty()) continue;

    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 2)
      throw ParseError("row " + std::to_string(lineno) + ": expected 2 columns, found " +
                       std::to_string(fields.size()));
    double x, y;
    const bool ok = parse_double(fields[0], x) && parse_double(fields[1], y);
    if (!ok) {
      if (first_content_line) {
        header_skipped = true;
        first_content_line = false;
        continue;
      }
      throw ParseError("row " + std::to_string(lineno) + ": non-numeric cell");
    }
    first_content_line = false;
    if (!std::isfinite(x) || !std::isfinite(y))
      throw InvalidInput("row " + std::to_string(lineno) + ": value must be finite");
    if (x < 0.0 || y < 0.0)
      throw InvalidInput("row " + std::to_string(lineno) + ": negative value");
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.empty()) throw InvalidInput("no data rows in input");

  const std::size_t ties_x = count_tied(xs);
  const std::size_t ties_y = count_tied(ys);
  bool jit_x = false, jit_y = false;
  if (policy.mode == TiePolicy::Mode::error_on_ties) {
    if (ties_x + ties_y > 0)
      throw TieError("tied positive values present (x: " + std::to_string(ties_x) +
                     ", y: " + std::to_string(ties_y) + ") and tie policy is 'error'");
  } else {
    if (ties_x > 0) {
      jitter_column(xs, mix_seed(policy.seed, 0));
      jit_x = true;
    }
    if (ties_y > 0) {
      jitter_column(ys, mix_seed(policy.seed, 1));
      jit_y = true;
    }
  }

  return IngestResult{PairedSample(std::move(xs), std::move(ys)),
                      ties_x, ties_y, jit_x, jit_y, header_skipped, policy};
}

IngestResult ingest_csv(const std::string& path, const TiePolicy& policy) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  return ingest_csv_stream(in, policy);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Signed fixed-width cell for aligned markdown tables.
std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "% .6f", v);
  return buf;
}

struct Provenance {
  std::size_t n = 0;
  double p1_hat = 0, p2_hat = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> ties_x, ties_y;
};

std::string provenance_line(const Provenance& p) {
  std::string out = "n = " + std::to_string(p.n) + ", p1_hat = " + fmt(p.p1_hat) +
                    ", p2_hat = " + fmt(p.p2_hat) + ", seed = " + std::to_string(p.seed);
  if (p.ties_x) out += ", ties_x = " + std::to_string(*p.ties_x);
  if (p.ties_y) out += ", ties_y = " + std::to_string(*p.ties_y);
  return out + "\n";
}

nlohmann::json bounds_json(const BoundsSet& b) {
  return {{"gamma_min", b.gamma_min}, {"gamma_max", b.gamma_max},
          {"phi_min", b.phi_min},     {"phi_max", b.phi_max},
          {"rho_min", b.rho_min},     {"rho_max", b.rho_max}};
}

std::string render_estimate(const ConcordanceReport& r, const Provenance& prov,
                            const std::string& format) {
  if (format == "json") {
    nlohmann::json j;
    j["estimates"] = {{"rho", r.rho_hat}, {"gamma", r.gamma_hat}, {"phi", r.phi_hat}};
    j["q_upper"] = r.q_upper_hat;
    j["q_lower"] = r.q_lower_hat;
    j["bounds"] = bounds_json(r.bounds);
    j["n"] = prov.n;
    j["p1_hat"] = prov.p1_hat;
    j["p2_hat"] = prov.p2_hat;
    j["seed"] = prov.seed;
    if (prov.ties_x) j["ties_x"] = *prov.ties_x;
    if (prov.ties_y) j["ties_y"] = *prov.ties_y;
    j["exceeds_bounds"] = r.exceeds_bounds;
    j["sparse_cells"] = r.sparse_cells;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string out = "row,rho,gamma,phi,n,p1_hat,p2_hat,seed\n";
    const std::string prov_cols = std::to_string(prov.n) + "," + fmt(prov.p1_hat) + "," +
                                  fmt(prov.p2_hat) + "," + std::to_string(prov.seed);
    out += "estimate," + fmt(r.rho_hat) + "," + fmt(r.gamma_hat) + "," + fmt(r.phi_hat) +
           "," + prov_cols + "\n";
    out += "lower_bound," + fmt(r.bounds.rho_min) + "," + fmt(r.bounds.gamma_min) + "," +
           fmt(r.bounds.phi_min) + "," + prov_cols + "\n";
    out += "upper_bound," + fmt(r.bounds.rho_max) + "," + fmt(r.bounds.gamma_max) + "," +
           fmt(r.bounds.phi_max) + "," + prov_cols + "\n";
    return out;
  }
  std::string out;
  out += "|                       | rho       | gamma     | phi       |\n";
  out += "|-----------------------|-----------|-----------|-----------|\n";
  out += "| estimate              | " + cell(r.rho_hat) + " | " + cell(r.gamma_hat) + " | " +
         cell(r.phi_hat) + " |\n";
  out += "| estimated lower bound | " + cell(r.bounds.rho_min) + " | " +
         cell(r.bounds.gamma_min) + " | " + cell(r.bounds.phi_min) + " |\n";
  out += "| estimated upper bound | " + cell(r.bounds.rho_max) + " | " +
         cell(r.bounds.gamma_max) + " | " + cell(r.bounds.phi_max) + " |\n";
  out += "\n" + provenance_line(prov);
  if (r.exceeds_bounds) out += "note: an estimate exceeds its plug-in bounds\n";
  if (r.sparse_cells) out += "note: sparse conditional cells, some terms evaluated as 0\n";
  return out;
}

std::string render_bounds(const BoundsSet& b, const Provenance& prov,
                          const std::string& format, bool from_data) {
  if (format == "json") {
    nlohmann::json j = bounds_json(b);
    j["p1"] = prov.p1_hat;
    j["p2"] = prov.p2_hat;
    if (from_data) {
      j["n"] = prov.n;
      j["seed"] = prov.seed;
    }
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string out = "measure,lower,upper,p1,p2\n";
    out += "rho," + fmt(b.rho_min) + "," + fmt(b.rho_max) + "," + fmt(prov.p1_hat) + "," +
           fmt(prov.p2_hat) + "\n";
    out += "gamma," + fmt(b.gamma_min) + "," + fmt(b.gamma_max) + "," + fmt(prov.p1_hat) +
           "," + fmt(prov.p2_hat) + "\n";
    out += "phi," + fmt(b.phi_min) + "," + fmt(b.phi_max) + "," + fmt(prov.p1_hat) + "," +
           fmt(prov.p2_hat) + "\n";
    return out;
  }
  std::string out;
  out += "| measure | lower     | upper     |\n";
  out += "|---------|-----------|-----------|\n";
  out += "| rho     | " + cell(b.rho_min) + " | " + cell(b.rho_max) + " |\n";
  out += "| gamma   | " + cell(b.gamma_min) + " | " + cell(b.gamma_max) + " |\n";
  out += "| phi     | " + cell(b.phi_min) + " | " + cell(b.phi_max) + " |\n\n";
  if (from_data)
    out += provenance_line(prov);
  else
    out += "p1 = " + fmt(prov.p1_hat) + ", p2 = " + fmt(prov.p2_hat) + "\n";
  return out;
}

// Flat key=value experiment configuration.
ExperimentSpec parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  ExperimentSpec spec;
  std::vector<std::pair<double, double>> p_pairs;
  std::vector<double> alphas;
  for (const auto& [key, value] : kv) {
    std::istringstream vs(value);
    if (key == "p_pairs") {
      std::string tok;
      while (vs >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
          throw ParseError("p_pairs entries must look like 0.2:0.8");
        double a, b;
        if (!parse_double(tok.substr(0, colon), a) || !parse_double(tok.substr(colon + 1), b))
          throw ParseError("p_pairs entries must be numeric");
        p_pairs.emplace_back(a, b);
      }
    } else if (key == "alphas") {
      double a;
      while (vs >> a) alphas.push_back(a);
    } else if (key == "n_per_run") {
      vs >> spec.n_per_run;
    } else if (key == "repetitions") {
      vs >> spec.repetitions;
    } else if (key == "master_seed") {
      vs >> spec.master_seed;
    } else if (key == "measures") {
      spec.run_measures = (value == "true" || value == "1");
    } else if (key == "bounds") {
      spec.run_bounds = (value == "true" || value == "1");
    } else if (key == "threads") {
      vs >> spec.threads;
    } else {
      throw ParseError("unknown config key: " + key);
    }
  }
  if (p_pairs.empty()) throw InvalidInput("config must set p_pairs");
  if (alphas.empty()) alphas.push_back(1.0);
  for (const auto& [p1, p2] : p_pairs)
    for (double a : alphas) spec.cells.push_back({p1, p2, a});
  return spec;
}

int cmd_validate(std::size_t n, std::size_t partner_m, std::uint64_t seed, bool full);

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"rank-based concordance measures for zero-inflated data"};
  app.require_subcommand(1);

  std::string input, output = "md", ties = "random", config;
  std::uint64_t seed = 0;
  double p1 = -1, p2 = -1, alpha = -1;

  auto add_io = [&](CLI::App* cmd, bool with_input) {
    if (with_input) cmd->add_option("--input", input, "CSV file with two numeric columns");
    cmd->add_option("--ties", ties, "tie policy: random | error")
        ->check(CLI::IsMember({"random", "error"}));
    cmd->add_option("--seed", seed, "seed for tie breaking");
    cmd->add_option("--output", output, "output format: md | csv | json")
        ->check(CLI::IsMember({"md", "csv", "json"}));
  };

  CLI::App* est = app.add_subcommand("estimate", "estimate measures and bounds from a CSV file");
  add_io(est, true);
  est->callback([&]() {
    if (input.empty()) throw CLI::ValidationError("estimate", "--input is required");
  });

  CLI::App* bnd = app.add_subcommand("bounds", "attainable bounds from (p1, p2) or a dataset");
  add_io(bnd, true);
  bnd->add_option("--p1", p1, "zero mass of the first margin");
  bnd->add_option("--p2", p2, "zero mass of the second margin");

  CLI::App* tru = app.add_subcommand("truth", "population measure values under the Frechet copula");
  tru->add_option("--alpha", alpha, "Frechet mixing weight")->required();
  tru->add_option("--p1", p1, "zero mass of the first margin")->required();
  tru->add_option("--p2", p2, "zero mass of the second margin")->required();
  tru->add_option("--output", output, "output format: md | csv | json")
      ->check(CLI::IsMember({"md", "csv", "json"}));

  CLI::App* sim = app.add_subcommand("simulate", "run a Monte Carlo experiment from a config file");
  sim->add_option("--config", config, "flat key=value experiment configuration")->required();
  sim->add_option("--output", output, "output format: md | csv | json")
      ->check(CLI::IsMember({"md", "csv", "json"}));

  std::size_t val_n = 2000, val_partner = 100000;
  std::uint64_t val_seed = 1;
  bool val_full = false;
  CLI::App* val = app.add_subcommand("validate", "oracle checks of the plug-in estimators");
  val->add_option("--n", val_n, "sample size per check");
  val->add_option("--partner", val_partner, "partner sample size");
  val->add_option("--seed", val_seed, "master seed");
  val->add_flag("--full", val_full, "run the full coupling/zero-mass grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const TiePolicy policy{ties == "error" ? TiePolicy::Mode::error_on_ties
                                         : TiePolicy::Mode::random_jitter,
                         seed};

  try {
    if (est->parsed()) {
      const IngestResult ing = ingest_csv(input, policy);
      ConcordanceReport rep = estimate_measures(ing.sample);
      if (ing.jittered_x || ing.jittered_y) rep.tie_seed = seed;
      Provenance prov{rep.n, rep.p1_hat, rep.p2_hat, seed, ing.ties_x, ing.ties_y};
      std::cout << render_estimate(rep, prov, output);
      return 0;
    }
    if (bnd->parsed()) {
      if (!input.empty()) {
        const IngestResult ing = ingest_csv(input, policy);
        const BoundsSet b = estimate_bounds(ing.sample);
        const ConcordanceReport rep = estimate_measures(ing.sample);
        Provenance prov{rep.n, rep.p1_hat, rep.p2_hat, seed, ing.ties_x, ing.ties_y};
        std::cout << render_bounds(b, prov, output, true);
        return 0;
      }
      if (p1 < 0.0 || p2 < 0.0)
        throw InvalidInput("bounds needs either --input or both --p1 and --p2");
      const BoundsSet b = bounds_set(p1, p2);
      Provenance prov;
      prov.p1_hat = p1;
      prov.p2_hat = p2;
      std::cout << render_bounds(b, prov, output, false);
      return 0;
    }
    if (tru->parsed()) {
      const TrueMeasures t = frechet_truth(alpha, p1, p2);
      if (output == "json") {
        nlohmann::json j{{"alpha", alpha}, {"p1", p1},     {"p2", p2},
                         {"gamma", t.gamma}, {"phi", t.phi}, {"rho", t.rho}};
        std::cout << j.dump(2) << "\n";
      } else if (output == "csv") {
        std::cout << "alpha,p1,p2,gamma,phi,rho\n"
                  << fmt(alpha) << "," << fmt(p1) << "," << fmt(p2) << "," << fmt(t.gamma)
                  << "," << fmt(t.phi) << "," << fmt(t.rho) << "\n";
      } else {
        std::cout << "gamma = " << fmt(t.gamma) << "\nphi   = " << fmt(t.phi)
                  << "\nrho   = " << fmt(t.rho) << "\n(alpha = " << fmt(alpha)
                  << ", p1 = " << fmt(p1) << ", p2 = " << fmt(p2) << ")\n";
      }
      return 0;
    }
    if (sim->parsed()) {
      const ExperimentSpec spec = parse_config(config);
      const ExperimentSummary summary = run_experiment(spec);
      std::cout << summarize_to_table(summary, parse_table_format(output));
      return 0;
    }
    if (val->parsed()) {
      return cmd_validate(val_n, val_partner, val_seed, val_full);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

namespace {

// Oracle suite: plug-in estimators against brute-force partner comparisons,
// plus the analytic identity checks.  Returns the number of violations.
int cmd_validate(std::size_t n, std::size_t partner_m, std::uint64_t seed, bool full) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, double got, double want, double tol) {
    std::printf("[%s] %-58s got %+.5f want %+.5f (tol %.5f)\n", ok ? "ok" : "FAIL",
                name.c_str(), got, want, tol);
    if (!ok) ++failures;
  };

  // Analytic identities: closed-form constants vs the expectation form.
  const double grid[] = {0.05, 0.2, 0.4, 0.65, 0.9};
  double worst = 0.0;
  for (double a : grid) {
    for (double b : grid) {
      const QConstants qc = q_constants(a, b);
      const double checks[5] = {
          qc.q_mm - q_expectation_analytic(CopulaKind::upper, CouplingKind::upper_fh, 0, a, b),
          qc.q_ww - q_expectation_analytic(CopulaKind::lower, CouplingKind::lower_fh, 0, a, b),
          qc.q_wm - q_expectation_analytic(CopulaKind::upper, CouplingKind::lower_fh, 0, a, b),
          qc.q_pi_m - q_expectation_analytic(CopulaKind::upper, CouplingKind::independence, 0, a, b),
          qc.q_pi_w - q_expectation_analytic(CopulaKind::lower, CouplingKind::independence, 0, a, b)};
      for (double d : checks) worst = std::max(worst, std::abs(d));
    }
  }
  report("closed-form constants vs expectation form (5x5 grid)", worst <= 1e-10, worst, 0.0,
         1e-10);

  struct PCombo {
    double p1, p2;
  };
  const std::vector<PCombo> combos = full
      ? std::vector<PCombo>{{0.2, 0.2}, {0.2, 0.8}, {0.3, 0.6}, {0.8, 0.8}}
      : std::vector<PCombo>{{0.2, 0.2}, {0.3, 0.6}};
  const std::vector<std::pair<CouplingKind, std::string>> kinds = {
      {CouplingKind::independence, "independence"},
      {CouplingKind::upper_fh, "comonotone"},
      {CouplingKind::lower_fh, "countermonotone"},
      {CouplingKind::frechet, "frechet(0.5)"}};

  std::uint64_t stream = 0;
  for (const PCombo& pc : combos) {
    for (const auto& [kind, kname] : kinds) {
      CouplingSpec cs{kind, 0.5, ZeroInflatedMargin::uniform01(pc.p1),
                      ZeroInflatedMargin::uniform01(pc.p2), mix_seed(seed, ++stream)};
      const PairedSample s = sample(cs, n);
      const std::string tag = kname + " p=(" + fmt(pc.p1) + "," + fmt(pc.p2) + ")";

      const QWithError bm = brute_force_q_se(
          s, sample_partner(s, CouplingKind::upper_fh, partner_m, mix_seed(seed, ++stream)));
      const double qu = estimate_q_upper(s);
      report("q_upper vs comonotone partner, " + tag, std::abs(qu - bm.q) <= 3.0 * bm.se,
             qu, bm.q, 3.0 * bm.se);

      const QWithError bw = brute_force_q_se(
          s, sample_partner(s, CouplingKind::lower_fh, partner_m, mix_seed(seed, ++stream)));
      const double ql = estimate_q_lower(s);
      report("q_lower vs countermonotone partner, " + tag, std::abs(ql - bw.q) <= 3.0 * bw.se,
             ql, bw.q, 3.0 * bw.se);

      const QWithError bp = brute_force_q_se(
          s, sample_partner(s, CouplingKind::independence, partner_m, mix_seed(seed, ++stream)));
      const double rho = estimate_rho(s);
      report("rho vs 3x independence partner, " + tag, std::abs(rho - 3.0 * bp.q) <= 9.0 * bp.se,
             rho, 3.0 * bp.q, 9.0 * bp.se);
    }
  }

  std::printf("%s (%d violation%s)\n", failures == 0 ? "VALIDATION PASSED" : "VALIDATION FAILED",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}

}  // namespace

}  // namespace zic
