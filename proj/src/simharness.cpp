#include "zic/simharness.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "zic/errors.hpp"
#include "zic/estimators.hpp"
#include "zic/rng.hpp"
#include "zic/samplers.hpp"

namespace zic {

namespace {

struct RepResult {
  double gamma = 0, phi = 0, rho = 0;
  BoundsSet bounds;
};

RepResult run_one(const GridCell& cell, const ExperimentSpec& spec, std::uint64_t seed) {
  CouplingSpec cs{CouplingKind::frechet, cell.alpha,
                  ZeroInflatedMargin::uniform01(cell.p1),
                  ZeroInflatedMargin::uniform01(cell.p2), seed};
  const PairedSample s = sample(cs, spec.n_per_run);
  RepResult r;
  if (spec.run_measures) {
    const ConcordanceReport rep = estimate_measures(s);
    r.gamma = rep.gamma_hat;
    r.phi = rep.phi_hat;
    r.rho = rep.rho_hat;
    if (!spec.run_bounds) return r;
    r.bounds = rep.bounds;
    return r;
  }
  if (spec.run_bounds) r.bounds = estimate_bounds(s);
  return r;
}

MeasureStats aggregate(const std::vector<RepResult>& reps, double truth,
                       double RepResult::* field) {
  MeasureStats st;
  st.truth = truth;
  double sum = 0, sq = 0;
  for (const RepResult& r : reps) {
    const double v = r.*field;
    sum += v;
    sq += (v - truth) * (v - truth);
  }
  st.mean = sum / static_cast<double>(reps.size());
  st.mse = sq / static_cast<double>(reps.size());
  return st;
}

void aggregate_bound(const std::vector<RepResult>& reps, double truth,
                     double BoundsSet::* field, BoundsSet& mean_out, BoundsSet& mse_out) {
  double sum = 0, sq = 0;
  for (const RepResult& r : reps) {
    const double v = r.bounds.*field;
    sum += v;
    sq += (v - truth) * (v - truth);
  }
  mean_out.*field = sum / static_cast<double>(reps.size());
  mse_out.*field = sq / static_cast<double>(reps.size());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
  if (spec.cells.empty()) throw InvalidInput("experiment grid must be nonempty");
  if (spec.repetitions < 1) throw InvalidInput("repetitions must be >= 1");
  if (spec.n_per_run < 2) throw InvalidInput("n_per_run must be >= 2");

  ExperimentSummary summary;
  summary.spec = spec;

  unsigned n_threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  if (n_threads > spec.repetitions) n_threads = static_cast<unsigned>(spec.repetitions);

  for (std::size_t ci = 0; ci < spec.cells.size(); ++ci) {
    const GridCell& cell = spec.cells[ci];
    std::vector<RepResult> reps(spec.repetitions);

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
      for (;;) {
        const std::size_t r = next.fetch_add(1);
        if (r >= spec.repetitions) return;
        try {
          reps[r] = run_one(cell, spec, mix_seed(spec.master_seed, ci, r));
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };

    if (n_threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(n_threads);
      for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }
    if (first_error) {
      try {
        std::rethrow_exception(first_error);
      } catch (const std::exception& e) {
        throw InvalidInput("cell (" + std::to_string(cell.p1) + ", " +
                           std::to_string(cell.p2) + ", " + std::to_string(cell.alpha) +
                           ") failed: " + e.what());
      }
    }

    CellSummary cs;
    cs.cell = cell;
    cs.repetitions = spec.repetitions;
    if (spec.run_measures) {
      const TrueMeasures truth = frechet_truth(cell.alpha, cell.p1, cell.p2);
      cs.gamma = aggregate(reps, truth.gamma, &RepResult::gamma);
      cs.phi = aggregate(reps, truth.phi, &RepResult::phi);
      cs.rho = aggregate(reps, truth.rho, &RepResult::rho);
    }
    if (spec.run_bounds) {
      cs.true_bounds = bounds_set(cell.p1, cell.p2);
      aggregate_bound(reps, cs.true_bounds.gamma_min, &BoundsSet::gamma_min, cs.mean_bounds, cs.mse_bounds);
      aggregate_bound(reps, cs.true_bounds.gamma_max, &BoundsSet::gamma_max, cs.mean_bounds, cs.mse_bounds);
      aggregate_bound(reps, cs.true_bounds.phi_min, &BoundsSet::phi_min, cs.mean_bounds, cs.mse_bounds);
      aggregate_bound(reps, cs.true_bounds.phi_max, &BoundsSet::phi_max, cs.mean_bounds, cs.mse_bounds);
      aggregate_bound(reps, cs.true_bounds.rho_min, &BoundsSet::rho_min, cs.mean_bounds, cs.mse_bounds);
      aggregate_bound(reps, cs.true_bounds.rho_max, &BoundsSet::rho_max, cs.mean_bounds, cs.mse_bounds);
    }
    summary.cells.push_back(cs);
  }
  return summary;
}

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "md" || name == "markdown") return TableFormat::markdown;
  if (name == "json") return TableFormat::json;
  throw InvalidInput("unknown table format: " + name);
}

namespace {

std::string to_csv(const ExperimentSummary& s) {
  std::string out = "p1,p2,alpha,measure,truth,mean,mse,mse_x100\n";
  auto row = [&](const GridCell& c, const char* name, const MeasureStats& st) {
    out += fmt(c.p1) + "," + fmt(c.p2) + "," + fmt(c.alpha) + "," + name + "," +
           fmt(st.truth) + "," + fmt(st.mean) + "," + fmt(st.mse) + "," +
           fmt(st.mse * 100.0) + "\n";
  };
  for (const CellSummary& cs : s.cells) {
    if (s.spec.run_measures) {
      row(cs.cell, "gamma", cs.gamma);
      row(cs.cell, "phi", cs.phi);
      row(cs.cell, "rho", cs.rho);
    }
    if (s.spec.run_bounds) {
      auto brow = [&](const char* name, double truth, double mean, double mse) {
        row(cs.cell, name, MeasureStats{truth, mean, mse});
      };
      brow("gamma_lower", cs.true_bounds.gamma_min, cs.mean_bounds.gamma_min, cs.mse_bounds.gamma_min);
      brow("gamma_upper", cs.true_bounds.gamma_max, cs.mean_bounds.gamma_max, cs.mse_bounds.gamma_max);
      brow("phi_lower", cs.true_bounds.phi_min, cs.mean_bounds.phi_min, cs.mse_bounds.phi_min);
      brow("phi_upper", cs.true_bounds.phi_max, cs.mean_bounds.phi_max, cs.mse_bounds.phi_max);
      brow("rho_lower", cs.true_bounds.rho_min, cs.mean_bounds.rho_min, cs.mse_bounds.rho_min);
      brow("rho_upper", cs.true_bounds.rho_max, cs.mean_bounds.rho_max, cs.mse_bounds.rho_max);
    }
  }
  return out;
}

std::string to_markdown(const ExperimentSummary& s) {
  std::string out;
  if (s.spec.run_measures) {
    out +=
        "| p1 | p2 | alpha | true gamma | mean | MSE* | true phi | mean | MSE* "
        "| true rho | mean | MSE* |\n"
        "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const CellSummary& cs : s.cells) {
      out += "| " + fmt(cs.cell.p1) + " | " + fmt(cs.cell.p2) + " | " + fmt(cs.cell.alpha) +
             " | " + fmt(cs.gamma.truth) + " | " + fmt(cs.gamma.mean) + " | " +
             fmt(cs.gamma.mse * 100.0) + " | " + fmt(cs.phi.truth) + " | " +
             fmt(cs.phi.mean) + " | " + fmt(cs.phi.mse * 100.0) + " | " +
             fmt(cs.rho.truth) + " | " + fmt(cs.rho.mean) + " | " +
             fmt(cs.rho.mse * 100.0) + " |\n";
    }
    out += "\n*MSE multiplied by 100.\n";
  }
  if (s.spec.run_bounds) {
    out +=
        "\n| p1 | p2 | gamma range (true) | gamma range (mean est.) | phi range "
        "(true) | phi range (mean est.) | rho range (true) | rho range (mean est.) |\n"
        "|---|---|---|---|---|---|---|---|\n";
    auto range = [&](double lo, double hi) {
      return "[" + fmt(lo) + ", " + fmt(hi) + "]";
    };
    for (const CellSummary& cs : s.cells) {
      out += "| " + fmt(cs.cell.p1) + " | " + fmt(cs.cell.p2) + " | " +
             range(cs.true_bounds.gamma_min, cs.true_bounds.gamma_max) + " | " +
             range(cs.mean_bounds.gamma_min, cs.mean_bounds.gamma_max) + " | " +
             range(cs.true_bounds.phi_min, cs.true_bounds.phi_max) + " | " +
             range(cs.mean_bounds.phi_min, cs.mean_bounds.phi_max) + " | " +
             range(cs.true_bounds.rho_min, cs.true_bounds.rho_max) + " | " +
             range(cs.mean_bounds.rho_min, cs.mean_bounds.rho_max) + " |\n";
    }
  }
  return out;
}

nlohmann::json bounds_json(const BoundsSet& b) {
  return {{"gamma_min", b.gamma_min}, {"gamma_max", b.gamma_max},
          {"phi_min", b.phi_min},     {"phi_max", b.phi_max},
          {"rho_min", b.rho_min},     {"rho_max", b.rho_max}};
}

std::string to_json(const ExperimentSummary& s) {
  nlohmann::json j;
  j["n_per_run"] = s.spec.n_per_run;
  j["repetitions"] = s.spec.repetitions;
  j["master_seed"] = s.spec.master_seed;
  j["cells"] = nlohmann::json::array();
  for (const CellSummary& cs : s.cells) {
    nlohmann::json c;
    c["p1"] = cs.cell.p1;
    c["p2"] = cs.cell.p2;
    c["alpha"] = cs.cell.alpha;
    if (s.spec.run_measures) {
      for (auto [name, st] : {std::pair<const char*, const MeasureStats*>{"gamma", &cs.gamma},
                              {"phi", &cs.phi},
                              {"rho", &cs.rho}}) {
        c[name] = {{"truth", st->truth}, {"mean", st->mean}, {"mse", st->mse}};
      }
    }
    if (s.spec.run_bounds) {
      c["true_bounds"] = bounds_json(cs.true_bounds);
      c["mean_bounds"] = bounds_json(cs.mean_bounds);
      c["mse_bounds"] = bounds_json(cs.mse_bounds);
    }
    j["cells"].push_back(c);
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string summarize_to_table(const ExperimentSummary& summary, TableFormat format) {
  switch (format) {
    case TableFormat::csv:
      return to_csv(summary);
    case TableFormat::markdown:
      return to_markdown(summary);
    case TableFormat::json:
      return to_json(summary);
  }
  throw InvalidInput("unknown table format");
}

}  // namespace zic
