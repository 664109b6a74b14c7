#ifndef ZIC_SIMHARNESS_HPP
#define ZIC_SIMHARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zic/closedforms.hpp"

namespace zic {

// One Monte Carlo configuration: margins with zero masses (p1, p2) joined by
// the Frechet copula with the given alpha.
struct GridCell {
  double p1 = 0, p2 = 0, alpha = 0;
};

struct ExperimentSpec {
  std::vector<GridCell> cells;
  std::size_t n_per_run = 150;
  std::size_t repetitions = 1000;
  std::uint64_t master_seed = 0;
  bool run_measures = true;
  bool run_bounds = true;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct MeasureStats {
  double truth = 0;
  double mean = 0;
  double mse = 0;  // against truth
};

struct CellSummary {
  GridCell cell;
  std::size_t repetitions = 0;
  MeasureStats gamma, phi, rho;          // populated when run_measures
  BoundsSet true_bounds;                 // populated when run_bounds
  BoundsSet mean_bounds;
  BoundsSet mse_bounds;                  // per-bound MSE against the true bound
};

struct ExperimentSummary {
  ExperimentSpec spec;
  std::vector<CellSummary> cells;
};

// Runs every repetition of every cell with a stream seeded by
// (master_seed, cell index, repetition index).  Results land in
// pre-allocated per-repetition slots and are aggregated in index order, so
// the summary is bit-identical for any thread count.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

enum class TableFormat { csv, markdown, json };

TableFormat parse_table_format(const std::string& name);

// Measure rows use the stable column order
//   p1, p2, alpha, measure, truth, mean, mse
// (plus a trailing mse_x100 convenience column); bound rows follow with
// measure names like gamma_lower.  The markdown format mirrors a
// per-measure mean/MSE benchmark table.
std::string summarize_to_table(const ExperimentSummary& summary, TableFormat format);

}  // namespace zic

#endif  // ZIC_SIMHARNESS_HPP
