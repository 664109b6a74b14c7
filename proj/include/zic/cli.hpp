#ifndef ZIC_CLI_HPP
#define ZIC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "zic/margins.hpp"

namespace zic {

// Policy for ties among strictly positive values.  Zeros are never touched:
// the atom at zero is the signal, not a tie to repair.
struct TiePolicy {
  enum class Mode { random_jitter, error_on_ties };
  Mode mode = Mode::random_jitter;
  std::uint64_t seed = 0;
};

struct IngestResult {
  PairedSample sample;
  std::size_t ties_x = 0;  // positive observations sharing a value, per column
  std::size_t ties_y = 0;
  bool jittered_x = false;
  bool jittered_y = false;
  bool header_skipped = false;
  TiePolicy policy;
};

// Two comma-separated numeric columns, optional single header line
// (auto-detected).  Under random_jitter, any column containing tied positive
// values is re-ranked: tied groups receive a seeded random strict order and
// every positive value is replaced by its rank, which preserves all
// non-tied comparisons (every estimator here is rank-based).  Tie-free
// columns are passed through unchanged.
IngestResult ingest_csv(const std::string& path, const TiePolicy& policy);
IngestResult ingest_csv_stream(std::istream& in, const TiePolicy& policy);

// Command-line entry point; returns the process exit status
// (0 ok, 1 data/validation error, 2 usage error).
int run_cli(int argc, const char* const* argv);

}  // namespace zic

#endif  // ZIC_CLI_HPP
