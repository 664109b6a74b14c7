#ifndef ZIC_SAMPLERS_HPP
#define ZIC_SAMPLERS_HPP

#include <cstdint>

#include "zic/coupling.hpp"
#include "zic/margins.hpp"

namespace zic {

// A coupled pair of zero-inflated margins plus the stream seed.  Sampling is
// inverse-CDF: a per-pair uniform triple (u1, u2, w) drives every coupling,
// so frechet with alpha = 0 replays the independence stream byte for byte
// and alpha = 1 replays the comonotone one.
struct CouplingSpec {
  CouplingKind kind;
  double alpha;  // read only when kind == frechet
  ZeroInflatedMargin margin_x;
  ZeroInflatedMargin margin_y;
  std::uint64_t seed = 0;
};

PairedSample sample(const CouplingSpec& spec, std::size_t n);

// Partner sample for oracle comparisons: m pairs drawn from the requested
// coupling of the margins fitted from s.
PairedSample sample_partner(const PairedSample& s, CouplingKind kind, std::size_t m,
                            std::uint64_t seed);

}  // namespace zic

#endif  // ZIC_SAMPLERS_HPP
