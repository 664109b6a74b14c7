#include "zic/samplers.hpp"

#include <vector>

#include "zic/errors.hpp"
#include "zic/rng.hpp"

namespace zic {

PairedSample sample(const CouplingSpec& spec, std::size_t n) {
  if (n == 0) throw InvalidInput("sample size must be >= 1");
  if (spec.kind == CouplingKind::frechet && !(spec.alpha >= 0.0 && spec.alpha <= 1.0))
    throw InvalidInput("frechet alpha must lie in [0, 1]");

  SplitMix64 rng(spec.seed);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double w = rng.uniform();
    double u = u1, v = u2;
    switch (spec.kind) {
      case CouplingKind::independence:
        break;
      case CouplingKind::upper_fh:
        v = u1;
        break;
      case CouplingKind::lower_fh:
        v = 1.0 - u1;
        break;
      case CouplingKind::frechet:
        if (w < spec.alpha) v = u1;
        break;
    }
    xs[i] = spec.margin_x.quantile(u);
    ys[i] = spec.margin_y.quantile(v);
  }
  return PairedSample(std::move(xs), std::move(ys));
}

PairedSample sample_partner(const PairedSample& s, CouplingKind kind, std::size_t m,
                            std::uint64_t seed) {
  CouplingSpec spec{kind, 0.0, fit_margin(s.xs()), fit_margin(s.ys()), seed};
  return sample(spec, m);
}

}  // namespace zic
