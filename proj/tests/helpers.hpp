#ifndef ZIC_TEST_HELPERS_HPP
#define ZIC_TEST_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "zic/margins.hpp"

// Absolute-tolerance comparison; the vendored doctest Approx is relative-only.
#define CHECK_NEAR(got, want, tol) CHECK(std::abs((got) - (want)) <= (tol))

namespace zt {

inline zic::PairedSample make_sample(std::vector<std::pair<double, double>> pairs) {
  std::vector<double> xs, ys;
  for (auto [x, y] : pairs) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return zic::PairedSample(std::move(xs), std::move(ys));
}

// 1-based ranks assuming distinct values; independent of library code.
inline std::vector<std::size_t> plain_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<std::size_t> rank(v.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i + 1;
  return rank;
}

// Classical no-ties Spearman: 1 - 6*sum(d^2) / (n(n^2-1)).
inline double classical_spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = plain_ranks(x), ry = plain_ranks(y);
  const double n = static_cast<double>(x.size());
  double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(rx[i]) - static_cast<double>(ry[i]);
    d2 += d * d;
  }
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

// Kendall-style concordant-minus-discordant count over distinct index pairs.
inline long long concordance_count(const zic::PairedSample& s) {
  long long c = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double p = (s.x(i) - s.x(j)) * (s.y(i) - s.y(j));
      if (p > 0) ++c;
      if (p < 0) --c;
    }
  return c;
}

// Zero-inflated sample with dependence driven by a Frechet-style mixture,
// generated with std::mt19937_64 so it shares nothing with the library RNG.
inline zic::PairedSample random_zi_sample(std::size_t n, double p1, double p2, double alpha,
                                          std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unif(gen);
    double v = unif(gen);
    if (unif(gen) < alpha) v = u;
    xs[i] = u <= p1 ? 0.0 : (u - p1) / (1.0 - p1);
    ys[i] = v <= p2 ? 0.0 : (v - p2) / (1.0 - p2);
  }
  return zic::PairedSample(std::move(xs), std::move(ys));
}

inline zic::PairedSample random_positive_sample(std::size_t n, std::uint64_t seed) {
  return random_zi_sample(n, 0.0, 0.0, 0.35, seed);
}

}  // namespace zt

#endif  // ZIC_TEST_HELPERS_HPP
