#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stagewise/dataset.hpp"
#include "stagewise/rng.hpp"

namespace stagewise {

// Simulated piecewise-constant regression: draw x_1..x_n uniform on [0,1],
// put one step function h_j(x) = 1{x >= c_j} at every distinct observed
// value, so with distinct draws the design is n x n (the smallest knot's
// column is identically one and plays the role of the intercept).
struct HaarSpec {
  int n = 50;
  std::uint64_t seed = 20070401;
  double sigma = 1.0;
  // Sparse true coefficients as (knot index, value) pairs; empty means the
  // default of four spikes +2/-2/+2/-2 at the 20/40/60/80% knots.
  std::vector<std::pair<int, double>> beta_true;

  void validate() const {
    if (n < 2) throw ValidationError("gen_haar: need n >= 2");
    if (sigma < 0) throw ValidationError("gen_haar: sigma must be >= 0");
  }
};

inline Dataset gen_haar(const HaarSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  std::vector<double> x(static_cast<std::size_t>(spec.n));
  for (auto& v : x) v = rng.uniform();

  std::vector<double> knots = x;
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  const int p = static_cast<int>(knots.size());

  Dataset d;
  d.X.resize(spec.n, p);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < p; ++j)
      d.X(i, j) = x[static_cast<std::size_t>(i)] >= knots[static_cast<std::size_t>(j)]
                      ? 1.0
                      : 0.0;
  for (int j = 0; j < p; ++j) d.names.push_back("h" + std::to_string(j + 1));

  auto spikes = spec.beta_true;
  if (spikes.empty()) {
    double sign = 1.0;
    for (const double q : {0.2, 0.4, 0.6, 0.8}) {
      int idx = static_cast<int>(q * p);
      idx = std::clamp(idx, 0, p - 1);
      spikes.emplace_back(idx, 2.0 * sign);
      sign = -sign;
    }
  }
  Vector beta = Vector::Zero(p);
  for (const auto& [j, v] : spikes) {
    if (j < 0 || j >= p) throw OutOfRangeError("gen_haar: beta index");
    beta[j] += v;
  }

  d.y = d.X * beta;
  if (spec.sigma > 0)
    for (int i = 0; i < spec.n; ++i) d.y[i] += spec.sigma * rng.normal();
  return d;
}

}  // namespace stagewise
