#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here deliberately takes a different route than the code under
// test: mutual information is computed from an explicitly enumerated joint
// table instead of pmf convolution, and closed forms are written out from
// scratch rather than calling into mixmin.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "mixmin/model.hpp"

namespace oracles {

// I(X; Y) via the joint table P(X = x, Y = y), built by walking all 2^K
// noise assignments, then summing p(x,y) log2(p(x,y) / (p(x) p(y))).
// Exponential in K; keep K <= ~16.
inline double joint_mi(const std::vector<std::int64_t>& alpha, double p) {
  const int k = static_cast<int>(alpha.size()) - 1;
  std::map<std::int64_t, std::array<double, 2>> joint;
  const std::uint64_t combos = std::uint64_t{1} << k;
  for (int x = 0; x <= 1; ++x) {
    for (std::uint64_t bits = 0; bits < combos; ++bits) {
      double mass = x == 1 ? p : 1.0 - p;
      std::int64_t y = x == 1 ? alpha[0] : 0;
      for (int i = 0; i < k; ++i) {
        if ((bits >> i) & 1u) {
          mass *= p;
          y += alpha[static_cast<std::size_t>(i) + 1];
        } else {
          mass *= 1.0 - p;
        }
      }
      joint[y][static_cast<std::size_t>(x)] += mass;
    }
  }
  const double px[2] = {1.0 - p, p};
  double mi = 0.0;
  for (const auto& [y, cell] : joint) {
    const double py = cell[0] + cell[1];
    for (int x = 0; x <= 1; ++x) {
      const double pxy = cell[static_cast<std::size_t>(x)];
      if (pxy > 0.0 && px[x] > 0.0 && py > 0.0) {
        mi += pxy * std::log2(pxy / (px[x] * py));
      }
    }
  }
  return mi;
}

// Value of the relaxed objective at the truncated geometric candidate,
// q_j = beta(1-beta)^j for j = 0..n+1. The terms telescope into the same
// A, B, S combination that appears in the geometric bound, scaled by the
// candidate's captured mass. Needs p > 0.
inline double candidate_objective_closed(const mixmin::ModelParams& params,
                                         int n) {
  const double beta = std::pow(1.0 - params.p, params.K);
  const double a = (1.0 - params.p) * (1.0 - beta);
  const double b = params.p;
  const double s = a + b;
  const double fill = 1.0 - std::pow(1.0 - beta, n + 1);
  return -fill * (a * std::log2(s / a) + b * std::log2(s / b));
}

}  // namespace oracles
