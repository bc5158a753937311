#pragma once

#include <cstdint>
#include <vector>

namespace mixmin {

// Information quantities throughout the library are in bits (log base 2).
using Bits = double;

// Shared problem parameters: X and each noise draw Z_i are i.i.d. Bernoulli(p),
// and K is the number of noise draws mixed into the observation.
//
// The interesting regime is p <= 0.5 (minor-allele convention), and the CLI
// enforces that range, but the entropy kernels are well defined for any
// p in [0, 1]; symmetry under p <-> 1-p is covered by tests.
struct ModelParams {
  double p = 0.0;
  int K = 1;

  void validate() const;  // throws std::invalid_argument
};

// Mixing coefficients (alpha_0, alpha_1, ..., alpha_K). alpha[0] scales X,
// the tail scales the noise draws, and every entry is a positive integer.
// The observation is Y = alpha_0 X + sum_i alpha_i Z_i.
struct MixingScheme {
  std::vector<std::int64_t> alpha;

  int K() const { return static_cast<int>(alpha.size()) - 1; }
  std::int64_t alpha0() const { return alpha.front(); }

  void validate() const;  // throws std::invalid_argument
};

}  // namespace mixmin
