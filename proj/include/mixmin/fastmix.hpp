#pragma once

#include <cstdint>
#include <vector>

#include "mixmin/model.hpp"

namespace mixmin {

// Streaming evaluation of I(X; X + C + sum_{j=1..N} 2^{j-1} Z_j) where C is
// noise with contiguous support {0, ..., m} ("core": a block of unit
// coefficients, optionally convolved with a linear ramp) and the tail doubles.
//
// Once the binary increment 2^{n} clears the window width (2^n >= 2W - 1,
// W = m + 1), adding the next term copies the outcome structure: posteriors
// away from the seam are unchanged while their probabilities scale by (1-p)
// on the low side and p on the high side. Only a W-outcome seam needs fresh
// work, so each step costs O(W) and never touches the 2^N-wide support.
//
// Eager levels up to n1 = min(N, ceil(log2(2W))) are absorbed into a direct
// convolution seed. Edge windows and sums are stored at their seed scale;
// the per-step factors (1-p)^k and p^k are applied on use, so deep tails
// underflow to zero instead of degrading the state.
struct RecursionState {
  double p = 0.0;
  std::int64_t m = 0;  // core max support (uniform block size in the classic case)
  int n1 = 0;          // seed level
  int n = 0;           // binary terms folded in so far
  double h_n = 0.0;    // H(X | T_n), bits

  // Seed-scale edge data: outcome sums over the W lowest / highest outcomes
  // and noise windows of 2W-1 entries at each end of the support.
  double h_low = 0.0;
  double h_high = 0.0;
  std::vector<double> d_low;
  std::vector<double> d_high;
};

// Core pmfs with contiguous support used by the named schemes.
std::vector<double> bernoulli_block_pmf(int M, double p);  // sum of M coins
std::vector<double> linear_block_pmf(int L, double p);     // sum of i*Z_i, i=1..L

// Direct-convolution seed at level n1 for the given target N.
RecursionState seed_recursion(const std::vector<double>& core, int N, double p);

// Advance one binary term. Throws std::logic_error if the increment has not
// cleared the window width (callers get that right by seeding via
// seed_recursion with the intended N).
void recursion_step(RecursionState& state);

// Largest outcome value at the current level, m + 2^n.
// Only representable while n <= 62; the recursion itself has no such limit.
std::int64_t recursion_max_outcome(const RecursionState& state);

// I(X; X + sum_{i=1..M} Z_i + sum_{j=1..N} 2^{j-1} Z_j), O(NM + M^2) time and
// O(M) space. Matches the direct engine wherever the latter is feasible.
Bits uniform_binary_mi(int M, int N, double p);

// Generalization to an arbitrary contiguous core pmf on {0, ..., W-1}.
Bits core_binary_mi(const std::vector<double>& core, int N, double p);

}  // namespace mixmin
