#pragma once

#include "mixmin/model.hpp"
#include "mixmin/pmf.hpp"

namespace mixmin {

// Closed-form lower bound on min_alpha I(X; alpha_0 X + sum alpha_i Z_i):
// the mutual information I(X; X + G) with G geometric of success rate
// beta = (1-p)^K. With A = (1-p)(1-beta), B = p, S = A + B this is
//   H(p) - A log2(S/A) - B log2(S/B).
// Requires p <= 0.5; returns exactly 0 at p = 0.
Bits geometric_bound_closed_form(const ModelParams& params);

// Same quantity summed outcome by outcome over the geometric support,
// truncated once the remaining tail mass drops below tail_tol. The truncation
// error is bounded by the dropped mass (one bit each), far below tail_tol's
// default.
Bits geometric_bound_direct(const ModelParams& params, double tail_tol = 1e-15);

// Fano-style floor: H(p) - 1 + p^{K+1} + (1-p)^{K+1}. Tight for the binary
// scheme at p = 1/2, where both equal 2^-K.
Bits trivial_lower_bound(const ModelParams& params);

// Geometric noise pmf with atoms beta(1-beta)^i, truncated to tail_tol;
// the dropped mass is recorded as tail_mass.
IntegerPmf geometric_noise_pmf(const ModelParams& params,
                               double tail_tol = 1e-12);

}  // namespace mixmin
