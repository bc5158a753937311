#pragma once

#include "mixmin/model.hpp"
#include "mixmin/pmf.hpp"

namespace mixmin {

// Entropy of a Bernoulli(p) variable, in bits. Exactly 0 at p in {0, 1}.
Bits binary_entropy(double p);

// pmf of the noise sum  sum_{i=1..K} alpha_i Z_i  (alpha_0 excluded).
IntegerPmf noise_pmf(const MixingScheme& scheme, const ModelParams& params,
                     std::size_t guard = kDefaultSupportGuard);

// I(X; alpha_0 X + Q) for an arbitrary integer-supported noise pmf Q.
// Building block for mutual_information and for the truncated-noise bounds.
Bits mi_given_noise(const IntegerPmf& q, double p, std::int64_t alpha0);

// I(X; alpha_0 X + sum_i alpha_i Z_i), exact up to floating-point rounding.
Bits mutual_information(const MixingScheme& scheme, const ModelParams& params,
                        std::size_t guard = kDefaultSupportGuard);

// H(X | Y = y) for the observation above. y must be a reachable outcome;
// returns exactly 0 when y pins down X.
Bits posterior_entropy_at(std::int64_t y, const MixingScheme& scheme,
                          const ModelParams& params);

}  // namespace mixmin
