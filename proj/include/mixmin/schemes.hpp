#pragma once

#include <optional>
#include <string_view>

#include "mixmin/model.hpp"

namespace mixmin {

enum class SchemeName { uniform, binary, linear, blu };
enum class MiMethod { direct, closed_form, recursion };

SchemeName parse_scheme_name(std::string_view name);
MiMethod parse_mi_method(std::string_view name);

// alpha = (1, 1, ..., 1)
MixingScheme uniform_scheme(int K);
// alpha = (1, 1, 2, 4, ..., 2^{K-1})
MixingScheme binary_scheme(int K);
// alpha = (1, 1, 2, 3, ..., K)
MixingScheme linear_scheme(int K);

// Composite scheme: U unit coefficients, then the linear ramp 1..L, then the
// binary tail 2^0..2^{K-U-L-1}.
struct BluParams {
  int K = 1;
  int U = 0;
  int L = 0;
  void validate() const;
};
MixingScheme blu_scheme(const BluParams& blu);

// Closed form for the uniform scheme:
//   H(p) - sum_{i=1..K} (1-p)^{K+1-i} p^i C(K+1,i) H(i/(K+1)).
// Binomials are computed in exact integer arithmetic before conversion.
Bits uniform_mi_closed_form(const ModelParams& params);

// Closed form for the binary scheme; at p = 1/2 it collapses to 2^-K.
Bits binary_mi_closed_form(const ModelParams& params);

// MI of a named scheme via the requested method. closed_form exists only for
// uniform and binary; recursion covers all four names (the linear and uniform
// cases degenerate to a direct-convolution seed). For blu, pass the block
// sizes explicitly or omit them to evaluate the best (L, U) pair by search.
Bits scheme_mi(SchemeName name, const ModelParams& params,
               MiMethod method = MiMethod::direct,
               const std::optional<BluParams>& blu = std::nullopt);

}  // namespace mixmin
