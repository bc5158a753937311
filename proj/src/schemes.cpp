#include "mixmin/schemes.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detail.hpp"
#include "mixmin/entropy.hpp"
#include "mixmin/fastmix.hpp"
#include "mixmin/optimize.hpp"

namespace mixmin {

SchemeName parse_scheme_name(std::string_view name) {
  if (name == "uniform") return SchemeName::uniform;
  if (name == "binary") return SchemeName::binary;
  if (name == "linear") return SchemeName::linear;
  if (name == "blu") return SchemeName::blu;
  throw std::invalid_argument("unknown scheme name: " + std::string(name));
}

MiMethod parse_mi_method(std::string_view name) {
  if (name == "direct") return MiMethod::direct;
  if (name == "closed") return MiMethod::closed_form;
  if (name == "recursion") return MiMethod::recursion;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

namespace {

void check_k(int K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
}

}  // namespace

MixingScheme uniform_scheme(int K) {
  check_k(K);
  return {std::vector<std::int64_t>(static_cast<std::size_t>(K) + 1, 1)};
}

MixingScheme binary_scheme(int K) {
  check_k(K);
  MixingScheme s{{1}};
  for (int i = 0; i < K; ++i) s.alpha.push_back(std::int64_t{1} << i);
  return s;
}

MixingScheme linear_scheme(int K) {
  check_k(K);
  MixingScheme s{{1}};
  for (int i = 1; i <= K; ++i) s.alpha.push_back(i);
  return s;
}

void BluParams::validate() const {
  check_k(K);
  if (U < 0 || L < 0) throw std::invalid_argument("block sizes must be >= 0");
  if (U + L > K)
    throw std::invalid_argument("U + L must not exceed K");
}

MixingScheme blu_scheme(const BluParams& blu) {
  blu.validate();
  MixingScheme s{{1}};
  for (int i = 0; i < blu.U; ++i) s.alpha.push_back(1);
  for (int i = 1; i <= blu.L; ++i) s.alpha.push_back(i);
  for (int i = 0; i < blu.K - blu.U - blu.L; ++i)
    s.alpha.push_back(std::int64_t{1} << i);
  return s;
}

namespace {

double exact_binomial(int n, int k) {
  boost::multiprecision::cpp_int c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c.convert_to<double>();
}

}  // namespace

Bits uniform_mi_closed_form(const ModelParams& params) {
  params.validate();
  const double p = params.p;
  const int K = params.K;
  detail::KahanSum s;
  for (int i = 1; i <= K; ++i) {
    double w = std::pow(1.0 - p, K + 1 - i) * std::pow(p, i) *
               exact_binomial(K + 1, i);
    s.add(w * binary_entropy(static_cast<double>(i) / (K + 1)));
  }
  return binary_entropy(p) - s.value();
}

Bits binary_mi_closed_form(const ModelParams& params) {
  params.validate();
  const double p = params.p;
  const int K = params.K;
  detail::KahanSum s;
  for (int i = 1; i <= K; ++i) {
    // Outcome classes where X competes with exactly one noise pattern.
    double a = std::pow(p, i) * (1.0 - p);
    double b = p * std::pow(1.0 - p, i);
    s.add(detail::outcome_entropy(a, b));
  }
  return binary_entropy(p) - s.value();
}

Bits scheme_mi(SchemeName name, const ModelParams& params, MiMethod method,
               const std::optional<BluParams>& blu) {
  params.validate();
  if (name != SchemeName::blu && blu.has_value())
    throw std::invalid_argument("block sizes apply only to the blu scheme");

  switch (name) {
    case SchemeName::uniform:
      switch (method) {
        case MiMethod::closed_form: return uniform_mi_closed_form(params);
        case MiMethod::direct: return mutual_information(uniform_scheme(params.K), params);
        case MiMethod::recursion: return uniform_binary_mi(params.K, 0, params.p);
      }
      break;
    case SchemeName::binary:
      switch (method) {
        case MiMethod::closed_form: return binary_mi_closed_form(params);
        case MiMethod::direct: return mutual_information(binary_scheme(params.K), params);
        case MiMethod::recursion: return core_binary_mi({1.0}, params.K, params.p);
      }
      break;
    case SchemeName::linear:
      switch (method) {
        case MiMethod::closed_form:
          throw std::invalid_argument("the linear scheme has no closed form");
        case MiMethod::direct: return mutual_information(linear_scheme(params.K), params);
        case MiMethod::recursion:
          return core_binary_mi(linear_block_pmf(params.K, params.p), 0, params.p);
      }
      break;
    case SchemeName::blu: {
      if (!blu.has_value()) {
        // No block sizes given: evaluate the best (L, U) pair.
        if (method == MiMethod::closed_form)
          throw std::invalid_argument("the blu scheme has no closed form");
        BluEval eval = method == MiMethod::direct ? BluEval::direct
                                                  : BluEval::recursion;
        return blu_search(params, eval).mi;
      }
      BluParams b = *blu;
      if (b.K != params.K)
        throw std::invalid_argument("blu block sizes disagree with params.K");
      b.validate();
      switch (method) {
        case MiMethod::closed_form:
          throw std::invalid_argument("the blu scheme has no closed form");
        case MiMethod::direct: return mutual_information(blu_scheme(b), params);
        case MiMethod::recursion: {
          std::vector<double> core = bernoulli_block_pmf(b.U, params.p);
          if (b.L > 0) {
            // Convolve in the linear ramp to finish the core block.
            std::vector<double> ramp = linear_block_pmf(b.L, params.p);
            std::vector<double> merged(core.size() + ramp.size() - 1, 0.0);
            for (std::size_t i = 0; i < core.size(); ++i)
              for (std::size_t j = 0; j < ramp.size(); ++j)
                merged[i + j] += core[i] * ramp[j];
            core = std::move(merged);
          }
          return core_binary_mi(core, b.K - b.U - b.L, params.p);
        }
      }
      break;
    }
  }
  throw std::logic_error("unreachable scheme_mi dispatch");
}

}  // namespace mixmin
