#include "mixmin/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail.hpp"

namespace mixmin {

void ModelParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p must lie in [0, 1]");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
}

void MixingScheme::validate() const {
  if (alpha.empty())
    throw std::invalid_argument("scheme needs at least alpha_0");
  for (std::int64_t a : alpha)
    if (a < 1)
      throw std::invalid_argument("mixing coefficients must be positive integers");
}

Bits binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

namespace {

void check_pair(const MixingScheme& scheme, const ModelParams& params) {
  params.validate();
  scheme.validate();
  if (scheme.K() != params.K)
    throw std::invalid_argument("scheme has " + std::to_string(scheme.K()) +
                                " noise coefficients but params.K = " +
                                std::to_string(params.K));
}

}  // namespace

IntegerPmf noise_pmf(const MixingScheme& scheme, const ModelParams& params,
                     std::size_t guard) {
  check_pair(scheme, params);
  // Ascending order keeps intermediate supports as small as possible.
  std::vector<std::int64_t> tail(scheme.alpha.begin() + 1, scheme.alpha.end());
  std::sort(tail.begin(), tail.end());
  IntegerPmf pmf = IntegerPmf::point_mass(0);
  for (std::int64_t a : tail) pmf = pmf.convolve_bernoulli(a, params.p, guard);
  return pmf;
}

Bits mi_given_noise(const IntegerPmf& q, double p, std::int64_t alpha0) {
  if (alpha0 < 1) throw std::invalid_argument("alpha_0 must be >= 1");
  if (q.empty()) throw std::invalid_argument("noise pmf is empty");
  const auto& atoms = q.atoms();
  const std::size_t n = atoms.size();
  detail::KahanSum h_cond;
  // Outcomes are the union of the noise support and its alpha0-shift; walk
  // both in one pass.
  std::size_t i = 0, j = 0;
  while (i < n || j < n) {
    std::int64_t yi = i < n ? atoms[i].support
                            : std::numeric_limits<std::int64_t>::max();
    std::int64_t yj = j < n ? atoms[j].support + alpha0
                            : std::numeric_limits<std::int64_t>::max();
    std::int64_t y = std::min(yi, yj);
    double a = 0.0, b = 0.0;
    if (yi == y) a = (1.0 - p) * atoms[i++].prob;  // X = 0 explanation
    if (yj == y) b = p * atoms[j++].prob;          // X = 1 explanation
    h_cond.add(detail::outcome_entropy(a, b));
  }
  double v = binary_entropy(p) - h_cond.value();
  if (v < 0.0 && v > -1e-12) v = 0.0;  // rounding noise on exact-zero cases
  return v;
}

Bits mutual_information(const MixingScheme& scheme, const ModelParams& params,
                        std::size_t guard) {
  return mi_given_noise(noise_pmf(scheme, params, guard), params.p,
                        scheme.alpha0());
}

Bits posterior_entropy_at(std::int64_t y, const MixingScheme& scheme,
                          const ModelParams& params) {
  IntegerPmf q = noise_pmf(scheme, params);
  const double p = params.p;
  double a = (1.0 - p) * q.prob(y);
  double b = p * q.prob(y - scheme.alpha0());
  double s = a + b;
  if (s <= 0.0)
    throw std::invalid_argument("outcome " + std::to_string(y) +
                                " is not reachable under this scheme");
  if (a <= 0.0 || b <= 0.0) return 0.0;  // a single X value explains y
  return binary_entropy(b / s);
}

}  // namespace mixmin
