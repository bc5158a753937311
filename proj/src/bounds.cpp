#include "mixmin/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "detail.hpp"
#include "mixmin/entropy.hpp"

namespace mixmin {

namespace {

double check_minor_allele(const ModelParams& params) {
  params.validate();
  if (params.p > 0.5)
    throw std::invalid_argument(
        "the geometric bound assumes the minor-allele convention p <= 0.5");
  return std::pow(1.0 - params.p, params.K);  // beta
}

}  // namespace

Bits geometric_bound_closed_form(const ModelParams& params) {
  double beta = check_minor_allele(params);
  const double p = params.p;
  if (p == 0.0) return 0.0;
  const double a = (1.0 - p) * (1.0 - beta);
  const double b = p;
  const double s = a + b;  // = 1 - (1-p)^{K+1}
  double v = binary_entropy(p) - b * std::log2(s / b);
  if (a > 0.0) v -= a * std::log2(s / a);
  return v;
}

Bits geometric_bound_direct(const ModelParams& params, double tail_tol) {
  double beta = check_minor_allele(params);
  if (!(tail_tol > 0.0))
    throw std::invalid_argument("tail tolerance must be positive");
  const double p = params.p;
  if (p == 0.0) return 0.0;

  // Walk outcomes of X + G until the geometric tail is negligible. Each
  // dropped outcome can contribute at most its own mass, so the truncation
  // error is below the remaining tail.
  detail::KahanSum h_cond;
  double g_prev = 0.0;          // Pr(G = y - 1)
  double tail = 1.0;            // Pr(G >= y)
  for (std::int64_t y = 0; tail >= tail_tol || y < 2; ++y) {
    double g = beta * tail;     // Pr(G = y) = beta (1-beta)^y
    h_cond.add(detail::outcome_entropy((1.0 - p) * g, p * g_prev));
    g_prev = g;
    tail *= 1.0 - beta;
  }
  return binary_entropy(p) - h_cond.value();
}

Bits trivial_lower_bound(const ModelParams& params) {
  params.validate();
  const double p = params.p;
  return binary_entropy(p) - 1.0 + std::pow(p, params.K + 1) +
         std::pow(1.0 - p, params.K + 1);
}

IntegerPmf geometric_noise_pmf(const ModelParams& params, double tail_tol) {
  double beta = check_minor_allele(params);
  if (!(tail_tol > 0.0))
    throw std::invalid_argument("tail tolerance must be positive");
  std::vector<IntegerPmf::Atom> atoms;
  double tail = 1.0;
  for (std::int64_t i = 0; tail >= tail_tol; ++i) {
    atoms.push_back({i, beta * tail});
    tail *= 1.0 - beta;
  }
  return IntegerPmf::from_atoms(std::move(atoms), tail);
}

}  // namespace mixmin
