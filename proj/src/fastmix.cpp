#include "mixmin/fastmix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "detail.hpp"
#include "mixmin/entropy.hpp"

namespace mixmin {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p must lie in [0, 1]");
}

std::vector<double> dense_shift_convolve(const std::vector<double>& w,
                                         std::int64_t a, double p) {
  std::vector<double> out(w.size() + static_cast<std::size_t>(a), 0.0);
  for (std::size_t s = 0; s < w.size(); ++s) {
    out[s] += w[s] * (1.0 - p);
    out[s + static_cast<std::size_t>(a)] += w[s] * p;
  }
  return out;
}

// Outcome contribution at t for dense noise w: the y-th term of H(X | Y).
double outcome_term(const std::vector<double>& w, std::int64_t t, double p) {
  double a = t >= 0 && t < static_cast<std::int64_t>(w.size())
                 ? (1.0 - p) * w[static_cast<std::size_t>(t)]
                 : 0.0;
  double b = t >= 1 && t <= static_cast<std::int64_t>(w.size())
                 ? p * w[static_cast<std::size_t>(t) - 1]
                 : 0.0;
  return detail::outcome_entropy(a, b);
}

}  // namespace

std::vector<double> bernoulli_block_pmf(int M, double p) {
  if (M < 0) throw std::invalid_argument("block size must be >= 0");
  check_probability(p);
  std::vector<double> w{1.0};
  for (int i = 0; i < M; ++i) w = dense_shift_convolve(w, 1, p);
  return w;
}

std::vector<double> linear_block_pmf(int L, double p) {
  if (L < 0) throw std::invalid_argument("block size must be >= 0");
  check_probability(p);
  std::vector<double> w{1.0};
  for (int i = 1; i <= L; ++i) w = dense_shift_convolve(w, i, p);
  return w;
}

RecursionState seed_recursion(const std::vector<double>& core, int N,
                              double p) {
  check_probability(p);
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  if (core.empty()) throw std::invalid_argument("core pmf must be non-empty");
  double mass = 0.0;
  for (double v : core) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("core pmf entries must be finite and >= 0");
    mass += v;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("core pmf must sum to 1");

  const std::int64_t w_width = static_cast<std::int64_t>(core.size());

  RecursionState state;
  state.p = p;
  state.m = w_width - 1;

  // Smallest level whose increment clears the edge windows; every later
  // doubling is then an O(W) step.
  int n1 = 0;
  while ((std::int64_t{1} << n1) < 2 * w_width) ++n1;
  if (n1 > N) n1 = N;
  state.n1 = n1;
  state.n = n1;

  std::vector<double> w = core;
  for (int j = 1; j <= n1; ++j)
    w = dense_shift_convolve(w, std::int64_t{1} << (j - 1), p);

  detail::KahanSum h;
  const std::int64_t len = static_cast<std::int64_t>(w.size());
  for (std::int64_t t = 0; t <= len; ++t) h.add(outcome_term(w, t, p));
  state.h_n = h.value();

  if (len >= 2 * w_width - 1) {
    detail::KahanSum lo, hi;
    for (std::int64_t t = 0; t < w_width; ++t) lo.add(outcome_term(w, t, p));
    for (std::int64_t t = len - w_width + 1; t <= len; ++t)
      hi.add(outcome_term(w, t, p));
    state.h_low = lo.value();
    state.h_high = hi.value();
    state.d_low.assign(w.begin(), w.begin() + (2 * w_width - 1));
    state.d_high.assign(w.end() - (2 * w_width - 1), w.end());
  }
  return state;
}

void recursion_step(RecursionState& state) {
  const std::int64_t w_width = state.m + 1;
  const bool cleared =
      state.n >= 62 || (std::int64_t{1} << state.n) >= 2 * w_width - 1;
  if (!cleared || state.d_low.empty())
    throw std::logic_error(
        "recursion step at level " + std::to_string(state.n) +
        " has not cleared the window width " + std::to_string(2 * w_width - 1));

  const double p = state.p;
  const int k = state.n - state.n1;
  const double flo = std::pow(1.0 - p, k);
  const double fhi = std::pow(p, k);

  const double lo_sum = state.h_low * flo;
  const double hi_sum = state.h_high * fhi;

  // Fresh noise values across the seam, w_{n+1}(2^n - 1 + j) for j = 0..W.
  std::vector<double> cw(static_cast<std::size_t>(w_width) + 1, 0.0);
  for (std::int64_t j = 0; j <= w_width; ++j) {
    double high_part = state.m + j <= 2 * state.m
                           ? state.d_high[static_cast<std::size_t>(state.m + j)] * fhi
                           : 0.0;
    double low_part =
        j >= 1 ? state.d_low[static_cast<std::size_t>(j - 1)] * flo : 0.0;
    cw[static_cast<std::size_t>(j)] = (1.0 - p) * high_part + p * low_part;
  }

  detail::KahanSum center;
  for (std::int64_t j = 0; j < w_width; ++j)
    center.add(detail::outcome_entropy(
        (1.0 - p) * cw[static_cast<std::size_t>(j + 1)],
        p * cw[static_cast<std::size_t>(j)]));

  state.h_n += center.value() - (1.0 - p) * hi_sum - p * lo_sum;
  ++state.n;
}

std::int64_t recursion_max_outcome(const RecursionState& state) {
  if (state.n > 62)
    throw std::overflow_error(
        "outcome range exceeds 64-bit at level " + std::to_string(state.n));
  return state.m + (std::int64_t{1} << state.n);
}

Bits uniform_binary_mi(int M, int N, double p) {
  return core_binary_mi(bernoulli_block_pmf(M, p), N, p);
}

Bits core_binary_mi(const std::vector<double>& core, int N, double p) {
  RecursionState state = seed_recursion(core, N, p);
  while (state.n < N) recursion_step(state);
  Bits mi = binary_entropy(p) - state.h_n;
  if (mi < 0.0 && mi > -1e-12) mi = 0.0;
  return mi;
}

}  // namespace mixmin
