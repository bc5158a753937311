#include "mixmin/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "detail.hpp"
#include "mixmin/entropy.hpp"
#include "mixmin/fastmix.hpp"
#include "mixmin/schemes.hpp"

namespace mixmin {

namespace {

// The canonical search space keeps noise supports contiguous from zero
// (every coefficient obeys the superincreasing cap), so the searches work on
// flat arrays instead of sparse atom lists.

// H(X | X + W) for dense noise w over {0, ..., S}.
double dense_cond_entropy(const std::vector<double>& w, double p) {
  detail::KahanSum h;
  const std::size_t n = w.size();
  for (std::size_t y = 0; y <= n; ++y) {
    double a = y < n ? (1.0 - p) * w[y] : 0.0;
    double b = y > 0 ? p * w[y - 1] : 0.0;
    h.add(detail::outcome_entropy(a, b));
  }
  return h.value();
}

std::vector<double> dense_convolve(const std::vector<double>& w,
                                   std::int64_t a, double p) {
  std::vector<double> out(w.size() + static_cast<std::size_t>(a), 0.0);
  const double q0 = 1.0 - p;
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = q0 * w[i];
  for (std::size_t i = 0; i < w.size(); ++i)
    out[i + static_cast<std::size_t>(a)] += p * w[i];
  return out;
}

// Candidate evaluation state for one greedy step. With q the noise so far
// (support {0..S}), adding a coefficient a splits the outcome axis into a
// low region whose contributions are (1-p) times the old ones, a high region
// scaled by p, and a seam of S + 2 - a outcomes that needs fresh work.
// Prefix sums over the old contributions make the scaled regions O(1).
struct StepTables {
  std::vector<double> cpre;  // cpre[t] = sum_{y<=t} c_q(y), t = 0..S+1
  double ctot = 0.0;

  void build(const std::vector<double>& w, double p) {
    const std::size_t n = w.size();
    cpre.resize(n + 1);
    double run = 0.0;
    for (std::size_t y = 0; y <= n; ++y) {
      double a = y < n ? (1.0 - p) * w[y] : 0.0;
      double b = y > 0 ? p * w[y - 1] : 0.0;
      run += detail::outcome_entropy(a, b);
      cpre[y] = run;
    }
    ctot = run;
  }
};

// H(X | X + Q + a Z) without materializing the convolution.
double cond_entropy_with_tap(const std::vector<double>& w, double p,
                             std::int64_t a, const StepTables& tables) {
  const std::int64_t s_max = static_cast<std::int64_t>(w.size()) - 1;
  // a never exceeds s_max + 1: the candidate cap is 1 + sum of the tail.
  double low = tables.cpre[static_cast<std::size_t>(a - 1)];
  double high = tables.ctot - tables.cpre[static_cast<std::size_t>(s_max + 1 - a)];
  const double q0 = 1.0 - p;
  auto wa = [&](std::int64_t t) {
    double v = 0.0;
    if (t >= 0 && t <= s_max) v = q0 * w[static_cast<std::size_t>(t)];
    if (t >= a && t - a <= s_max) v += p * w[static_cast<std::size_t>(t - a)];
    return v;
  };
  double seam = 0.0;
  double prev = wa(a - 1);
  for (std::int64_t y = a; y <= s_max + 1; ++y) {
    double cur = wa(y);
    seam += detail::outcome_entropy(q0 * cur, p * prev);
    prev = cur;
  }
  return q0 * low + p * high + seam;
}

}  // namespace

SearchResult greedy_search(const ModelParams& params) {
  params.validate();
  const double p = params.p;

  std::vector<std::int64_t> tail{1};
  std::vector<double> w{1.0 - p, p};  // noise pmf of the tail so far
  std::uint64_t nodes = 1;
  StepTables tables;

  for (int j = 2; j <= params.K; ++j) {
    std::int64_t cap = 1 + std::accumulate(tail.begin(), tail.end(), std::int64_t{0});
    tables.build(w, p);
    double best_h = -1.0;
    std::int64_t best_a = 1;
    for (std::int64_t a = 1; a <= cap; ++a) {
      double h = cond_entropy_with_tap(w, p, a, tables);
      ++nodes;
      // Minimizing MI = maximizing conditional entropy; strict comparison
      // keeps the smallest candidate on exact ties.
      if (h > best_h) {
        best_h = h;
        best_a = a;
      }
    }
    tail.push_back(best_a);
    w = dense_convolve(w, best_a, p);
  }

  std::sort(tail.begin(), tail.end());
  MixingScheme scheme{{1}};
  scheme.alpha.insert(scheme.alpha.end(), tail.begin(), tail.end());
  return {scheme, mutual_information(scheme, params), nodes};
}

void for_each_canonical_tail(
    int K, const std::function<void(std::span<const std::int64_t>)>& visit) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  std::vector<std::int64_t> tail{1};
  std::int64_t sum = 1;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == K) {
      visit(std::span<const std::int64_t>(tail));
      return;
    }
    std::int64_t cap = 1 + sum;
    for (std::int64_t a = tail.back(); a <= cap; ++a) {
      tail.push_back(a);
      sum += a;
      self(self, depth + 1);
      sum -= a;
      tail.pop_back();
    }
  };
  rec(rec, 1);
}

SearchResult brute_force_optimal(const ModelParams& params, int max_k_guard) {
  params.validate();
  if (params.K > max_k_guard)
    throw std::invalid_argument(
        "brute force is guarded at K <= " + std::to_string(max_k_guard) +
        "; raise the guard explicitly to go further");
  const double p = params.p;

  // Depth-first over canonical tails with the noise pmf carried along the
  // path; lexicographic order makes the tie-break implicit.
  std::vector<std::vector<double>> stack(static_cast<std::size_t>(params.K) + 1);
  stack[1] = {1.0 - p, p};
  std::vector<std::int64_t> tail{1};
  std::int64_t sum = 1;
  double best_h = -1.0;
  std::vector<std::int64_t> best_tail;
  std::uint64_t nodes = 0;

  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == params.K) {
      ++nodes;
      double h = dense_cond_entropy(stack[static_cast<std::size_t>(depth)], p);
      if (h > best_h) {
        best_h = h;
        best_tail = tail;
      }
      return;
    }
    std::int64_t cap = 1 + sum;
    for (std::int64_t a = tail.back(); a <= cap; ++a) {
      stack[static_cast<std::size_t>(depth) + 1] =
          dense_convolve(stack[static_cast<std::size_t>(depth)], a, p);
      tail.push_back(a);
      sum += a;
      self(self, depth + 1);
      sum -= a;
      tail.pop_back();
    }
  };
  rec(rec, 1);

  MixingScheme scheme{{1}};
  scheme.alpha.insert(scheme.alpha.end(), best_tail.begin(), best_tail.end());
  return {scheme, mutual_information(scheme, params), nodes};
}

BluSearchResult blu_search(const ModelParams& params, BluEval eval) {
  params.validate();
  BluSearchResult best;
  best.mi = std::numeric_limits<double>::infinity();
  for (int u = 0; u <= params.K; ++u) {
    for (int l = 0; l + u <= params.K; ++l) {
      BluParams blu{params.K, u, l};
      double v = scheme_mi(SchemeName::blu, params,
                           eval == BluEval::recursion ? MiMethod::recursion
                                                      : MiMethod::direct,
                           blu);
      ++best.nodes_explored;
      // Ascending (u, l) iteration plus strict comparison implements the
      // smaller-U-then-smaller-L tie-break.
      if (v < best.mi) {
        best.mi = v;
        best.u_star = u;
        best.l_star = l;
      }
    }
  }
  return best;
}

}  // namespace mixmin
