#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "mixmin/model.hpp"

namespace mixmin {

struct SearchResult {
  MixingScheme scheme;
  Bits mi = 0.0;
  std::uint64_t nodes_explored = 0;  // candidate evaluations
};

// Sequential construction: alpha_0 = alpha_1 = 1, then each new coefficient
// is the argmin over {1, ..., 1 + sum of the tail so far} of the partial
// mutual information. Choices above that cap cannot lower the MI, so the
// candidate set is complete. Exact ties go to the smallest candidate.
// The returned tail is sorted ascending (MI is permutation invariant).
SearchResult greedy_search(const ModelParams& params);

// Visits every canonical tail (alpha_1, ..., alpha_K): alpha_1 = 1,
// nondecreasing, and alpha_j <= 1 + sum_{i<j} alpha_i. Scaling, permutation
// and the cap argument reduce the full integer search space to this set.
void for_each_canonical_tail(
    int K, const std::function<void(std::span<const std::int64_t>)>& visit);

// Exhaustive minimum over the canonical set; ties resolve to the
// lexicographically smallest tail. Guarded because the set grows quickly.
SearchResult brute_force_optimal(const ModelParams& params,
                                 int max_k_guard = 8);

struct BluSearchResult {
  int l_star = 0;
  int u_star = 0;
  Bits mi = 0.0;
  std::uint64_t nodes_explored = 0;
};

enum class BluEval {
  recursion,  // windowed recursion per grid point
  direct,     // full convolution, for cross-checking
};

// Best (L, U) pair over L + U <= K. Ties prefer smaller U, then smaller L.
BluSearchResult blu_search(const ModelParams& params,
                           BluEval eval = BluEval::recursion);

}  // namespace mixmin
