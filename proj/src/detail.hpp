#pragma once

#include <cmath>

namespace mixmin::detail {

// Compensated accumulator; the closed forms and long truncated sums need
// better than plain left-to-right error growth.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Contribution of one outcome to H(X | Y): the mass pair (a, b) is
// ((1-p) * Pr(noise = y), p * Pr(noise = y - alpha0)). Outcomes explained by
// a single value of X contribute exactly zero.
inline double outcome_entropy(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  double s = a + b;
  return a * std::log2(s / a) + b * std::log2(s / b);
}

}  // namespace mixmin::detail
