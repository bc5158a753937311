#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixmin/model.hpp"

namespace mixmin {

// Continuous relaxation behind the geometric bound.
//
// Noise is relaxed from integer mixing sums to an arbitrary pmf Q on
// {0, ..., n+1} whose minimum-support atom is pinned to beta = (1-p)^K
// (the probability that every noise draw is zero, which any scheme keeps).
// Writing q_j = Pr(Q = j), the objective
//
//   f0(q) = sum_{j=1..n+1} [ (1-p) q_j log2((1-p)q_j / s_j)
//                          + p q_{j-1} log2(p q_{j-1} / s_j) ],
//   s_j = (1-p) q_j + p q_{j-1},
//
// equals -H(X | X + Q) whenever q sums to one, so minimizing f0 lower-bounds
// every scheme's MI by H(p) + f0. The truncated geometric pmf
// q_j = beta(1-beta)^j solves the KKT system of the problem whose far-end
// constraints are perturbed to match it, and a Lagrangian perturbation
// argument carries its value back to the hard-truncated problem.

class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

struct RelaxationInstance {
  ModelParams params;
  int n = 0;             // free interior coordinates q_1..q_n
  double epsilon = 0.0;  // value pinned at the far end q_{n+1}
  std::vector<double> q; // length n+2, q[0] = beta
};

// f0 above; q is any nonnegative vector (length >= 2), in bits.
Bits relaxed_objective(std::span<const double> q, const ModelParams& params);

// Truncated geometric point q_j = beta(1-beta)^j, j = 0..n+1.
RelaxationInstance kkt_candidate(const ModelParams& params, int n);

// Multipliers for the equality constraints (total mass, pinned q_0, pinned
// q_{n+1}) and the stationarity residual at each coordinate of the geometric
// candidate. All three residual families vanish analytically; the certificate
// reports what floating point leaves behind.
struct KktCertificate {
  double v1 = 0.0;  // total-mass multiplier
  double v2 = 0.0;  // q_0 multiplier
  double v3 = 0.0;  // q_{n+1} multiplier
  std::vector<double> residuals;  // one per coordinate, j = 0..n+1
  double max_residual = 0.0;
};
KktCertificate kkt_certificate(const ModelParams& params, int n);

// Right-hand side of the perturbation inequality: a certified lower bound on
// the truncated problem's optimum V_n, in -H units (negative). H(p) plus this
// value lower-bounds every scheme's MI once n covers the scheme's support,
// and it converges to geometric_bound_closed_form - H(p) at rate (1-beta)^n.
Bits perturbation_bound(const ModelParams& params, int n);

struct SolveResult {
  std::vector<double> q;  // length n+2, ends pinned to (beta, 0)
  Bits objective = 0.0;
  int iterations = 0;
  double residual = 0.0;  // projected-gradient residual at exit
};

// Numerical minimizer for the truncated problem (q_{n+1} = 0): projected
// gradient on the simplex {q_1..q_n >= 0, sum = 1 - beta} with a
// Barzilai-Borwein step seed and halving line search. The objective is
// convex, so any exit point sits between perturbation_bound and the
// geometric candidate's value. Throws ConvergenceError if the residual
// fails to reach tol within max_iterations.
SolveResult numeric_relaxation_solve(const ModelParams& params, int n,
                                     double tol = 1e-7,
                                     int max_iterations = 300000);

}  // namespace mixmin
