#include "mixmin/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "detail.hpp"
#include "mixmin/entropy.hpp"

namespace mixmin {

namespace {

// Floor on a single log2 factor inside the gradient. The derivative of the
// objective diverges only logarithmically at the boundary and the minimizer
// is strictly interior, so the floor never binds at convergence; it keeps
// boundary proposals on the same scale as interior ones.
constexpr double kLogTermFloor = -64.0;

double floored_log_ratio(double num, double den) {
  if (!(num > 0.0)) return kLogTermFloor;
  return std::max(std::log2(num / den), kLogTermFloor);
}

void check_relaxation_params(const ModelParams& params) {
  params.validate();
  if (params.p > 0.5)
    throw std::invalid_argument(
        "the relaxation assumes the minor-allele convention p <= 0.5");
}

struct Multipliers {
  double v1, v2, v3;
};

// Stationarity multipliers of the geometric candidate. D is the mass of the
// one-step outcome kernel at the candidate's decay rate.
Multipliers candidate_multipliers(const ModelParams& params) {
  const double p = params.p;
  const double beta = std::pow(1.0 - p, params.K);
  const double d = (1.0 - p) * (1.0 - beta) + p;
  Multipliers m;
  m.v2 = (1.0 - p) * std::log2((1.0 - p) * (1.0 - beta) / d);
  m.v3 = p * std::log2(p / d);
  m.v1 = -(m.v2 + m.v3);
  return m;
}

// Projection onto {y >= 0, sum y = c} by the sorted-threshold rule.
void project_simplex(std::vector<double>& x, double c) {
  std::vector<double> u(x);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    double t = (cumulative - c) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  for (double& v : x) v = std::max(0.0, v - theta);
}

// Gradient of the truncated objective in the free coordinates q_1..q_n,
// with q_0 = beta and q_{n+1} = 0 held fixed.
void truncated_gradient(const std::vector<double>& q, double p,
                        std::vector<double>& g) {
  const int n = static_cast<int>(q.size()) - 2;
  g.resize(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    double a = (1.0 - p) * q[static_cast<std::size_t>(j)];
    double b = p * q[static_cast<std::size_t>(j - 1)];
    double a2 = (1.0 - p) * q[static_cast<std::size_t>(j + 1)];
    double b2 = p * q[static_cast<std::size_t>(j)];
    g[static_cast<std::size_t>(j - 1)] =
        (1.0 - p) * floored_log_ratio(a, a + b) +
        p * floored_log_ratio(b2, a2 + b2);
  }
}

}  // namespace

Bits relaxed_objective(std::span<const double> q, const ModelParams& params) {
  check_relaxation_params(params);
  if (q.size() < 2)
    throw std::invalid_argument("relaxed pmf needs at least two atoms");
  for (double v : q)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("relaxed pmf entries must be finite and >= 0");

  const double p = params.p;
  detail::KahanSum total;
  for (std::size_t j = 1; j < q.size(); ++j) {
    double a = (1.0 - p) * q[j];
    double b = p * q[j - 1];
    double s = a + b;
    if (a > 0.0) total.add(a * std::log2(a / s));
    if (b > 0.0) total.add(b * std::log2(b / s));
  }
  return total.value();
}

RelaxationInstance kkt_candidate(const ModelParams& params, int n) {
  check_relaxation_params(params);
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  const double beta = std::pow(1.0 - params.p, params.K);
  RelaxationInstance inst;
  inst.params = params;
  inst.n = n;
  inst.q.resize(static_cast<std::size_t>(n) + 2);
  double v = beta;
  for (auto& qj : inst.q) {
    qj = v;
    v *= 1.0 - beta;
  }
  inst.epsilon = inst.q.back();
  return inst;
}

KktCertificate kkt_certificate(const ModelParams& params, int n) {
  check_relaxation_params(params);
  if (params.p == 0.0)
    throw std::invalid_argument("the certificate needs p > 0");
  RelaxationInstance inst = kkt_candidate(params, n);
  const double p = params.p;
  const auto& q = inst.q;
  Multipliers m = candidate_multipliers(params);

  KktCertificate cert;
  cert.v1 = m.v1;
  cert.v2 = m.v2;
  cert.v3 = m.v3;
  cert.residuals.resize(static_cast<std::size_t>(n) + 2);

  auto low_term = [&](int j) {
    // d/dq_j of the pair (q_j, q_{j+1}) where q_j enters with weight p
    return p * std::log2(p * q[static_cast<std::size_t>(j)] /
                         ((1.0 - p) * q[static_cast<std::size_t>(j + 1)] +
                          p * q[static_cast<std::size_t>(j)]));
  };
  auto high_term = [&](int j) {
    // d/dq_j of the pair (q_{j-1}, q_j) where q_j enters with weight 1-p
    return (1.0 - p) * std::log2((1.0 - p) * q[static_cast<std::size_t>(j)] /
                                 ((1.0 - p) * q[static_cast<std::size_t>(j)] +
                                  p * q[static_cast<std::size_t>(j - 1)]));
  };

  cert.residuals[0] = low_term(0) + m.v1 + m.v2;
  for (int j = 1; j <= n; ++j)
    cert.residuals[static_cast<std::size_t>(j)] =
        low_term(j) + high_term(j) + m.v1;
  cert.residuals[static_cast<std::size_t>(n) + 1] =
      high_term(n + 1) + m.v1 + m.v3;

  for (double r : cert.residuals)
    cert.max_residual = std::max(cert.max_residual, std::abs(r));
  return cert;
}

Bits perturbation_bound(const ModelParams& params, int n) {
  check_relaxation_params(params);
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (params.p == 0.0)
    throw std::invalid_argument("the perturbation bound needs p > 0");
  const double beta = std::pow(1.0 - params.p, params.K);
  Multipliers m = candidate_multipliers(params);
  RelaxationInstance inst = kkt_candidate(params, n);
  Bits u_n = relaxed_objective(inst.q, params);
  return u_n - m.v1 * std::pow(1.0 - beta, n + 2) +
         m.v3 * beta * std::pow(1.0 - beta, n + 1);
}

SolveResult numeric_relaxation_solve(const ModelParams& params, int n,
                                     double tol, int max_iterations) {
  check_relaxation_params(params);
  if (params.p == 0.0)
    throw std::invalid_argument("the relaxation solver needs p > 0");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_iterations < 1)
    throw std::invalid_argument("max_iterations must be >= 1");

  const double p = params.p;
  const double beta = std::pow(1.0 - params.p, params.K);
  const double mass = 1.0 - beta;

  // Start from the geometric candidate, hard-truncated and renormalized.
  std::vector<double> q = kkt_candidate(params, n).q;
  q.back() = 0.0;
  double inner_sum = std::accumulate(q.begin() + 1, q.end() - 1, 0.0);
  for (std::size_t j = 1; j + 1 < q.size(); ++j) q[j] *= mass / inner_sum;

  auto objective = [&](const std::vector<double>& full) {
    return relaxed_objective(std::span<const double>(full), params);
  };

  auto fill_inner = [&](std::vector<double>& full,
                        const std::vector<double>& inner) {
    std::copy(inner.begin(), inner.end(), full.begin() + 1);
  };

  // Spectral projected gradient: Barzilai-Borwein step, backtracking along
  // the projected direction against the worst of the last few values. The
  // nonmonotone window is what lets the spectral step survive the poor
  // conditioning of the entropy terms at small q.
  constexpr double kGamma = 1e-4;
  constexpr std::size_t kWindow = 10;
  constexpr double kStepMin = 1e-10;
  constexpr double kStepMax = 1e4;

  std::vector<double> x(q.begin() + 1, q.end() - 1);
  std::vector<double> g, g_next, d, trial(q), probe, x_next;
  std::vector<double> recent;

  double f = objective(q);
  recent.push_back(f);
  truncated_gradient(q, p, g);

  double g_inf = 0.0;
  for (double v : g) g_inf = std::max(g_inf, std::abs(v));
  double step = g_inf > 0.0 ? std::clamp(1.0 / g_inf, kStepMin, kStepMax) : 1.0;

  double residual = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    // Optimality measure: displacement of a unit projected-gradient probe.
    probe = x;
    for (std::size_t j = 0; j < probe.size(); ++j) probe[j] -= g[j];
    project_simplex(probe, mass);
    residual = 0.0;
    for (std::size_t j = 0; j < probe.size(); ++j)
      residual = std::max(residual, std::abs(probe[j] - x[j]));
    if (residual < tol) {
      SolveResult out;
      out.q = q;
      out.objective = f;
      out.iterations = it;
      out.residual = residual;
      return out;
    }

    d = x;
    for (std::size_t j = 0; j < d.size(); ++j) d[j] -= step * g[j];
    project_simplex(d, mass);
    double slope = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      d[j] -= x[j];
      slope += g[j] * d[j];
    }

    double f_ref = *std::max_element(recent.begin(), recent.end());
    double alpha = 1.0;
    double f_next = f;
    bool moved = false;
    for (;;) {
      x_next = x;
      for (std::size_t j = 0; j < x.size(); ++j) x_next[j] += alpha * d[j];
      fill_inner(trial, x_next);
      f_next = objective(trial);
      if (f_next <= f_ref + kGamma * alpha * slope) {
        moved = true;
        break;
      }
      if (alpha < 1e-18) break;
      alpha *= 0.5;
    }

    if (!moved) {
      // Direction was useless at every scale; retry from a shorter spectral
      // step instead of accepting an ascent.
      step = std::max(step * 0.1, kStepMin);
      continue;
    }

    fill_inner(q, x_next);
    truncated_gradient(q, p, g_next);

    double ss = 0.0, sy = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      double s = x_next[j] - x[j];
      double y = g_next[j] - g[j];
      ss += s * s;
      sy += s * y;
    }
    step = sy > 0.0 ? std::clamp(ss / sy, kStepMin, kStepMax) : kStepMax;

    x.swap(x_next);
    g.swap(g_next);
    f = f_next;
    recent.push_back(f);
    if (recent.size() > kWindow) recent.erase(recent.begin());
  }

  throw ConvergenceError(
      "projected gradient stalled at residual " + std::to_string(residual) +
      " (tol " + std::to_string(tol) + ") after " +
      std::to_string(max_iterations) + " iterations");
}

}  // namespace mixmin
