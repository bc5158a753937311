#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "mixmin/bounds.hpp"
#include "mixmin/entropy.hpp"
#include "mixmin/fastmix.hpp"
#include "mixmin/optimize.hpp"
#include "mixmin/relaxation.hpp"
#include "mixmin/schemes.hpp"

namespace py = pybind11;

namespace {

mixmin::MixingScheme make_scheme(const std::vector<std::int64_t>& alpha) {
  mixmin::MixingScheme scheme{alpha};
  scheme.validate();
  return scheme;
}

mixmin::ModelParams make_params(int k, double p) {
  mixmin::ModelParams params{p, k};
  params.validate();
  return params;
}

}  // namespace

PYBIND11_MODULE(_mixmin, m) {
  m.doc() = "exact mutual information for integer-mixed Bernoulli noise";

  m.def("binary_entropy", &mixmin::binary_entropy, py::arg("p"),
        "Shannon entropy of a Bernoulli(p) bit");

  m.def(
      "mutual_information",
      [](const std::vector<std::int64_t>& alpha, double p) {
        auto scheme = make_scheme(alpha);
        return mixmin::mutual_information(scheme, make_params(scheme.K(), p));
      },
      py::arg("alpha"), py::arg("p"),
      "I(X; alpha_0 X + sum alpha_i Z_i) in bits, alpha_0 first");

  m.def(
      "noise_pmf",
      [](const std::vector<std::int64_t>& alpha, double p) {
        auto scheme = make_scheme(alpha);
        auto pmf = mixmin::noise_pmf(scheme, make_params(scheme.K(), p));
        std::vector<std::pair<std::int64_t, double>> rows;
        rows.reserve(pmf.size());
        for (const auto& atom : pmf.atoms())
          rows.emplace_back(atom.support, atom.prob);
        return rows;
      },
      py::arg("alpha"), py::arg("p"),
      "pmf of the noise sum as (support, probability) pairs");

  m.def(
      "scheme_vector",
      [](const std::string& name, int k) {
        switch (mixmin::parse_scheme_name(name)) {
          case mixmin::SchemeName::uniform:
            return mixmin::uniform_scheme(k).alpha;
          case mixmin::SchemeName::binary:
            return mixmin::binary_scheme(k).alpha;
          case mixmin::SchemeName::linear:
            return mixmin::linear_scheme(k).alpha;
          default:
            throw std::invalid_argument(
                "blu vectors need block sizes; use blu_vector");
        }
      },
      py::arg("name"), py::arg("K"));

  m.def(
      "blu_vector",
      [](int k, int u, int l) {
        return mixmin::blu_scheme(mixmin::BluParams{k, u, l}).alpha;
      },
      py::arg("K"), py::arg("U"), py::arg("L"));

  m.def(
      "scheme_mi",
      [](const std::string& name, int k, double p, const std::string& method) {
        return mixmin::scheme_mi(mixmin::parse_scheme_name(name),
                                 make_params(k, p),
                                 mixmin::parse_mi_method(method));
      },
      py::arg("name"), py::arg("K"), py::arg("p"),
      py::arg("method") = "direct");

  m.def(
      "uniform_mi",
      [](int k, double p) {
        return mixmin::uniform_mi_closed_form(make_params(k, p));
      },
      py::arg("K"), py::arg("p"));

  m.def(
      "binary_mi",
      [](int k, double p) {
        return mixmin::binary_mi_closed_form(make_params(k, p));
      },
      py::arg("K"), py::arg("p"));

  m.def(
      "geometric_bound",
      [](int k, double p) {
        return mixmin::geometric_bound_closed_form(make_params(k, p));
      },
      py::arg("K"), py::arg("p"));

  m.def(
      "geometric_bound_direct",
      [](int k, double p, double tail_tol) {
        return mixmin::geometric_bound_direct(make_params(k, p), tail_tol);
      },
      py::arg("K"), py::arg("p"), py::arg("tail_tol") = 1e-15);

  m.def(
      "trivial_bound",
      [](int k, double p) {
        return mixmin::trivial_lower_bound(make_params(k, p));
      },
      py::arg("K"), py::arg("p"));

  m.def(
      "greedy_search",
      [](int k, double p) {
        auto r = mixmin::greedy_search(make_params(k, p));
        return py::make_tuple(r.scheme.alpha, r.mi, r.nodes_explored);
      },
      py::arg("K"), py::arg("p"), "returns (alpha, mi, nodes)");

  m.def(
      "brute_force_optimal",
      [](int k, double p, int max_k_guard) {
        auto r = mixmin::brute_force_optimal(make_params(k, p), max_k_guard);
        return py::make_tuple(r.scheme.alpha, r.mi, r.nodes_explored);
      },
      py::arg("K"), py::arg("p"), py::arg("max_k_guard") = 8,
      "returns (alpha, mi, leaves)");

  m.def(
      "blu_search",
      [](int k, double p) {
        auto r = mixmin::blu_search(make_params(k, p));
        return py::make_tuple(r.u_star, r.l_star, r.mi);
      },
      py::arg("K"), py::arg("p"), "returns (U, L, mi)");

  m.def("uniform_binary_mi", &mixmin::uniform_binary_mi, py::arg("M"),
        py::arg("N"), py::arg("p"),
        "recursion evaluation of the unit-block plus binary-tail scheme");

  m.def("core_binary_mi", &mixmin::core_binary_mi, py::arg("core"),
        py::arg("N"), py::arg("p"));

  m.def(
      "kkt_certificate",
      [](int k, double p, int n) {
        auto cert = mixmin::kkt_certificate(make_params(k, p), n);
        py::dict d;
        d["v1"] = cert.v1;
        d["v2"] = cert.v2;
        d["v3"] = cert.v3;
        d["residuals"] = cert.residuals;
        d["max_residual"] = cert.max_residual;
        return d;
      },
      py::arg("K"), py::arg("p"), py::arg("n"));

  m.def(
      "perturbation_bound",
      [](int k, double p, int n) {
        return mixmin::perturbation_bound(make_params(k, p), n);
      },
      py::arg("K"), py::arg("p"), py::arg("n"),
      "certified lower bound on the truncated relaxation, in -H units");

  m.def(
      "relaxation_solve",
      [](int k, double p, int n, double tol, int max_iterations) {
        auto r = mixmin::numeric_relaxation_solve(make_params(k, p), n, tol,
                                                  max_iterations);
        return py::make_tuple(r.q, r.objective, r.iterations, r.residual);
      },
      py::arg("K"), py::arg("p"), py::arg("n"), py::arg("tol") = 1e-7,
      py::arg("max_iterations") = 300000,
      "returns (q, objective, iterations, residual)");
}
