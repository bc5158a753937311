"""Exact mutual information for integer-mixed Bernoulli noise.

Thin re-export of the compiled core. Coefficient vectors always list
alpha_0 (the signal multiplier) first; probabilities are in bits.
"""

from ._mixmin import (
    binary_entropy,
    binary_mi,
    blu_search,
    blu_vector,
    brute_force_optimal,
    core_binary_mi,
    geometric_bound,
    geometric_bound_direct,
    greedy_search,
    kkt_certificate,
    mutual_information,
    noise_pmf,
    perturbation_bound,
    relaxation_solve,
    scheme_mi,
    scheme_vector,
    trivial_bound,
    uniform_binary_mi,
    uniform_mi,
)

__all__ = [
    "binary_entropy",
    "binary_mi",
    "blu_search",
    "blu_vector",
    "brute_force_optimal",
    "core_binary_mi",
    "geometric_bound",
    "geometric_bound_direct",
    "greedy_search",
    "kkt_certificate",
    "mutual_information",
    "noise_pmf",
    "perturbation_bound",
    "relaxation_solve",
    "scheme_mi",
    "scheme_vector",
    "trivial_bound",
    "uniform_binary_mi",
    "uniform_mi",
]

__version__ = "0.1.0"
