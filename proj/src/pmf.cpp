#include "mixmin/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixmin {

IntegerPmf IntegerPmf::point_mass(std::int64_t support) {
  IntegerPmf pmf;
  pmf.atoms_.push_back({support, 1.0});
  return pmf;
}

IntegerPmf IntegerPmf::from_atoms(std::vector<Atom> atoms, double tail_mass) {
  if (tail_mass < 0.0)
    throw std::invalid_argument("pmf tail mass must be nonnegative");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.support < y.support; });
  IntegerPmf pmf;
  pmf.tail_mass_ = tail_mass;
  for (const Atom& a : atoms) {
    if (a.prob < 0.0 || !std::isfinite(a.prob))
      throw std::invalid_argument("pmf atom probabilities must be finite and nonnegative");
    if (a.prob == 0.0) continue;
    if (!pmf.atoms_.empty() && pmf.atoms_.back().support == a.support)
      pmf.atoms_.back().prob += a.prob;
    else
      pmf.atoms_.push_back(a);
  }
  return pmf;
}

double IntegerPmf::prob(std::int64_t support) const {
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), support,
      [](const Atom& a, std::int64_t s) { return a.support < s; });
  if (it != atoms_.end() && it->support == support) return it->prob;
  return 0.0;
}

std::int64_t IntegerPmf::min_support() const {
  if (atoms_.empty()) throw std::logic_error("empty pmf has no support");
  return atoms_.front().support;
}

std::int64_t IntegerPmf::max_support() const {
  if (atoms_.empty()) throw std::logic_error("empty pmf has no support");
  return atoms_.back().support;
}

double IntegerPmf::total_mass() const {
  double m = tail_mass_;
  for (const Atom& a : atoms_) m += a.prob;
  return m;
}

IntegerPmf IntegerPmf::convolve_bernoulli(std::int64_t a, double p,
                                          std::size_t guard) const {
  if (a < 1) throw std::invalid_argument("convolution offset must be >= 1");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("bernoulli parameter must lie in [0, 1]");
  if (atoms_.empty()) throw std::logic_error("cannot convolve an empty pmf");

  // Worst case doubles the atom count but never exceeds the support span.
  std::size_t span = static_cast<std::size_t>(
      (atoms_.back().support + a) - atoms_.front().support + 1);
  std::size_t predicted = std::min(atoms_.size() * 2, span);
  if (predicted > guard)
    throw SupportGuardError(
        "exact convolution would need up to " + std::to_string(predicted) +
        " atoms (guard " + std::to_string(guard) +
        "); use the fastmix recursion for wide binary tails");

  IntegerPmf out;
  out.tail_mass_ = tail_mass_;
  out.atoms_.reserve(predicted);
  const double q0 = 1.0 - p;
  std::size_t i = 0, j = 0;  // i walks this pmf, j walks the shifted copy
  while (i < atoms_.size() || j < atoms_.size()) {
    std::int64_t si = i < atoms_.size() ? atoms_[i].support
                                        : std::numeric_limits<std::int64_t>::max();
    std::int64_t sj = j < atoms_.size() ? atoms_[j].support + a
                                        : std::numeric_limits<std::int64_t>::max();
    std::int64_t s = std::min(si, sj);
    double w = 0.0;
    if (si == s) w += q0 * atoms_[i++].prob;
    if (sj == s) w += p * atoms_[j++].prob;
    if (w > 0.0) out.atoms_.push_back({s, w});
  }
  return out;
}

}  // namespace mixmin
