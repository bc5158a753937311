#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixmin {

// Thrown when an exact convolution would materialize more atoms than the
// configured guard allows. Schemes dominated by large power-of-two
// coefficients should go through the windowed recursion in fastmix.hpp,
// which never stores the full support.
class SupportGuardError : public std::runtime_error {
 public:
  explicit SupportGuardError(const std::string& what)
      : std::runtime_error(what) {}
};

inline constexpr std::size_t kDefaultSupportGuard = std::size_t{1} << 24;

// Probability mass function over integer support. Atoms are kept sorted by
// support value with strictly positive probabilities; tail_mass records
// probability deliberately truncated away (zero for exact pmfs).
class IntegerPmf {
 public:
  struct Atom {
    std::int64_t support;
    double prob;
  };

  IntegerPmf() = default;

  static IntegerPmf point_mass(std::int64_t support);
  // Atoms may arrive unsorted; duplicates are merged, zeros dropped.
  static IntegerPmf from_atoms(std::vector<Atom> atoms, double tail_mass = 0.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  double tail_mass() const { return tail_mass_; }

  double prob(std::int64_t support) const;  // 0 when not an atom
  std::int64_t min_support() const;
  std::int64_t max_support() const;
  double total_mass() const;  // atom mass plus tail_mass

  // pmf of (this + a*Z), Z ~ Bernoulli(p): exact two-point convolution.
  IntegerPmf convolve_bernoulli(std::int64_t a, double p,
                                std::size_t guard = kDefaultSupportGuard) const;

 private:
  std::vector<Atom> atoms_;
  double tail_mass_ = 0.0;
};

}  // namespace mixmin
