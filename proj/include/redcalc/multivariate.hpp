#pragma once

// Entropy lattice over all variable subsets, signed interaction information
// by inclusion-exclusion, mutual redundancy and the bivariate D/A balance.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "redcalc/probkit.hpp"

namespace redcalc {

// Bit i set means variable i (in lattice ordering) is a member.
using Subset = std::uint32_t;

inline constexpr std::size_t kDefaultVariableCap = 16;
inline constexpr std::size_t kHardVariableCap = 30;

struct LatticeOptions {
  std::size_t variable_cap = kDefaultVariableCap;
  // Worker threads for subset evaluation; 0 or 1 runs sequentially. The
  // result is bit-identical for every thread count.
  unsigned threads = 1;
};

class EntropyLattice {
 public:
  EntropyLattice(std::vector<std::string> variables, std::vector<double> entries);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t arity() const noexcept { return variables_.size(); }
  Subset full_set() const noexcept { return static_cast<Subset>((Subset{1} << arity()) - 1); }

  // Number of non-empty subsets, 2^n - 1.
  std::size_t size() const noexcept { return entries_.size() - 1; }

  // Joint entropy H(S) in bits; throws EmptySubset / UnknownVariable.
  double entropy(Subset s) const;

  Subset subset_of(std::span<const std::string> names) const;
  std::vector<std::string> names_of(Subset s) const;

 private:
  std::vector<std::string> variables_;
  std::vector<double> entries_;  // indexed by mask, slot 0 unused
};

EntropyLattice entropy_lattice(const JointDistribution& dist, const LatticeOptions& options = {});

// T_S = sum over non-empty U of S of (-1)^(|U|+1) H(U).
double mutual_information(const EntropyLattice& lattice, Subset s);
double mutual_information(const EntropyLattice& lattice, std::span<const std::string> names);

// sum_i H(x_i) - H(x_1..x_n); never negative.
double total_correlation(const EntropyLattice& lattice);

struct SynergyReport {
  std::vector<std::string> variables;
  // Every subset with at least two members, ordered by size and then by mask.
  std::vector<std::pair<Subset, double>> t_values;
  double total_correlation = 0.0;
  double term_negative = 0.0;
  double term_interaction = 0.0;
  double mutual_redundancy = 0.0;

  double t_value(Subset s) const;
};

SynergyReport mutual_redundancy(const EntropyLattice& lattice);

// I(1;2) - I(1;2|3) evaluated straight from the probability table. Shares
// no code with the lattice path.
double interaction_info_oracle(const JointDistribution& dist);

struct PhiBalance {
  double d = 0.0;    // mutual information T_12
  double a = 0.0;    // H(1|2) + H(2|1)
  double phi = 0.0;  // d - a
};

PhiBalance phi_balance(const EntropyLattice& lattice);

// Subsets with at least `min_size` members of an n-variable set, ordered by
// size then mask.
std::vector<Subset> subsets_by_size(std::size_t n, std::size_t min_size = 1);

}  // namespace redcalc
