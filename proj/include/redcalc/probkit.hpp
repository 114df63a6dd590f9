#pragma once

// Discrete joint distributions over named categorical variables, Shannon
// entropy in bits, maximum entropy and the classical redundancy ratio.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace redcalc {

// Observed co-occurrence counts. Cells are stored row-major: the last axis
// varies fastest.
struct CountTable {
  std::vector<std::size_t> shape;
  std::vector<std::uint64_t> cells;
};

// Entropy carried in bits. Conversion to nats is for display only.
struct EntropyValue {
  double bits = 0.0;

  double nats() const noexcept;
  friend bool operator==(const EntropyValue&, const EntropyValue&) = default;
};

class JointDistribution {
 public:
  // Validates the table: shape equals alphabet sizes, cells are
  // non-negative and sum to 1 within 1e-12.
  JointDistribution(std::vector<std::string> variables,
                    std::vector<std::vector<std::string>> alphabets,
                    std::vector<double> probs);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::vector<std::vector<std::string>>& alphabets() const noexcept { return alphabets_; }
  std::span<const double> probs() const noexcept { return probs_; }

  std::size_t arity() const noexcept { return variables_.size(); }
  std::size_t cell_count() const noexcept { return probs_.size(); }
  std::vector<std::size_t> shape() const;

  // Position of a variable in the ordering; throws UnknownVariable.
  std::size_t index_of(const std::string& name) const;

  // Probability of the cell addressed by per-axis category indices.
  double at(std::span<const std::size_t> index) const;

 private:
  std::vector<std::string> variables_;
  std::vector<std::vector<std::string>> alphabets_;
  std::vector<double> probs_;
};

// Normalizes counts to relative frequencies. A positive pseudo_count adds
// that many observations to every cell before normalizing.
JointDistribution from_counts(const CountTable& counts, std::vector<std::string> variables,
                              std::vector<std::vector<std::string>> alphabets,
                              double pseudo_count = 0.0);

// Sums out every variable not in `keep`. The result lists the kept
// variables in their original order, whatever order `keep` gives them in.
JointDistribution marginalize(const JointDistribution& dist, std::span<const std::string> keep);

// Marginal over the variables whose positions are set in `mask`
// (bit i selects variable i).
JointDistribution marginalize_mask(const JointDistribution& dist, std::uint64_t mask);

EntropyValue entropy(const JointDistribution& dist);

// -sum p log2 p over a raw probability vector, with 0 log 0 = 0.
double entropy_bits(std::span<const double> probs) noexcept;

EntropyValue max_entropy(std::int64_t n_states);

// log2(M * N) where M is the sum of per-state meaning counts.
EntropyValue expanded_max_entropy(std::int64_t n_states, std::span<const double> meanings);

// R = 1 - H_system / H_max.
double redundancy(EntropyValue h_system, EntropyValue h_max);

}  // namespace redcalc
