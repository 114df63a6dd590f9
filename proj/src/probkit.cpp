#include "redcalc/probkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "redcalc/error.hpp"

namespace redcalc {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kRedundancyTolerance = 1e-9;

std::size_t product_of_sizes(const std::vector<std::vector<std::string>>& alphabets) {
  std::size_t cells = 1;
  for (const auto& a : alphabets) cells *= a.size();
  return cells;
}

void check_labels(const std::vector<std::string>& variables,
                  const std::vector<std::vector<std::string>>& alphabets) {
  if (variables.empty()) throw Error(ErrorCode::ShapeMismatch, "distribution has no variables");
  if (variables.size() != alphabets.size()) {
    throw Error(ErrorCode::ShapeMismatch, "variable count " + std::to_string(variables.size()) +
                                              " != alphabet count " +
                                              std::to_string(alphabets.size()));
  }
  for (std::size_t i = 0; i < alphabets.size(); ++i) {
    if (alphabets[i].empty()) {
      throw Error(ErrorCode::ShapeMismatch, "variable '" + variables[i] + "' has an empty alphabet");
    }
  }
  for (std::size_t i = 0; i < variables.size(); ++i) {
    for (std::size_t j = i + 1; j < variables.size(); ++j) {
      if (variables[i] == variables[j]) {
        throw Error(ErrorCode::ShapeMismatch, "duplicate variable '" + variables[i] + "'");
      }
    }
  }
}

}  // namespace

double EntropyValue::nats() const noexcept { return bits * std::numbers::ln2; }

JointDistribution::JointDistribution(std::vector<std::string> variables,
                                     std::vector<std::vector<std::string>> alphabets,
                                     std::vector<double> probs)
    : variables_(std::move(variables)), alphabets_(std::move(alphabets)), probs_(std::move(probs)) {
  check_labels(variables_, alphabets_);
  if (probs_.size() != product_of_sizes(alphabets_)) {
    throw Error(ErrorCode::ShapeMismatch, "table has " + std::to_string(probs_.size()) +
                                              " cells, alphabets imply " +
                                              std::to_string(product_of_sizes(alphabets_)));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::InvalidProbabilities, "cell probability must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::InvalidProbabilities,
                "probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

std::vector<std::size_t> JointDistribution::shape() const {
  std::vector<std::size_t> s;
  s.reserve(alphabets_.size());
  for (const auto& a : alphabets_) s.push_back(a.size());
  return s;
}

std::size_t JointDistribution::index_of(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) throw Error(ErrorCode::UnknownVariable, name);
  return static_cast<std::size_t>(it - variables_.begin());
}

double JointDistribution::at(std::span<const std::size_t> index) const {
  if (index.size() != alphabets_.size()) {
    throw Error(ErrorCode::ShapeMismatch, "index arity does not match distribution");
  }
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < index.size(); ++axis) {
    if (index[axis] >= alphabets_[axis].size()) {
      throw Error(ErrorCode::ShapeMismatch, "category index out of range");
    }
    flat = flat * alphabets_[axis].size() + index[axis];
  }
  return probs_[flat];
}

JointDistribution from_counts(const CountTable& counts, std::vector<std::string> variables,
                              std::vector<std::vector<std::string>> alphabets,
                              double pseudo_count) {
  check_labels(variables, alphabets);
  if (counts.shape.size() != alphabets.size()) {
    throw Error(ErrorCode::ShapeMismatch, "count table rank differs from alphabet count");
  }
  for (std::size_t i = 0; i < alphabets.size(); ++i) {
    if (counts.shape[i] != alphabets[i].size()) {
      throw Error(ErrorCode::ShapeMismatch, "axis " + std::to_string(i) + " has extent " +
                                                std::to_string(counts.shape[i]) + ", alphabet has " +
                                                std::to_string(alphabets[i].size()));
    }
  }
  if (counts.cells.size() != product_of_sizes(alphabets)) {
    throw Error(ErrorCode::ShapeMismatch, "cell count does not match the alphabet product");
  }
  if (!(pseudo_count >= 0.0) || !std::isfinite(pseudo_count)) {
    throw Error(ErrorCode::InvalidProbabilities, "pseudo-count must be finite and >= 0");
  }

  const std::uint64_t total = std::accumulate(counts.cells.begin(), counts.cells.end(),
                                              std::uint64_t{0});
  if (total == 0 && pseudo_count == 0.0) {
    throw Error(ErrorCode::AllZeroCounts, "every cell of the count table is zero");
  }

  const double denom =
      static_cast<double>(total) + pseudo_count * static_cast<double>(counts.cells.size());
  std::vector<double> probs(counts.cells.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = (static_cast<double>(counts.cells[i]) + pseudo_count) / denom;
  }
  return JointDistribution(std::move(variables), std::move(alphabets), std::move(probs));
}

JointDistribution marginalize_mask(const JointDistribution& dist, std::uint64_t mask) {
  const std::size_t n = dist.arity();
  if (mask == 0) throw Error(ErrorCode::EmptySubset, "marginal over no variables");
  if (n < 64 && (mask >> n) != 0) {
    throw Error(ErrorCode::UnknownVariable, "subset mask selects a variable beyond the arity");
  }

  const auto shape = dist.shape();
  std::vector<std::string> vars;
  std::vector<std::vector<std::string>> alphabets;
  std::vector<std::size_t> kept_axes;
  for (std::size_t axis = 0; axis < n; ++axis) {
    if ((mask >> axis) & 1U) {
      kept_axes.push_back(axis);
      vars.push_back(dist.variables()[axis]);
      alphabets.push_back(dist.alphabets()[axis]);
    }
  }

  std::size_t out_cells = 1;
  for (auto axis : kept_axes) out_cells *= shape[axis];
  std::vector<double> out(out_cells, 0.0);

  // Walk the source table with an odometer over all axes, tracking the flat
  // output offset incrementally.
  std::vector<std::size_t> out_stride(n, 0);
  {
    std::size_t stride = 1;
    for (auto it = kept_axes.rbegin(); it != kept_axes.rend(); ++it) {
      out_stride[*it] = stride;
      stride *= shape[*it];
    }
  }
  std::vector<std::size_t> idx(n, 0);
  std::size_t out_offset = 0;
  const auto probs = dist.probs();
  for (std::size_t flat = 0; flat < probs.size(); ++flat) {
    out[out_offset] += probs[flat];
    for (std::size_t axis = n; axis-- > 0;) {
      if (++idx[axis] < shape[axis]) {
        out_offset += out_stride[axis];
        break;
      }
      out_offset -= out_stride[axis] * (shape[axis] - 1);
      idx[axis] = 0;
    }
  }

  // Re-centre the sum on 1 so long accumulations stay inside the tolerance.
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  if (total > 0.0 && std::abs(total - 1.0) > kSumTolerance) {
    for (double& p : out) p /= total;
  }
  return JointDistribution(std::move(vars), std::move(alphabets), std::move(out));
}

JointDistribution marginalize(const JointDistribution& dist, std::span<const std::string> keep) {
  if (keep.empty()) throw Error(ErrorCode::EmptySubset, "marginal over no variables");
  std::uint64_t mask = 0;
  for (const auto& name : keep) {
    const std::size_t axis = dist.index_of(name);
    if (axis >= 64) throw Error(ErrorCode::UnknownVariable, "variable index exceeds mask width");
    mask |= std::uint64_t{1} << axis;
  }
  return marginalize_mask(dist, mask);
}

double entropy_bits(std::span<const double> probs) noexcept {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

EntropyValue entropy(const JointDistribution& dist) {
  const double cap = std::log2(static_cast<double>(dist.cell_count()));
  // Rounding can push a uniform table a few ulps past log2(cells).
  return EntropyValue{std::clamp(entropy_bits(dist.probs()), 0.0, cap)};
}

EntropyValue max_entropy(std::int64_t n_states) {
  if (n_states < 1) {
    throw Error(ErrorCode::NonPositiveStates, "state count " + std::to_string(n_states));
  }
  return EntropyValue{std::log2(static_cast<double>(n_states))};
}

EntropyValue expanded_max_entropy(std::int64_t n_states, std::span<const double> meanings) {
  if (n_states < 1) {
    throw Error(ErrorCode::NonPositiveStates, "state count " + std::to_string(n_states));
  }
  if (meanings.size() != static_cast<std::size_t>(n_states)) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(meanings.size()) +
                                               " meaning counts for " + std::to_string(n_states) +
                                               " states");
  }
  double total_meanings = 0.0;
  for (double m : meanings) {
    if (!(m >= 1.0) || !std::isfinite(m)) {
      throw Error(ErrorCode::MeaningCountBelowOne, "meaning count " + std::to_string(m));
    }
    total_meanings += m;
  }
  return EntropyValue{std::log2(total_meanings * static_cast<double>(n_states))};
}

double redundancy(EntropyValue h_system, EntropyValue h_max) {
  if (!(h_max.bits > 0.0)) throw Error(ErrorCode::ZeroMaxEntropy, "H_max must be positive");
  if (h_system.bits < 0.0) {
    throw Error(ErrorCode::InvalidProbabilities, "negative system entropy");
  }
  if (h_system.bits > h_max.bits + kRedundancyTolerance) {
    throw Error(ErrorCode::SystemExceedsMax, "H_system " + std::to_string(h_system.bits) +
                                                 " > H_max " + std::to_string(h_max.bits));
  }
  return std::clamp(1.0 - h_system.bits / h_max.bits, 0.0, 1.0);
}

}  // namespace redcalc
