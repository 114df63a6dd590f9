#include "redcalc/multivariate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "redcalc/error.hpp"

namespace redcalc {

namespace {

// Neumaier-compensated accumulator. The alternating sums below cancel
// heavily, so the low-order bits are kept.
class SignedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    magnitude_ += std::abs(v);
  }
  double value() const noexcept { return sum_ + comp_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double magnitude_ = 0.0;
};

// Dense marginal table over a subset of axes, row-major.
struct Table {
  std::vector<std::size_t> shape;
  std::vector<double> probs;
};

Table drop_axis(const Table& src, std::size_t pos) {
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (std::size_t i = 0; i < pos; ++i) outer *= src.shape[i];
  for (std::size_t i = pos + 1; i < src.shape.size(); ++i) inner *= src.shape[i];
  const std::size_t extent = src.shape[pos];

  Table out;
  out.shape = src.shape;
  out.shape.erase(out.shape.begin() + static_cast<std::ptrdiff_t>(pos));
  out.probs.assign(outer * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    const double* block = src.probs.data() + o * extent * inner;
    double* dst = out.probs.data() + o * inner;
    for (std::size_t e = 0; e < extent; ++e) {
      for (std::size_t i = 0; i < inner; ++i) dst[i] += block[e * inner + i];
    }
  }
  return out;
}

// Visits every non-empty subset of `mask` reachable by removing axes with
// index >= `start`, each exactly once, deriving each marginal from its parent.
void descend(const Table& table, Subset mask, std::size_t start, std::size_t n,
             std::vector<double>& entries) {
  for (std::size_t axis = start; axis < n; ++axis) {
    const Subset bit = Subset{1} << axis;
    if (!(mask & bit)) continue;
    const Subset child = mask & ~bit;
    if (child == 0) continue;
    // Position of `axis` among the set bits of `mask`.
    const auto pos = static_cast<std::size_t>(std::popcount(mask & (bit - 1)));
    Table sub = drop_axis(table, pos);
    entries[child] = std::max(0.0, entropy_bits(sub.probs));
    descend(sub, child, axis + 1, n, entries);
  }
}

int sign_for(Subset u) noexcept { return (std::popcount(u) % 2 == 1) ? 1 : -1; }

void require_member(const EntropyLattice& lattice, Subset s) {
  if (s == 0) throw Error(ErrorCode::EmptySubset, "empty subset");
  if ((s & ~lattice.full_set()) != 0) {
    throw Error(ErrorCode::UnknownVariable, "subset selects a variable outside the lattice");
  }
}

}  // namespace

EntropyLattice::EntropyLattice(std::vector<std::string> variables, std::vector<double> entries)
    : variables_(std::move(variables)), entries_(std::move(entries)) {
  if (variables_.empty() || variables_.size() > kHardVariableCap) {
    throw Error(ErrorCode::TooManyVariables, "lattice arity out of range");
  }
  if (entries_.size() != (std::size_t{1} << variables_.size())) {
    throw Error(ErrorCode::ShapeMismatch, "lattice needs 2^n slots");
  }
}

double EntropyLattice::entropy(Subset s) const {
  require_member(*this, s);
  return entries_[s];
}

Subset EntropyLattice::subset_of(std::span<const std::string> names) const {
  Subset s = 0;
  for (const auto& name : names) {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) throw Error(ErrorCode::UnknownVariable, name);
    s |= Subset{1} << static_cast<unsigned>(it - variables_.begin());
  }
  return s;
}

std::vector<std::string> EntropyLattice::names_of(Subset s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if ((s >> i) & 1U) out.push_back(variables_[i]);
  }
  return out;
}

EntropyLattice entropy_lattice(const JointDistribution& dist, const LatticeOptions& options) {
  const std::size_t n = dist.arity();
  const std::size_t cap = std::min(options.variable_cap, kHardVariableCap);
  if (n > cap) {
    throw Error(ErrorCode::TooManyVariables,
                std::to_string(n) + " variables exceed the cap of " + std::to_string(cap));
  }

  std::vector<double> entries(std::size_t{1} << n, 0.0);
  Table root{dist.shape(), std::vector<double>(dist.probs().begin(), dist.probs().end())};
  const auto full = static_cast<Subset>((Subset{1} << n) - 1);
  entries[full] = std::max(0.0, entropy_bits(root.probs));

  const unsigned threads = std::max(1U, options.threads);
  if (threads == 1 || n < 2) {
    descend(root, full, 0, n, entries);
  } else {
    // Each first-level branch writes a disjoint set of slots; the tree and
    // hence every summation order is fixed regardless of scheduling.
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t axis = w; axis < n; axis += threads) {
          const Subset bit = Subset{1} << axis;
          const Subset child = full & ~bit;
          Table sub = drop_axis(root, axis);
          entries[child] = std::max(0.0, entropy_bits(sub.probs));
          descend(sub, child, axis + 1, n, entries);
        }
      });
    }
  }
  return EntropyLattice(dist.variables(), std::move(entries));
}

double mutual_information(const EntropyLattice& lattice, Subset s) {
  require_member(lattice, s);
  if (std::popcount(s) < 2) {
    throw Error(ErrorCode::SubsetTooSmall, "mutual information needs at least two variables");
  }
  SignedSum sum;
  for (Subset u = s; u != 0; u = (u - 1) & s) {
    sum.add(sign_for(u) * lattice.entropy(u));
  }
  return sum.value();
}

double mutual_information(const EntropyLattice& lattice, std::span<const std::string> names) {
  return mutual_information(lattice, lattice.subset_of(names));
}

double total_correlation(const EntropyLattice& lattice) {
  if (lattice.arity() < 2) {
    throw Error(ErrorCode::SubsetTooSmall, "total correlation needs at least two variables");
  }
  SignedSum sum;
  for (std::size_t i = 0; i < lattice.arity(); ++i) sum.add(lattice.entropy(Subset{1} << i));
  sum.add(-lattice.entropy(lattice.full_set()));
  // Subadditivity bounds this below by zero; only rounding can undercut it.
  return std::max(0.0, sum.value());
}

double SynergyReport::t_value(Subset s) const {
  auto it = std::lower_bound(t_values.begin(), t_values.end(), s, [](const auto& entry, Subset key) {
    const int lhs = std::popcount(entry.first);
    const int rhs = std::popcount(key);
    return lhs != rhs ? lhs < rhs : entry.first < key;
  });
  if (it == t_values.end() || it->first != s) {
    throw Error(ErrorCode::SubsetTooSmall, "no T value recorded for this subset");
  }
  return it->second;
}

std::vector<Subset> subsets_by_size(std::size_t n, std::size_t min_size) {
  std::vector<Subset> out;
  const Subset full = static_cast<Subset>((Subset{1} << n) - 1);
  for (Subset s = 1; s <= full && s != 0; ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) >= min_size) out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](Subset a, Subset b) {
    return std::popcount(a) < std::popcount(b);
  });
  return out;
}

SynergyReport mutual_redundancy(const EntropyLattice& lattice) {
  const std::size_t n = lattice.arity();
  if (n < 2) throw Error(ErrorCode::SubsetTooSmall, "mutual redundancy needs at least two variables");

  SynergyReport report;
  report.variables = lattice.variables();
  for (Subset s : subsets_by_size(n, 2)) {
    report.t_values.emplace_back(s, mutual_information(lattice, s));
  }

  report.total_correlation = total_correlation(lattice);
  report.term_negative = -report.total_correlation;

  // Pairs enter positively, triples negatively, and so on up to the
  // (n-1)-subsets; the full set is what the decomposition solves for.
  SignedSum interaction;
  for (const auto& [s, t] : report.t_values) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (k == n) continue;
    interaction.add(k % 2 == 0 ? t : -t);
  }
  report.term_interaction = interaction.value();
  report.mutual_redundancy = report.term_negative + report.term_interaction;

  const double t_full = report.t_values.back().second;
  const double direct = (n % 2 == 1) ? t_full : -t_full;  // (-1)^(1+n) T_1..n
  const double scale = std::max(1.0, interaction.magnitude() + report.total_correlation);
  if (std::abs(direct - report.mutual_redundancy) > 1e-9 * scale) {
    throw Error(ErrorCode::InconsistentDecomposition,
                "decomposition " + std::to_string(report.mutual_redundancy) +
                    " disagrees with signed T_1..n " + std::to_string(direct));
  }
  return report;
}

double interaction_info_oracle(const JointDistribution& dist) {
  if (dist.arity() != 3) {
    throw Error(ErrorCode::WrongArity, "interaction oracle takes exactly three variables");
  }
  const auto shape = dist.shape();
  const std::size_t n1 = shape[0];
  const std::size_t n2 = shape[1];
  const std::size_t n3 = shape[2];
  const auto p = dist.probs();
  auto cell = [&](std::size_t i, std::size_t j, std::size_t k) { return p[(i * n2 + j) * n3 + k]; };

  std::vector<double> p1(n1, 0.0), p2(n2, 0.0), p3(n3, 0.0);
  std::vector<double> p12(n1 * n2, 0.0), p13(n1 * n3, 0.0), p23(n2 * n3, 0.0);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      for (std::size_t k = 0; k < n3; ++k) {
        const double v = cell(i, j, k);
        p1[i] += v;
        p2[j] += v;
        p3[k] += v;
        p12[i * n2 + j] += v;
        p13[i * n3 + k] += v;
        p23[j * n3 + k] += v;
      }
    }
  }

  double mi12 = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const double v = p12[i * n2 + j];
      if (v > 0.0) mi12 += v * std::log2(v / (p1[i] * p2[j]));
    }
  }

  double cmi12_3 = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      for (std::size_t k = 0; k < n3; ++k) {
        const double v = cell(i, j, k);
        if (v > 0.0) cmi12_3 += v * std::log2(v * p3[k] / (p13[i * n3 + k] * p23[j * n3 + k]));
      }
    }
  }
  return mi12 - cmi12_3;
}

PhiBalance phi_balance(const EntropyLattice& lattice) {
  if (lattice.arity() != 2) {
    throw Error(ErrorCode::WrongArity, "D/A balance is defined for exactly two variables");
  }
  const double h1 = lattice.entropy(0b01);
  const double h2 = lattice.entropy(0b10);
  const double h12 = lattice.entropy(0b11);
  PhiBalance out;
  out.d = h1 + h2 - h12;
  out.a = 2.0 * h12 - h1 - h2;
  out.phi = out.d - out.a;
  return out;
}

}  // namespace redcalc
