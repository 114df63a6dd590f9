#pragma once

// Network space versus vector space: geodesics, structural-equivalence
// similarity of relation profiles, and the transitive/cyclic triad census.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace redcalc {

class Graph {
 public:
  // adjacency is row-major n x n with entries 0/1. Throws InvalidGraph on a
  // non-square table, a self-loop, or an asymmetric undirected table.
  Graph(std::vector<std::string> nodes, std::vector<std::uint8_t> adjacency, bool directed);

  // Nodes are the sorted distinct endpoint labels. Undirected edges are
  // symmetrized; duplicate edges collapse to one tie.
  static Graph from_edges(std::span<const std::pair<std::string, std::string>> edges, bool directed);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool directed() const noexcept { return directed_; }
  bool has_arc(std::size_t from, std::size_t to) const noexcept { return adj_[from * size() + to] != 0; }
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::uint8_t> adj_;
  bool directed_;
};

template <typename T>
class SquareTable {
 public:
  SquareTable() = default;
  SquareTable(std::size_t n, T fill) : n_(n), cells_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  const T& at(std::size_t i, std::size_t j) const { return cells_.at(i * n_ + j); }
  T& at(std::size_t i, std::size_t j) { return cells_.at(i * n_ + j); }

 private:
  std::size_t n_ = 0;
  std::vector<T> cells_;
};

// nullopt marks an unreachable pair.
using DistanceMatrix = SquareTable<std::optional<std::size_t>>;

// nullopt marks an undefined similarity (degenerate profile).
using PositionMatrix = SquareTable<std::optional<double>>;

enum class SimilarityMeasure { pearson, cosine };

// All-pairs shortest path lengths by breadth-first search, following arc
// direction in directed graphs.
DistanceMatrix geodesic_distances(const Graph& g);

// Similarity of the adjacency rows of i and j over every column except i
// and j. Identical masked rows score exactly 1 under either measure.
PositionMatrix positional_correlation(const Graph& g, SimilarityMeasure measure);

struct TriadCensus {
  std::size_t transitive = 0;
  std::size_t cyclic = 0;
  std::size_t other = 0;

  std::size_t total() const noexcept { return transitive + cyclic + other; }
  friend bool operator==(const TriadCensus&, const TriadCensus&) = default;
};

// Classifies each 3-node subset. A triad counts as transitive or cyclic when
// each dyad carries exactly one arc and the three arcs are, respectively,
// acyclic (a->b, b->c, a->c) or a directed 3-cycle. Everything else,
// including triads with an empty or a mutual dyad, is "other".
TriadCensus triad_census(const Graph& g);

}  // namespace redcalc
