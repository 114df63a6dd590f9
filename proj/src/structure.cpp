#include "redcalc/structure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "redcalc/error.hpp"

namespace redcalc {

Graph::Graph(std::vector<std::string> nodes, std::vector<std::uint8_t> adjacency, bool directed)
    : nodes_(std::move(nodes)), adj_(std::move(adjacency)), directed_(directed) {
  const std::size_t n = nodes_.size();
  if (adj_.size() != n * n) throw Error(ErrorCode::InvalidGraph, "adjacency is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (adj_[i * n + i] != 0) throw Error(ErrorCode::InvalidGraph, "self-loop at " + nodes_[i]);
    for (std::size_t j = 0; j < n; ++j) {
      auto& v = adj_[i * n + j];
      if (v > 1) throw Error(ErrorCode::InvalidGraph, "adjacency entries must be 0 or 1");
      if (!directed_ && v != adj_[j * n + i]) {
        throw Error(ErrorCode::InvalidGraph, "undirected adjacency must be symmetric");
      }
    }
  }
  auto sorted = nodes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidGraph, "duplicate node label");
  }
}

Graph Graph::from_edges(std::span<const std::pair<std::string, std::string>> edges, bool directed) {
  std::vector<std::string> nodes;
  for (const auto& [s, t] : edges) {
    if (s.empty() || t.empty()) throw Error(ErrorCode::MalformedEdge, "empty endpoint label");
    if (s == t) throw Error(ErrorCode::MalformedEdge, "self-loop at " + s);
    nodes.push_back(s);
    nodes.push_back(t);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  const std::size_t n = nodes.size();
  auto pos = [&](const std::string& label) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), label) - nodes.begin());
  };
  std::vector<std::uint8_t> adj(n * n, 0);
  for (const auto& [s, t] : edges) {
    const auto i = pos(s);
    const auto j = pos(t);
    adj[i * n + j] = 1;
    if (!directed) adj[j * n + i] = 1;
  }
  return Graph(std::move(nodes), std::move(adj), directed);
}

std::size_t Graph::index_of(const std::string& label) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), label);
  if (it == nodes_.end()) throw Error(ErrorCode::InvalidGraph, "unknown node " + label);
  return static_cast<std::size_t>(it - nodes_.begin());
}

DistanceMatrix geodesic_distances(const Graph& g) {
  const std::size_t n = g.size();
  DistanceMatrix d(n, std::nullopt);
  std::deque<std::size_t> queue;
  for (std::size_t src = 0; src < n; ++src) {
    d.at(src, src) = 0;
    queue.assign(1, src);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      const std::size_t du = *d.at(src, u);
      for (std::size_t v = 0; v < n; ++v) {
        if (g.has_arc(u, v) && !d.at(src, v)) {
          d.at(src, v) = du + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return d;
}

namespace {

std::optional<double> profile_similarity(const Graph& g, std::size_t i, std::size_t j,
                                         SimilarityMeasure measure) {
  const std::size_t n = g.size();
  std::vector<double> xi, xj;
  xi.reserve(n);
  xj.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    xi.push_back(g.has_arc(i, k) ? 1.0 : 0.0);
    xj.push_back(g.has_arc(j, k) ? 1.0 : 0.0);
  }
  if (xi == xj) return 1.0;

  const auto m = static_cast<double>(xi.size());
  if (measure == SimilarityMeasure::cosine) {
    double dot = 0.0, ni = 0.0, nj = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k) {
      dot += xi[k] * xj[k];
      ni += xi[k] * xi[k];
      nj += xj[k] * xj[k];
    }
    if (ni == 0.0 || nj == 0.0) return std::nullopt;
    return dot / std::sqrt(ni * nj);
  }

  double mi = 0.0, mj = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    mi += xi[k];
    mj += xj[k];
  }
  mi /= m;
  mj /= m;
  double cov = 0.0, vi = 0.0, vj = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    cov += (xi[k] - mi) * (xj[k] - mj);
    vi += (xi[k] - mi) * (xi[k] - mi);
    vj += (xj[k] - mj) * (xj[k] - mj);
  }
  if (vi == 0.0 || vj == 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(vi * vj), -1.0, 1.0);
}

}  // namespace

PositionMatrix positional_correlation(const Graph& g, SimilarityMeasure measure) {
  const std::size_t n = g.size();
  if (n < 3) throw Error(ErrorCode::GraphTooSmall, "profile similarity needs at least 3 nodes");
  PositionMatrix out(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    out.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto s = profile_similarity(g, i, j, measure);
      out.at(i, j) = s;
      out.at(j, i) = s;
    }
  }
  return out;
}

TriadCensus triad_census(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 3) throw Error(ErrorCode::GraphTooSmall, "triad census needs at least 3 nodes");
  TriadCensus census;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const std::size_t tri[3] = {a, b, c};
        bool simple = true;  // every dyad holds exactly one arc
        int out_degree[3] = {0, 0, 0};
        for (int p = 0; p < 3 && simple; ++p) {
          for (int q = p + 1; q < 3; ++q) {
            const bool pq = g.has_arc(tri[p], tri[q]);
            const bool qp = g.has_arc(tri[q], tri[p]);
            if (pq == qp) {
              simple = false;
              break;
            }
            ++out_degree[pq ? p : q];
          }
        }
        if (!simple) {
          ++census.other;
        } else if (out_degree[0] == 1 && out_degree[1] == 1 && out_degree[2] == 1) {
          ++census.cyclic;
        } else {
          ++census.transitive;
        }
      }
    }
  }
  return census;
}

}  // namespace redcalc
