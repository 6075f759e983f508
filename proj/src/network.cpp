#include "semnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace semnet {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int root(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  }

  bool unite(int a, int b) {
    int ra = root(a), rb = root(b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(rb)] = ra;
    return true;
  }
};

// All candidate edges of the complete graph, in selection order:
// weight descending, then smaller node id, then larger node id.
std::vector<GraphEdge> candidate_edges(const SimilarityMatrix& matrix) {
  std::vector<GraphEdge> edges;
  edges.reserve(matrix.n * (matrix.n - 1) / 2);
  for (std::size_t i = 0; i < matrix.n; ++i)
    for (std::size_t j = i + 1; j < matrix.n; ++j)
      edges.push_back({static_cast<int>(i), static_cast<int>(j), matrix.at(i, j), false});
  std::stable_sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  return edges;
}

bool edge_order_less(const GraphEdge& a, const GraphEdge& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  if (a.source != b.source) return a.source < b.source;
  return a.target < b.target;
}

}  // namespace

SimilarityMatrix build_similarity_matrix(const TermSet& terms, const KnowledgeBase& kb) {
  SimilarityMatrix matrix;
  matrix.n = terms.n_terms();
  matrix.labels = terms.terms;
  matrix.kb_name = kb.name();
  matrix.weights.assign(matrix.n * matrix.n, 0.0);
  for (std::size_t i = 0; i < matrix.n; ++i)
    for (std::size_t j = i + 1; j < matrix.n; ++j)
      matrix.set(i, j, kb.similarity(matrix.labels[i], matrix.labels[j]));
  return matrix;
}

std::vector<GraphEdge> max_spanning_tree(const SimilarityMatrix& matrix) {
  std::vector<GraphEdge> tree;
  if (matrix.n <= 1) return tree;
  UnionFind components(matrix.n);
  for (const GraphEdge& edge : candidate_edges(matrix)) {
    if (components.unite(edge.source, edge.target)) {
      tree.push_back(edge);
      tree.back().mst = true;
      if (tree.size() == matrix.n - 1) break;
    }
  }
  return tree;
}

WeightedGraph backbone(const SimilarityMatrix& matrix, const BackboneConfig& config) {
  if (config.multiplier < 1.0)
    throw std::invalid_argument("backbone multiplier must be >= 1");

  WeightedGraph graph;
  graph.meta.kb_name = matrix.kb_name;
  graph.meta.n_terms = matrix.n;
  graph.meta.multiplier = config.multiplier;

  graph.nodes.reserve(matrix.n);
  for (std::size_t i = 0; i < matrix.n; ++i)
    graph.nodes.push_back({static_cast<int>(i), matrix.labels[i], 0});
  if (matrix.n <= 1) return graph;

  const std::size_t complete_edges = matrix.n * (matrix.n - 1) / 2;
  // round half-up of m*N, capped by the complete graph
  std::size_t target =
      static_cast<std::size_t>(std::floor(config.multiplier * static_cast<double>(matrix.n) + 0.5));
  target = std::min(target, complete_edges);
  target = std::max(target, matrix.n - 1);  // the MST always fits (m >= 1)

  std::vector<GraphEdge> tree = max_spanning_tree(matrix);
  std::vector<char> in_tree(matrix.n * matrix.n, 0);
  for (const GraphEdge& edge : tree)
    in_tree[static_cast<std::size_t>(edge.source) * matrix.n +
            static_cast<std::size_t>(edge.target)] = 1;

  graph.edges = std::move(tree);
  for (const GraphEdge& edge : candidate_edges(matrix)) {
    if (graph.edges.size() >= target) break;
    if (in_tree[static_cast<std::size_t>(edge.source) * matrix.n +
                static_cast<std::size_t>(edge.target)])
      continue;
    graph.edges.push_back(edge);
  }
  std::stable_sort(graph.edges.begin(), graph.edges.end(), edge_order_less);

  for (const GraphEdge& edge : graph.edges) {
    ++graph.nodes[static_cast<std::size_t>(edge.source)].degree;
    ++graph.nodes[static_cast<std::size_t>(edge.target)].degree;
  }
  return graph;
}

GraphStats graph_stats(const WeightedGraph& graph) {
  GraphStats stats;
  stats.nodes = graph.nodes.size();
  stats.edges = graph.edges.size();
  if (stats.nodes >= 2)
    stats.density = 2.0 * static_cast<double>(stats.edges) /
                    (static_cast<double>(stats.nodes) * static_cast<double>(stats.nodes - 1));

  if (!graph.edges.empty()) {
    stats.min_weight = graph.edges.front().weight;
    stats.max_weight = graph.edges.front().weight;
    double sum = 0.0;
    for (const GraphEdge& edge : graph.edges) {
      stats.min_weight = std::min(stats.min_weight, edge.weight);
      stats.max_weight = std::max(stats.max_weight, edge.weight);
      sum += edge.weight;
    }
    stats.mean_weight = sum / static_cast<double>(graph.edges.size());
  }

  int max_degree = 0;
  for (const GraphNode& node : graph.nodes) max_degree = std::max(max_degree, node.degree);
  stats.degree_histogram.assign(static_cast<std::size_t>(max_degree) + 1, 0);
  if (!graph.nodes.empty())
    for (const GraphNode& node : graph.nodes)
      ++stats.degree_histogram[static_cast<std::size_t>(node.degree)];

  if (!graph.nodes.empty()) {
    UnionFind components(graph.nodes.size());
    std::size_t merges = 0;
    for (const GraphEdge& edge : graph.edges)
      if (components.unite(edge.source, edge.target)) ++merges;
    stats.components = graph.nodes.size() - merges;
  }
  return stats;
}

}  // namespace semnet
