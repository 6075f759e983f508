// network.hpp : similarity matrix, maximum spanning tree, 2N-link backbone
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semnet/extract.hpp"
#include "semnet/kb.hpp"

namespace semnet {

// Symmetric pairwise association weights in [0,1]; the diagonal is unused.
struct SimilarityMatrix {
  std::size_t n = 0;
  std::vector<std::string> labels;
  std::vector<double> weights;  // row-major n*n
  std::string kb_name;

  double at(std::size_t i, std::size_t j) const { return weights[i * n + j]; }
  void set(std::size_t i, std::size_t j, double w) {
    weights[i * n + j] = w;
    weights[j * n + i] = w;
  }
};

struct GraphMeta {
  std::string kb_name;
  std::size_t n_terms = 0;
  double multiplier = 2.0;
  std::uint64_t seed = 42;
};

struct GraphNode {
  int id = 0;
  std::string label;
  int degree = 0;
};

struct GraphEdge {
  int source = 0;  // always < target
  int target = 0;
  double weight = 0.0;
  bool mst = false;
};

struct WeightedGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  GraphMeta meta;
};

struct BackboneConfig {
  double multiplier = 2.0;  // target edge count multiplier m, >= 1
};

SimilarityMatrix build_similarity_matrix(const TermSet& terms, const KnowledgeBase& kb);

// N-1 edges maximizing total weight over the complete graph on the matrix
// labels. Kruskal over edges ordered by (weight desc, source asc, target asc),
// so results are deterministic under ties.
std::vector<GraphEdge> max_spanning_tree(const SimilarityMatrix& matrix);

// MST plus the strongest remaining edges, in the same deterministic order,
// until min(round(m*N), N*(N-1)/2) edges are present.
WeightedGraph backbone(const SimilarityMatrix& matrix, const BackboneConfig& config);

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double density = 0.0;
  double min_weight = 0.0;
  double max_weight = 0.0;
  double mean_weight = 0.0;
  std::vector<std::size_t> degree_histogram;  // index = degree
  std::size_t components = 0;
};

GraphStats graph_stats(const WeightedGraph& graph);

}  // namespace semnet
