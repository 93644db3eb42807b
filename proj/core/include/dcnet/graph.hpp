#pragma once

#include <string>
#include <vector>

namespace dcnet {

using NodeId = int;

// One directed transport resource.  Capacity is in flow units per slot,
// cost in cost units per flow unit carried.
struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double capacity = 0.0;
  double cost = 0.0;
};

// Immutable directed graph with per-node adjacency indices.
class NetworkGraph {
 public:
  NetworkGraph() = default;
  NetworkGraph(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Edge indices leaving / entering a node.
  const std::vector<int>& out_edges(NodeId i) const { return out_[i]; }
  const std::vector<int>& in_edges(NodeId i) const { return in_[i]; }

  // Hop counts of shortest directed paths from `src` (unreachable = -1).
  std::vector<int> hop_distances(NodeId src) const;

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

}  // namespace dcnet
