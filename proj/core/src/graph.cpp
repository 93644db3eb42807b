#include "dcnet/graph.hpp"

#include <deque>

#include "dcnet/errors.hpp"

namespace dcnet {

NetworkGraph::NetworkGraph(int num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  require_config(num_nodes_ > 0, "graph needs at least one node");
  out_.resize(num_nodes_);
  in_.resize(num_nodes_);
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& ed = edges_[e];
    require_config(ed.src >= 0 && ed.src < num_nodes_ && ed.dst >= 0 &&
                       ed.dst < num_nodes_,
                   "edge endpoint out of range");
    require_config(ed.src != ed.dst, "self-loop edges are not allowed");
    require_config(ed.capacity > 0.0, "edge capacity must be positive");
    require_config(ed.cost >= 0.0, "edge cost must be non-negative");
    out_[ed.src].push_back(e);
    in_[ed.dst].push_back(e);
  }
}

std::vector<int> NetworkGraph::hop_distances(NodeId src) const {
  std::vector<int> dist(num_nodes_, -1);
  std::deque<NodeId> queue;
  dist[src] = 0;
  queue.push_back(src);
  while (!queue.empty()) {
    NodeId i = queue.front();
    queue.pop_front();
    for (int e : out_[i]) {
      NodeId j = edges_[e].dst;
      if (dist[j] < 0) {
        dist[j] = dist[i] + 1;
        queue.push_back(j);
      }
    }
  }
  return dist;
}

}  // namespace dcnet
