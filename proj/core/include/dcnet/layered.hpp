#pragma once

#include <string>
#include <vector>

#include "dcnet/commodity.hpp"
#include "dcnet/graph.hpp"
#include "dcnet/scenario.hpp"

namespace dcnet {

enum class EdgeKind { Transmission, Processing };

// Provenance of one layered edge: which physical resource it draws on.
struct LayeredEdgeInfo {
  EdgeKind kind = EdgeKind::Transmission;
  int phys_edge = -1;   // index into the physical edge list (transmission)
  NodeId phys_node = -1;  // compute host (processing)
  int stage = 0;        // stage of the tail node
};

// Service-chain expansion of a physical network: node (i, s) means "packets
// at node i that have completed s processing steps".  Stage-s transmission
// edges copy the physical links; processing edges step (i, s) -> (i, s+1)
// on nodes with compute.  Node ids are stage-major: id = stage * V + i.
struct LayeredGraph {
  NetworkGraph graph;
  int stages = 0;      // number of processing steps S
  int phys_nodes = 0;  // V
  std::vector<LayeredEdgeInfo> info;  // parallel to graph.edges()

  NodeId id(NodeId phys, int stage) const { return stage * phys_nodes + phys; }
  NodeId phys(NodeId layered) const { return layered % phys_nodes; }
  int stage(NodeId layered) const { return layered / phys_nodes; }

  // Display label, e.g. "6@1" = physical node 6 (1-based) after one step.
  std::string node_label(NodeId layered) const;
};

// Layered edges that draw on one physical resource and must share its
// per-slot capacity.  Edge indices are listed in deterministic (stage)
// order; allocation tie-breaks use this order.
struct CapacityGroup {
  std::string name;
  double capacity = 0.0;
  std::vector<int> edges;
};

struct LayeredBuild {
  LayeredGraph layered;
  std::vector<Commodity> commodities;  // destinations/arrivals in layered ids
  std::vector<std::string> warnings;
};

// Expands the scenario into the layered graph and layered commodities.
// Clients whose lifetime cannot cover the shortest layered path are kept
// (they are structurally undeliverable) but produce a warning.
LayeredBuild build_layered_graph(const CloudScenario& s);

// Groups the layered edges by physical resource with joint capacities.
std::vector<CapacityGroup> shared_capacity_groups(const LayeredGraph& lg);

}  // namespace dcnet
