#include "dcnet/layered.hpp"

#include <cmath>

namespace dcnet {

std::string LayeredGraph::node_label(NodeId layered) const {
  return std::to_string(phys(layered) + 1) + "@" +
         std::to_string(stage(layered));
}

LayeredBuild build_layered_graph(const CloudScenario& s) {
  validate_scenario(s);
  const int V = s.num_nodes;
  const int S = s.service_stages;

  LayeredBuild out;
  LayeredGraph& lg = out.layered;
  lg.stages = S;
  lg.phys_nodes = V;

  std::vector<Edge> edges;
  std::vector<LayeredEdgeInfo> info;
  // Stage-s copies of every physical link first, in stage-major order...
  for (int stage = 0; stage <= S; ++stage) {
    for (int pe = 0; pe < static_cast<int>(s.links.size()); ++pe) {
      const Edge& phys = s.links[pe];
      edges.push_back({stage * V + phys.src, stage * V + phys.dst,
                       phys.capacity, phys.cost});
      info.push_back({EdgeKind::Transmission, pe, -1, stage});
    }
  }
  // ...then the processing steps on compute-capable nodes.
  for (int stage = 0; stage < S; ++stage) {
    for (NodeId i = 0; i < V; ++i) {
      double cap = s.compute_units(i);
      if (cap <= 0.0) continue;
      edges.push_back({stage * V + i, (stage + 1) * V + i, cap,
                       s.compute_cost_per_unit(i)});
      info.push_back({EdgeKind::Processing, -1, i, stage});
    }
  }
  lg.graph = NetworkGraph(V * (S + 1), std::move(edges));
  lg.info = std::move(info);

  for (const auto& cl : s.clients) {
    Commodity c;
    c.destination = lg.id(cl.destination, S);
    c.gamma = cl.gamma;
    c.max_lifetime = cl.max_lifetime;
    double max_rate = 0.0;
    for (const auto& [l, mbps] : cl.lambda_mbps) {
      double rate = s.units.rate_to_units(mbps);
      if (rate <= 0.0) continue;
      c.rates.push_back({lg.id(cl.source, 0), l, rate});
      max_rate = std::max(max_rate, rate);
    }
    c.a_max = s.a_max_factor * max_rate;
    validate_commodity(c, lg.graph.num_nodes());

    // Deliverability probe: a packet spends one slot per layered hop, so it
    // needs lifetime >= the shortest layered path length.
    auto dist = lg.graph.hop_distances(lg.id(cl.source, 0));
    int hops = dist[c.destination];
    if (hops < 0) {
      out.warnings.push_back(
          "client " + std::to_string(cl.source + 1) + "->" +
          std::to_string(cl.destination + 1) +
          " cannot reach its destination through the service chain");
    } else if (c.max_lifetime < hops) {
      out.warnings.push_back(
          "client " + std::to_string(cl.source + 1) + "->" +
          std::to_string(cl.destination + 1) + " needs at least " +
          std::to_string(hops) + " slots but packets live only " +
          std::to_string(c.max_lifetime) + "; it is undeliverable");
    }
    out.commodities.push_back(std::move(c));
  }
  return out;
}

std::vector<CapacityGroup> shared_capacity_groups(const LayeredGraph& lg) {
  std::vector<CapacityGroup> groups;
  // One group per physical link, members ordered by stage (matching edge
  // construction order), then one group per compute host.
  std::vector<int> link_group;  // phys edge -> group index
  std::vector<int> node_group(lg.phys_nodes, -1);
  for (int e = 0; e < lg.graph.num_edges(); ++e) {
    const LayeredEdgeInfo& li = lg.info[e];
    const Edge& ed = lg.graph.edge(e);
    if (li.kind == EdgeKind::Transmission) {
      if (li.phys_edge >= static_cast<int>(link_group.size())) {
        link_group.resize(li.phys_edge + 1, -1);
      }
      if (link_group[li.phys_edge] < 0) {
        link_group[li.phys_edge] = static_cast<int>(groups.size());
        NodeId a = lg.phys(ed.src);
        NodeId b = lg.phys(ed.dst);
        groups.push_back({"link:" + std::to_string(a + 1) + "->" +
                              std::to_string(b + 1),
                          ed.capacity,
                          {}});
      }
      groups[link_group[li.phys_edge]].edges.push_back(e);
    } else {
      if (node_group[li.phys_node] < 0) {
        node_group[li.phys_node] = static_cast<int>(groups.size());
        groups.push_back(
            {"cpu:" + std::to_string(li.phys_node + 1), ed.capacity, {}});
      }
      groups[node_group[li.phys_node]].edges.push_back(e);
    }
  }
  return groups;
}

}  // namespace dcnet
