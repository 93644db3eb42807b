#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcnet/layered.hpp"
#include "dcnet/metrics.hpp"
#include "dcnet/scenario.hpp"

namespace dcnet {

enum class Policy { Proposed, Dcnc };

std::string to_string(Policy p);
Policy policy_from_string(const std::string& name);

// A scenario expanded and ready to run: layered graph, layered commodities,
// shared capacity groups.
struct SimInstance {
  CloudScenario scenario;  // effective scenario (overrides applied)
  LayeredBuild build;
  std::vector<CapacityGroup> groups;
  double lambda_total = 0.0;  // total mean arrival rate, flow units/slot

  const NetworkGraph& graph() const { return build.layered.graph; }
  const std::vector<Commodity>& commodities() const {
    return build.commodities;
  }
};

// Applies optional overrides (same lifetime for every client; arrival rates
// scaled by `lambda_scale`) and expands the scenario.
SimInstance make_instance(const CloudScenario& base, int lifetime_override = 0,
                          double lambda_scale = 1.0);

struct RunConfig {
  Policy policy = Policy::Proposed;
  double V = 0.0;
  long long horizon = 1;
  std::uint64_t seed = 1;
  long long record_every = 1000;
  // Convergence threshold as a fraction of the total arrival rate.
  double convergence_eps = 0.005;
  bool sampled_realization = false;  // sample whole quanta instead of fluid
  double quantum = 1.0;
  double peak_cap_factor = 0.0;  // > 0: per-slot group flow cap multiple
  // When > 0, the proposed policy snapshots every virtual queue's value
  // every this-many slots into RunResult::queue_snapshots.
  long long queue_snapshot_every = 0;
};

// One virtual queue's value at a snapshot slot.  Conservation queues carry
// lifetime >= 1; each commodity's deficit queue at its destination is
// reported with lifetime 0.  Node ids refer to the expanded (layered) graph.
struct QueueSnapshotRow {
  long long slot = 0;  // 0-based slot index of the snapshot
  int commodity = 0;
  int node = 0;
  int lifetime = 0;
  double value = 0.0;
};

struct RunResult {
  Policy policy = Policy::Proposed;
  double V = 0.0;
  long long horizon = 0;
  std::uint64_t seed = 0;
  double lambda_total = 0.0;  // flow units/slot

  std::vector<double> avg_delivered;      // timely, per commodity
  std::vector<double> avg_delivered_raw;  // includes late deliveries
  std::vector<double> avg_dropped;
  double avg_cost = 0.0;
  double reliability = 0.0;  // total timely rate / lambda_total

  double physical_backlog_final = 0.0;
  double virtual_backlog_final = 0.0;   // ||U||_1 at the horizon
  double virtual_backlog_over_t = 0.0;  // ||U||_1 / T (stability probe)
  double flow_gap = 0.0;                // plan-vs-actual average L1 gap
  long long matcher_skips = 0;
  // eps-convergence time of the policy's delivery plan: for the virtual-queue
  // policy this is measured on the planned flow into each destination (the
  // series whose running average the deficit queues bound); for the baseline,
  // on its delivered traffic.
  std::optional<long long> convergence_slot;
  // Same detector applied to physically delivered timely traffic. Converges
  // later than the plan series because realized flow only tracks the plan
  // once the empirical transfer distributions have been learned.
  std::optional<long long> convergence_slot_actual;
  std::vector<double> group_avg_flow;  // realized average per capacity group
  std::vector<MetricsRow> rows;        // thinned time series
  // Periodic per-queue dumps (empty unless queue_snapshot_every > 0 and the
  // policy keeps virtual queues).
  std::vector<QueueSnapshotRow> queue_snapshots;

  double avg_delivered_total() const {
    double s = 0.0;
    for (double v : avg_delivered) s += v;
    return s;
  }
};

// Runs one policy for `horizon` slots.  Deterministic in all inputs.
RunResult run_simulation(const SimInstance& inst, const RunConfig& cfg);

enum class SweepAxis { Lambda, V, Lifetime };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

struct SweepConfig {
  SweepAxis axis = SweepAxis::V;
  std::vector<double> values;  // Lifetime axis: integral values
  std::vector<Policy> policies = {Policy::Proposed};
  int replications = 1;
  RunConfig base;  // horizon/V/eps defaults; the axis overrides its field
  std::uint64_t master_seed = 1;
  int jobs = 1;
  int lifetime_override = 0;   // applied when the axis is not Lifetime
  double lambda_scale = 1.0;   // applied when the axis is not Lambda
};

struct SweepRow {
  Policy policy = Policy::Proposed;
  double value = 0.0;
  int replication = 0;
  RunResult result;
};

// One run per (policy, value, replication), parallel up to `jobs` threads.
// Replication r uses seed split_seed(master_seed, r) for every point, so
// values and policies are compared under common randomness.
std::vector<SweepRow> run_sweep(const CloudScenario& scenario,
                                const SweepConfig& cfg);

}  // namespace dcnet
