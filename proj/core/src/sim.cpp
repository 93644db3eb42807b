#include "dcnet/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dcnet/arrivals.hpp"
#include "dcnet/controller.hpp"
#include "dcnet/dcnc.hpp"
#include "dcnet/flow_matcher.hpp"
#include "dcnet/queueing.hpp"

namespace dcnet {

std::string to_string(Policy p) {
  return p == Policy::Proposed ? "proposed" : "dcnc";
}

Policy policy_from_string(const std::string& name) {
  if (name == "proposed") return Policy::Proposed;
  if (name == "dcnc") return Policy::Dcnc;
  throw ConfigError("unknown policy: " + name +
                    " (expected 'proposed' or 'dcnc')");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Lambda: return "lambda";
    case SweepAxis::V: return "V";
    case SweepAxis::Lifetime: return "lifetime";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "lambda") return SweepAxis::Lambda;
  if (name == "V" || name == "v") return SweepAxis::V;
  if (name == "lifetime" || name == "L") return SweepAxis::Lifetime;
  throw ConfigError("unknown sweep axis: " + name +
                    " (expected 'lambda', 'V', or 'lifetime')");
}

SimInstance make_instance(const CloudScenario& base, int lifetime_override,
                          double lambda_scale) {
  require_config(lifetime_override >= 0, "lifetime override must be >= 0");
  require_config(lambda_scale > 0.0, "arrival scale must be positive");
  SimInstance inst;
  inst.scenario = base;
  for (auto& client : inst.scenario.clients) {
    const int old_max = client.max_lifetime;
    if (lifetime_override > 0) client.max_lifetime = lifetime_override;
    for (auto& [l, rate] : client.lambda_mbps) {
      if (lambda_scale != 1.0) rate *= lambda_scale;
      // Entries at the old full lifetime mean "born with maximum life" and
      // track the override; anything else clamps to the new maximum.
      l = (l == old_max) ? client.max_lifetime
                         : std::min(l, client.max_lifetime);
    }
  }
  validate_scenario(inst.scenario);
  inst.build = build_layered_graph(inst.scenario);
  inst.groups = shared_capacity_groups(inst.build.layered);
  inst.lambda_total = 0.0;
  for (const auto& c : inst.build.commodities) {
    inst.lambda_total += c.total_rate();
  }
  return inst;
}

namespace {

std::vector<double> group_averages(const std::vector<CapacityGroup>& groups,
                                   const std::vector<double>& flow_sums,
                                   int max_lifetime, int num_commodities,
                                   int num_edges, long long slots) {
  std::vector<double> avg(groups.size(), 0.0);
  if (slots == 0) return avg;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    double s = 0.0;
    for (int e : groups[gi].edges) {
      for (int k = 0; k < num_commodities; ++k) {
        for (int l = 1; l <= max_lifetime; ++l) {
          s += flow_sums[(static_cast<std::size_t>(k) * num_edges + e) *
                             max_lifetime +
                         (l - 1)];
        }
      }
    }
    avg[gi] = s / static_cast<double>(slots);
  }
  return avg;
}

void snapshot_queues(const VirtualQueueBank& u, long long slot,
                     std::vector<QueueSnapshotRow>& out) {
  for (int k = 0; k < u.num_commodities(); ++k) {
    out.push_back({slot, k, u.destination(k), 0, u.dest(k)});
    for (NodeId i = 0; i < u.num_nodes(); ++i) {
      if (i == u.destination(k)) continue;  // no conservation queues there
      for (int l = 1; l <= u.max_lifetime(); ++l) {
        out.push_back({slot, k, i, l, u.at(k, i, l)});
      }
    }
  }
}

RunResult run_proposed(const SimInstance& inst, const RunConfig& cfg) {
  const NetworkGraph& g = inst.graph();
  const auto& commodities = inst.commodities();
  const int K = static_cast<int>(commodities.size());

  ArrivalGenerator gen(commodities, inst.scenario.arrival_process,
                       split_seed(cfg.seed, 0), inst.scenario.a_max_factor);
  Rng realize_rng(split_seed(cfg.seed, 1));
  LifetimeQueueBank bank(g, commodities);
  LdpController controller(g, inst.groups, commodities,
                           ControllerConfig{cfg.V});
  RealizeOptions ropts;
  ropts.sampled = cfg.sampled_realization;
  ropts.quantum = cfg.quantum;
  ropts.peak_cap_factor = cfg.peak_cap_factor;
  ropts.groups = &inst.groups;
  FlowMatcher matcher(g, commodities, ropts);
  MetricsSeries metrics(K, cfg.record_every);

  ArrivalSample arrivals(K);
  RunResult r;
  // Per-slot plan flow into destinations (the series the deficit queues
  // integrate); convergence of the policy is defined on this series.
  std::vector<double> plan_delivered;
  plan_delivered.reserve(static_cast<std::size_t>(cfg.horizon));
  for (long long t = 0; t < cfg.horizon; ++t) {
    gen.generate(arrivals);
    const FlowDecision& nu = controller.step(arrivals);
    double nu_dest = 0.0;
    nu.for_each([&](int e, int /*l*/, int k, double amt) {
      if (g.edge(e).dst == commodities[static_cast<std::size_t>(k)].destination)
        nu_dest += amt;
    });
    plan_delivered.push_back(nu_dest);
    // The controller's deficit values bound exactly how far its summed
    // outflow can run ahead of availability per row (the floored-at-zero
    // update telescopes), so the matcher treats that much excess as
    // finite-horizon bias instead of a conservation violation.
    matcher.observe(nu, arrivals,
                    controller.queues().conservation_values().data());
    FlowDecision mu = matcher.realize(bank, realize_rng);
    SlotLedger ledger = bank.advance(mu, arrivals, g);
    const bool recording = (t + 1) % cfg.record_every == 0;
    metrics.append(ledger.delivered, ledger.delivered /*raw == timely*/,
                   ledger.dropped, ledger.cost, bank.total_backlog(),
                   controller.queues().norm1(),
                   recording ? matcher.gap() : 0.0);
    if (cfg.queue_snapshot_every > 0 &&
        (t + 1) % cfg.queue_snapshot_every == 0) {
      snapshot_queues(controller.queues(), t, r.queue_snapshots);
    }
  }

  r.policy = cfg.policy;
  r.V = cfg.V;
  r.horizon = cfg.horizon;
  r.seed = cfg.seed;
  r.lambda_total = inst.lambda_total;
  r.avg_delivered.resize(K);
  r.avg_delivered_raw.resize(K);
  r.avg_dropped.resize(K);
  for (int k = 0; k < K; ++k) {
    r.avg_delivered[k] = metrics.avg_delivered(k);
    r.avg_delivered_raw[k] = metrics.avg_delivered_raw(k);
    r.avg_dropped[k] =
        cfg.horizon == 0
            ? 0.0
            : metrics.dropped_sum(k) / static_cast<double>(cfg.horizon);
  }
  r.avg_cost = metrics.avg_cost();
  r.reliability = inst.lambda_total <= 0.0
                      ? 0.0
                      : metrics.avg_delivered_total() / inst.lambda_total;
  r.physical_backlog_final = bank.total_backlog();
  r.virtual_backlog_final = controller.queues().norm1();
  r.virtual_backlog_over_t =
      cfg.horizon == 0
          ? 0.0
          : r.virtual_backlog_final / static_cast<double>(cfg.horizon);
  r.flow_gap = matcher.gap();
  r.matcher_skips = matcher.skips();
  double gamma_weighted = 0.0;  // reliability target uses per-commodity gamma
  for (const auto& c : commodities) {
    gamma_weighted += c.gamma * c.total_rate();
  }
  r.convergence_slot =
      detect_convergence(plan_delivered, 1.0, gamma_weighted,
                         cfg.convergence_eps * inst.lambda_total);
  r.convergence_slot_actual = detect_convergence(
      metrics.delivered_per_slot(), 1.0, gamma_weighted,
      cfg.convergence_eps * inst.lambda_total);
  r.group_avg_flow =
      group_averages(inst.groups, matcher.actual_sums(),
                     matcher.stats().max_lifetime(), K, g.num_edges(),
                     matcher.realized_slots());
  r.rows = metrics.rows();
  return r;
}

RunResult run_dcnc(const SimInstance& inst, const RunConfig& cfg) {
  const NetworkGraph& g = inst.graph();
  const auto& commodities = inst.commodities();
  const int K = static_cast<int>(commodities.size());

  ArrivalGenerator gen(commodities, inst.scenario.arrival_process,
                       split_seed(cfg.seed, 0), inst.scenario.a_max_factor);
  DcncController controller(g, inst.groups, commodities, cfg.V);
  MetricsSeries metrics(K, cfg.record_every);

  ArrivalSample arrivals(K);
  std::vector<double> zero(K, 0.0);
  for (long long t = 0; t < cfg.horizon; ++t) {
    gen.generate(arrivals);
    DcncController::SlotResult slot = controller.step(arrivals);
    metrics.append(slot.delivered_timely, slot.delivered_raw, zero, slot.cost,
                   controller.total_backlog(), 0.0, 0.0);
  }

  RunResult r;
  r.policy = cfg.policy;
  r.V = cfg.V;
  r.horizon = cfg.horizon;
  r.seed = cfg.seed;
  r.lambda_total = inst.lambda_total;
  r.avg_delivered.resize(K);
  r.avg_delivered_raw.resize(K);
  r.avg_dropped.assign(K, 0.0);  // the baseline never drops
  for (int k = 0; k < K; ++k) {
    r.avg_delivered[k] = metrics.avg_delivered(k);
    r.avg_delivered_raw[k] = metrics.avg_delivered_raw(k);
  }
  r.avg_cost = metrics.avg_cost();
  r.reliability = inst.lambda_total <= 0.0
                      ? 0.0
                      : metrics.avg_delivered_total() / inst.lambda_total;
  r.physical_backlog_final = controller.total_backlog();
  double gamma_weighted = 0.0;
  for (const auto& c : commodities) {
    gamma_weighted += c.gamma * c.total_rate();
  }
  r.convergence_slot = detect_convergence(
      metrics.delivered_per_slot(), 1.0, gamma_weighted,
      cfg.convergence_eps * inst.lambda_total);
  r.convergence_slot_actual = r.convergence_slot;  // plan == delivery here
  r.rows = metrics.rows();
  return r;
}

}  // namespace

RunResult run_simulation(const SimInstance& inst, const RunConfig& cfg) {
  require_config(cfg.horizon >= 1, "horizon must be >= 1");
  require_config(cfg.record_every >= 1, "record interval must be >= 1");
  require_config(cfg.V >= 0.0, "cost emphasis V must be non-negative");
  return cfg.policy == Policy::Proposed ? run_proposed(inst, cfg)
                                        : run_dcnc(inst, cfg);
}

std::vector<SweepRow> run_sweep(const CloudScenario& scenario,
                                const SweepConfig& cfg) {
  require_config(!cfg.values.empty(), "sweep needs at least one value");
  require_config(!cfg.policies.empty(), "sweep needs at least one policy");
  require_config(cfg.replications >= 1, "sweep needs replications >= 1");
  require_config(cfg.jobs >= 1, "jobs must be >= 1");

  // Instances are shared across policies and replications of one value.
  std::vector<SimInstance> instances;
  instances.reserve(cfg.values.size());
  for (double value : cfg.values) {
    int lifetime = cfg.lifetime_override;
    double scale = cfg.lambda_scale;
    if (cfg.axis == SweepAxis::Lifetime) {
      require_config(value >= 1.0 && value == std::floor(value),
                     "lifetime values must be positive integers");
      lifetime = static_cast<int>(value);
    } else if (cfg.axis == SweepAxis::Lambda) {
      scale = value;
    }
    instances.push_back(make_instance(scenario, lifetime, scale));
  }

  struct Task {
    std::size_t instance_index;
    Policy policy;
    double value;
    int replication;
  };
  std::vector<Task> tasks;
  for (Policy policy : cfg.policies) {
    for (std::size_t vi = 0; vi < cfg.values.size(); ++vi) {
      for (int rep = 0; rep < cfg.replications; ++rep) {
        tasks.push_back({vi, policy, cfg.values[vi], rep});
      }
    }
  }

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      RunConfig rc = cfg.base;
      rc.policy = task.policy;
      if (cfg.axis == SweepAxis::V) rc.V = task.value;
      rc.seed = split_seed(cfg.master_seed,
                           static_cast<std::uint64_t>(task.replication));
      SweepRow row;
      row.policy = task.policy;
      row.value = task.value;
      row.replication = task.replication;
      row.result = run_simulation(instances[task.instance_index], rc);
      rows[i] = std::move(row);
    }
  };
  const int jobs =
      std::min<int>(cfg.jobs, static_cast<int>(tasks.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace dcnet
