// dcnet: scenario validation, simulation runs, parameter sweeps, and
// capacity-region queries, with reproducible CSV/JSON artifacts.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcnet/capacity.hpp"
#include "dcnet/errors.hpp"
#include "dcnet/scenario.hpp"
#include "dcnet/sim.hpp"

#ifndef DCNET_VERSION
#define DCNET_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dcnet;

namespace {

// ---------------------------------------------------------------------
// formatting / hashing / atomic IO

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);  // shortest round-trip form
}

std::string num(long long v) { return std::to_string(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

// Writes via a temporary file in the same directory, then renames, so
// readers never observe a half-written artifact.
void atomic_write(const fs::path& path, const std::string& content) {
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(static_cast<long long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out.good()) {
      throw ConfigError("cannot write file: " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out.good()) {
      throw ConfigError("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

class Csv {
 public:
  explicit Csv(const std::string& manifest_ref) {
    body_ += "# manifest: " + manifest_ref + "\n";
  }
  void header(const std::vector<std::string>& cols) { line(cols); }
  void line(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) body_ += ',';
      body_ += fields[i];
    }
    body_ += '\n';
  }
  const std::string& str() const { return body_; }

 private:
  std::string body_;
};

std::string out_dir_default() {
  if (const char* env = std::getenv("DCNET_OUT_DIR")) return env;
  return ".";
}

// ---------------------------------------------------------------------
// shared option bundles

struct ScenarioArgs {
  std::string scenario;        // builtin name or JSON file path
  std::string from_manifest;   // replay source
};

struct RunArgs {
  std::string policy = "proposed";
  double V = 0.0;
  int lifetime = 0;         // 0 = keep the scenario's lifetimes
  double lambda_scale = 1.0;
  long long horizon = -1;   // -1 = scenario default
  std::uint64_t seed = 0;   // 0 = scenario default
  long long record_every = 1000;
  double eps = 0.005;
  bool sampled = false;
  double quantum = 1.0;
  double peak_cap = 0.0;
  long long u_snapshot_every = 0;  // 0 = no per-queue dumps
};

json run_args_to_json(const RunArgs& a) {
  return json{{"policy", a.policy},
              {"V", a.V},
              {"lifetime", a.lifetime},
              {"lambda_scale", a.lambda_scale},
              {"horizon", a.horizon},
              {"seed", a.seed},
              {"record_every", a.record_every},
              {"eps", a.eps},
              {"sampled", a.sampled},
              {"quantum", a.quantum},
              {"peak_cap", a.peak_cap},
              {"u_snapshot_every", a.u_snapshot_every}};
}

void run_args_from_json(const json& j, RunArgs& a, const CLI::App* cmd) {
  auto absent = [&](const char* flag) {
    const CLI::Option* o = cmd->get_option_no_throw(flag);
    return o == nullptr || o->count() == 0;
  };
  if (absent("--policy") && j.contains("policy")) a.policy = j["policy"];
  if (absent("--V") && j.contains("V")) a.V = j["V"];
  if (absent("--L") && j.contains("lifetime")) a.lifetime = j["lifetime"];
  if (absent("--lambda-scale") && j.contains("lambda_scale")) {
    a.lambda_scale = j["lambda_scale"];
  }
  if (absent("--T") && j.contains("horizon")) a.horizon = j["horizon"];
  if (absent("--seed") && j.contains("seed")) a.seed = j["seed"];
  if (absent("--record-every") && j.contains("record_every")) {
    a.record_every = j["record_every"];
  }
  if (absent("--eps") && j.contains("eps")) a.eps = j["eps"];
  if (absent("--sampled") && j.contains("sampled")) a.sampled = j["sampled"];
  if (absent("--quantum") && j.contains("quantum")) a.quantum = j["quantum"];
  if (absent("--peak-cap") && j.contains("peak_cap")) {
    a.peak_cap = j["peak_cap"];
  }
  if (absent("--u-snapshot-every") && j.contains("u_snapshot_every")) {
    a.u_snapshot_every = j["u_snapshot_every"];
  }
}

void add_run_options(CLI::App* cmd, RunArgs& a, bool with_policy) {
  if (with_policy) {
    cmd->add_option("--policy", a.policy, "proposed or dcnc");
  }
  cmd->add_option("--V", a.V, "cost emphasis of the controller");
  cmd->add_option("--L", a.lifetime,
                  "override every client's maximum lifetime");
  cmd->add_option("--lambda-scale", a.lambda_scale,
                  "scale all arrival rates");
  cmd->add_option("--T", a.horizon, "horizon in slots");
  cmd->add_option("--seed", a.seed, "random seed (0: scenario default)");
  cmd->add_option("--record-every", a.record_every,
                  "slots between metric snapshots");
  cmd->add_option("--eps", a.eps,
                  "convergence threshold, fraction of total arrival rate");
  cmd->add_flag("--sampled", a.sampled,
                "sample whole quanta instead of fluid splitting");
  cmd->add_option("--quantum", a.quantum, "quantum for --sampled");
  cmd->add_option("--peak-cap", a.peak_cap,
                  "per-slot group flow cap as a capacity multiple (0: off)");
}

// Loads the scenario: --scenario wins, then the manifest's embedded
// effective scenario, then an error.
CloudScenario resolve_scenario(const ScenarioArgs& sa, const json* manifest,
                               std::string& source_out) {
  if (!sa.scenario.empty()) {
    source_out = sa.scenario;
    return load_scenario_file(sa.scenario);
  }
  if (manifest != nullptr && manifest->contains("scenario") &&
      (*manifest)["scenario"].contains("effective")) {
    source_out = (*manifest)["scenario"].value("source", "manifest");
    return load_scenario_json((*manifest)["scenario"]["effective"].dump());
  }
  throw ConfigError("no scenario given (use --scenario or --from-manifest)");
}

json load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ConfigError("cannot open manifest: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ConfigError("manifest is not valid JSON: " + path);
  }
  return j;
}

struct ManifestOut {
  std::string file_name;  // e.g. run_manifest.json
  std::string reference;  // "run_manifest.json config <hash>"
  json doc;
};

ManifestOut make_manifest(const std::string& command, const std::string& tag,
                          const std::string& scenario_source,
                          const CloudScenario& effective,
                          const json& settings,
                          const std::vector<std::string>& outputs) {
  const std::string scen_json = scenario_to_json(effective);
  json doc;
  doc["format"] = 1;
  doc["tool"] = "dcnet";
  doc["version"] = DCNET_VERSION;
  doc["command"] = command;
  doc["scenario"] = {{"source", scenario_source},
                     {"effective", json::parse(scen_json)}};
  doc["settings"] = settings;
  doc["outputs"] = outputs;
  const std::uint64_t h = fnv1a(scen_json + "|" + settings.dump());
  doc["config_hash"] = hex64(h);
  ManifestOut out;
  out.file_name = tag + "_manifest.json";
  out.reference = out.file_name + " config " + hex64(h);
  out.doc = std::move(doc);
  return out;
}

void apply_run_defaults(const CloudScenario& s, RunArgs& a) {
  if (a.horizon < 0) a.horizon = s.default_horizon;
  if (a.seed == 0) a.seed = s.default_seed;
}

RunConfig to_run_config(const RunArgs& a) {
  RunConfig cfg;
  cfg.policy = policy_from_string(a.policy);
  cfg.V = a.V;
  cfg.horizon = a.horizon;
  cfg.seed = a.seed;
  cfg.record_every = a.record_every;
  cfg.convergence_eps = a.eps;
  cfg.sampled_realization = a.sampled;
  cfg.quantum = a.quantum;
  cfg.peak_cap_factor = a.peak_cap;
  cfg.queue_snapshot_every = a.u_snapshot_every;
  return cfg;
}

std::string opt_slot(const std::optional<long long>& v) {
  return v.has_value() ? num(*v) : std::string();
}

// ---------------------------------------------------------------------
// commands

int cmd_validate(const ScenarioArgs& sa) {
  std::string source;
  CloudScenario s = resolve_scenario(sa, nullptr, source);
  validate_scenario(s);
  SimInstance inst = make_instance(s);
  std::cout << "scenario:        " << s.name << " (" << source << ")\n"
            << "nodes:           " << s.num_nodes << "\n"
            << "directed links:  " << s.links.size() << "\n"
            << "service stages:  " << s.service_stages << "\n"
            << "layered nodes:   " << inst.graph().num_nodes() << "\n"
            << "layered edges:   " << inst.graph().num_edges() << "\n"
            << "capacity groups: " << inst.groups.size() << "\n"
            << "clients:         " << s.clients.size() << "\n"
            << "arrival rate:    " << num(inst.lambda_total)
            << " units/slot\n";
  for (const auto& w : inst.build.warnings) {
    std::cout << "warning:         " << w << "\n";
  }
  std::cout << "ok\n";
  return 0;
}

int cmd_run(const ScenarioArgs& sa, RunArgs& a, const std::string& out_dir,
            const std::string& tag, const CLI::App* cmd) {
  std::optional<json> manifest;
  if (!sa.from_manifest.empty()) {
    manifest = load_manifest(sa.from_manifest);
    if (manifest->contains("settings")) {
      run_args_from_json((*manifest)["settings"], a, cmd);
    }
  }
  std::string source;
  CloudScenario scenario =
      resolve_scenario(sa, manifest ? &*manifest : nullptr, source);
  apply_run_defaults(scenario, a);

  SimInstance inst = make_instance(scenario, a.lifetime, a.lambda_scale);
  RunResult r = run_simulation(inst, to_run_config(a));

  std::vector<std::string> outputs = {tag + "_metrics.csv",
                                      tag + "_summary.csv",
                                      tag + "_commodities.csv"};
  if (a.u_snapshot_every > 0) outputs.push_back(tag + "_uqueues.csv");
  ManifestOut mf = make_manifest("run", tag, source, scenario,
                                 run_args_to_json(a), outputs);

  const double fu = scenario.units.flow_unit_mbps().to_double();

  Csv metrics(mf.reference);
  metrics.header({"slot", "avg_timely", "avg_raw", "avg_dropped", "avg_cost",
                  "physical_backlog", "virtual_backlog", "flow_gap"});
  for (const auto& row : r.rows) {
    metrics.line({num(row.slot), num(row.avg_delivered),
                  num(row.avg_delivered_raw), num(row.avg_dropped),
                  num(row.avg_cost), num(row.physical_backlog),
                  num(row.virtual_backlog), num(row.flow_gap)});
  }

  Csv summary(mf.reference);
  summary.header({"policy", "V", "horizon", "seed", "flow_unit_mbps",
                  "lambda_total", "avg_timely", "avg_raw", "avg_dropped",
                  "avg_cost", "reliability", "convergence_slot",
                  "convergence_slot_actual", "flow_gap", "matcher_skips",
                  "virtual_backlog_final", "virtual_backlog_over_t",
                  "physical_backlog_final"});
  double timely = 0.0, raw = 0.0, dropped = 0.0;
  for (double v : r.avg_delivered) timely += v;
  for (double v : r.avg_delivered_raw) raw += v;
  for (double v : r.avg_dropped) dropped += v;
  summary.line({to_string(r.policy), num(r.V), num(r.horizon), num(r.seed),
                num(fu), num(r.lambda_total), num(timely), num(raw),
                num(dropped), num(r.avg_cost), num(r.reliability),
                opt_slot(r.convergence_slot),
                opt_slot(r.convergence_slot_actual), num(r.flow_gap),
                num(r.matcher_skips), num(r.virtual_backlog_final),
                num(r.virtual_backlog_over_t),
                num(r.physical_backlog_final)});

  Csv commodities(mf.reference);
  commodities.header(
      {"commodity", "avg_timely", "avg_raw", "avg_dropped", "timely_mbps"});
  for (std::size_t k = 0; k < r.avg_delivered.size(); ++k) {
    commodities.line({num(static_cast<long long>(k)), num(r.avg_delivered[k]),
                      num(r.avg_delivered_raw[k]), num(r.avg_dropped[k]),
                      num(r.avg_delivered[k] * fu)});
  }

  const fs::path dir(out_dir);
  atomic_write(dir / outputs[0], metrics.str());
  atomic_write(dir / outputs[1], summary.str());
  atomic_write(dir / outputs[2], commodities.str());
  if (a.u_snapshot_every > 0) {
    Csv uq(mf.reference);
    uq.header({"slot", "commodity", "node", "lifetime", "U"});
    for (const auto& q : r.queue_snapshots) {
      uq.line({num(q.slot), num(static_cast<long long>(q.commodity)),
               num(static_cast<long long>(q.node)),
               num(static_cast<long long>(q.lifetime)), num(q.value)});
    }
    atomic_write(dir / outputs[3], uq.str());
  }
  atomic_write(dir / mf.file_name, mf.doc.dump(2) + "\n");

  std::cout << "run complete: timely " << num(timely) << " units/slot ("
            << num(timely * fu) << " Mbps), cost " << num(r.avg_cost)
            << ", reliability " << num(r.reliability) << "\n"
            << "artifacts in " << dir.string() << " (" << mf.file_name
            << ")\n";
  return 0;
}

int cmd_capacity(const ScenarioArgs& sa, std::vector<int>& lifetimes,
                 double tol, std::optional<double> theta, bool exact,
                 const std::string& out_dir, const std::string& tag,
                 const CLI::App* cmd) {
  std::optional<json> manifest;
  if (!sa.from_manifest.empty()) {
    manifest = load_manifest(sa.from_manifest);
    const json& st = (*manifest)["settings"];
    auto absent = [&](const char* flag) {
      const CLI::Option* o = cmd->get_option_no_throw(flag);
      return o == nullptr || o->count() == 0;
    };
    if (absent("--L") && st.contains("lifetimes")) {
      lifetimes = st["lifetimes"].get<std::vector<int>>();
    }
    if (absent("--tol") && st.contains("tol")) tol = st["tol"];
    if (absent("--theta") && st.contains("theta") &&
        !st["theta"].is_null()) {
      theta = st["theta"].get<double>();
    }
    if (absent("--exact") && st.contains("exact")) {
      exact = st["exact"].get<bool>();
    }
  }
  std::string source;
  CloudScenario scenario =
      resolve_scenario(sa, manifest ? &*manifest : nullptr, source);
  require_config(!lifetimes.empty(),
                 "capacity needs at least one --L value");
  for (int l : lifetimes) {
    require_config(l >= 1, "--L values must be >= 1");
  }

  json settings{{"lifetimes", lifetimes},
                {"tol", tol},
                {"theta", theta.has_value() ? json(*theta) : json(nullptr)},
                {"exact", exact}};
  const std::vector<std::string> outputs = {tag + "_capacity.csv"};
  ManifestOut mf =
      make_manifest("capacity", tag, source, scenario, settings, outputs);

  CapacityOptions opts;
  opts.exact = exact;

  Csv csv(mf.reference);
  bool any_infeasible = false;
  if (theta.has_value()) {
    csv.header({"L", "theta", "feasible", "min_cost"});
    for (int l : lifetimes) {
      SimInstance inst = make_instance(scenario, l);
      auto probe = probe_capacity(inst.graph(), inst.commodities(),
                                  inst.groups, *theta, opts);
      any_infeasible = any_infeasible || !probe.feasible;
      csv.line({num(static_cast<long long>(l)), num(*theta),
                probe.feasible ? "1" : "0",
                probe.feasible ? num(probe.objective) : std::string()});
      std::cout << "L=" << l << " theta=" << num(*theta) << ": "
                << (probe.feasible ? "feasible, min cost " +
                                         num(probe.objective)
                                   : std::string("infeasible"))
                << "\n";
    }
  } else {
    csv.header({"L", "theta_star", "theta_upper", "probes", "unbounded",
                "min_cost_at_1"});
    for (int l : lifetimes) {
      SimInstance inst = make_instance(scenario, l);
      auto bound = region_boundary(inst.graph(), inst.commodities(),
                                   inst.groups, tol, opts);
      auto h = min_cost(inst.graph(), inst.commodities(), inst.groups, 1.0,
                        opts);
      csv.line({num(static_cast<long long>(l)), num(bound.theta_star),
                num(bound.upper), num(static_cast<long long>(bound.probes)),
                bound.unbounded ? "1" : "0",
                h.has_value() ? num(*h) : std::string()});
      std::cout << "L=" << l << ": theta* = " << num(bound.theta_star)
                << (h.has_value()
                        ? ", min cost at nominal load " + num(*h)
                        : ", nominal load infeasible")
                << "\n";
    }
  }

  const fs::path dir(out_dir);
  atomic_write(dir / outputs[0], csv.str());
  atomic_write(dir / mf.file_name, mf.doc.dump(2) + "\n");
  std::cout << "artifacts in " << dir.string() << " (" << mf.file_name
            << ")\n";
  return any_infeasible ? 4 : 0;
}

int cmd_sweep(const ScenarioArgs& sa, RunArgs& a, std::string& axis,
              std::vector<double>& values, std::vector<std::string>& policies,
              int& replications, int jobs, const std::string& out_dir,
              const std::string& tag, const CLI::App* cmd) {
  std::optional<json> manifest;
  if (!sa.from_manifest.empty()) {
    manifest = load_manifest(sa.from_manifest);
    const json& st = (*manifest)["settings"];
    run_args_from_json(st, a, cmd);
    auto absent = [&](const char* flag) {
      const CLI::Option* o = cmd->get_option_no_throw(flag);
      return o == nullptr || o->count() == 0;
    };
    if (absent("--axis") && st.contains("axis")) axis = st["axis"];
    if (absent("--values") && st.contains("values")) {
      values = st["values"].get<std::vector<double>>();
    }
    if (absent("--policies") && st.contains("policies")) {
      policies = st["policies"].get<std::vector<std::string>>();
    }
    if (absent("--replications") && st.contains("replications")) {
      replications = st["replications"];
    }
  }
  std::string source;
  CloudScenario scenario =
      resolve_scenario(sa, manifest ? &*manifest : nullptr, source);
  apply_run_defaults(scenario, a);
  require_config(!values.empty(), "sweep needs at least one --values entry");
  require_config(!policies.empty(), "sweep needs at least one policy");
  require_config(replications >= 1, "replications must be >= 1");

  // Per-queue dumps are a single-run feature; a replayed run manifest must
  // not make every sweep point accumulate them.
  a.u_snapshot_every = 0;

  SweepConfig sweep;
  sweep.axis = sweep_axis_from_string(axis);
  sweep.values = values;
  sweep.policies.clear();
  for (const auto& p : policies) {
    sweep.policies.push_back(policy_from_string(p));
  }
  sweep.replications = replications;
  sweep.base = to_run_config(a);
  sweep.master_seed = a.seed;
  sweep.jobs = jobs;
  sweep.lifetime_override = a.lifetime;
  sweep.lambda_scale = a.lambda_scale;

  json settings = run_args_to_json(a);
  settings.erase("policy");  // the policies list below is authoritative
  settings["axis"] = axis;
  settings["values"] = values;
  settings["policies"] = policies;
  settings["replications"] = replications;
  const std::vector<std::string> outputs = {tag + "_sweep.csv"};
  ManifestOut mf =
      make_manifest("sweep", tag, source, scenario, settings, outputs);

  std::vector<SweepRow> rows = run_sweep(scenario, sweep);

  // Group capacities are physical resources, identical across axis values.
  std::vector<double> caps;
  {
    const int l0 = sweep.axis == SweepAxis::Lifetime
                       ? static_cast<int>(values.front())
                       : a.lifetime;
    SimInstance inst = make_instance(scenario, l0, a.lambda_scale);
    for (const auto& g : inst.groups) caps.push_back(g.capacity);
  }
  auto max_utilization = [&caps](const RunResult& r) {
    double u = 0.0;
    for (std::size_t g = 0; g < r.group_avg_flow.size() && g < caps.size();
         ++g) {
      if (caps[g] > 0.0) u = std::max(u, r.group_avg_flow[g] / caps[g]);
    }
    return u;
  };

  const double fu = scenario.units.flow_unit_mbps().to_double();
  Csv csv(mf.reference);
  csv.header({"policy", "axis", "value", "replication", "seed",
              "lambda_total", "avg_timely", "timely_mbps", "avg_raw",
              "avg_dropped", "avg_cost", "reliability", "convergence_slot",
              "flow_gap", "matcher_skips", "virtual_backlog_over_t",
              "max_group_utilization"});
  for (const auto& row : rows) {
    const RunResult& r = row.result;
    double timely = 0.0, raw = 0.0, dropped = 0.0;
    for (double v : r.avg_delivered) timely += v;
    for (double v : r.avg_delivered_raw) raw += v;
    for (double v : r.avg_dropped) dropped += v;
    csv.line({to_string(row.policy), axis, num(row.value),
              num(static_cast<long long>(row.replication)), num(r.seed),
              num(r.lambda_total), num(timely), num(timely * fu), num(raw),
              num(dropped), num(r.avg_cost), num(r.reliability),
              opt_slot(r.convergence_slot), num(r.flow_gap),
              num(r.matcher_skips), num(r.virtual_backlog_over_t),
              num(max_utilization(r))});
  }

  const fs::path dir(out_dir);
  atomic_write(dir / outputs[0], csv.str());
  atomic_write(dir / mf.file_name, mf.doc.dump(2) + "\n");
  std::cout << "sweep complete: " << rows.size() << " runs\n"
            << "artifacts in " << dir.string() << " (" << mf.file_name
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deadline-aware network control toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DCNET_VERSION);

  std::string out_dir = out_dir_default();

  // validate -------------------------------------------------------
  ScenarioArgs va;
  CLI::App* validate =
      app.add_subcommand("validate", "schema-check and expand a scenario");
  validate->add_option("--scenario", va.scenario,
                       "built-in name or JSON file")
      ->required();

  // run --------------------------------------------------------------
  ScenarioArgs ra;
  RunArgs rargs;
  std::string run_tag = "run";
  CLI::App* run = app.add_subcommand("run", "simulate one policy");
  run->add_option("--scenario", ra.scenario, "built-in name or JSON file");
  run->add_option("--from-manifest", ra.from_manifest,
                  "replay settings from a manifest");
  add_run_options(run, rargs, /*with_policy=*/true);
  run->add_option(
      "--u-snapshot-every", rargs.u_snapshot_every,
      "slots between per-queue virtual-backlog dumps (0: off; writes "
      "<tag>_uqueues.csv, proposed policy only)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--tag", run_tag, "artifact file prefix");

  // capacity ---------------------------------------------------------
  ScenarioArgs ca;
  std::vector<int> cap_lifetimes;
  double cap_tol = 1e-3;
  double cap_theta = 0.0;
  bool cap_exact = false;
  std::string cap_tag = "capacity";
  CLI::App* capacity =
      app.add_subcommand("capacity", "query the supportable-load boundary");
  capacity->add_option("--scenario", ca.scenario,
                       "built-in name or JSON file");
  capacity->add_option("--from-manifest", ca.from_manifest,
                       "replay settings from a manifest");
  capacity->add_option("--L", cap_lifetimes,
                       "lifetime values to evaluate (one boundary per value)");
  capacity->add_option("--tol", cap_tol, "bisection tolerance");
  CLI::Option* theta_opt = capacity->add_option(
      "--theta", cap_theta,
      "probe feasibility/cost at this scaling instead of bisecting");
  capacity->add_flag("--exact", cap_exact,
                     "use exact rational arithmetic (small scenarios)");
  capacity->add_option("--out", out_dir, "output directory");
  capacity->add_option("--tag", cap_tag, "artifact file prefix");

  // sweep --------------------------------------------------------------
  ScenarioArgs wa;
  RunArgs wargs;
  std::string axis = "V";
  std::vector<double> values;
  std::vector<std::string> policies = {"proposed"};
  int replications = 1;
  int jobs = 1;
  std::string sweep_tag = "sweep";
  CLI::App* sweep =
      app.add_subcommand("sweep", "run a grid of simulations");
  sweep->add_option("--scenario", wa.scenario, "built-in name or JSON file");
  sweep->add_option("--from-manifest", wa.from_manifest,
                    "replay settings from a manifest");
  sweep->add_option("--axis", axis, "lambda, V, or lifetime");
  sweep->add_option("--values", values, "axis values");
  sweep->add_option("--policies", policies, "policies to compare");
  sweep->add_option("--replications", replications, "runs per point");
  sweep->add_option("--jobs", jobs, "parallel runs");
  add_run_options(sweep, wargs, /*with_policy=*/false);
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--tag", sweep_tag, "artifact file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Usage problems are config errors by contract; help/version exit 0.
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(va);
    if (run->parsed()) {
      return cmd_run(ra, rargs, out_dir, run_tag, run);
    }
    if (capacity->parsed()) {
      std::optional<double> theta;
      if (theta_opt->count() > 0) theta = cap_theta;
      return cmd_capacity(ca, cap_lifetimes, cap_tol, theta, cap_exact,
                          out_dir, cap_tag, capacity);
    }
    if (sweep->parsed()) {
      return cmd_sweep(wa, wargs, axis, values, policies, replications, jobs,
                       out_dir, sweep_tag, sweep);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // no subcommand matched (require_subcommand guards this)
}
