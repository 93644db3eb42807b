#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dcnet/errors.hpp"

namespace dcnet {

// One thinned snapshot of the running state, for CSV export.
struct MetricsRow {
  long long slot = 0;          // 0-based slot index of the snapshot
  double avg_delivered = 0.0;  // timely deliveries per slot, from t = 0
  double avg_delivered_raw = 0.0;
  double avg_dropped = 0.0;
  double avg_cost = 0.0;
  double physical_backlog = 0.0;  // instantaneous totals
  double virtual_backlog = 0.0;
  double flow_gap = 0.0;  // relative L1 actual-vs-plan average gap
};

// Per-slot metric collection: full delivery series (needed for exact
// convergence detection), running totals, and thinned snapshot rows.
class MetricsSeries {
 public:
  MetricsSeries(int num_commodities, long long record_every);

  void append(std::span<const double> delivered_timely,
              std::span<const double> delivered_raw,
              std::span<const double> dropped, double cost,
              double physical_backlog, double virtual_backlog,
              double flow_gap);

  long long slots() const { return t_; }
  const std::vector<double>& delivered_per_slot() const {
    return delivered_series_;
  }
  const std::vector<MetricsRow>& rows() const { return rows_; }

  double delivered_sum(int k) const { return delivered_sum_[k]; }
  double delivered_raw_sum(int k) const { return delivered_raw_sum_[k]; }
  double dropped_sum(int k) const { return dropped_sum_[k]; }
  double cost_sum() const { return cost_sum_; }

  double avg_delivered_total() const {
    double s = 0.0;
    for (double v : delivered_sum_) s += v;
    return t_ == 0 ? 0.0 : s / static_cast<double>(t_);
  }
  double avg_delivered(int k) const {
    return t_ == 0 ? 0.0 : delivered_sum_[k] / static_cast<double>(t_);
  }
  double avg_delivered_raw(int k) const {
    return t_ == 0 ? 0.0 : delivered_raw_sum_[k] / static_cast<double>(t_);
  }
  double avg_cost() const {
    return t_ == 0 ? 0.0 : cost_sum_ / static_cast<double>(t_);
  }

 private:
  int num_commodities_;
  long long record_every_;
  long long t_ = 0;
  std::vector<double> delivered_series_;  // total timely per slot
  std::vector<double> delivered_sum_, delivered_raw_sum_, dropped_sum_;
  double cost_sum_ = 0.0;
  std::vector<MetricsRow> rows_;
};

// First slot index after which the running reliability deficit
//   gamma * lambda_total - (1/s) * sum_{t < s} delivered(t)
// never again exceeds eps (checked retrospectively over the whole recorded
// series, s = 1..T).  eps is in the same flow units as the deficit.
// Returns nullopt if the deficit still exceeds eps at the horizon.
std::optional<long long> detect_convergence(
    std::span<const double> delivered_per_slot, double gamma,
    double lambda_total, double eps);

}  // namespace dcnet
