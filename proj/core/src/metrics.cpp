#include "dcnet/metrics.hpp"

#include <algorithm>
#include <limits>

namespace dcnet {

MetricsSeries::MetricsSeries(int num_commodities, long long record_every)
    : num_commodities_(num_commodities),
      record_every_(std::max<long long>(1, record_every)),
      delivered_sum_(num_commodities, 0.0),
      delivered_raw_sum_(num_commodities, 0.0),
      dropped_sum_(num_commodities, 0.0) {}

void MetricsSeries::append(std::span<const double> delivered_timely,
                           std::span<const double> delivered_raw,
                           std::span<const double> dropped, double cost,
                           double physical_backlog, double virtual_backlog,
                           double flow_gap) {
  require_invariant(
      static_cast<int>(delivered_timely.size()) == num_commodities_ &&
          static_cast<int>(delivered_raw.size()) == num_commodities_ &&
          static_cast<int>(dropped.size()) == num_commodities_,
      "metric spans must cover every commodity");
  double timely_total = 0.0;
  for (int k = 0; k < num_commodities_; ++k) {
    delivered_sum_[k] += delivered_timely[k];
    delivered_raw_sum_[k] += delivered_raw[k];
    dropped_sum_[k] += dropped[k];
    timely_total += delivered_timely[k];
  }
  cost_sum_ += cost;
  delivered_series_.push_back(timely_total);
  ++t_;
  if (t_ % record_every_ == 0) {
    MetricsRow row;
    row.slot = t_ - 1;
    const double inv = 1.0 / static_cast<double>(t_);
    double ds = 0.0, rs = 0.0, ps = 0.0;
    for (int k = 0; k < num_commodities_; ++k) {
      ds += delivered_sum_[k];
      rs += delivered_raw_sum_[k];
      ps += dropped_sum_[k];
    }
    row.avg_delivered = ds * inv;
    row.avg_delivered_raw = rs * inv;
    row.avg_dropped = ps * inv;
    row.avg_cost = cost_sum_ * inv;
    row.physical_backlog = physical_backlog;
    row.virtual_backlog = virtual_backlog;
    row.flow_gap = flow_gap;
    rows_.push_back(row);
  }
}

std::optional<long long> detect_convergence(
    std::span<const double> delivered_per_slot, double gamma,
    double lambda_total, double eps) {
  const long long T = static_cast<long long>(delivered_per_slot.size());
  if (T == 0) return std::nullopt;
  const double target = gamma * lambda_total;

  // deficit(s) = target - prefix(s)/s for s = 1..T; suffix maxima give the
  // exact sup over all later horizons.
  std::vector<double> deficit(static_cast<std::size_t>(T));
  double prefix = 0.0;
  for (long long s = 1; s <= T; ++s) {
    prefix += delivered_per_slot[static_cast<std::size_t>(s - 1)];
    deficit[static_cast<std::size_t>(s - 1)] =
        target - prefix / static_cast<double>(s);
  }
  double sup = -std::numeric_limits<double>::infinity();
  long long first_bad_after = 0;  // largest s with deficit(s) > eps
  for (long long s = T; s >= 1; --s) {
    sup = std::max(sup, deficit[static_cast<std::size_t>(s - 1)]);
    if (sup > eps) {
      first_bad_after = s;
      break;
    }
  }
  if (first_bad_after == 0) return 0;   // clean from the very start
  if (first_bad_after == T) return std::nullopt;  // never settles in horizon
  return first_bad_after + 1;
}

}  // namespace dcnet
