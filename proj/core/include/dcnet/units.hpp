#pragma once

#include "dcnet/errors.hpp"
#include "dcnet/rational.hpp"

namespace dcnet {

// Converts between external rates (Mbps) / costs and the internal
// dimensionless flow-units-per-slot system.  One flow unit corresponds to
// `flow_unit_mbps` megabits per second sustained for one slot.
class UnitSystem {
 public:
  UnitSystem() : flow_unit_mbps_(10) {}

  explicit UnitSystem(Rational flow_unit_mbps)
      : flow_unit_mbps_(flow_unit_mbps) {
    require_config(flow_unit_mbps_.positive(),
                   "flow unit must be a positive rational");
  }

  static UnitSystem from_mbps(double flow_unit_mbps) {
    return UnitSystem(Rational::from_double(flow_unit_mbps));
  }

  const Rational& flow_unit_mbps() const { return flow_unit_mbps_; }

  // Rate conversions (exact in rational form).
  Rational rate_to_units(const Rational& mbps) const {
    require_config(!(mbps < Rational(0)), "rates must be non-negative");
    return mbps / flow_unit_mbps_;
  }
  Rational rate_to_mbps(const Rational& units) const {
    require_config(!(units < Rational(0)), "rates must be non-negative");
    return units * flow_unit_mbps_;
  }

  double rate_to_units(double mbps) const {
    return rate_to_units(Rational::from_double(mbps)).to_double();
  }
  double rate_to_mbps_d(double units) const {
    return rate_to_mbps(Rational::from_double(units)).to_double();
  }

  // Cost conversions.  External link costs are quoted per gigabit carried;
  // one flow unit carries flow_unit_mbps megabits per slot.
  double cost_per_gb_to_per_unit(double cost_per_gb) const {
    require_config(cost_per_gb >= 0.0, "costs must be non-negative");
    return cost_per_gb * flow_unit_mbps_.to_double() / 1000.0;
  }

  // External compute costs are quoted per CPU per slot; a CPU processes
  // `per_cpu_mbps` megabits per slot.
  double cost_per_cpu_to_per_unit(double cost_per_cpu,
                                  double per_cpu_mbps) const {
    require_config(cost_per_cpu >= 0.0, "costs must be non-negative");
    require_config(per_cpu_mbps > 0.0, "per-CPU rate must be positive");
    return cost_per_cpu / (per_cpu_mbps / flow_unit_mbps_.to_double());
  }

 private:
  Rational flow_unit_mbps_;
};

// Spec-facing names used across the toolkit.
inline double convert_rate(const UnitSystem& units, double mbps) {
  return units.rate_to_units(mbps);
}

}  // namespace dcnet
