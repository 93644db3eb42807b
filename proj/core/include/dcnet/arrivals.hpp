#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dcnet/commodity.hpp"
#include "dcnet/queueing.hpp"
#include "dcnet/scenario.hpp"

namespace dcnet {

// Derives an independent stream seed from a master seed (splitmix64 over
// the pair), so replications and sweep points never share randomness.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

// Deterministic random source.  std::mt19937_64 output is fully specified
// by the standard, and every derived draw below is built from its raw bits
// with explicit arithmetic, so trajectories replay bit-identically across
// platforms (unlike std::poisson_distribution, whose algorithm is
// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Poisson sample by inverse-product (multiplication) method; means large
  // enough to underflow exp(-mean) are split into independent halves.
  long long poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

// Draws one slot of arrivals for every (commodity, source, lifetime) rate
// entry.  Samples are truncated at `truncation_factor` times the entry's
// mean so per-slot arrivals stay bounded.
class ArrivalGenerator {
 public:
  ArrivalGenerator(const std::vector<Commodity>& commodities,
                   ArrivalProcessKind kind, std::uint64_t seed,
                   double truncation_factor = 20.0);

  // Overwrites `out` with this slot's arrivals.
  void generate(ArrivalSample& out);

  ArrivalProcessKind kind() const { return kind_; }

 private:
  struct Entry {
    NodeId node;
    int lifetime;
    int commodity;
    double rate;
    double cap;
  };
  std::vector<Entry> entries_;
  ArrivalProcessKind kind_;
  Rng rng_;
  int num_commodities_;
};

}  // namespace dcnet
