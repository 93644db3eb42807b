#include "dcnet/arrivals.hpp"

#include <algorithm>
#include <cmath>

namespace dcnet {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finalizer over the combined state; one round per word.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ mix(stream + 0x632be59bd9b4e019ull));
}

long long Rng::poisson(double mean) {
  require_invariant(mean >= 0.0 && std::isfinite(mean),
                    "poisson mean must be finite and non-negative");
  if (mean == 0.0) return 0;
  // exp(-mean) must stay well above the smallest normal double for the
  // product method; split larger means into independent halves.
  constexpr double kSplitAt = 500.0;
  if (mean > kSplitAt) {
    const double half = mean / 2.0;
    return poisson(half) + poisson(mean - half);
  }
  const double threshold = std::exp(-mean);
  long long count = -1;
  double product = 1.0;
  do {
    product *= uniform01();
    ++count;
  } while (product > threshold);
  return count;
}

ArrivalGenerator::ArrivalGenerator(const std::vector<Commodity>& commodities,
                                   ArrivalProcessKind kind, std::uint64_t seed,
                                   double truncation_factor)
    : kind_(kind),
      rng_(seed),
      num_commodities_(static_cast<int>(commodities.size())) {
  require_config(truncation_factor >= 1.0,
                 "arrival truncation factor must be >= 1");
  for (int k = 0; k < num_commodities_; ++k) {
    for (const auto& r : commodities[k].rates) {
      if (r.rate <= 0.0) continue;
      entries_.push_back(
          {r.node, r.lifetime, k, r.rate, truncation_factor * r.rate});
    }
  }
}

void ArrivalGenerator::generate(ArrivalSample& out) {
  out = ArrivalSample(num_commodities_);
  for (const auto& e : entries_) {
    double amount = 0.0;
    switch (kind_) {
      case ArrivalProcessKind::Poisson:
        amount = static_cast<double>(rng_.poisson(e.rate));
        break;
      case ArrivalProcessKind::Deterministic:
        amount = e.rate;
        break;
      case ArrivalProcessKind::BoundedUniform:
        amount = rng_.uniform(0.0, 2.0 * e.rate);
        break;
    }
    amount = std::min(amount, e.cap);
    out.add(e.node, e.lifetime, e.commodity, amount);
  }
}

}  // namespace dcnet
