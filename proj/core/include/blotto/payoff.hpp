#pragma once

#include <cstdint>
#include <span>

#include "blotto/allocation.hpp"
#include "blotto/sampler.hpp"
#include "blotto/valuation.hpp"

namespace blotto {

struct PayoffEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(trials)
  std::uint64_t trials = 0;
};

// sum_i a_i sgn(x_i - y_i); ties contribute zero.
double excess_value(std::span<const double> x, std::span<const double> y,
                    std::span<const double> values);
double excess_value(const Allocation& x, const Allocation& y,
                    const ValuationProfile& profile);

// Zeroes the cheapest funded battlefield of x (ties by index) and spreads its
// budget evenly over the rest. Strictly beats x whenever the profile is
// general, which is why no pure strategy can be an equilibrium there.
Allocation beat_pure(const Allocation& x, const ValuationProfile& profile);

// Monte Carlo estimate of K(y), the sampler's expected payoff against the
// pure strategy y. Trials are split into fixed-size chunks whose partial sums
// are merged pairwise in index order, so the result is identical for any
// thread count.
PayoffEstimate payoff_vs_pure(const EquilibriumSampler& sampler,
                              const Allocation& y, std::uint64_t trials,
                              unsigned threads = 1);

// K(F, G) from independent draw pairs. Pass samplers with different seeds;
// the draws are only as independent as their key streams.
PayoffEstimate payoff_mixed_vs_mixed(const EquilibriumSampler& f,
                                     const EquilibriumSampler& g,
                                     std::uint64_t trials,
                                     unsigned threads = 1);

}  // namespace blotto
