#pragma once

#include <cstdint>
#include <vector>

#include "blotto/valuation.hpp"

namespace blotto {

struct DiscreteOracleResult {
  // Midpoint of the fictitious-play value bounds. The game is symmetric
  // zero-sum, so the true value is 0 and the bounds are +-exploitability.
  double game_value = 0.0;
  // Best pure payoff against the computed mixture; the convergence metric.
  double exploitability = 0.0;
  std::uint64_t iterations = 0;
  double grid_step = 0.0;
  std::size_t strategy_count = 0;
  // marginals[i][level] = P(x_i = level * grid_step) under the mixture
  std::vector<std::vector<double>> marginals;
};

// Brute-force check of the continuous construction: enumerates every
// allocation on the simplex grid (multiples of budget/grid_k), scores pairs
// with the sign payoff, and runs fictitious play until the exploitability
// drops below tol. Gated to n <= 4 and at most 10^4 grid strategies.
DiscreteOracleResult discrete_oracle(const ValuationProfile& profile,
                                     unsigned grid_k, double budget,
                                     double tol = 1e-3,
                                     std::uint64_t max_iterations = 30'000'000);

}  // namespace blotto
