#pragma once

#include <cstdint>
#include <vector>

#include "blotto/allocation.hpp"
#include "blotto/graph.hpp"
#include "blotto/rng.hpp"

namespace blotto {

struct OpinionState {
  std::vector<std::int8_t> opinions;  // each exactly -1 or +1
  std::uint64_t time = 0;
};

struct SimulationConfig {
  std::uint64_t tau = 0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Stream tags for the per-(trial, node[, step]) counter RNG.
inline constexpr std::uint64_t kVoterCoinTag = 0x11;
inline constexpr std::uint64_t kVoterStepTag = 0x12;

// f_0(i): +1 if x_i > y_i, -1 if x_i < y_i, fair coin on ties.
OpinionState initial_opinions(const Allocation& x, const Allocation& y,
                              rng::Key coin_key, std::uint64_t trial = 0);

// One synchronous voter round: every node adopts the time-t opinion of a
// neighbor drawn uniformly from N(v).
OpinionState step(const OpinionState& state, const SocialGraph& g,
                  rng::Key step_key, std::uint64_t trial = 0);

// E[sum_v f_tau(v)] = sum_u w_tau(u) sgn(x_u - y_u) with w_tau the column
// sums of M^tau; the tie coin has zero mean, so ties drop out of the
// expectation.
double expected_score_exact(const SocialGraph& g, const Allocation& x,
                            const Allocation& y, std::uint64_t tau);

struct ScoreEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// Full voter trajectories with per-trial tie coins. Per-trial scores are
// integers and the aggregation is a sum of integers, so the estimate is
// reproducible for a fixed seed at any thread count.
ScoreEstimate expected_score_mc(const SocialGraph& g, const Allocation& x,
                                const Allocation& y,
                                const SimulationConfig& cfg);

}  // namespace blotto
