#include "blotto/voter.hpp"

#include <cmath>
#include <vector>

#include "blotto/errors.hpp"
#include "blotto/transition.hpp"
#include "parallel.hpp"

namespace blotto {

namespace {

inline std::int8_t sign_or_coin(double x, double y, rng::Key coin_key,
                                std::uint64_t trial, std::uint64_t node) {
  if (x > y) return 1;
  if (x < y) return -1;
  return (rng::word(coin_key, trial, node) & 1) ? 1 : -1;
}

struct IntSlot {
  long long sum = 0;
  long long sumsq = 0;
};

IntSlot add_slots(IntSlot a, IntSlot b) {
  return {a.sum + b.sum, a.sumsq + b.sumsq};
}

}  // namespace

OpinionState initial_opinions(const Allocation& x, const Allocation& y,
                              rng::Key coin_key, std::uint64_t trial) {
  if (x.size() != y.size()) throw ContractError("length mismatch");
  OpinionState st;
  st.time = 0;
  st.opinions.resize(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) {
    st.opinions[v] = sign_or_coin(x.amounts[v], y.amounts[v], coin_key, trial, v);
  }
  return st;
}

OpinionState step(const OpinionState& state, const SocialGraph& g,
                  rng::Key step_key, std::uint64_t trial) {
  const std::size_t n = g.node_count();
  if (state.opinions.size() != n) {
    throw ContractError("state length does not match the graph");
  }
  OpinionState next;
  next.time = state.time + 1;
  next.opinions.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(static_cast<NodeId>(v));
    const std::uint32_t pick = rng::below(
        rng::word(step_key, trial, state.time, v),
        static_cast<std::uint32_t>(nb.size()));
    next.opinions[v] = state.opinions[nb[pick]];
  }
  return next;
}

double expected_score_exact(const SocialGraph& g, const Allocation& x,
                            const Allocation& y, std::uint64_t tau) {
  const std::size_t n = g.node_count();
  if (x.size() != n || y.size() != n) {
    throw ContractError("allocation length does not match the graph");
  }
  const TransitionMatrix m(g);
  const std::vector<double> w = matrix_power_column_weights(m, tau);
  double s = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    if (x.amounts[u] > y.amounts[u]) {
      s += w[u];
    } else if (x.amounts[u] < y.amounts[u]) {
      s -= w[u];
    }
  }
  return s;
}

ScoreEstimate expected_score_mc(const SocialGraph& g, const Allocation& x,
                                const Allocation& y,
                                const SimulationConfig& cfg) {
  const std::size_t n = g.node_count();
  if (x.size() != n || y.size() != n) {
    throw ContractError("allocation length does not match the graph");
  }
  if (cfg.trials == 0) throw ContractError("trials >= 1 required");

  const rng::Key coin_key = rng::derive(cfg.seed, kVoterCoinTag);
  const rng::Key step_key = rng::derive(cfg.seed, kVoterStepTag);

  auto slots = detail::run_chunked<IntSlot>(
      cfg.trials, cfg.threads,
      [&](std::uint64_t b, std::uint64_t e, IntSlot& slot) {
        std::vector<std::int8_t> cur(n), nxt(n);
        long long s = 0, ss = 0;
        for (std::uint64_t trial = b; trial < e; ++trial) {
          for (std::size_t v = 0; v < n; ++v) {
            cur[v] = sign_or_coin(x.amounts[v], y.amounts[v], coin_key, trial, v);
          }
          for (std::uint64_t round = 0; round < cfg.tau; ++round) {
            for (std::size_t v = 0; v < n; ++v) {
              const auto& nb = g.neighbors(static_cast<NodeId>(v));
              const std::uint32_t pick = rng::below(
                  rng::word(step_key, trial, round, v),
                  static_cast<std::uint32_t>(nb.size()));
              nxt[v] = cur[nb[pick]];
            }
            cur.swap(nxt);
          }
          long long score = 0;
          for (std::size_t v = 0; v < n; ++v) score += cur[v];
          s += score;
          ss += score * score;
        }
        slot = {s, ss};
      });

  const IntSlot total =
      detail::pairwise_reduce(std::span<const IntSlot>(slots), add_slots);
  ScoreEstimate est;
  est.trials = cfg.trials;
  const double dn = static_cast<double>(cfg.trials);
  const double sum = static_cast<double>(total.sum);
  est.mean = sum / dn;
  if (cfg.trials > 1) {
    double var = (static_cast<double>(total.sumsq) - sum * sum / dn) / (dn - 1.0);
    if (var < 0.0) var = 0.0;
    est.std_error = std::sqrt(var / dn);
  }
  return est;
}

}  // namespace blotto
