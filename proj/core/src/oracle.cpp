#include "blotto/oracle.hpp"

#include <limits>
#include <vector>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

std::uint64_t simplex_grid_count(std::uint64_t k, std::uint64_t n) {
  // C(k + n - 1, n - 1)
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i < n; ++i) {
    c = c * (k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

DiscreteOracleResult discrete_oracle(const ValuationProfile& profile,
                                     unsigned grid_k, double budget,
                                     double tol,
                                     std::uint64_t max_iterations) {
  const std::size_t n = profile.size();
  if (n < 2 || n > 4) {
    throw SizeError("discrete oracle is gated to 2 <= n <= 4");
  }
  if (grid_k < 1) throw ContractError("grid resolution must be >= 1");
  if (!(budget > 0.0)) throw ContractError("budget must be positive");
  if (simplex_grid_count(grid_k, n) > 10'000) {
    throw SizeError("more than 10^4 grid strategies");
  }

  // integer compositions of grid_k into n parts, flattened with stride n
  std::vector<int> grid;
  std::vector<int> partial(n, 0);
  auto emit = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == n) {
      partial[pos] = remaining;
      grid.insert(grid.end(), partial.begin(), partial.end());
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      partial[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  emit(emit, 0, static_cast<int>(grid_k));
  const std::size_t strategies = grid.size() / n;

  const std::vector<double>& a = profile.values;
  auto pay = [&](std::size_t i, std::size_t j) {
    const int* xi = &grid[i * n];
    const int* xj = &grid[j * n];
    double s = 0.0;
    for (std::size_t o = 0; o < n; ++o) {
      if (xi[o] > xj[o]) {
        s += a[o];
      } else if (xi[o] < xj[o]) {
        s -= a[o];
      }
    }
    return s;
  };

  // Self-play fictitious play: both players share the empirical mixture, so
  // one cumulative payoff vector suffices. cum[i]/t is the payoff of pure i
  // against the mixture after t plays.
  std::vector<double> cum(strategies, 0.0);
  std::vector<std::uint64_t> visits(strategies, 0);
  std::size_t play = 0;
  double exploitability = std::numeric_limits<double>::infinity();
  std::uint64_t t = 0;
  while (t < max_iterations) {
    ++t;
    ++visits[play];
    std::size_t best = 0;
    double best_cum = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < strategies; ++i) {
      cum[i] += pay(i, play);
      if (cum[i] > best_cum) {
        best_cum = cum[i];
        best = i;
      }
    }
    exploitability = best_cum / static_cast<double>(t);
    if (exploitability < tol) break;
    play = best;
  }
  if (exploitability >= tol) {
    throw ConvergenceError("fictitious play did not reach tolerance",
                           exploitability);
  }

  DiscreteOracleResult r;
  r.exploitability = exploitability;
  const double upper = exploitability;   // best response vs the mixture
  const double lower = -exploitability;  // antisymmetric game, same mixture
  r.game_value = 0.5 * (upper + lower);
  r.iterations = t;
  r.grid_step = budget / static_cast<double>(grid_k);
  r.strategy_count = strategies;
  r.marginals.assign(n, std::vector<double>(grid_k + 1, 0.0));
  for (std::size_t s = 0; s < strategies; ++s) {
    if (visits[s] == 0) continue;
    const double w =
        static_cast<double>(visits[s]) / static_cast<double>(t);
    for (std::size_t o = 0; o < n; ++o) {
      r.marginals[o][static_cast<std::size_t>(grid[s * n + o])] += w;
    }
  }
  return r;
}

}  // namespace blotto
