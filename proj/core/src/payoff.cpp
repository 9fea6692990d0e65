#include "blotto/payoff.hpp"

#include <cmath>
#include <vector>

#include "blotto/errors.hpp"
#include "parallel.hpp"

namespace blotto {

namespace {

struct MomentSlot {
  double sum = 0.0;
  double sumsq = 0.0;
};

MomentSlot add_slots(MomentSlot a, MomentSlot b) {
  return {a.sum + b.sum, a.sumsq + b.sumsq};
}

// Kahan-compensated accumulator; keeps deterministic means tight even over
// millions of identical payoff values.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

PayoffEstimate finish(const std::vector<MomentSlot>& slots,
                      std::uint64_t trials) {
  const MomentSlot m = detail::pairwise_reduce(
      std::span<const MomentSlot>(slots), add_slots);
  PayoffEstimate e;
  e.trials = trials;
  const double n = static_cast<double>(trials);
  e.mean = m.sum / n;
  if (trials > 1) {
    double var = (m.sumsq - m.sum * m.sum / n) / (n - 1.0);
    if (var < 0.0) var = 0.0;
    e.std_error = std::sqrt(var / n);
  }
  return e;
}

void check_budgets(double a, double b) {
  if (std::abs(a - b) > 1e-9 * std::max(std::abs(a), std::abs(b))) {
    throw ContractError("budgets differ");
  }
}

}  // namespace

double excess_value(std::span<const double> x, std::span<const double> y,
                    std::span<const double> values) {
  if (x.size() != y.size() || x.size() != values.size()) {
    throw ContractError("length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) {
      s += values[i];
    } else if (x[i] < y[i]) {
      s -= values[i];
    }
  }
  return s;
}

double excess_value(const Allocation& x, const Allocation& y,
                    const ValuationProfile& profile) {
  check_budgets(x.budget, y.budget);
  return excess_value(x.amounts, y.amounts, profile.values);
}

Allocation beat_pure(const Allocation& x, const ValuationProfile& profile) {
  const std::size_t n = x.size();
  if (n < 2 || n != profile.size()) throw ContractError("length mismatch");
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t target = npos;
  for (std::size_t i = 0; i < n; ++i) {
    if (x.amounts[i] > 0.0 &&
        (target == npos || profile.values[i] < profile.values[target])) {
      target = i;
    }
  }
  if (target == npos) throw ContractError("allocation is all zeros");
  // the gain is 1 - 2 a_target, so the cheapest funded object must sit below
  // the dominance boundary; every general profile qualifies
  if (profile.values[target] >= 0.5) {
    throw ContractError(
        "cheapest funded object already holds half the value; no spreading "
        "response wins");
  }

  Allocation y = x;
  const double share = x.amounts[target] / static_cast<double>(n - 1);
  y.amounts[target] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != target) y.amounts[j] += share;
  }
  return y;
}

PayoffEstimate payoff_vs_pure(const EquilibriumSampler& sampler,
                              const Allocation& y, std::uint64_t trials,
                              unsigned threads) {
  if (trials == 0) throw ContractError("trials >= 1 required");
  if (y.size() != sampler.size()) throw ContractError("length mismatch");
  check_budgets(sampler.budget(), y.budget);

  const std::vector<double>& a = sampler.values();
  auto slots = detail::run_chunked<MomentSlot>(
      trials, threads,
      [&](std::uint64_t b, std::uint64_t e, MomentSlot& slot) {
        std::vector<double> x(sampler.size());
        Kahan s, ss;
        for (std::uint64_t i = b; i < e; ++i) {
          sampler.draw_into(i, x);
          const double g = excess_value(x, y.amounts, a);
          s.add(g);
          ss.add(g * g);
        }
        slot = {s.sum, ss.sum};
      });
  return finish(slots, trials);
}

PayoffEstimate payoff_mixed_vs_mixed(const EquilibriumSampler& f,
                                     const EquilibriumSampler& g,
                                     std::uint64_t trials, unsigned threads) {
  if (trials == 0) throw ContractError("trials >= 1 required");
  if (f.values() != g.values()) throw ContractError("profile mismatch");
  check_budgets(f.budget(), g.budget());

  const std::vector<double>& a = f.values();
  auto slots = detail::run_chunked<MomentSlot>(
      trials, threads,
      [&](std::uint64_t b, std::uint64_t e, MomentSlot& slot) {
        std::vector<double> xf(f.size()), xg(g.size());
        Kahan s, ss;
        for (std::uint64_t i = b; i < e; ++i) {
          f.draw_into(i, xf);
          g.draw_into(i, xg);
          const double v = excess_value(xf, xg, a);
          s.add(v);
          ss.add(v * v);
        }
        slot = {s.sum, ss.sum};
      });
  return finish(slots, trials);
}

}  // namespace blotto
