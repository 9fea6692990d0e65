// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "blotto/allocation.hpp"
#include "blotto/generators.hpp"
#include "blotto/metrics.hpp"
#include "blotto/oracle.hpp"
#include "blotto/payoff.hpp"
#include "blotto/rng.hpp"
#include "blotto/sampler.hpp"
#include "blotto/transition.hpp"
#include "blotto/valuation.hpp"
#include "blotto/voter.hpp"
#include "cli.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace blotto;

namespace {

constexpr std::uint64_t kSeed = 20'240'817;
int failures = 0;

void report(int id, bool pass, const std::string& label,
            const std::string& detail) {
  std::printf("%s criterion %d: %s%s%s%s\n", pass ? "PASS" : "FAIL", id,
              label.c_str(), detail.empty() ? "" : " [", detail.c_str(),
              detail.empty() ? "" : "]");
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ValuationProfile profile_of(std::vector<double> values) {
  ValuationProfile p;
  p.classification = classify(values);
  p.values = std::move(values);
  return p;
}

Allocation alloc_from(std::vector<double> v) {
  Allocation a;
  a.budget = 0.0;
  for (double x : v) a.budget += x;
  a.amounts = std::move(v);
  return a;
}

Allocation random_simplex(rng::Key key, std::uint64_t index, std::size_t n,
                          double budget) {
  Allocation a;
  a.budget = budget;
  a.amounts.resize(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    a.amounts[j] = -std::log1p(-rng::unit(key, index, j));
    sum += a.amounts[j];
  }
  for (double& x : a.amounts) x = budget * (x / sum);
  return a;
}

char buffer[256];

// --- criterion 1 -----------------------------------------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const double budget = 1.0;
  double worst_ks = 0.0;
  double worst_sum = 0.0;
  bool exact_all = true;
  for (std::size_t n : {3, 5, 9}) {
    const auto sampler =
        EquilibriumSampler::make(intrinsic_values(n), budget, kSeed + n);
    exact_all = exact_all && sampler.exact();
    std::vector<std::vector<double>> coords(n);
    std::vector<double> x(n);
    for (std::uint64_t i = 0; i < 100'000; ++i) {
      sampler.draw_into(i, x);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        coords[j].push_back(x[j]);
        s += x[j];
      }
      worst_sum = std::max(worst_sum, std::abs(s - budget));
    }
    for (std::size_t j = 0; j < n; ++j) {
      worst_ks = std::max(
          worst_ks, teststats::ks_uniform(std::move(coords[j]),
                                          2.0 * budget / static_cast<double>(n)));
    }
  }
  const double elapsed = seconds_since(t0);
  const bool pass = exact_all && worst_ks < 0.01 &&
                    worst_sum <= 1e-12 * budget && elapsed < 30.0;
  std::snprintf(buffer, sizeof buffer,
                "max KS %.4f, max sum error %.2e, %.1fs", worst_ks, worst_sum,
                elapsed);
  report(1, pass, "intrinsic marginals uniform on [0, 2B/n] for n in {3,5,9}",
         buffer);
}

// --- criterion 2 -----------------------------------------------------------

void criterion_2() {
  std::vector<SocialGraph> graphs;
  graphs.push_back(make_star(10));
  graphs.push_back(make_random(20, 0.25, 7));
  graphs.push_back(make_random(20, 0.45, 8));

  double worst_support = 0.0;
  double worst_limit = 0.0;
  double dev_degree = 0.0, dev_neighbor = 0.0;
  for (const SocialGraph& g : graphs) {
    const std::size_t n = g.node_count();
    const testoracle::Dense base = testoracle::transition_of(g);
    testoracle::Dense acc = testoracle::identity(n);
    std::uint64_t done = 0;
    for (std::uint64_t tau : {1, 3, 10}) {
      while (done < tau) {
        acc = testoracle::multiply(acc, base);
        ++done;
      }
      auto expect = testoracle::column_sums(acc);
      double total = 0.0;
      for (double e : expect) total += e;
      const ValuationProfile p = horizon_values(g, tau);
      for (std::size_t u = 0; u < n; ++u) {
        // supports are 2B a_u on both sides, so compare the values directly
        worst_support =
            std::max(worst_support, std::abs(p.values[u] - expect[u] / total));
      }
    }
    const ValuationProfile limit = longterm_values(g);
    const std::uint64_t far_tau = 10 * n * n * n;
    const ValuationProfile far = horizon_values(g, far_tau);
    for (std::size_t u = 0; u < n; ++u) {
      worst_limit =
          std::max(worst_limit, std::abs(far.values[u] - limit.values[u]));
    }
    dev_degree = std::max(dev_degree, limit.closed_form->max_dev_degree_share);
    dev_neighbor =
        std::max(dev_neighbor, limit.closed_form->max_dev_neighbor_share);
  }
  const bool pass = worst_support < 1e-12 && worst_limit < 1e-6;
  std::snprintf(buffer, sizeof buffer,
                "support dev %.2e, limit dev %.2e; closed-form dev: "
                "self-loop+2 %.3f, self-loop+1 %.2e (reported, not asserted)",
                worst_support, worst_limit, dev_degree, dev_neighbor);
  report(2, pass,
         "finite-horizon supports are 2B * normalized column sums of M^tau "
         "and reach the fixed point",
         buffer);
}

// --- criterion 3 -----------------------------------------------------------

struct CorpusOutcome {
  double worst_margin = 0.0;  // most negative (mean - floor)
  double worst_mean = 0.0;
  std::size_t opponents = 0;
  bool pass = true;
};

CorpusOutcome sweep_corpus(const EquilibriumSampler& sampler,
                           const ValuationProfile& profile,
                           std::uint64_t trials) {
  const std::size_t n = profile.size();
  const rng::Key key = rng::derive(kSeed, 0x91);
  std::vector<Allocation> corpus;
  for (std::size_t i = 0; i < n; ++i) {
    corpus.push_back(simplex_vertex(n, i, 1.0));
  }
  corpus.push_back(uniform_split(n, 1.0));
  for (std::uint64_t i = 0; i < 100; ++i) {
    corpus.push_back(random_simplex(key, i * 16 + n, n, 1.0));
  }
  const std::size_t base = corpus.size();
  for (std::size_t i = 0; i < base; ++i) {
    corpus.push_back(beat_pure(corpus[i], profile));
  }

  CorpusOutcome out;
  out.opponents = corpus.size();
  out.worst_mean = 1.0;
  for (const Allocation& y : corpus) {
    const PayoffEstimate est = payoff_vs_pure(sampler, y, trials, 1);
    const double floor = sampler.exact() ? -3.0 * est.std_error : -0.02;
    const double margin = est.mean - floor;
    if (margin < out.worst_margin) out.worst_margin = margin;
    if (est.mean < out.worst_mean) out.worst_mean = est.mean;
    out.pass = out.pass && est.mean >= floor;
  }
  return out;
}

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    std::vector<double> values;
    bool expect_exact;
  };
  const std::vector<Case> cases{
      {{0.3, 0.3, 0.4}, true},
      {{0.4, 0.3, 0.2, 0.1}, true},
      {{0.3, 0.25, 0.2, 0.15, 0.1}, true},
      {{0.14, 0.13, 0.12, 0.12, 0.11, 0.10, 0.10, 0.09, 0.09}, true},
      // no tangential ordering exists here; the chain construction keeps it exact
      {{0.49, 0.45, 0.02, 0.02, 0.02}, true},
  };
  bool pass = true;
  double worst_margin = 0.0;
  for (const Case& c : cases) {
    const ValuationProfile p = profile_of(c.values);
    const auto sampler = EquilibriumSampler::make(p, 1.0, kSeed);
    if (sampler.exact() != c.expect_exact) {
      pass = false;
      continue;
    }
    const CorpusOutcome out = sweep_corpus(sampler, p, 1'000'000);
    pass = pass && out.pass;
    worst_margin = std::min(worst_margin, out.worst_margin);
  }
  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < 300.0;
  std::snprintf(buffer, sizeof buffer, "worst margin over corpus %.2e, %.0fs",
                worst_margin, elapsed);
  report(3, pass,
         "equilibrium payoff floor against the adversarial corpus at 10^6 "
         "draws (n in {3,4,5,9} exact, plus the approximate fallback)",
         buffer);
}

// --- criterion 4 -----------------------------------------------------------

void criterion_4() {
  const auto p = profile_of({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const DiscreteOracleResult r = discrete_oracle(p, 12, 1.0);

  // histogram with three atoms per bin, midpoint-aligned edges; single-atom
  // granularity would charge the k=12 lattice spacing itself as error
  double l1 = 0.0;
  auto uniform_cdf = [](double x) { return std::clamp(x / (2.0 / 3), 0.0, 1.0); };
  for (std::size_t o = 0; o < 3; ++o) {
    double acc = 0.0;
    for (std::size_t start = 0; start <= 12; start += 3) {
      const std::size_t stop = std::min<std::size_t>(start + 3, 13);
      double mass = 0.0;
      for (std::size_t j = start; j < stop; ++j) mass += r.marginals[o][j];
      const double lo = (static_cast<double>(start) - 0.5) / 12.0;
      const double hi = (static_cast<double>(stop) - 0.5) / 12.0;
      acc += std::abs(mass - (uniform_cdf(hi) - uniform_cdf(lo)));
    }
    l1 = std::max(l1, acc);
  }

  const auto sampler = EquilibriumSampler::triangle(p, 1.0, kSeed + 4);
  double worst = 1.0;
  for (int i = 0; i <= 12; ++i) {
    for (int j = 0; i + j <= 12; ++j) {
      const auto y =
          alloc_from({i / 12.0, j / 12.0, (12.0 - i - j) / 12.0});
      worst = std::min(worst, payoff_vs_pure(sampler, y, 100'000, 1).mean);
    }
  }

  const bool pass = std::abs(r.game_value) <= 1e-3 && l1 < 0.15 &&
                    worst >= -0.02 && r.exploitability < 1e-3;
  std::snprintf(buffer, sizeof buffer,
                "|v| %.1e, exploitability %.2e, marginal L1 %.3f, worst grid "
                "payoff %.4f",
                std::abs(r.game_value), r.exploitability, l1, worst);
  report(4, pass, "discrete oracle agrees with the continuous construction",
         buffer);
}

// --- criterion 5 -----------------------------------------------------------

void criterion_5() {
  const rng::Key key = rng::derive(kSeed, 0x95);
  int stat_failures = 0;
  double worst_z = 0.0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const std::size_t n = 6 + (rng::word(key, i, 0) % 15);  // 6..20
    const double p = 0.2 + 0.4 * rng::unit(key, i, 1);
    const SocialGraph g = make_random(n, p, kSeed + i);
    const std::uint64_t tau = 1 + (rng::word(key, i, 2) % 10);
    const Allocation x = random_simplex(key, 1000 + i, n, 1.0);
    const Allocation y = random_simplex(key, 2000 + i, n, 1.0);

    const double exact = expected_score_exact(g, x, y, tau);
    SimulationConfig cfg{tau, 100'000, kSeed + 31 * i, 1};
    const ScoreEstimate est = expected_score_mc(g, x, y, cfg);
    const double z = est.std_error > 0.0
                         ? std::abs(est.mean - exact) / est.std_error
                         : (est.mean == exact ? 0.0 : 1e9);
    worst_z = std::max(worst_z, z);
    if (z > 3.5) ++stat_failures;
  }
  const bool pass = stat_failures <= 1;
  std::snprintf(buffer, sizeof buffer, "max |z| %.2f, %d/10 beyond 3.5 sigma",
                worst_z, stat_failures);
  report(5, pass,
         "voter-model Monte Carlo matches the matrix value on 10 random "
         "graphs",
         buffer);
}

// --- criterion 6 -----------------------------------------------------------

void criterion_6() {
  const double closed = 10'656.0 / 41'800.0;
  const TVReport star10 = average_tv(make_star(10));
  const double exact_err = std::abs(star10.average - closed);

  // empirical check per distinct degree, 10^6 draws each side
  const rng::Key key = rng::derive(kSeed, 0x96);
  auto empirical_delta = [&](std::size_t degree, std::uint64_t tag) {
    std::vector<double> a, b;
    a.reserve(1'000'000);
    b.reserve(1'000'000);
    for (std::uint64_t i = 0; i < 1'000'000; ++i) {
      a.push_back(0.2 * rng::unit(key, tag, i, 0));
      b.push_back(static_cast<double>(degree) / 19.0 *
                  rng::unit(key, tag, i, 1));
    }
    return empirical_tv(a, b);
  };
  const double emp_avg =
      (9.0 * empirical_delta(3, 1) + empirical_delta(11, 2)) / 10.0;
  const double emp_err = std::abs(emp_avg - closed);

  const double big = average_tv(make_star(1'000'000)).average;
  const double limit_err = std::abs(big - 0.25);

  const double reg = average_tv(make_ring_lattice(12, 2)).average;
  const double reg2 = average_tv(make_complete(6)).average;

  const bool pass = exact_err <= 1e-12 && emp_err < 0.01 &&
                    limit_err < 1e-3 && reg == 0.0 && reg2 == 0.0;
  std::snprintf(buffer, sizeof buffer,
                "closed-form err %.1e, empirical err %.4f, n=10^6 err %.2e, "
                "regular delta %g",
                exact_err, emp_err, limit_err, reg);
  report(6, pass, "star benchmark: average TV distance", buffer);
}

// --- criterion 7 -----------------------------------------------------------

void criterion_7() {
  const rng::Key key = rng::derive(kSeed, 0x97);
  double worst_closed = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng::word(key, i, 0) % 60;
    const std::size_t deg = 1 + rng::word(key, i, 1) % 40;
    const std::size_t edges =
        std::max<std::size_t>(deg / 2 + 1, 1 + rng::word(key, i, 2) % 200);
    const TrapezoidDensity d = difference_density(n, deg, edges);
    const double a = 2.0 / static_cast<double>(n);
    const double b = static_cast<double>(deg) / static_cast<double>(edges);
    worst_closed = std::max(worst_closed, std::abs(d.mean - 0.5 * (b - a)));
    worst_closed =
        std::max(worst_closed, std::abs(d.variance - (a * a + b * b) / 12.0));
  }

  double worst_l1 = 0.0;
  const std::vector<std::array<std::size_t, 3>> triples{
      {10, 3, 19}, {10, 11, 19}, {8, 4, 16}};
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto [n, deg, edges] = triples[t];
    const TrapezoidDensity d = difference_density(n, deg, edges);
    std::vector<double> z;
    z.reserve(1'000'000);
    for (std::uint64_t i = 0; i < 1'000'000; ++i) {
      const double intrinsic = d.intrinsic_top * rng::unit(key, 500 + t, i, 0);
      const double network = d.network_top * rng::unit(key, 500 + t, i, 1);
      z.push_back(network - intrinsic);
    }
    worst_l1 = std::max(
        worst_l1, teststats::histogram_l1(
                      z, [&](double v) { return d.cdf(v); }, d.z0, d.z3, 50));
  }
  const bool pass = worst_closed <= 1e-12 && worst_l1 < 0.01;
  std::snprintf(buffer, sizeof buffer,
                "closed-form dev %.1e, MC histogram L1 %.4f", worst_closed,
                worst_l1);
  report(7, pass, "trapezoid gap density: moments and Monte Carlo histogram",
         buffer);
}

// --- criterion 8 -----------------------------------------------------------

void criterion_8() {
  cli::RunConfig cfg;
  cfg.command = "poc";
  cfg.budget = 1.0;
  cfg.epsilon = 0.01;
  const auto res = cli::cmd_poc(cfg);

  bool pass = res.ok;
  const auto& schedule = res.report["schedule"];
  double expect = 1.0;
  double prev = 0.0;
  for (const auto& row : schedule) {
    const double ratio = row["ratio"].get<double>();
    pass = pass && ratio == expect;  // exact at representable powers of ten
    pass = pass && ratio > prev;
    prev = ratio;
    expect *= 10.0;
  }
  pass = pass && res.report["ratio"].get<double>() == 100.0;
  std::snprintf(buffer, sizeof buffer, "schedule spans 1..1e9, all exact");
  report(8, pass, "price of competition grows as B/epsilon without bound",
         buffer);
}

// --- criterion 9 -----------------------------------------------------------

void criterion_9() {
  const rng::Key key = rng::derive(kSeed, 0x99);
  bool pass = true;
  double worst = 1.0;
  for (std::size_t n : {3, 5, 8}) {
    std::vector<double> values(n);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      values[j] = 1.0 + rng::unit(key, n, j);
      sum += values[j];
    }
    for (double& v : values) v /= sum;
    const ValuationProfile p = profile_of(values);
    if (!p.classification.general()) {
      pass = false;
      continue;
    }
    for (std::uint64_t i = 0; i < 100; ++i) {
      const Allocation x = random_simplex(key, 300 + i, n, 1.0);
      const double gain = excess_value(beat_pure(x, p), x, p);
      worst = std::min(worst, gain);
      pass = pass && gain > 0.0;
    }
  }
  std::snprintf(buffer, sizeof buffer, "min improvement %.4f", worst);
  report(9, pass, "beat_pure strictly beats every pure strategy", buffer);
}

}  // namespace

int main() {
  std::printf("acceptance suite (seed %llu)\n",
              static_cast<unsigned long long>(kSeed));
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
