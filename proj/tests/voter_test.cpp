#include <doctest.h>

#include <cmath>

#include "blotto/errors.hpp"
#include "blotto/generators.hpp"
#include "blotto/voter.hpp"
#include "support/oracles.hpp"

using namespace blotto;

namespace {

Allocation alloc(std::vector<double> amounts) {
  Allocation a;
  a.budget = 0.0;
  for (double v : amounts) a.budget += v;
  a.amounts = std::move(amounts);
  return a;
}

}  // namespace

TEST_CASE("initial opinions follow the allocation signs") {
  const rng::Key coin = rng::derive(1, kVoterCoinTag);
  const OpinionState st =
      initial_opinions(alloc({0.6, 0.4}), alloc({0.5, 0.5}), coin);
  CHECK(st.opinions == std::vector<std::int8_t>{1, -1});
  CHECK(st.time == 0);

  const OpinionState mixed =
      initial_opinions(alloc({1.0, 0.0, 0.0}), alloc({0.0, 1.0, 0.0}), coin);
  CHECK(mixed.opinions[0] == 1);
  CHECK(mixed.opinions[1] == -1);
  CHECK((mixed.opinions[2] == 1 || mixed.opinions[2] == -1));
}

TEST_CASE("ties flip a fair coin per node") {
  const rng::Key coin = rng::derive(7, kVoterCoinTag);
  const auto x = alloc({0.5, 0.5});
  const std::uint64_t trials = 40'000;
  long long sum = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const OpinionState st = initial_opinions(x, x, coin, t);
    sum += st.opinions[0];
    sum += st.opinions[1];
  }
  const double mean = static_cast<double>(sum) / (2.0 * trials);
  CHECK(std::abs(mean) < 3.5 / std::sqrt(2.0 * trials));
}

TEST_CASE("consensus is absorbing") {
  const SocialGraph g = make_random(12, 0.3, 3);
  const rng::Key sk = rng::derive(5, kVoterStepTag);
  OpinionState st;
  st.opinions.assign(12, 1);
  for (int i = 0; i < 20; ++i) {
    st = step(st, g, sk);
    for (auto o : st.opinions) CHECK(o == 1);
  }
  CHECK(st.time == 20);
}

TEST_CASE("single looped node keeps its opinion") {
  const SocialGraph g = make_edgeless(1);
  const rng::Key sk = rng::derive(5, kVoterStepTag);
  OpinionState st;
  st.opinions.assign(1, -1);
  st = step(st, g, sk);
  CHECK(st.opinions[0] == -1);
}

TEST_CASE("two-node flip probability is a half") {
  const SocialGraph g = make_complete(2);
  const rng::Key sk = rng::derive(11, kVoterStepTag);
  const std::uint64_t trials = 40'000;
  long long flips = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    OpinionState st;
    st.opinions = {1, -1};
    st = step(st, g, sk, t);
    if (st.opinions[0] == -1) ++flips;
  }
  const double rate = static_cast<double>(flips) / trials;
  CHECK(std::abs(rate - 0.5) < 3.5 * std::sqrt(0.25 / trials));
}

TEST_CASE("opinions stay in the two-point set") {
  const SocialGraph g = make_random(9, 0.4, 8);
  const rng::Key coin = rng::derive(2, kVoterCoinTag);
  const rng::Key sk = rng::derive(2, kVoterStepTag);
  OpinionState st = initial_opinions(uniform_split(9, 1.0),
                                     uniform_split(9, 1.0), coin, 0);
  for (int i = 0; i < 10; ++i) {
    st = step(st, g, sk, 0);
    for (auto o : st.opinions) CHECK((o == 1 || o == -1));
  }
}

TEST_CASE("exact score at horizon zero is the head count") {
  const SocialGraph g = make_random(8, 0.3, 13);
  const auto x = alloc({0.3, 0.0, 0.2, 0.0, 0.1, 0.1, 0.1, 0.2});
  const auto y = alloc({0.0, 0.3, 0.0, 0.2, 0.1, 0.2, 0.1, 0.1});
  // signs: +,-,+,-,0,-,0,+ -> even split
  CHECK(expected_score_exact(g, x, y, 0) == 0.0);

  const auto x2 = alloc({0.4, 0.1, 0.2, 0.1, 0.1, 0.1, 0.0, 0.0});
  const auto y2 = alloc({0.1, 0.4, 0.1, 0.1, 0.0, 0.0, 0.2, 0.1});
  // signs: +,-,+,0,+,+,-,- -> net +1
  CHECK(expected_score_exact(g, x2, y2, 0) == doctest::Approx(1.0));
}

TEST_CASE("complete graph score is horizon-invariant") {
  const SocialGraph g = make_complete(6);
  const auto x = alloc({0.4, 0.1, 0.1, 0.1, 0.2, 0.1});
  const auto y = alloc({0.1, 0.4, 0.1, 0.1, 0.1, 0.2});
  const double base = expected_score_exact(g, x, y, 0);
  for (std::uint64_t tau : {1, 2, 9}) {
    CHECK(expected_score_exact(g, x, y, tau) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("exact score matches the dense oracle on the star") {
  const SocialGraph g = make_star(10);
  std::vector<double> xv(10, 0.0);
  xv[0] = 1.0;  // all-in on the hub
  const auto x = alloc(std::move(xv));
  const auto y = alloc(std::vector<double>(10, 0.1));

  const auto m5 = testoracle::power(testoracle::transition_of(g), 5);
  const auto w = testoracle::column_sums(m5);
  double expect = 0.0;
  // hub: x > y gives +w[0]; leaves: x < y gives -w[v]
  expect += w[0];
  for (std::size_t v = 1; v < 10; ++v) expect -= w[v];

  CHECK(expected_score_exact(g, x, y, 5) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("consensus start gives the node count exactly") {
  const SocialGraph g = make_star(10);
  const auto x = alloc(std::vector<double>(10, 0.2));
  const auto y = alloc(std::vector<double>(10, 0.1));
  // x wins every node; budgets differ on purpose, the dynamics only see signs
  SimulationConfig cfg{5, 2000, 42, 1};
  const ScoreEstimate est = expected_score_mc(g, x, y, cfg);
  CHECK(est.mean == 10.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("two-node tie start has zero expectation") {
  const SocialGraph g = make_complete(2);
  const auto x = alloc({0.6, 0.4});
  const auto y = alloc({0.4, 0.6});
  CHECK(expected_score_exact(g, x, y, 1) == 0.0);
  SimulationConfig cfg{1, 100'000, 7, 1};
  const ScoreEstimate est = expected_score_mc(g, x, y, cfg);
  CHECK(std::abs(est.mean) <= 4.0 * est.std_error);
}

TEST_CASE("monte carlo agrees with the matrix form") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const std::size_t n = 8 + 2 * seed;
    const SocialGraph g = make_random(n, 0.35, seed * 13);
    std::vector<double> xv(n), yv(n);
    const rng::Key key = rng::derive(seed, 0x61);
    double sx = 0.0, sy = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      xv[v] = rng::unit(key, v, 0);
      yv[v] = rng::unit(key, v, 1);
      sx += xv[v];
      sy += yv[v];
    }
    for (std::size_t v = 0; v < n; ++v) {
      xv[v] /= sx;
      yv[v] /= sy;
    }
    const auto x = alloc(xv);
    const auto y = alloc(yv);
    const std::uint64_t tau = 1 + seed;
    const double exact = expected_score_exact(g, x, y, tau);
    SimulationConfig cfg{tau, 30'000, 1000 + seed, 1};
    const ScoreEstimate est = expected_score_mc(g, x, y, cfg);
    CHECK(std::abs(est.mean - exact) <= 4.0 * est.std_error);
  }
}

TEST_CASE("simulation is thread-count invariant") {
  const SocialGraph g = make_random(10, 0.3, 77);
  const auto x = alloc({0.2, 0.1, 0.0, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1});
  const auto y = alloc({0.1, 0.2, 0.1, 0.0, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1});
  SimulationConfig one{3, 20'000, 5, 1};
  SimulationConfig four{3, 20'000, 5, 4};
  const ScoreEstimate a = expected_score_mc(g, x, y, one);
  const ScoreEstimate b = expected_score_mc(g, x, y, four);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("shape validation") {
  const SocialGraph g = make_complete(3);
  CHECK_THROWS_AS(
      expected_score_exact(g, alloc({0.5, 0.5}), alloc({0.5, 0.5}), 1),
      ContractError);
  const rng::Key coin = rng::derive(1, kVoterCoinTag);
  CHECK_THROWS_AS(initial_opinions(alloc({1.0}), alloc({0.5, 0.5}), coin),
                  ContractError);
}
