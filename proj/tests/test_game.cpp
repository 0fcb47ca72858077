#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "npop/game.hpp"
#include "oracles.hpp"

using namespace npop;

TEST_CASE("strategy vectors enforce the simplex") {
  CHECK_NOTHROW(StrategyVector({0.3, 0.5, 0.2}));
  CHECK_THROWS_AS(StrategyVector({0.3, 0.5}), InvalidInput);
  CHECK_THROWS_AS(StrategyVector({1.2, -0.2}), InvalidInput);
  CHECK(StrategyVector::uniform(4)[2] == doctest::Approx(0.25));
  CHECK(StrategyVector::pure(3, 1) == StrategyVector({0.0, 1.0, 0.0}));
}

TEST_CASE("matrix games validate their shape") {
  CHECK_THROWS_AS(MatrixGame("g", {"A"}, {1.0}), InvalidInput);
  CHECK_THROWS_AS(MatrixGame("g", {"A", "B"}, {1.0, 2.0, 3.0}), InvalidInput);
  CHECK_THROWS_AS(MatrixGame("g", {"A", "B"}, {1.0, NAN, 3.0, 4.0}), InvalidInput);
}

TEST_CASE("mixed payoff") {
  const auto base = hawk_dove_unshifted();
  CHECK(mixed_payoff(base, StrategyVector({1, 0}), StrategyVector({0, 1})) == 50.0);
  CHECK(mixed_payoff(base, StrategyVector({0.5, 0.5}), StrategyVector({0.5, 0.5})) == doctest::Approx(10.0));

  const auto ipd = noisy_ipd_game();
  for (std::size_t i = 0; i < 4; ++i) {
    const auto e = StrategyVector::pure(4, i);
    CHECK(mixed_payoff(ipd, e, e) == ipd.payoff(i, i));
  }
  CHECK_THROWS_AS(mixed_payoff(base, StrategyVector::uniform(3), StrategyVector::uniform(2)), InvalidInput);
}

TEST_CASE("mixed payoff is bilinear and shifts with the payoffs") {
  const auto game = noisy_ipd_game();
  auto e = make_engine(11, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = oracle::random_simplex(4, e);
    const auto s2 = oracle::random_simplex(4, e);
    const auto t = oracle::random_simplex(4, e);
    const double a = uniform01(e);
    std::vector<double> mix(4);
    for (int i = 0; i < 4; ++i) mix[i] = a * s[i] + (1 - a) * s2[i];
    CHECK(std::abs(mixed_payoff(game, mix, t) -
                   (a * mixed_payoff(game, s, t) + (1 - a) * mixed_payoff(game, s2, t))) < 1e-9);
    const double c = 7.5;
    CHECK(std::abs(mixed_payoff(game.shifted(c), s, t) - (mixed_payoff(game, s, t) + c)) < 1e-9);
  }
}

TEST_CASE("hawk-dove payoffs") {
  const auto g = hawk_dove();
  CHECK(g.strategy_names() == std::vector<std::string>{"Hawk", "Dove"});
  CHECK(g.payoff(0, 0) == 1.0);
  CHECK(g.payoff(0, 1) == 76.0);
  CHECK(g.payoff(1, 0) == 26.0);
  CHECK(g.payoff(1, 1) == 41.0);
}

TEST_CASE("ESS of two-strategy games") {
  CHECK(ess_2x2(hawk_dove())[0] == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
  CHECK(ess_2x2(hawk_dove_unshifted())[0] == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
  CHECK(std::abs(ess_2x2(hawk_dove().shifted(-13.25))[0] - 7.0 / 12.0) < 1e-9);
  CHECK(ess_2x2(MatrixGame("mp", {"A", "B"}, {0, 1, 1, 0}))[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(ess_2x2(MatrixGame("flat", {"A", "B"}, {2, 2, 2, 2})), InvalidInput);
  // Prisoner's dilemma: defection dominates.
  CHECK_THROWS_AS(ess_2x2(MatrixGame("pd", {"C", "D"}, {3, 0, 5, 1})), InvalidInput);
  // Coordination game: interior rest point exists but is not stable.
  CHECK_THROWS_AS(ess_2x2(MatrixGame("coord", {"A", "B"}, {2, 0, 0, 1})), InvalidInput);
  CHECK_THROWS_AS(ess_2x2(noisy_ipd_game()), InvalidInput);
}

TEST_CASE("noisy IPD stationary distribution") {
  const auto strategies = noisy_ipd_strategies();
  for (const auto& s1 : strategies)
    for (const auto& s2 : strategies) {
      const auto k = noisy_transition_matrix(s1, s2, 0.01);
      const auto pi = stationary_distribution(k);
      double sum = 0.0;
      for (double p : pi) sum += p;
      CHECK(std::abs(sum - 1.0) < 1e-12);
      for (int j = 0; j < 4; ++j) {
        double pk = 0.0;
        for (int i = 0; i < 4; ++i) pk += pi[i] * k[i][j];
        CHECK(std::abs(pk - pi[j]) < 1e-10);
      }
    }
}

TEST_CASE("noisy IPD payoffs") {
  CHECK(std::abs(noisy_ipd_payoff(kAllD, kAllD, 1e-6) - 1.0) < 1e-4);
  const double tft = noisy_ipd_payoff(kTitForTat, kTitForTat, 0.01);
  CHECK(tft > 1.0);
  CHECK(tft < 3.0);
  // Errors echo between two TFT players and visit all four states equally.
  CHECK(tft == doctest::Approx(2.25).epsilon(1e-12));

  CHECK_THROWS_AS(noisy_ipd_payoff(kAllC, kAllD, 0.0), InvalidInput);
  CHECK_THROWS_AS(noisy_ipd_payoff(kAllC, kAllD, 0.5), InvalidInput);
  CHECK_THROWS_AS(noisy_ipd_payoff(kAllC, kAllD, 0.01, PdPayoffs{3, 5, 1, 0}), InvalidInput);

  // The opening move does not affect the long-run payoff.
  MemoryOneStrategy suspicious_tft = kTitForTat;
  suspicious_tft.opening = Move::D;
  CHECK(noisy_ipd_payoff(suspicious_tft, kAllC, 0.01) == noisy_ipd_payoff(kTitForTat, kAllC, 0.01));
}

TEST_CASE("noisy IPD game matches the golden matrix") {
  const auto g = noisy_ipd_game(0.01);
  std::ifstream in(NPOP_TEST_DATA_DIR "/noisy_ipd_0.01.txt");
  REQUIRE(in);
  const auto golden = read_game(in, "golden");
  REQUIRE(golden.size() == 4);
  CHECK(golden.strategy_names() == g.strategy_names());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(std::abs(g.payoff(i, j) - golden.payoff(i, j)) < 1e-12);
      CHECK(g.payoff(i, j) >= 0.0);
      CHECK(g.payoff(i, j) <= 5.0);
    }
  const auto alld = 3u, allc = 0u;
  CHECK(g.payoff(alld, allc) > g.payoff(allc, alld));
  CHECK(g.payoff(0, 3) != g.payoff(3, 0));
}

TEST_CASE("noisy IPD against a short Monte Carlo run") {
  // A cheap spot check; the full 16-pair comparison lives in the acceptance suite.
  const double mc = oracle::monte_carlo_ipd(kAllC, kAllD, 0.01, 200000, 5);
  CHECK(std::abs(mc - noisy_ipd_payoff(kAllC, kAllD, 0.01)) < 0.01);
}

TEST_CASE("game text format round-trips exactly") {
  for (const auto& g : {hawk_dove(), noisy_ipd_game(0.01), noisy_ipd_game(0.037)}) {
    std::stringstream ss;
    write_game(ss, g);
    const auto back = read_game(ss, g.name());
    CHECK(back == g);
  }
}

TEST_CASE("game text format rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_game(in);
  };
  CHECK_THROWS_AS(parse(""), InvalidInput);
  CHECK_THROWS_AS(parse("A,B\n1,2\n"), InvalidInput);
  CHECK_THROWS_AS(parse("A,B\n1,2\n3\n"), InvalidInput);
  CHECK_THROWS_AS(parse("A,B\n1,x\n3,4\n"), InvalidInput);
  CHECK_THROWS_AS(parse("A,B\n1,2\n3,4\n5,6\n"), InvalidInput);
  CHECK(parse("# comment\nA, B\n1, 2\n3, 4\n").payoff(1, 0) == 3.0);
  CHECK_THROWS_AS(builtin_game("rock-paper-scissors"), InvalidInput);
}
