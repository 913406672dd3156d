#include <catch2/catch.hpp>

#include "nhier/gadgets.hpp"
#include "nhier/langops.hpp"
#include "nhier/lasso.hpp"
#include "nhier/probability.hpp"
#include "support.hpp"

using namespace nhier;

namespace {

const Automaton& named(const std::string& n) { return corpus_entry(n).automaton; }

Automaton finitely_many_b_dcw() {
  return parse_automaton(R"(kind cobuchi
alphabet a b
states 2
accepting 1
trans 0 a 0
trans 0 b 1
trans 1 a 0
trans 1 b 1
)");
}

}  // namespace

TEST_CASE("deterministic measures") {
  CHECK(measure_deterministic(named("U")) == 1);
  CHECK(measure_deterministic(named("A1p")) == 0);
  Automaton d = parse_automaton(R"(kind buchi
alphabet a b
states 3
accepting 1
trans 0 a 1
trans 0 b 2
trans 1 a 1
trans 1 b 1
trans 2 a 2
trans 2 b 2
)");
  CHECK(measure_deterministic(d) == Rational(1, 2));
  CHECK(measure_deterministic(finitely_many_b_dcw()) == 0);
  CHECK_THROWS(measure_deterministic(named("W")));
}

TEST_CASE("measures of nondeterministic automata") {
  CHECK(measure(named("A1")) == 1);
  CHECK(measure(named("A2")) == 1);
  CHECK(measure(named("Z")) == 0);
  CHECK(measure(named("F5")) == 0);
}

TEST_CASE("complementary measures sum to one", "[property]") {
  testing::Rng rng(8);
  const Acceptance kinds[] = {Acceptance::buchi, Acceptance::cobuchi, Acceptance::weak};
  for (int i = 0; i < 60; ++i) {
    Automaton d = testing::random_deterministic(rng, 1 + i % 5, 2 + i % 2, kinds[i % 3]);
    REQUIRE(measure_deterministic(d) + measure_deterministic(complement(d)) == 1);
    for (const auto& v : state_measures(d)) {
      REQUIRE(v >= 0);
      REQUIRE(v <= 1);
    }
  }
}

TEST_CASE("stochastic game") {
  auto g = build_game(named("U"));
  CHECK(g.q_rej == std::vector<bool>{false});
  CHECK(g.random_positions() == 1);
  CHECK(g.eve_positions() == 2);
  auto s = solve_almost_sure_buchi(g);
  CHECK(s.random_winning[0]);

  auto z = build_game(named("Z"));
  CHECK(z.q_rej == std::vector<bool>{true});
  CHECK(solve_almost_sure_buchi(z).random_winning[0]);

  auto w = solve_almost_sure_buchi(build_game(named("W")));
  CHECK(w.random_winning[0]);
  CHECK(measure_deterministic(apply_pruning(named("W"), w.strategy)) == 1);
  CHECK(measure_gap(named("W"), w.strategy) == 0);

  CHECK_THROWS(build_game(named("A2")));
}

TEST_CASE("Q_rej is closed under successors", "[property]") {
  testing::Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    Automaton a = testing::random_sd_nbw(rng, 5, i % 2 == 0);
    auto g = build_game(a);
    for (State q = 0; q < a.num_states(); ++q)
      if (g.q_rej[q])
        for (Letter l = 0; l < a.num_letters(); ++l)
          for (State s : a.successors(q, l)) REQUIRE(g.q_rej[s]);
  }
}

TEST_CASE("almost-DBP") {
  auto a1 = almost_dbp(named("A1"));
  CHECK(a1.almost_dbp == false);
  CHECK(a1.gap == 1);
  auto a2 = almost_dbp(named("A2"));
  CHECK(a2.almost_dbp == false);
  CHECK(a2.route == "exhaustive");
  for (const auto& p : enumerate_prunings(named("A2"))) CHECK(measure_gap(named("A2"), p) == 1);
  CHECK(measure_gap(named("U"), first_pruning(named("U"))) == 0);
  auto w = almost_dbp(named("W"));
  CHECK(w.almost_dbp == true);
  CHECK(w.route == "game");
}

TEST_CASE("co-safe closure") {
  CHECK(cosafe_closure(named("Uc")).accepting_states() == named("Uc").accepting_states());
  CHECK(cosafe_closure(named("A2")).accepting_states() == named("A2").accepting_states());
  Automaton c = cosafe_closure(finitely_many_b_dcw());
  CHECK(is_empty(c));
}

TEST_CASE("good prefixes") {
  CHECK(good_prefix(named("U"), {}));
  Automaton d = finitely_many_b_dcw();
  for (const std::vector<Letter>& x : {std::vector<Letter>{}, {0}, {1}, {0, 0, 1}}) CHECK_FALSE(good_prefix(d, x));
  CHECK_THROWS(good_prefix(named("W"), {}));
}

TEST_CASE("good prefixes of co-safe observers are sound", "[property]") {
  testing::Rng rng(14);
  for (int i = 0; i < 10; ++i) {
    Automaton a = testing::random_hd_ncw(rng, 5);
    Automaton d = determinize_ncw(cosafe_closure(a));
    for (std::size_t len = 0; len <= 4; ++len)
      for (const auto& w : enumerate_lassos(2, len, 1)) {
        if (w.stem.size() != len) continue;
        if (!good_prefix(d, w.stem)) continue;
        for (const auto& ext : enumerate_lassos(2, 2, 2)) {
          LassoWord full{w.stem, ext.loop};
          full.stem.insert(full.stem.end(), ext.stem.begin(), ext.stem.end());
          REQUIRE(accepts(a, full));
        }
      }
  }
}

TEST_CASE("almost-DBP routes on random samples", "[property]") {
  testing::Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    Automaton a = testing::random_sd_nbw(rng, 5, i % 2 == 0);
    auto r = almost_dbp(a);
    REQUIRE(r.almost_dbp == true);
    REQUIRE(r.gap == 0);
    REQUIRE(r.route == "game");
  }
  for (int i = 0; i < 10; ++i) {
    Automaton a = testing::random_hd_ncw(rng, 5);
    auto r = almost_dbp(a);
    REQUIRE(r.gap == 0);
    REQUIRE(r.route == "cosafe");
  }
}
