#include <catch2/catch.hpp>

#include "nhier/gadgets.hpp"
#include "nhier/lasso.hpp"
#include "nhier/scc.hpp"
#include "support.hpp"

using namespace nhier;

namespace {

const char* kTwoState = R"(automaton T
kind buchi
alphabet a b
states 2
initial 0
accepting 1
trans 0 a 0
trans 0 b 1
trans 1 a 0
trans 1 b 1
)";

}  // namespace

TEST_CASE("parse and serialize round-trip") {
  Automaton a = parse_automaton(kTwoState);
  CHECK(a.num_states() == 2);
  CHECK(a.kind() == Acceptance::buchi);
  CHECK(a.accepting(1));
  CHECK(is_deterministic(a));
  CHECK(parse_automaton(serialize_automaton(a)) == a);
  for (const auto& e : corpus()) CHECK(parse_automaton(serialize_automaton(e.automaton)) == e.automaton);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_automaton("kind buchi\nalphabet a\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("kind buchi\nalphabet a\nstates 1\ntrans 0 z 0\n"), ParseError);
  try {
    parse_automaton("kind buchi\nalphabet a\nstates 1\nbogus 1\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 1);
  }
}

TEST_CASE("totality and weakness are enforced") {
  const char* partial = "kind buchi\nalphabet a b\nstates 1\ntrans 0 a 0\n";
  CHECK_THROWS_AS(parse_automaton(partial), InvalidAutomaton);
  Automaton p = parse_automaton(partial, {true});
  Automaton c = complete_automaton(p);
  REQUIRE(c.num_states() == 2);
  CHECK(c.successors(0, 1) == StateSet{1});
  CHECK_FALSE(c.accepting(1));
  CHECK(c.is_total());

  const char* mixed = "kind weak\nalphabet a\nstates 2\naccepting 0\ntrans 0 a 1\ntrans 1 a 0\n";
  CHECK_THROWS_AS(parse_automaton(mixed), InvalidAutomaton);
}

TEST_CASE("co-Buchi completion uses an accepting sink") {
  Automaton p = parse_automaton("kind cobuchi\nalphabet a b\nstates 1\ntrans 0 a 0\n", {true});
  Automaton c = complete_automaton(p);
  CHECK(c.accepting(1));
  CHECK_FALSE(accepts(c, parse_lasso(c.alphabet(), "b;a")));
  CHECK(accepts(c, parse_lasso(c.alphabet(), ";a")));
}

TEST_CASE("scc decomposition") {
  const auto& f5 = corpus_entry("F5").automaton;
  auto g = scc_decomposition(f5);
  CHECK(g.components.size() == 3);
  std::size_t ergodic = 0;
  for (bool e : g.ergodic) ergodic += e;
  CHECK(ergodic == 1);
  CHECK(is_weak(f5));
  CHECK(is_weak(corpus_entry("W").automaton));
  CHECK_FALSE(is_weak(parse_automaton(kTwoState)));
}

TEST_CASE("lasso parsing") {
  Automaton a = parse_automaton(kTwoState);
  LassoWord w = parse_lasso(a.alphabet(), "ab;ba");
  CHECK(w.stem == std::vector<Letter>{0, 1});
  CHECK(w.loop == std::vector<Letter>{1, 0});
  CHECK(format_lasso(a.alphabet(), w) == "ab;ba");
  CHECK_THROWS(parse_lasso(a.alphabet(), "ab;"));
}

TEST_CASE("membership witnesses replay") {
  Automaton a = parse_automaton(kTwoState);
  auto r = lasso_membership(a, parse_lasso(a.alphabet(), "a;ab"));
  REQUIRE(r.accepted);
  REQUIRE(r.witness);
  CHECK(validate_witness(a, parse_lasso(a.alphabet(), "a;ab"), *r.witness));
  CHECK_FALSE(accepts(a, parse_lasso(a.alphabet(), "bbb;a")));
}

TEST_CASE("membership agrees with the block oracle", "[property]") {
  testing::Rng rng(7);
  const Acceptance kinds[] = {Acceptance::buchi, Acceptance::cobuchi, Acceptance::weak};
  for (int i = 0; i < 150; ++i) {
    Automaton a = testing::random_automaton(rng, 1 + i % 4, 2, kinds[i % 3]);
    for (const auto& w : enumerate_lassos(2, 2, 2)) {
      auto r = lasso_membership(a, w);
      REQUIRE(r.accepted == testing::naive_member(a, w));
      if (r.accepted) REQUIRE(validate_witness(a, w, *r.witness));
    }
  }
}

TEST_CASE("enumerate_lassos counts") {
  CHECK(enumerate_lassos(2, 0, 1).size() == 2);
  CHECK(enumerate_lassos(2, 1, 2).size() == 3 * 6);
}
