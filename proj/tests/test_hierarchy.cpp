#include <catch2/catch.hpp>

#include "nhier/gadgets.hpp"
#include "nhier/hierarchy.hpp"
#include "nhier/langops.hpp"
#include "nhier/lasso.hpp"
#include "support.hpp"

using namespace nhier;

namespace {

const Automaton& named(const std::string& n) { return corpus_entry(n).automaton; }

Automaton u_with_dead_branch() {
  Automaton a = named("U");
  State dead = a.add_state(false);
  for (Letter l = 0; l < a.num_letters(); ++l) a.add_transition(dead, l, dead);
  a.add_transition(0, 0, dead);
  return a;
}

}  // namespace

TEST_CASE("corpus manifests hold") {
  for (const auto& e : corpus()) {
    INFO(e.name);
    CHECK(check_manifest(e).empty());
  }
}

TEST_CASE("semantic determinism") {
  CHECK(check_sd(named("A1p")).sd);
  CHECK(check_sd(named("W")).sd);
  CHECK_FALSE(check_hd(named("W")).hd);
  auto r = check_sd(named("F5"));
  REQUIRE_FALSE(r.sd);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->q == 0);
  CHECK(r.counterexample->letter == 1);
  CHECK(r.counterexample->s == 0);
  CHECK(r.counterexample->s2 == 1);
}

TEST_CASE("prune_subsumed") {
  CHECK(prune_subsumed(named("A2p")) == named("A2p"));
  Automaton p = prune_subsumed(u_with_dead_branch());
  CHECK(p.successors(0, 0) == StateSet{0});

  Automaton phi = sat_to_nbw(CnfFormula{2, {{1, 2}, {-1, -2}}});
  CHECK(prune_subsumed(phi) == phi);
}

TEST_CASE("history determinism") {
  CHECK(check_hd(named("A1p")).hd);
  CHECK_FALSE(check_hd(named("W")).hd);
  Automaton phi = sat_to_nbw(CnfFormula{2, {{1, 2}, {-1, -2}}});
  auto r = check_hd(phi);
  REQUIRE(r.hd);
  REQUIRE(r.strategy);
  for (const auto& w : enumerate_lassos(phi.num_letters(), 1, 4))
    if (accepts(phi, w)) REQUIRE(r.strategy->accepts(w));
}

TEST_CASE("HD strategies accept every accepted lasso on random HD-NCWs", "[property]") {
  testing::Rng rng(21);
  for (int i = 0; i < 25; ++i) {
    Automaton a = testing::random_hd_ncw(rng, 6);
    auto r = check_hd(a);
    REQUIRE(r.hd);
    for (const auto& w : enumerate_lassos(2, 2, 3))
      if (accepts(a, w)) REQUIRE(r.strategy->accepts(w));
  }
}

TEST_CASE("determinizability by pruning") {
  const Automaton& d = named("A1p");
  auto r = check_dbp(d);
  REQUIRE(r.dbp);
  CHECK(*r.pruning == first_pruning(d));

  Automaton sat = sat_to_nbw(CnfFormula{2, {{1, 2}, {-1, -2}}});
  auto s = check_dbp(sat);
  REQUIRE(s.dbp);
  CHECK(equivalent(apply_pruning(sat, *s.pruning), sat));

  Automaton unsat = sat_to_nbw(CnfFormula{2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}});
  CHECK_FALSE(check_dbp(unsat).dbp);
  CHECK_FALSE(check_dbp(named("W")).dbp);
  for (const auto& p : enumerate_prunings(named("W"))) CHECK_FALSE(equivalent(apply_pruning(named("W"), p), named("W")));
}

TEST_CASE("hierarchy inclusions on random SD and HD samples", "[property]") {
  testing::Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    Automaton a = i % 2 ? testing::random_sd_nbw(rng, 5, i % 4 == 1) : testing::random_hd_ncw(rng, 5);
    auto rep = classify(a);
    REQUIRE(rep.dbp);
    if (*rep.dbp) {
      REQUIRE(rep.hd.value_or(true));
      REQUIRE(equivalent(apply_pruning(a, *rep.dbp_pruning), a));
    }
    if (rep.hd && *rep.hd && a.kind() != Acceptance::cobuchi) REQUIRE(rep.sd.value_or(true));
  }
}

TEST_CASE("classify") {
  auto u = classify(named("U"));
  CHECK(u.deterministic);
  CHECK(u.weak);
  CHECK(u.sd == true);
  CHECK(u.hd == true);
  CHECK(u.dbp == true);

  auto w = classify(named("W"));
  CHECK_FALSE(w.deterministic);
  CHECK(w.weak);
  CHECK(w.sd == true);
  CHECK(w.hd == false);
  CHECK(w.dbp == false);

  CHECK(classify(named("F5")).sd == false);
  std::string text = format_report(named("W"), w, true);
  CHECK(text.find("sd true") != std::string::npos);
}

TEST_CASE("prunings are exactly the valid choice functions") {
  const Automaton& w = named("W");
  auto all = enumerate_prunings(w);
  CHECK(all.size() == 4);
  for (const auto& p : all) {
    CHECK(is_valid_pruning(w, p));
    CHECK(is_deterministic(apply_pruning(w, p)));
  }
}
