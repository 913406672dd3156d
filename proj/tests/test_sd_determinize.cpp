#include <catch2/catch.hpp>

#include "nhier/gadgets.hpp"
#include "nhier/langops.hpp"
#include "nhier/lasso.hpp"
#include "nhier/scc.hpp"
#include "nhier/sd_determinize.hpp"
#include "support.hpp"

using namespace nhier;

namespace {

const Automaton& named(const std::string& n) { return corpus_entry(n).automaton; }

}  // namespace

TEST_CASE("deterministic input keeps its shape") {
  const Automaton& d = named("A1p");
  Automaton out = determinize_sd_nbw(d);
  Automaton trimmed = reachable_trim(d);
  CHECK(out.num_states() == trimmed.num_states());
  CHECK(is_deterministic(out));
  CHECK(equivalent(out, d));
  CHECK(subset_homogeneity_audit(out, d));
  for (State q = 0; q < out.num_states(); ++q) CHECK(parse_state_set(out.state_name(q)).size() == 1);
}

TEST_CASE("W determinizes to a universal weak automaton") {
  Automaton out = determinize_sd_nbw(named("W"));
  CHECK(is_deterministic(out));
  CHECK(is_weak(out));
  CHECK(equivalent(out, named("U")));
  CHECK(subset_homogeneity_audit(out, named("W")));
}

TEST_CASE("non-SD input is refused unless forced") {
  const Automaton& f5 = named("F5");
  CHECK_THROWS(determinize_sd_nbw(f5));
  Automaton forced = determinize_sd_nbw(f5, false);
  CHECK(subset_homogeneity_audit(forced, f5));
  bool separated = false;
  for (const auto& w : enumerate_lassos(2, 3, 3))
    if (accepts(forced, w) != accepts(f5, w)) separated = true;
  CHECK(separated);
}

TEST_CASE("random SD-NBWs determinize faithfully", "[property]") {
  testing::Rng rng(17);
  auto lassos = enumerate_lassos(2, 4, 4);
  for (int i = 0; i < 60; ++i) {
    bool weak = i % 3 == 0;
    Automaton a = testing::random_sd_nbw(rng, 5, weak);
    Automaton d = determinize_sd_nbw(a);
    REQUIRE(is_deterministic(d));
    REQUIRE(d.is_total());
    REQUIRE(subset_homogeneity_audit(d, a));
    if (weak) REQUIRE(is_weak(d));
    for (const auto& w : lassos) REQUIRE(accepts(d, w) == testing::naive_member(a, w));
  }
}

TEST_CASE("state set labels") {
  CHECK(parse_state_set("{0,2,5}") == StateSet{0, 2, 5});
  CHECK(parse_state_set(format_state_set({1, 3})) == StateSet{1, 3});
}
