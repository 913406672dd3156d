#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "nhier/gadgets.hpp"
#include "nhier/langops.hpp"
#include "nhier/lasso.hpp"
#include "nhier/mdp.hpp"
#include "nhier/probability.hpp"
#include "nhier/scc.hpp"
#include "nhier/sd_determinize.hpp"
#include "support.hpp"

using namespace nhier;
using testing::Rng;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

const Automaton& named(const std::string& n) { return corpus_entry(n).automaton; }

LassoWord random_lasso(Rng& rng, std::size_t k, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), letter(0, k - 1);
  LassoWord w;
  for (std::size_t i = len(rng); i > 0; --i) w.stem.push_back(static_cast<Letter>(letter(rng)));
  for (std::size_t i = std::max<std::size_t>(1, len(rng)); i > 0; --i) w.loop.push_back(static_cast<Letter>(letter(rng)));
  return w;
}

void oracle_soundness(Verdict& v) {
  Rng rng(1001);
  const Acceptance kinds[] = {Acceptance::buchi, Acceptance::cobuchi, Acceptance::weak};
  std::size_t accepted = 0;
  for (int i = 0; i < 500; ++i) {
    std::size_t n = 1 + rng() % 5, k = 2 + rng() % 2;
    Automaton a = testing::random_automaton(rng, n, k, kinds[i % 3]);
    LassoWord w = random_lasso(rng, k, 4);
    auto r = lasso_membership(a, w);
    v.require(r.accepted == testing::naive_member(a, w), "pair " + std::to_string(i) + " disagrees");
    if (r.accepted) {
      ++accepted;
      v.require(r.witness && validate_witness(a, w, *r.witness), "pair " + std::to_string(i) + " witness");
    }
  }
  v.note << "500 pairs, " << accepted << " accepted";
}

void sd_determinization(Verdict& v) {
  Rng rng(1002);
  auto lassos = enumerate_lassos(2, 4, 4);
  std::size_t weak_count = 0;
  for (int i = 0; i < 200; ++i) {
    bool weak = i % 2 == 0;
    Automaton a = testing::random_sd_nbw(rng, 6, weak);
    Automaton d = determinize_sd_nbw(a);
    std::string tag = "sample " + std::to_string(i);
    v.require(is_deterministic(d) && d.is_total(), tag + " not deterministic and total");
    v.require(subset_homogeneity_audit(d, a), tag + " audit");
    if (weak) {
      ++weak_count;
      v.require(is_weak(d), tag + " lost weakness");
    }
    for (const auto& w : lassos)
      if (accepts(d, w) != testing::naive_member(a, w)) {
        v.require(false, tag + " differs on " + format_lasso(a.alphabet(), w));
        break;
      }
  }
  v.note << "200 SD-NBWs (" << weak_count << " weak), " << lassos.size() << " lassos each";
}

void strictness(Verdict& v) {
  const Automaton& w = named("W");
  v.require(check_sd(w).sd, "W not SD");
  v.require(!check_hd(w).hd, "W HD");
  v.require(!check_dbp(w).dbp, "W DBP");
  Automaton inflated = dbp_inflate(named("U"));
  v.require(check_dbp(inflated).dbp, "dbp_inflate(U) not DBP");
  v.require(!is_deterministic(inflated), "dbp_inflate(U) deterministic");
  v.require(!check_sd(sd_break(named("U"), 0)).sd, "sd_break(U,a) SD");
  v.require(!check_sd(named("F5")).sd, "F5 SD");
  v.note << "W, dbp_inflate(U), sd_break(U,a), F5";
}

std::vector<std::vector<int>> valid_clauses(std::size_t n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> vars;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) vars.push_back(static_cast<int>(k + 1));
    if (vars.size() < 2) continue;
    for (unsigned signs = 0; signs < (1u << vars.size()); ++signs) {
      std::vector<int> c;
      for (std::size_t i = 0; i < vars.size(); ++i) c.push_back(signs & (1u << i) ? -vars[i] : vars[i]);
      out.push_back(c);
    }
  }
  return out;
}

void sat_reduction(Verdict& v) {
  std::size_t formulas = 0, satisfiable = 0;
  for (std::size_t n = 2; n <= 3; ++n) {
    auto clauses = valid_clauses(n);
    const std::size_t c = clauses.size();
    std::function<void(std::size_t, CnfFormula&)> rec = [&](std::size_t from, CnfFormula& f) {
      if (!f.clauses.empty()) {
        ++formulas;
        Automaton a = sat_to_nbw(f);
        bool sat = brute_force_sat(f);
        satisfiable += sat;
        std::string tag = to_dimacs(f);
        v.require(check_dbp(a).dbp == sat, "check_dbp vs SAT on " + tag);
        v.require(check_hd(a).hd, "check_hd false on " + tag);
        v.require(count_equivalent_prunings(a) == count_models(f), "parsimony on " + tag);
      }
      if (f.clauses.size() == 4) return;
      for (std::size_t i = from; i < c; ++i) {
        f.clauses.push_back(clauses[i]);
        rec(i + 1, f);
        f.clauses.pop_back();
      }
    };
    CnfFormula f{n, {}};
    rec(0, f);
  }
  v.note << formulas << " formulas, " << satisfiable << " satisfiable";
}

void measures(Verdict& v) {
  for (const char* name : {"A1", "A2"}) {
    const Automaton& a = named(name);
    v.require(measure(a) == 1, std::string(name) + " measure");
    auto prunings = enumerate_prunings(a);
    for (const auto& p : prunings) v.require(measure_deterministic(apply_pruning(a, p)) == 0, std::string(name) + " pruning");
    v.note << name << ": " << prunings.size() << " prunings at 0; ";
  }

  std::vector<Automaton> dets;
  for (const auto& e : corpus())
    if (is_deterministic(e.automaton)) dets.push_back(e.automaton);
  std::size_t corpus_dets = dets.size();
  Rng rng(1005);
  const Acceptance kinds[] = {Acceptance::buchi, Acceptance::cobuchi, Acceptance::weak};
  for (int i = 0; i < 60; ++i) dets.push_back(testing::random_deterministic(rng, 1 + i % 6, 2 + i % 2, kinds[i % 3]));

  for (const auto& d : dets) {
    auto g = scc_decomposition(d);
    Rational total = 0;
    for (std::size_t c = 0; c < g.components.size(); ++c) {
      if (!g.ergodic[c]) continue;
      Automaton hit = d;
      hit.set_kind(Acceptance::buchi);
      for (State q = 0; q < d.num_states(); ++q) hit.set_accepting(q, g.component_of[q] == c);
      total += measure_deterministic(hit);
    }
    v.require(total == 1, d.name() + " absorption sums to " + to_string(total));
    v.require(measure_deterministic(d) + measure_deterministic(complement(d)) == 1, d.name() + " complement measure");
  }
  v.note << dets.size() << " deterministic automata (" << corpus_dets << " from corpus)";
}

void sd_almost_dbp(Verdict& v) {
  Rng rng(1006);
  for (int i = 0; i < 100; ++i) {
    Automaton a = testing::random_sd_nbw(rng, 6, i % 2 == 0);
    auto r = almost_dbp(a);
    std::string tag = "sample " + std::to_string(i);
    v.require(r.almost_dbp == true && r.gap == 0, tag + " gap " + to_string(r.gap));
    v.require(r.route == "game", tag + " route " + r.route);
    v.require(r.pruning && measure_gap(a, *r.pruning) == 0, tag + " measure_gap");
  }
  v.note << "100 SD-NBWs";
}

void a2_not_gfm(Verdict& v) {
  const Automaton& a2 = named("A2");
  auto r = almost_dbp(a2);
  v.require(r.almost_dbp == false, "almost_dbp(A2) not false");
  v.require(r.route == "exhaustive", "route " + r.route);
  auto g = gfm_witness(uniform_mdp(a2.alphabet()), a2);
  v.require(!g.equal && g.psyn == 0 && g.psem == 1, "gfm_witness values");
  v.note << "almost_dbp=false gap=" << to_string(r.gap) << " psyn=" << to_string(g.psyn) << " psem=" << to_string(g.psem);
}

void hd_cosafe(Verdict& v) {
  Rng rng(1008);
  for (int i = 0; i < 50; ++i) {
    Automaton a = testing::random_hd_ncw(rng, 7);
    std::string tag = "sample " + std::to_string(i);
    auto r = almost_dbp(a);
    v.require(r.gap == 0 && r.almost_dbp == true, tag + " gap " + to_string(r.gap));
    v.require(r.route == "cosafe", tag + " route " + r.route);
    v.require(measure(a) == measure(cosafe_closure(a)), tag + " co-safe measure");
  }
  v.note << "50 HD-NCWs";
}

void gfm_values(Verdict& v) {
  Rng rng(1009);
  std::size_t equal_pairs = 0, order_pairs = 0;
  for (int i = 0; i < 50; ++i) {
    Automaton a;
    switch (i % 3) {
      case 0: a = testing::random_deterministic(rng, 1 + rng() % 4, 2, i % 2 ? Acceptance::buchi : Acceptance::cobuchi); break;
      case 1:
        a = testing::random_hd_ncw(rng, 6);
        v.require(check_hd(a).hd, "HD sample " + std::to_string(i) + " not HD");
        break;
      default: a = testing::random_sd_nbw(rng, 5, false); break;
    }
    Mdp m = testing::random_mdp(rng, a.alphabet(), 4);
    auto g = gfm_witness(m, a);
    v.require(g.equal, "pair " + std::to_string(i) + ": psyn " + to_string(g.psyn) + " psem " + to_string(g.psem));
    ++equal_pairs;
  }
  for (int i = 0; i < 50; ++i) {
    Automaton a = testing::random_automaton(rng, 2 + i % 3, 2, i % 2 ? Acceptance::cobuchi : Acceptance::weak);
    Mdp m = testing::random_mdp(rng, a.alphabet(), 4);
    v.require(psyn(m, a) <= psem(m, a), "psyn above psem on unrestricted pair " + std::to_string(i));
    ++order_pairs;
  }
  v.note << equal_pairs << " deterministic/HD/SD pairs equal, " << order_pairs << " unrestricted pairs ordered";
}

void hamiltonian(Verdict& v) {
  std::size_t graphs = 0, hamiltonian = 0, disagreements = 0;
  std::string example;
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    Automaton canonical = eventually_constant_dcw(n);
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
      UGraph g{n, {}};
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if (mask & (1u << e)) g.edges.push_back(pairs[e]);
      if (!g.connected()) continue;
      ++graphs;
      Automaton a = hamcycle_to_ncw(g);
      bool ham = is_hamiltonian(g);
      hamiltonian += ham;
      v.require(check_hd(a).hd, "check_hd false");
      v.require(equivalent(a, canonical), "not equivalent to the canonical DCW");
      if (check_dbp(a).dbp != ham) {
        ++disagreements;
        if (example.empty()) {
          example = "n=" + std::to_string(n);
          for (auto [x, y] : g.edges) example += " " + std::to_string(x) + "-" + std::to_string(y);
        }
      }
    }
  }
  v.require(disagreements == 0, "check_dbp disagrees with Hamiltonicity");
  v.note << graphs << " connected graphs, " << hamiltonian << " Hamiltonian, " << disagreements
         << " DBP/Hamiltonicity disagreements";
  if (disagreements)
    v.note << " (e.g. " << example << "); caveat: the implemented simplified construction is DBP on every "
           << "connected graph, so its DBP verdict does not track Hamiltonicity";
}

TuringMachine toy(const char* verdict) {
  return parse_tm(std::string("tm T\ngamma b\nblank b\nstates q0 qacc qrej\nrule q0 b ") + verdict +
                  " b L\nrule qacc b q0 b L\nrule qrej b q0 b L\nspace 2\n");
}

void turing(Verdict& v) {
  for (const char* verdict : {"qacc", "qrej"}) {
    TuringMachine t = toy(verdict);
    Automaton a = tm_to_nww(t);
    std::string tag = verdict == std::string("qacc") ? "T_yes" : "T_no";
    v.require(accepts(a, empty_tape_word(t)) == accepts_empty_tape(t), tag + " membership of w_eps");
    v.require(is_weak(a), tag + " not weak");
    auto alpha = a.accepting_states();
    bool sink = alpha.size() == 1;
    if (sink)
      for (Letter l = 0; l < a.num_letters(); ++l) sink = sink && a.successors(alpha[0], l) == StateSet{alpha[0]};
    v.require(sink, tag + " accepting part is not a single sink");
    v.note << tag << ": " << a.num_states() << " states, accepts_empty_tape=" << (accepts_empty_tape(t) ? "true" : "false")
           << "; ";
    if (tag == "T_no") {
      LassoWord w = empty_tape_word(t);
      auto& first = w.stem.empty() ? w.loop : w.stem;
      first[0] = a.alphabet().at("b");
      v.require(accepts(a, w), "corrupted w_eps rejected for T_no");
    }
  }
}

const std::vector<std::pair<std::string, void (*)(Verdict&)>> kCriteria = {
    {"lasso membership agrees with the block oracle", oracle_soundness},
    {"SD-NBW determinization", sd_determinization},
    {"hierarchy strictness witnesses", strictness},
    {"SAT reduction and parsimony", sat_reduction},
    {"exact measures", measures},
    {"SD-NBWs are almost-DBP via the game", sd_almost_dbp},
    {"A2 is not almost-DBP and not GFM", a2_not_gfm},
    {"HD-NCWs are almost-DBP via the co-safe closure", hd_cosafe},
    {"psyn equals psem for deterministic, HD and SD automata", gfm_values},
    {"Hamiltonian-cycle gadget", hamiltonian},
    {"Turing machine gadget", turing},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    std::size_t c = std::strtoul(argv[i], nullptr, 10);
    if (c < 1 || c > kCriteria.size()) {
      std::cerr << "usage: acceptance [criterion 1.." << kCriteria.size() << "]...\n";
      return 2;
    }
    selected.push_back(c);
  }
  if (selected.empty())
    for (std::size_t c = 1; c <= kCriteria.size(); ++c) selected.push_back(c);

  std::string corpus_failures;
  try {
    for (const auto& e : corpus())
      for (const auto& f : check_manifest(e)) corpus_failures += " " + e.name + ":" + f;
  } catch (const std::exception& ex) {
    corpus_failures = std::string(" ") + ex.what();
  }

  bool all = true;
  for (std::size_t c : selected) {
    Verdict v;
    if (!corpus_failures.empty()) {
      v.require(false, "corpus manifests fail:" + corpus_failures);
    } else {
      try {
        kCriteria[c - 1].second(v);
      } catch (const std::exception& ex) {
        v.require(false, std::string("exception: ") + ex.what());
      }
    }
    all = all && v.pass;
    std::cout << "criterion " << c << " " << (v.pass ? "PASS" : "FAIL") << " " << kCriteria[c - 1].first << ": "
              << v.note.str() << std::endl;
  }
  return all ? 0 : 1;
}
