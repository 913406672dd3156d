#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nhier/automaton.hpp"
#include "nhier/gadgets.hpp"
#include "nhier/hierarchy.hpp"
#include "nhier/langops.hpp"
#include "nhier/lasso.hpp"
#include "nhier/mdp.hpp"
#include "nhier/probability.hpp"
#include "nhier/sd_determinize.hpp"

namespace fs = std::filesystem;
using namespace nhier;

namespace {

enum Exit { decided = 0, property_false = 1, failure = 2 };

struct Globals {
  Limits limits;
  std::string format = "text";
  bool kv() const { return format == "kv"; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << body;
}

class Report {
 public:
  explicit Report(const Globals& g) : sep_(g.kv() ? " " : ": ") {}
  Report& operator()(const std::string& key, const std::string& value) {
    std::cout << key << sep_ << value << "\n";
    return *this;
  }

 private:
  const char* sep_;
};

std::string boolstr(bool b) { return b ? "true" : "false"; }

std::string format_run(const RunWitness& r) {
  std::string s;
  for (std::size_t i = 0; i < r.stem_states.size(); ++i) s += (i ? "," : "") + std::to_string(r.stem_states[i]);
  s += ";";
  for (std::size_t i = 0; i < r.loop_states.size(); ++i) s += (i ? "," : "") + std::to_string(r.loop_states[i]);
  return s;
}

std::vector<bool> parse_bits(const std::string& s) {
  std::vector<bool> bits;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("assignment must be a string of 0/1 digits");
    bits.push_back(c == '1');
  }
  return bits;
}

void print_pruning(Report& rep, const Automaton& a, const Pruning& p) {
  std::istringstream lines(format_pruning(a, p));
  std::string line;
  while (std::getline(lines, line)) rep("choice", line);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nondeterminism hierarchy toolkit for Büchi, co-Büchi and weak automata"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--max-states", g.limits.max_states, "State budget for constructions")->capture_default_str();
  app.add_option("--budget", g.limits.budget, "Candidate budget for exhaustive searches")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "kv"}))->capture_default_str();

  std::string aut, aut2, lasso, out_path, mdp_path, assignment, emit_dir, batch_dir;
  bool search = false;
  int code = decided;
  auto load = [](const std::string& p) { return load_automaton(p); };

  auto* classify_cmd = app.add_subcommand("classify", "Decide deterministic, weak, SD, HD and DBP");
  classify_cmd->add_option("aut", aut, "Automaton file");
  classify_cmd->add_option("--batch", batch_dir, "Classify every .aut file in a directory");
  classify_cmd->callback([&] {
    std::vector<std::string> files;
    if (!batch_dir.empty()) {
      for (const auto& e : fs::directory_iterator(batch_dir))
        if (e.path().extension() == ".aut") files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
    } else if (!aut.empty()) {
      files.push_back(aut);
    } else {
      throw CLI::RequiredError("aut or --batch");
    }
    for (const auto& f : files) {
      Automaton a = load(f);
      auto r = classify(a, g.limits);
      if (files.size() > 1) Report{g}("file", f);
      std::cout << format_report(a, r, g.kv());
      if (!r.sd || !r.hd || !r.dbp) code = failure;
    }
  });

  auto* det_cmd = app.add_subcommand("determinize-sd", "Determinize a semantically deterministic NBW");
  det_cmd->add_option("aut", aut)->required();
  det_cmd->add_option("-o,--output", out_path);
  det_cmd->callback([&] { emit(serialize_automaton(determinize_sd_nbw(load(aut), true, g.limits)), out_path); });

  auto* comp_cmd = app.add_subcommand("complement", "Complement automaton");
  comp_cmd->add_option("aut", aut)->required();
  comp_cmd->add_option("-o,--output", out_path);
  comp_cmd->callback([&] { emit(serialize_automaton(complement(load(aut), g.limits)), out_path); });

  auto* ncw_cmd = app.add_subcommand("ncw-det", "Breakpoint determinization of a co-Büchi or weak automaton");
  ncw_cmd->add_option("aut", aut)->required();
  ncw_cmd->add_option("-o,--output", out_path);
  ncw_cmd->callback([&] { emit(serialize_automaton(determinize_ncw(load(aut), g.limits)), out_path); });

  auto* contains_cmd = app.add_subcommand("contains", "Decide L(A) ⊆ L(B)");
  contains_cmd->add_option("a", aut)->required();
  contains_cmd->add_option("b", aut2)->required();
  contains_cmd->callback([&] {
    Automaton a = load(aut), b = load(aut2);
    auto cex = find_counterexample(a, b, g.limits);
    Report rep(g);
    rep("contains", boolstr(!cex));
    if (cex) rep("counterexample", format_lasso(a.alphabet(), *cex));
    code = cex ? property_false : decided;
  });

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide L(A) = L(B)");
  equiv_cmd->add_option("a", aut)->required();
  equiv_cmd->add_option("b", aut2)->required();
  equiv_cmd->callback([&] {
    Automaton a = load(aut), b = load(aut2);
    auto cex = find_counterexample(a, b, g.limits);
    if (!cex) cex = find_counterexample(b, a, g.limits);
    Report rep(g);
    rep("equivalent", boolstr(!cex));
    if (cex) rep("counterexample", format_lasso(a.alphabet(), *cex));
    code = cex ? property_false : decided;
  });

  auto* member_cmd = app.add_subcommand("member", "Decide u·v^ω ∈ L(A)");
  member_cmd->add_option("aut", aut)->required();
  member_cmd->add_option("lasso", lasso, "u;v")->required();
  member_cmd->callback([&] {
    Automaton a = load(aut);
    auto r = lasso_membership(a, parse_lasso(a.alphabet(), lasso));
    Report rep(g);
    if (g.kv())
      rep("member", boolstr(r.accepted));
    else
      std::cout << boolstr(r.accepted) << "\n";
    if (r.witness) {
      rep("word", format_lasso(a.alphabet(), {r.witness->stem_word, r.witness->loop_word}));
      rep("run", format_run(*r.witness));
    }
    code = r.accepted ? decided : property_false;
  });

  auto* measure_cmd = app.add_subcommand("measure", "Probability of L(A) under uniformly random letters");
  measure_cmd->add_option("aut", aut)->required();
  measure_cmd->callback([&] {
    auto m = to_string(measure(load(aut), g.limits));
    if (g.kv())
      Report{g}("measure", m);
    else
      std::cout << m << "\n";
  });

  auto* almost_cmd = app.add_subcommand("almost-dbp", "Search a pruning of full measure");
  almost_cmd->add_option("aut", aut)->required();
  almost_cmd->callback([&] {
    Automaton a = load(aut);
    auto r = almost_dbp(a, g.limits);
    Report rep(g);
    rep("almost_dbp", r.almost_dbp ? boolstr(*r.almost_dbp) : "unknown");
    rep("gap", to_string(r.gap));
    rep("route", r.route);
    if (r.pruning) print_pruning(rep, a, *r.pruning);
    code = !r.almost_dbp ? failure : *r.almost_dbp ? decided : property_false;
  });

  auto* cosafe_cmd = app.add_subcommand("cosafe", "Co-safe closure of a co-Büchi automaton");
  cosafe_cmd->add_option("aut", aut)->required();
  cosafe_cmd->add_option("-o,--output", out_path);
  cosafe_cmd->callback([&] { emit(serialize_automaton(cosafe_closure(load(aut), g.limits)), out_path); });

  auto* prune_cmd = app.add_subcommand("prune", "Assignment pruning of a SAT gadget, or DBP search");
  prune_cmd->add_option("aut", aut)->required();
  auto* assign_opt = prune_cmd->add_option("--assignment", assignment, "Bits x1..xn, e.g. 10");
  auto* search_opt = prune_cmd->add_flag("--search", search, "Search any equivalent pruning");
  assign_opt->excludes(search_opt);
  prune_cmd->add_option("-o,--output", out_path, "Write the pruned automaton");
  prune_cmd->callback([&] {
    Automaton a = load(aut);
    Report rep(g);
    std::optional<Pruning> p;
    bool ok;
    if (!assignment.empty()) {
      p = assignment_pruning(a, parse_bits(assignment));
      ok = contains(a, apply_pruning(a, *p), g.limits);
      rep("equivalent", boolstr(ok));
    } else if (search) {
      auto r = check_dbp(a, g.limits);
      ok = r.dbp;
      p = r.pruning;
      rep("dbp", boolstr(ok));
      rep("explored", std::to_string(r.explored));
    } else {
      throw CLI::RequiredError("--assignment or --search");
    }
    if (p) {
      print_pruning(rep, a, *p);
      if (!out_path.empty()) emit(serialize_automaton(apply_pruning(a, *p)), out_path);
    }
    code = ok ? decided : property_false;
  });

  auto* gadget_cmd = app.add_subcommand("gadget", "Reduction gadgets");
  gadget_cmd->require_subcommand(1);
  std::string gadget_in;
  auto* gsat = gadget_cmd->add_subcommand("sat", "DIMACS CNF to the Büchi automaton A_phi");
  gsat->add_option("dimacs", gadget_in)->required();
  gsat->add_option("-o,--output", out_path);
  gsat->callback([&] { emit(serialize_automaton(sat_to_nbw(parse_dimacs(slurp(gadget_in)))), out_path); });
  auto* gham = gadget_cmd->add_subcommand("hamcycle", "Graph to the co-Büchi automaton A_G");
  gham->add_option("graph", gadget_in)->required();
  gham->add_option("-o,--output", out_path);
  gham->callback([&] { emit(serialize_automaton(hamcycle_to_ncw(parse_graph(slurp(gadget_in)))), out_path); });
  auto* gtm = gadget_cmd->add_subcommand("tm", "Space-bounded Turing machine to a weak automaton");
  gtm->add_option("tm", gadget_in)->required();
  gtm->add_option("-o,--output", out_path);
  gtm->callback([&] { emit(serialize_automaton(tm_to_nww(parse_tm(slurp(gadget_in)), g.limits)), out_path); });

  auto add_mdp_verb = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("mdp", mdp_path)->required();
    cmd->add_option("aut", aut)->required();
    return cmd;
  };
  add_mdp_verb("psyn", "Maximal acceptance probability with a synthesized resolver")->callback([&] {
    auto v = to_string(psyn(load_mdp(mdp_path), load(aut)));
    g.kv() ? (void)Report{g}("psyn", v) : (void)(std::cout << v << "\n");
  });
  add_mdp_verb("psem", "Maximal probability of generating a word in L(A)")->callback([&] {
    auto v = to_string(psem(load_mdp(mdp_path), load(aut), g.limits));
    g.kv() ? (void)Report{g}("psem", v) : (void)(std::cout << v << "\n");
  });
  add_mdp_verb("gfm-witness", "Compare psyn and psem on one MDP")->callback([&] {
    auto w = gfm_witness(load_mdp(mdp_path), load(aut), g.limits);
    if (g.kv()) {
      Report{g}("gfm", boolstr(w.equal))("psyn", to_string(w.psyn))("psem", to_string(w.psem));
    } else {
      std::cout << boolstr(w.equal) << " psyn=" << to_string(w.psyn) << " psem=" << to_string(w.psem) << "\n";
    }
    code = w.equal ? decided : property_false;
  });

  auto* corpus_cmd = app.add_subcommand("corpus", "Write the reference automata");
  corpus_cmd->add_option("--emit", emit_dir, "Output directory")->required();
  corpus_cmd->callback([&] {
    fs::create_directories(emit_dir);
    for (const auto& e : corpus()) {
      emit(serialize_automaton(e.automaton), (fs::path(emit_dir) / (e.name + ".aut")).string());
      std::cout << e.name << ".aut\n";
    }
    emit(serialize_mdp(uniform_mdp(corpus_entry("U").automaton.alphabet())),
         (fs::path(emit_dir) / "uniform.mdp").string());
    std::cout << "uniform.mdp\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return failure;
  } catch (const ResourceLimit& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return failure;
  } catch (const Unsupported& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return failure;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
  return code;
}
