#include "nhier/sd_determinize.hpp"

#include <algorithm>
#include <map>

#include "nhier/hierarchy.hpp"
#include "nhier/scc.hpp"

namespace nhier {

Automaton determinize_sd_nbw(const Automaton& a, bool require_sd, const Limits& limits) {
  if (a.kind() == Acceptance::cobuchi) throw std::invalid_argument("determinize_sd_nbw expects a Büchi or weak automaton");
  if (require_sd && !check_sd(a, limits).sd) throw std::invalid_argument("input is not semantically deterministic");

  Automaton out(a.alphabet(), 0, a.kind() == Acceptance::weak ? Acceptance::weak : Acceptance::buchi);
  out.set_name(a.name() + "_sd");
  std::map<StateSet, State> index;
  std::vector<StateSet> sets;
  auto id = [&](StateSet s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (sets.size() >= limits.max_states) throw ResourceLimit("subset construction exceeds max-states budget");
    bool inside = std::all_of(s.begin(), s.end(), [&](State q) { return a.accepting(q); });
    State v = out.add_state(inside, format_state_set(s));
    index.emplace(s, v);
    sets.push_back(std::move(s));
    return v;
  };

  out.set_initial(id({a.initial()}));
  for (State v = 0; v < sets.size(); ++v) {
    for (Letter l = 0; l < a.num_letters(); ++l) {
      StateSet post, good;
      for (State q : sets[v]) post.insert(post.end(), a.successors(q, l).begin(), a.successors(q, l).end());
      std::sort(post.begin(), post.end());
      post.erase(std::unique(post.begin(), post.end()), post.end());
      for (State q : post)
        if (a.accepting(q)) good.push_back(q);
      State t = id(good.empty() ? std::move(post) : std::move(good));
      out.set_successors(v, l, {t});
    }
  }
  if (out.kind() == Acceptance::weak && !is_weak(out)) out.set_kind(Acceptance::buchi);
  return out;
}

StateSet parse_state_set(std::string_view label) {
  if (label.size() < 2 || label.front() != '{' || label.back() != '}')
    throw std::invalid_argument("not a state-set label: '" + std::string(label) + "'");
  StateSet out;
  std::string_view body = label.substr(1, label.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    out.push_back(static_cast<State>(std::stoul(std::string(body.substr(pos, comma - pos)))));
    pos = comma + 1;
  }
  return out;
}

bool subset_homogeneity_audit(const Automaton& d, const Automaton& source) {
  for (State v : reachable_states(d)) {
    auto s = parse_state_set(d.state_name(v));
    bool any_in = false, any_out = false;
    for (State q : s) (source.accepting(q) ? any_in : any_out) = true;
    if (any_in && any_out) return false;
  }
  return true;
}

}  // namespace nhier
