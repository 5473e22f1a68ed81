#include "selfsim/contracting.hpp"
#include "selfsim/error.hpp"

#include "closure_systems.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace selfsim {

std::optional<int> Nucleus::find(const std::string &key) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].key == key) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<GroupWord> Nucleus::words() const {
  std::vector<GroupWord> out;
  for (const NucleusElement &e : elements) out.push_back(e.word);
  return out;
}

std::optional<std::string> element_key(const Group &group, const GroupWord &g, const Limits &limits) {
  SectionClosure c = section_closure(group, g, limits);
  if (c.truncated) return std::nullopt;
  return c.canonical_key(c.root);
}

namespace {

struct Inconclusive {
  std::string why;
};

// Working set of candidate nucleus elements keyed canonically.
class ElementSet {
 public:
  ElementSet(const Group &group, const Limits &limits) : group_(group), limits_(limits) {}

  const SectionClosure &closure(const GroupWord &w) {
    auto it = closures_.find(w);
    if (it == closures_.end()) {
      SectionClosure c = section_closure(group_, w, limits_);
      if (c.truncated)
        throw Inconclusive{"closure of " + group_.format(w) + " exceeds " +
                           std::to_string(limits_.max_states) + " states"};
      it = closures_.emplace(w, std::move(c)).first;
    }
    return it->second;
  }

  /// Adds the states of c reachable from `from`, all of which are sections.
  bool add_from(const SectionClosure &c, const std::vector<int> &from) {
    std::vector<bool> seen(c.size(), false);
    std::vector<int> stack;
    for (int s : from)
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    bool grew = false;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      grew = insert(c.canonical_key(s), c.words[s]) || grew;
      for (int t : c.trans[s])
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
    }
    if (keys_.size() > limits_.max_states) throw Inconclusive{"nucleus candidate set exceeds max_states"};
    return grew;
  }

  bool insert(const std::string &key, const GroupWord &word) {
    auto [it, fresh] = keys_.try_emplace(key, word);
    if (!fresh && shortlex_less(word, it->second)) it->second = word;
    return fresh;
  }

  bool contains(const std::string &key) const { return keys_.count(key) > 0; }
  const std::map<std::string, GroupWord> &keys() const { return keys_; }

 private:
  const Group &group_;
  const Limits &limits_;
  std::map<std::string, GroupWord> keys_;
  std::unordered_map<GroupWord, SectionClosure, GroupWordHash> closures_;
};

struct Landing {
  /// Least n such that every section at depth >= n lies in the set.
  int depth = 0;
  /// States occurring at arbitrarily large depth that are outside the set.
  std::vector<int> missing;
};

// Walks the level sets L_k = {h(root, u) : |u| = k} until one repeats.
template <class InSet>
Landing land(const SectionClosure &c, const InSet &in_set, const Limits &limits) {
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> levels;
  std::vector<int> level{c.root};
  int start = -1;
  while (true) {
    if (auto it = seen.find(level); it != seen.end()) {
      start = it->second;
      break;
    }
    if (levels.size() > limits.max_states) throw Inconclusive{"level sets did not become periodic"};
    seen.emplace(level, static_cast<int>(levels.size()));
    levels.push_back(level);
    std::set<int> next;
    for (int s : level)
      for (int t : c.trans[s]) next.insert(t);
    level.assign(next.begin(), next.end());
  }
  Landing out;
  std::set<int> missing;
  for (std::size_t k = start; k < levels.size(); ++k)
    for (int s : levels[k])
      if (!in_set(s)) missing.insert(s);
  out.missing.assign(missing.begin(), missing.end());
  out.depth = static_cast<int>(levels.size());
  for (int k = static_cast<int>(levels.size()) - 1; k >= 0; --k) {
    bool all_in = std::all_of(levels[k].begin(), levels[k].end(), in_set);
    if (k >= start && !all_in) {
      out.depth = static_cast<int>(levels.size());
      break;
    }
    if (!all_in) break;
    out.depth = k;
  }
  return out;
}

Nucleus build_nucleus(const Group &group, const Limits &limits) {
  ElementSet set(group, limits);
  std::vector<GroupWord> seeds{GroupWord{}};
  for (int t = 0; t < group.num_generators(); ++t) {
    seeds.push_back(group.generator(t));
    seeds.push_back(group.generator(t, true));
  }
  for (const GroupWord &w : seeds) {
    const SectionClosure &c = set.closure(w);
    set.add_from(c, {c.root});
  }

  auto in_candidates = [&](const SectionClosure &c) {
    return [&set, &c](int s) { return set.contains(c.canonical_key(s)); };
  };
  for (int round = 0;; ++round) {
    if (round > limits.max_depth) throw Inconclusive{"candidate set did not stabilize"};
    std::vector<GroupWord> current;
    for (const auto &[key, word] : set.keys()) current.push_back(word);
    bool grew = false;
    for (const GroupWord &s : current)
      for (const GroupWord &t : current) {
        const SectionClosure &c = set.closure(group.multiply(s, t));
        Landing l = land(c, in_candidates(c), limits);
        if (!l.missing.empty()) grew = set.add_from(c, l.missing) || grew;
      }
    if (!grew) break;
  }

  // Keep what is reachable from a cycle of the section graph.
  std::vector<std::string> keys;
  std::vector<GroupWord> words;
  for (const auto &[key, word] : set.keys()) {
    keys.push_back(key);
    words.push_back(word);
  }
  const int m = static_cast<int>(keys.size());
  std::map<std::string, int> index;
  for (int i = 0; i < m; ++i) index.emplace(keys[i], i);
  std::vector<std::vector<int>> adj(m);
  for (int i = 0; i < m; ++i) {
    const SectionClosure &c = set.closure(words[i]);
    for (int t : c.trans[c.root]) adj[i].push_back(index.at(c.canonical_key(t)));
  }
  std::vector<int> comp = detail::strongly_connected_components(adj, std::vector<bool>(m, true));
  std::map<int, int> comp_size;
  for (int i = 0; i < m; ++i) ++comp_size[comp[i]];
  std::vector<bool> keep(m, false);
  std::vector<int> stack;
  for (int i = 0; i < m; ++i) {
    bool cyclic = comp_size[comp[i]] > 1 ||
                  std::find(adj[i].begin(), adj[i].end(), i) != adj[i].end();
    if (cyclic) {
      keep[i] = true;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j : adj[i])
      if (!keep[j]) {
        keep[j] = true;
        stack.push_back(j);
      }
  }

  std::vector<int> chosen;
  for (int i = 0; i < m; ++i)
    if (keep[i]) chosen.push_back(i);
  std::sort(chosen.begin(), chosen.end(),
            [&](int a, int b) { return shortlex_less(words[a], words[b]); });
  Nucleus nucleus;
  std::vector<int> new_index(m, -1);
  for (int i : chosen) {
    new_index[i] = static_cast<int>(nucleus.elements.size());
    nucleus.elements.push_back({keys[i], words[i]});
  }
  for (int i : chosen) {
    std::vector<int> row;
    for (int j : adj[i]) row.push_back(new_index[j]);
    nucleus.sections.push_back(std::move(row));
  }

  // Re-verify landing against the final set and record the depth.
  std::set<std::string> final_keys;
  for (const NucleusElement &e : nucleus.elements) final_keys.insert(e.key);
  auto in_nucleus = [&](const SectionClosure &c) {
    return [&final_keys, &c](int s) { return final_keys.count(c.canonical_key(s)) > 0; };
  };
  std::vector<GroupWord> probes;
  for (int t = 0; t < group.num_generators(); ++t) {
    probes.push_back(group.generator(t));
    probes.push_back(group.generator(t, true));
  }
  for (const NucleusElement &a : nucleus.elements)
    for (const NucleusElement &b : nucleus.elements) probes.push_back(group.multiply(a.word, b.word));
  for (const GroupWord &p : probes) {
    const SectionClosure &c = set.closure(p);
    Landing l = land(c, in_nucleus(c), limits);
    if (!l.missing.empty()) throw Inconclusive{"pruned set fails to absorb " + group.format(p)};
    nucleus.witness_depth = std::max(nucleus.witness_depth, l.depth);
  }
  if (nucleus.witness_depth > limits.max_depth) throw Inconclusive{"witness depth exceeds max_depth"};
  return nucleus;
}

}  // namespace

NucleusOutcome compute_nucleus(const Group &group, const Limits &limits) {
  validate(limits);
  try {
    return {build_nucleus(group, limits), {}};
  } catch (const Inconclusive &e) {
    return {std::nullopt, e.why};
  }
}

std::string_view afd_status_name(AfdStatus s) {
  switch (s) {
    case AfdStatus::Holds: return "Holds";
    case AfdStatus::Fails: return "Fails";
    case AfdStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

int AfdResult::uniform_depth() const {
  int m = 0;
  for (const AfdWitness &w : witnesses) m = std::max(m, static_cast<int>(w.word.size()));
  return m;
}

AfdResult afd_hypothesis_check(const Group &group, const std::vector<GroupWord> &elements,
                               const Limits &limits) {
  AfdResult out;
  out.status = AfdStatus::Holds;
  for (const GroupWord &g : elements) {
    SectionClosure c = section_closure(group, g, limits);
    std::vector<int> parent(c.size(), -1), via(c.size(), -1);
    std::vector<bool> seen(c.size(), false);
    std::deque<int> queue{c.root};
    seen[c.root] = true;
    int found = -1;
    while (!queue.empty() && found < 0) {
      int s = queue.front();
      queue.pop_front();
      if (c.identity[s]) {
        found = s;
        break;
      }
      for (Letter x = 0; x < c.alphabet_size; ++x) {
        int t = c.trans[s][x];
        if (t >= 0 && !seen[t]) {
          seen[t] = true;
          parent[t] = s;
          via[t] = x;
          queue.push_back(t);
        }
      }
    }
    if (found < 0) {
      if (c.truncated) {
        if (out.status == AfdStatus::Holds) out.status = AfdStatus::Inconclusive;
      } else {
        out.status = AfdStatus::Fails;
        if (!out.counterexample) out.counterexample = group.normalize(g);
      }
      continue;
    }
    Word u;
    for (int s = found; s != c.root; s = parent[s]) u.push_back(via[s]);
    std::reverse(u.begin(), u.end());
    out.witnesses.push_back({group.normalize(g), std::move(u)});
  }
  return out;
}

AfdResult afd_hypothesis_check(const Group &group, const Nucleus &nucleus, const Limits &limits) {
  return afd_hypothesis_check(group, nucleus.words(), limits);
}

MeasureReport y_measure(const Group &group, const GroupWord &g, const Limits &limits) {
  validate(limits);
  SectionClosure c = section_closure(group, g, limits);
  if (c.identity[c.root]) return MeasureReport::exactly(1);
  if (!c.truncated) {
    const std::size_t m = c.size();
    std::vector<bool> live(m);
    std::vector<std::vector<int>> adj(m);
    for (std::size_t s = 0; s < m; ++s) {
      live[s] = !c.identity[s];
      for (int t : c.trans[s])
        if (!c.identity[t]) adj[s].push_back(t);
    }
    std::vector<int> comp = detail::strongly_connected_components(adj, live);
    // A class traps mass when no letter leads out of it.
    std::map<int, bool> closed;
    for (std::size_t s = 0; s < m; ++s) {
      if (!live[s]) continue;
      bool ok = true;
      for (int t : c.trans[s]) ok = ok && live[t] && comp[t] == comp[s];
      auto [it, fresh] = closed.try_emplace(comp[s], ok);
      if (!fresh) it->second = it->second && ok;
    }
    std::vector<bool> trapped(m, false);
    std::vector<int> unknowns;
    for (std::size_t s = 0; s < m; ++s) {
      if (!live[s]) continue;
      if (closed[comp[s]])
        trapped[s] = true;
      else
        unknowns.push_back(static_cast<int>(s));
    }
    if (trapped[c.root]) return MeasureReport::exactly(0);
    auto sol = detail::solve_averaging(
        c, unknowns, [](int, Letter) { return true; },
        [&](int t) { return trapped[t] ? Rational(1) : Rational(0); });
    if (!sol)
      throw Error(ErrorKind::SingularSystem, "escape system of " + group.format(g) + " is singular");
    return MeasureReport::exactly(1 - (*sol)[c.root]);
  }
  const int n = limits.max_depth;
  TaintedCount stuck = count_nontrivial_sections(group, g, n, limits);
  MeasureReport out;
  out.lower = 1 - Rational(stuck.count, ipow(group.alphabet_size(), n));
  out.lower.canonicalize();
  out.upper = 1;
  out.depth_used = n;
  out.method = MeasureMethod::CountingBounds;
  return out;
}

std::optional<int> moving_depth(const Group &group, const GroupWord &g, const Limits &limits) {
  SectionClosure c = section_closure(group, g, limits);
  if (c.truncated) return std::nullopt;
  for (int m = 1; m <= limits.max_depth; ++m) {
    bool all_move = true;
    const Integer total = ipow(c.alphabet_size, m);
    for (std::size_t s = 0; s < c.size() && all_move; ++s) {
      if (c.identity[s]) continue;
      all_move = count_fixed(group, c.words[s], m, limits) < total;
    }
    if (all_move) return m;
  }
  return std::nullopt;
}

}  // namespace selfsim
