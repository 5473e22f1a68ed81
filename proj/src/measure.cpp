#include "selfsim/measure.hpp"
#include "selfsim/contracting.hpp"
#include "selfsim/error.hpp"

#include "closure_systems.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace selfsim {

std::string_view method_name(MeasureMethod m) {
  return m == MeasureMethod::LinearSystem ? "LinearSystem" : "CountingBounds";
}

std::string_view genericity_name(Genericity g) {
  switch (g) {
    case Genericity::One: return "One";
    case Genericity::Zero: return "Zero";
    case Genericity::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

enum class CountMode { Fixed, FixedNontrivial, Nontrivial };

bool follows_fixed(CountMode mode) { return mode != CountMode::Nontrivial; }

void check_depth(int n, const Limits &limits) {
  if (n < 0) throw std::invalid_argument("depth must be non-negative");
  if (n > limits.max_depth)
    throw Error(ErrorKind::DepthExceeded,
                std::to_string(n) + " exceeds max_depth " + std::to_string(limits.max_depth));
}

// Level-by-level dynamic programme over a finite closure.
TaintedCount count_on_closure(const SectionClosure &c, int n, CountMode mode) {
  const int x_count = c.alphabet_size;
  std::vector<Integer> level(c.size());
  for (std::size_t s = 0; s < c.size(); ++s)
    level[s] = (mode == CountMode::Fixed || !c.identity[s]) ? 1 : 0;
  for (int k = 0; k < n; ++k) {
    std::vector<Integer> next(c.size(), 0);
    for (std::size_t s = 0; s < c.size(); ++s)
      for (Letter x = 0; x < x_count; ++x)
        if (!follows_fixed(mode) || c.perm_of[s][x] == x) next[s] += level[c.trans[s][x]];
    level = std::move(next);
  }
  return {level[c.root], false};
}

// Depth-first count over words, for closures that did not fit the budget.
class WordCounter {
 public:
  WordCounter(const Group &group, const Limits &limits, CountMode mode)
      : group_(group), limits_(limits), mode_(mode) {}

  TaintedCount count(const GroupWord &g, int depth) { return count(intern(group_.normalize(g)), depth); }

 private:
  struct Node {
    GroupWord word;
    std::vector<Letter> perm;
    std::vector<int> succ;
    std::optional<Verdict> identity;
  };

  int intern(const GroupWord &w) {
    if (auto it = ids_.find(w); it != ids_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    ids_.emplace(w, id);
    nodes_.push_back({w, group_.permutation(w), {}, std::nullopt});
    return id;
  }

  int successor(int id, Letter x) {
    if (nodes_[id].succ.empty()) {
      std::vector<GroupWord> secs;
      for (Letter y = 0; y < group_.alphabet_size(); ++y)
        secs.push_back(group_.act_letter(nodes_[id].word, y).section);
      std::vector<int> succ;
      for (const GroupWord &w : secs) succ.push_back(intern(w));
      nodes_[id].succ = std::move(succ);
    }
    return nodes_[id].succ[x];
  }

  Verdict identity(int id) {
    if (!nodes_[id].identity) nodes_[id].identity = is_identity(group_, nodes_[id].word, limits_);
    return *nodes_[id].identity;
  }

  TaintedCount count(int id, int depth) {
    const auto key = std::make_pair(id, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    TaintedCount out;
    if (nodes_[id].word.empty()) {
      out.count = mode_ == CountMode::Fixed ? ipow(group_.alphabet_size(), depth) : Integer(0);
    } else if (depth == 0) {
      if (mode_ == CountMode::Fixed) {
        out.count = 1;
      } else {
        Verdict v = identity(id);
        out.count = v == Verdict::Yes ? 0 : 1;
        out.tainted = v == Verdict::Unknown;
      }
    } else {
      out.count = 0;
      for (Letter x = 0; x < group_.alphabet_size(); ++x) {
        if (follows_fixed(mode_) && nodes_[id].perm[x] != x) continue;
        TaintedCount sub = count(successor(id, x), depth - 1);
        out.count += sub.count;
        out.tainted = out.tainted || sub.tainted;
      }
    }
    memo_.emplace(key, out);
    return out;
  }

  const Group &group_;
  const Limits &limits_;
  CountMode mode_;
  std::vector<Node> nodes_;
  std::unordered_map<GroupWord, int, GroupWordHash> ids_;
  std::map<std::pair<int, int>, TaintedCount> memo_;
};

TaintedCount count_paths(const Group &group, const GroupWord &g, int n, const Limits &limits,
                         CountMode mode) {
  validate(limits);
  check_depth(n, limits);
  SectionClosure c = section_closure(group, g, limits);
  if (!c.truncated) return count_on_closure(c, n, mode);
  WordCounter counter(group, limits, mode);
  return counter.count(g, n);
}

// Non-identity states reachable from the root through fixed letters whose
// sections are non-identity. nullopt when one of those sections is unexplored.
std::optional<std::vector<int>> fixed_region(const SectionClosure &c) {
  std::vector<int> region;
  if (c.identity[c.root]) return region;
  std::vector<bool> seen(c.size(), false);
  std::deque<int> queue{c.root};
  seen[c.root] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    region.push_back(s);
    for (Letter x = 0; x < c.alphabet_size; ++x) {
      if (c.perm_of[s][x] != x) continue;
      int t = c.trans[s][x];
      if (t < 0) return std::nullopt;
      if (!c.identity[t] && !seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  std::sort(region.begin(), region.end());
  return region;
}

}  // namespace

Integer count_fixed(const Group &group, const GroupWord &g, int n, const Limits &limits) {
  return count_paths(group, g, n, limits, CountMode::Fixed).count;
}

TaintedCount count_fixed_nontrivial(const Group &group, const GroupWord &g, int n,
                                    const Limits &limits) {
  return count_paths(group, g, n, limits, CountMode::FixedNontrivial);
}

TaintedCount count_nontrivial_sections(const Group &group, const GroupWord &g, int n,
                                       const Limits &limits) {
  return count_paths(group, g, n, limits, CountMode::Nontrivial);
}

Rational generic_defect(const Group &group, const GroupWord &g, int n, const Limits &limits) {
  Rational r(count_fixed_nontrivial(group, g, n, limits).count, ipow(group.alphabet_size(), n));
  r.canonicalize();
  return r;
}

MeasureReport fixed_measure(const Group &group, const GroupWord &g, const Limits &limits) {
  validate(limits);
  SectionClosure c = section_closure(group, g, limits);
  if (c.identity[c.root]) return MeasureReport::exactly(1);
  if (auto region = fixed_region(c)) {
    auto sol = detail::solve_averaging(
        c, *region, [&](int s, Letter x) { return c.perm_of[s][x] == x; },
        [](int) { return Rational(1); });
    if (sol) return MeasureReport::exactly((*sol)[c.root]);
    if (!c.truncated)
      throw Error(ErrorKind::SingularSystem,
                  "fixed-point system of " + group.format(g) + " is singular");
  }
  const int n = limits.max_depth;
  const Integer scale = ipow(group.alphabet_size(), n);
  const Integer all = count_fixed(group, g, n, limits);
  const TaintedCount nontrivial = count_fixed_nontrivial(group, g, n, limits);
  MeasureReport out;
  out.lower = Rational(all - nontrivial.count, scale);
  out.upper = Rational(all, scale);
  out.lower.canonicalize();
  out.upper.canonicalize();
  out.depth_used = n;
  out.method = MeasureMethod::CountingBounds;
  return out;
}

ElementDefect element_defect(const Group &group, const GroupWord &g, const Limits &limits) {
  ElementDefect out;
  out.element = group.normalize(g);
  SectionClosure c = section_closure(group, g, limits);
  auto region = fixed_region(c);
  if (!region) {
    out.lower = 0;
    out.upper = generic_defect(group, g, limits.max_depth, limits);
    return out;
  }
  // Sections along fixed letters that never reach e only persist inside a
  // class whose states fix every letter and whose sections stay inside.
  const std::size_t m = c.size();
  std::vector<bool> in_region(m, false);
  for (int s : *region) in_region[s] = true;
  std::vector<std::vector<int>> adj(m);
  for (int s : *region)
    for (Letter x = 0; x < c.alphabet_size; ++x)
      if (c.perm_of[s][x] == x && in_region[c.trans[s][x]]) adj[s].push_back(c.trans[s][x]);
  std::vector<int> comp = detail::strongly_connected_components(adj, in_region);
  std::map<int, bool> trapping;
  for (int s : *region) {
    bool ok = c.fixes_all(s);
    for (Letter x = 0; x < c.alphabet_size && ok; ++x) {
      int t = c.trans[s][x];
      ok = t >= 0 && in_region[t] && comp[t] == comp[s];
    }
    auto [it, fresh] = trapping.try_emplace(comp[s], ok);
    if (!fresh) it->second = it->second && ok;
  }
  std::vector<int> trap_states, unknowns;
  for (int s : *region) (trapping[comp[s]] ? trap_states : unknowns).push_back(s);
  if (trap_states.empty()) {
    out.lower = out.upper = 0;
    out.exact = true;
    return out;
  }
  std::vector<bool> trap(m, false);
  for (int s : trap_states) trap[s] = true;
  auto sol = detail::solve_averaging(
      c, unknowns,
      [&](int s, Letter x) { return c.perm_of[s][x] == x && !c.identity[c.trans[s][x]]; },
      [&](int t) { return trap[t] ? Rational(1) : Rational(0); });
  const Rational value = trap[c.root] ? Rational(1) : (sol ? (*sol)[c.root] : Rational(1));
  for (int s : trap_states)
    if (is_identity(group, c.words[s], limits) == Verdict::No) out.positive_witness = true;
  out.upper = value;
  if (out.positive_witness && sol) {
    out.lower = value;
    out.exact = true;
  } else {
    out.lower = 0;
  }
  return out;
}

GenericityReport classify_elements(const Group &group, const std::vector<GroupWord> &elements,
                                   const Limits &limits) {
  GenericityReport report;
  bool all_zero = true;
  for (const GroupWord &g : elements) {
    ElementDefect d = element_defect(group, g, limits);
    if (!(d.exact && d.upper == 0)) all_zero = false;
    if (d.positive_witness && d.lower > 0) report.verdict = Genericity::Zero;
    report.tested.push_back(std::move(d));
  }
  if (report.verdict != Genericity::Zero) report.verdict = all_zero ? Genericity::One : Genericity::Unknown;
  return report;
}

GenericityReport genericity_classify(const Group &group, const Limits &limits) {
  std::vector<GroupWord> elements{GroupWord{}};
  auto add = [&](const GroupWord &w) {
    if (std::find(elements.begin(), elements.end(), w) == elements.end()) elements.push_back(w);
  };
  for (int t = 0; t < group.num_generators(); ++t) {
    add(group.generator(t));
    add(group.generator(t, true));
  }
  NucleusOutcome nucleus = compute_nucleus(group, limits);
  if (nucleus.nucleus)
    for (const NucleusElement &e : nucleus.nucleus->elements) add(e.word);
  GenericityReport report = classify_elements(group, elements, limits);
  report.covers_group = nucleus.nucleus.has_value();
  return report;
}

GroupFunction fixed_measure_function(const Group &group, const Limits &limits) {
  return [&group, limits](const GroupWord &g) -> std::optional<Rational> {
    return fixed_measure(group, g, limits).exact;
  };
}

bool pre_kms_check(const Group &group, const GroupFunction &phi, const std::vector<GroupWord> &sample) {
  auto value = [&](const GroupWord &g) {
    auto v = phi(g);
    if (!v) throw Error(ErrorKind::InexactInput, "no exact value at " + group.format(g));
    return *v;
  };
  if (value(GroupWord{}) != 1) return false;
  const Rational weight(1, group.alphabet_size());
  for (const GroupWord &g : sample) {
    Rational rhs = 0;
    for (Letter x = 0; x < group.alphabet_size(); ++x) {
      LetterAction a = group.act_letter(group.normalize(g), x);
      if (a.letter == x) rhs += weight * value(a.section);
    }
    if (value(g) != rhs) return false;
  }
  return true;
}

}  // namespace selfsim
