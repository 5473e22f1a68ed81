#pragma once

// Nucleus computation for contracting actions, the "every nucleus element has
// a trivial section" hypothesis, and measures of the escape sets
// Y_g^n = { w : h(g, w[0..n)) = e }.

#include "selfsim/automaton.hpp"
#include "selfsim/measure.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selfsim {

struct NucleusElement {
  /// Canonical key of the minimized closure; equal keys mean equal elements.
  std::string key;
  /// Shortlex-least representative seen.
  GroupWord word;
};

struct Nucleus {
  /// Sorted by representative word in shortlex order.
  std::vector<NucleusElement> elements;
  /// sections[i][x] indexes h(elements[i], x) in elements.
  std::vector<std::vector<int>> sections;
  /// Every section at depth >= witness_depth of a generator or of a product
  /// of two nucleus elements lies in the nucleus.
  int witness_depth = 0;

  std::optional<int> find(const std::string &key) const;
  std::vector<GroupWord> words() const;
};

struct NucleusOutcome {
  std::optional<Nucleus> nucleus;
  /// Why the search stopped when nucleus is empty.
  std::string diagnostic;

  bool inconclusive() const { return !nucleus.has_value(); }
};

/// Iterates N <- N u {recurrent sections of s t : s, t in N} from the
/// generators, their inverses and e, then keeps the elements reachable from
/// cycles of the section graph. Inconclusive when a closure truncates, the
/// set outgrows max_states, or landing takes more than max_depth levels.
NucleusOutcome compute_nucleus(const Group &group, const Limits &limits = {});

/// Canonical key of g, or nullopt when its closure truncates.
std::optional<std::string> element_key(const Group &group, const GroupWord &g,
                                       const Limits &limits = {});

enum class AfdStatus { Holds, Fails, Inconclusive };

std::string_view afd_status_name(AfdStatus s);

struct AfdWitness {
  GroupWord element;
  /// Shortest, then lexicographically least, u with h(element, u) = e.
  Word word;
};

struct AfdResult {
  AfdStatus status = AfdStatus::Inconclusive;
  std::vector<AfdWitness> witnesses;
  std::optional<GroupWord> counterexample;

  /// Longest witness; every element then has a trivial section at this depth.
  int uniform_depth() const;
};

/// Searches each element's closure breadth-first for a trivial section.
AfdResult afd_hypothesis_check(const Group &group, const std::vector<GroupWord> &elements,
                               const Limits &limits = {});
AfdResult afd_hypothesis_check(const Group &group, const Nucleus &nucleus,
                               const Limits &limits = {});

/// mu(union_n Y_g^n) = 1 - lim |X|^-n |{u in X^n : h(g,u) != e}|.
MeasureReport y_measure(const Group &group, const GroupWord &g, const Limits &limits = {});

/// Least m such that every nontrivial section of g moves some word of length
/// m; nullopt if the closure truncates or m would exceed max_depth.
std::optional<int> moving_depth(const Group &group, const GroupWord &g, const Limits &limits = {});

}  // namespace selfsim
