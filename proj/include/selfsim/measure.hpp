#pragma once

// Bernoulli-measure quantities of fixed-point sets.
//
// mu is the uniform product measure on X^omega, so a cylinder uX^omega has
// measure |X|^-|u|. Everything here is exact: either a rational obtained from
// the recursion mu(fix g) = |X|^-1 sum_{x fixed} mu(fix h(g,x)) on a finite
// closure, or rational bounds from counting fixed prefixes.

#include "selfsim/automaton.hpp"
#include "selfsim/rational.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace selfsim {

enum class MeasureMethod { LinearSystem, CountingBounds };

std::string_view method_name(MeasureMethod m);

struct MeasureReport {
  std::optional<Rational> exact;
  Rational lower;
  Rational upper;
  int depth_used = 0;
  MeasureMethod method = MeasureMethod::LinearSystem;

  static MeasureReport exactly(const Rational &value) {
    return {value, value, value, 0, MeasureMethod::LinearSystem};
  }
};

/// A count that may have treated undecided sections as nontrivial.
struct TaintedCount {
  Integer count;
  bool tainted = false;
};

/// |{u in X^n : v(g,u) = u}|. Throws Error(DepthExceeded) past max_depth.
Integer count_fixed(const Group &group, const GroupWord &g, int n, const Limits &limits = {});

/// |{u in X^n : v(g,u) = u, h(g,u) != e}|. Sections of unknown status count
/// as nontrivial and set the taint flag.
TaintedCount count_fixed_nontrivial(const Group &group, const GroupWord &g, int n,
                                    const Limits &limits = {});

/// |{u in X^n : h(g,u) != e}|, with the same taint rule.
TaintedCount count_nontrivial_sections(const Group &group, const GroupWord &g, int n,
                                       const Limits &limits = {});

/// mu(fix g). Exact when the fixed-letter part of the closure is finite,
/// counting bounds at depth max_depth otherwise.
MeasureReport fixed_measure(const Group &group, const GroupWord &g, const Limits &limits = {});

/// |X|^-n count_fixed_nontrivial(g, n); nonincreasing in n with limit
/// mu(X^omega \ gen(g)).
Rational generic_defect(const Group &group, const GroupWord &g, int n, const Limits &limits = {});

enum class Genericity { One, Zero, Unknown };

std::string_view genericity_name(Genericity g);

struct ElementDefect {
  GroupWord element;
  Rational lower;
  Rational upper;
  bool exact = false;
  /// Set when a recurrent class of letter-fixing sections proven nontrivial
  /// was found, i.e. a positive defect.
  bool positive_witness = false;
};

struct GenericityReport {
  Genericity verdict = Genericity::Unknown;
  std::vector<ElementDefect> tested;
  /// True when the tested set contains the nucleus, so the verdict covers
  /// every element of the group.
  bool covers_group = false;
};

/// Defect limit of one element, exact on finite closures.
ElementDefect element_defect(const Group &group, const GroupWord &g, const Limits &limits = {});

/// Classifies over the given elements.
GenericityReport classify_elements(const Group &group, const std::vector<GroupWord> &elements,
                                   const Limits &limits = {});

/// Tests generators, their inverses and, when it can be computed, the nucleus.
GenericityReport genericity_classify(const Group &group, const Limits &limits = {});

/// A candidate function on G. nullopt means "value not known exactly".
using GroupFunction = std::function<std::optional<Rational>(const GroupWord &)>;

/// g -> mu(fix g) when exact.
GroupFunction fixed_measure_function(const Group &group, const Limits &limits = {});

/// True iff phi(e) = 1 and phi(g) = |X|^-1 sum_{x : v(g,x)=x} phi(h(g,x)) holds
/// exactly for every g in sample. Throws Error(InexactInput) when phi has no
/// exact value somewhere it is needed.
bool pre_kms_check(const Group &group, const GroupFunction &phi,
                   const std::vector<GroupWord> &sample);

}  // namespace selfsim
