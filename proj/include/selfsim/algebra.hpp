#pragma once

// The dense *-algebra spanned by S_{u1} g S_{u2}^*, where the S_x are Cuntz
// isometries (S_x^* S_y = delta_{x,y}, sum_x S_x S_x^* = 1) and group
// elements commute past them by g S_x = S_{v(g,x)} h(g,x).
//
// Products of monomials are again monomials (or zero), so elements are kept
// as finite sums of monomials with exact rational coefficients. The group
// part of each monomial is keyed by its minimized section closure, which
// identifies words that act equally.

#include "selfsim/automaton.hpp"
#include "selfsim/linear.hpp"
#include "selfsim/measure.hpp"
#include "selfsim/rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace selfsim {

struct Monomial {
  Word u1;
  GroupWord g;
  Word u2;

  /// Gauge degree |u1| - |u2|.
  int degree() const { return static_cast<int>(u1.size()) - static_cast<int>(u2.size()); }
};

class AlgebraElement {
 public:
  using Key = std::tuple<Word, std::string, Word>;

  struct Term {
    Monomial monomial;
    Rational coefficient;
  };

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Key, Term> &terms() const { return terms_; }
  /// False when some group part could not be keyed canonically, in which
  /// case equal terms may fail to merge.
  bool canonical() const { return canonical_; }

  /// Same keys with the same coefficients.
  bool operator==(const AlgebraElement &other) const;

 private:
  friend class StarAlgebra;
  std::map<Key, Term> terms_;
  bool canonical_ = true;
};

struct PsiBounds {
  Rational lower;
  Rational upper;
  bool exact = true;
};

struct GramResult {
  RationalMatrix matrix;
  PsdResult psd;
};

struct AnDistance {
  /// psi((g - a_n)^* (g - a_n)) computed in the algebra.
  Rational psi_value;
  /// |X|^-n |{u in X^n : h(g,u) != e}|.
  Rational closed_form;
  std::size_t terms = 0;

  bool consistent() const { return psi_value == closed_form; }
};

/// Arithmetic context for one group. Caches element keys and fixed-point
/// measures; all members are safe to call concurrently.
class StarAlgebra {
 public:
  explicit StarAlgebra(const Group &group, Limits limits = {});

  const Group &group() const { return group_; }
  const Limits &limits() const { return limits_; }

  AlgebraElement zero() const { return {}; }
  AlgebraElement one() const;
  AlgebraElement element(const Monomial &m, const Rational &coefficient = 1) const;
  AlgebraElement group_element(const GroupWord &g) const;

  AlgebraElement add(const AlgebraElement &a, const AlgebraElement &b) const;
  AlgebraElement subtract(const AlgebraElement &a, const AlgebraElement &b) const;
  AlgebraElement scale(const AlgebraElement &a, const Rational &c) const;

  AlgebraElement multiply(const AlgebraElement &a, const AlgebraElement &b) const;
  AlgebraElement multiply(const Monomial &a, const Monomial &b) const;
  AlgebraElement adjoint(const AlgebraElement &a) const;

  /// Replaces every middle g by sum_{|w| = n} S_{v(g,w)} h(g,w) S_w^*.
  AlgebraElement cuntz_expand(const AlgebraElement &a, int n) const;

  /// psi(S_{u1} g S_{u2}^*) = delta_{u1,u2} |X|^-|u1| mu(fix g), extended
  /// linearly. Throws Error(InexactMeasure) if some mu(fix g) is only bounded.
  Rational psi(const AlgebraElement &a) const;
  PsiBounds psi_bounds(const AlgebraElement &a) const;

  /// psi(ab) = |X|^-deg(a) psi(ba).
  bool kms_check(const Monomial &a, const Monomial &b) const;
  /// psi(ab) = psi(ba) for gauge-invariant monomials; throws
  /// Error(DegreeNonZero) otherwise.
  bool trace_check(const Monomial &a, const Monomial &b) const;

  /// M_ij = mu(fix(g_i^-1 g_j)) and its exact PSD decision.
  GramResult gram_psd(const std::vector<GroupWord> &elements) const;

  /// Distance of g from a_n = sum over u in X^n with h(g,u) = e of
  /// S_{v(g,u)} S_u^*. Throws Error(DepthExceeded) past max_depth.
  AnDistance an_distance(const GroupWord &g, int n) const;

  /// mu(fix g), cached per element.
  MeasureReport measure(const GroupWord &g) const;

  /// Renders in the expression grammar; "0" for the zero element.
  std::string format(const AlgebraElement &a) const;
  std::string format(const Monomial &m) const;

  /// Parses the expression grammar, e.g. "1/2 S[0] b S[1]* + S[01] S[01]*".
  /// Throws Error(MalformedExpression).
  AlgebraElement parse(std::string_view text) const;

 private:
  struct KeyInfo {
    std::string key;
    bool canonical;
  };

  KeyInfo key_of(const GroupWord &normalized) const;
  void accumulate(AlgebraElement &into, Monomial m, const Rational &c) const;

  const Group &group_;
  Limits limits_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<GroupWord, KeyInfo, GroupWordHash> keys_;
  mutable std::map<std::string, MeasureReport> measures_;
};

}  // namespace selfsim
