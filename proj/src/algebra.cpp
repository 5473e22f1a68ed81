#include "selfsim/algebra.hpp"
#include "selfsim/error.hpp"

#include <algorithm>

namespace selfsim {

namespace {

bool has_prefix(const Word &w, const Word &prefix) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

Word concat(const Word &a, const Word &b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word tail(const Word &w, std::size_t from) { return Word(w.begin() + from, w.end()); }

Rational power_of(int base, int exp) {
  Rational r(ipow(base, std::abs(exp)));
  return exp >= 0 ? r : Rational(1 / r);
}

}  // namespace

bool AlgebraElement::operator==(const AlgebraElement &other) const {
  if (terms_.size() != other.terms_.size()) return false;
  auto it = other.terms_.begin();
  for (const auto &[key, term] : terms_) {
    if (key != it->first || term.coefficient != it->second.coefficient) return false;
    ++it;
  }
  return true;
}

StarAlgebra::StarAlgebra(const Group &group, Limits limits) : group_(group), limits_(limits) {
  validate(limits_);
}

StarAlgebra::KeyInfo StarAlgebra::key_of(const GroupWord &normalized) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = keys_.find(normalized); it != keys_.end()) return it->second;
  }
  SectionClosure c = section_closure(group_, normalized, limits_);
  KeyInfo info = c.truncated ? KeyInfo{"w:" + group_.format(normalized), false}
                             : KeyInfo{c.canonical_key(c.root), true};
  std::lock_guard lock(mutex_);
  keys_.emplace(normalized, info);
  return info;
}

MeasureReport StarAlgebra::measure(const GroupWord &g) const {
  const GroupWord w = group_.normalize(g);
  const KeyInfo info = key_of(w);
  {
    std::lock_guard lock(mutex_);
    if (auto it = measures_.find(info.key); it != measures_.end()) return it->second;
  }
  MeasureReport r = fixed_measure(group_, w, limits_);
  std::lock_guard lock(mutex_);
  measures_.emplace(info.key, r);
  return r;
}

void StarAlgebra::accumulate(AlgebraElement &into, Monomial m, const Rational &c) const {
  if (c == 0) return;
  m.g = group_.normalize(m.g);
  const KeyInfo info = key_of(m.g);
  if (!info.canonical) into.canonical_ = false;
  AlgebraElement::Key key{m.u1, info.key, m.u2};
  auto it = into.terms_.find(key);
  if (it == into.terms_.end()) {
    into.terms_.emplace(std::move(key), AlgebraElement::Term{std::move(m), c});
    return;
  }
  it->second.coefficient += c;
  if (shortlex_less(m.g, it->second.monomial.g)) it->second.monomial.g = m.g;
  if (it->second.coefficient == 0) into.terms_.erase(it);
}

AlgebraElement StarAlgebra::one() const { return element({{}, {}, {}}); }

AlgebraElement StarAlgebra::element(const Monomial &m, const Rational &coefficient) const {
  for (Letter x : m.u1)
    if (x < 0 || x >= group_.alphabet_size()) throw std::invalid_argument("letter outside alphabet");
  for (Letter x : m.u2)
    if (x < 0 || x >= group_.alphabet_size()) throw std::invalid_argument("letter outside alphabet");
  AlgebraElement out;
  accumulate(out, m, coefficient);
  return out;
}

AlgebraElement StarAlgebra::group_element(const GroupWord &g) const { return element({{}, g, {}}); }

AlgebraElement StarAlgebra::add(const AlgebraElement &a, const AlgebraElement &b) const {
  AlgebraElement out = a;
  for (const auto &[key, term] : b.terms_) accumulate(out, term.monomial, term.coefficient);
  out.canonical_ = a.canonical_ && b.canonical_;
  return out;
}

AlgebraElement StarAlgebra::subtract(const AlgebraElement &a, const AlgebraElement &b) const {
  return add(a, scale(b, -1));
}

AlgebraElement StarAlgebra::scale(const AlgebraElement &a, const Rational &c) const {
  if (c == 0) return {};
  AlgebraElement out = a;
  for (auto &[key, term] : out.terms_) term.coefficient *= c;
  return out;
}

AlgebraElement StarAlgebra::multiply(const Monomial &a, const Monomial &b) const {
  AlgebraElement out;
  if (has_prefix(b.u1, a.u2)) {
    // S_{u2}^* S_{u2 w} = S_w, then g S_w = S_{v(g,w)} h(g,w).
    WordAction act = group_.act_word(a.g, tail(b.u1, a.u2.size()));
    accumulate(out, {concat(a.u1, act.image), group_.multiply(act.section, b.g), b.u2}, 1);
  } else if (has_prefix(a.u2, b.u1)) {
    // S_{u3 w}^* S_{u3} = S_w^*, then S_w^* h = h(h^-1,w)^-1 S_{v(h^-1,w)}^*.
    WordAction act = group_.act_word(group_.inverse(b.g), tail(a.u2, b.u1.size()));
    accumulate(out, {a.u1, group_.multiply(a.g, group_.inverse(act.section)), concat(b.u2, act.image)},
               1);
  }
  return out;
}

AlgebraElement StarAlgebra::multiply(const AlgebraElement &a, const AlgebraElement &b) const {
  AlgebraElement out;
  out.canonical_ = a.canonical_ && b.canonical_;
  if (a.is_zero() || b.is_zero()) return out;

  // b's terms sorted by their left word, so compatible partners of a term
  // with right word u2 are the prefixes of u2 and a contiguous run of
  // extensions of u2.
  std::vector<const AlgebraElement::Term *> right;
  for (const auto &[key, term] : b.terms_) right.push_back(&term);
  std::sort(right.begin(), right.end(),
            [](const auto *x, const auto *y) { return x->monomial.u1 < y->monomial.u1; });
  auto by_left = [](const AlgebraElement::Term *t, const Word &w) { return t->monomial.u1 < w; };

  auto combine = [&](const AlgebraElement::Term &ta, const AlgebraElement::Term &tb) {
    AlgebraElement p = multiply(ta.monomial, tb.monomial);
    for (auto &[key, term] : p.terms_)
      accumulate(out, term.monomial, term.coefficient * ta.coefficient * tb.coefficient);
    if (!p.canonical_) out.canonical_ = false;
  };

  for (const auto &[key, ta] : a.terms_) {
    const Word &u2 = ta.monomial.u2;
    for (std::size_t len = 0; len < u2.size(); ++len) {
      Word prefix(u2.begin(), u2.begin() + len);
      for (auto it = std::lower_bound(right.begin(), right.end(), prefix, by_left);
           it != right.end() && (*it)->monomial.u1 == prefix; ++it)
        combine(ta, **it);
    }
    for (auto it = std::lower_bound(right.begin(), right.end(), u2, by_left);
         it != right.end() && has_prefix((*it)->monomial.u1, u2); ++it)
      combine(ta, **it);
  }
  return out;
}

AlgebraElement StarAlgebra::adjoint(const AlgebraElement &a) const {
  AlgebraElement out;
  out.canonical_ = a.canonical_;
  for (const auto &[key, term] : a.terms_)
    accumulate(out, {term.monomial.u2, group_.inverse(term.monomial.g), term.monomial.u1},
               term.coefficient);
  return out;
}

AlgebraElement StarAlgebra::cuntz_expand(const AlgebraElement &a, int n) const {
  if (n < 0) throw std::invalid_argument("expansion depth must be non-negative");
  AlgebraElement out;
  out.canonical_ = a.canonical_;
  const int x_count = group_.alphabet_size();
  for (const auto &[key, term] : a.terms_) {
    Word w(n, 0);
    while (true) {
      WordAction act = group_.act_word(term.monomial.g, w);
      accumulate(out, {concat(term.monomial.u1, act.image), act.section, concat(term.monomial.u2, w)},
                 term.coefficient);
      int i = n - 1;
      while (i >= 0 && w[i] == x_count - 1) w[i--] = 0;
      if (i < 0) break;
      ++w[i];
    }
  }
  return out;
}

PsiBounds StarAlgebra::psi_bounds(const AlgebraElement &a) const {
  PsiBounds out{0, 0, true};
  for (const auto &[key, term] : a.terms_) {
    const Monomial &m = term.monomial;
    if (m.u1 != m.u2) continue;
    const Rational weight = term.coefficient * power_of(group_.alphabet_size(), -static_cast<int>(m.u1.size()));
    const MeasureReport r = measure(m.g);
    if (!r.exact) out.exact = false;
    out.lower += weight * (weight > 0 ? r.lower : r.upper);
    out.upper += weight * (weight > 0 ? r.upper : r.lower);
  }
  return out;
}

Rational StarAlgebra::psi(const AlgebraElement &a) const {
  PsiBounds b = psi_bounds(a);
  if (!b.exact)
    throw Error(ErrorKind::InexactMeasure,
                "psi only known within [" + format_rational(b.lower) + ", " + format_rational(b.upper) + "]");
  return b.lower;
}

bool StarAlgebra::kms_check(const Monomial &a, const Monomial &b) const {
  const Rational ab = psi(multiply(a, b));
  const Rational ba = psi(multiply(b, a));
  return ab == power_of(group_.alphabet_size(), -a.degree()) * ba;
}

bool StarAlgebra::trace_check(const Monomial &a, const Monomial &b) const {
  if (a.degree() != 0 || b.degree() != 0)
    throw Error(ErrorKind::DegreeNonZero, "trace check needs gauge-invariant monomials");
  return psi(multiply(a, b)) == psi(multiply(b, a));
}

GramResult StarAlgebra::gram_psd(const std::vector<GroupWord> &elements) const {
  GramResult out;
  const std::size_t n = elements.size();
  out.matrix.assign(n, RationalVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const GroupWord g = group_.multiply(group_.inverse(elements[i]), elements[j]);
      const MeasureReport r = measure(g);
      if (!r.exact)
        throw Error(ErrorKind::InexactMeasure, "mu(fix " + group_.format(g) + ") is only bounded");
      out.matrix[i][j] = *r.exact;
    }
  out.psd = decide_psd(out.matrix);
  return out;
}

AnDistance StarAlgebra::an_distance(const GroupWord &g, int n) const {
  if (n < 0) throw std::invalid_argument("depth must be non-negative");
  if (n > limits_.max_depth)
    throw Error(ErrorKind::DepthExceeded,
                std::to_string(n) + " exceeds max_depth " + std::to_string(limits_.max_depth));
  const GroupWord gw = group_.normalize(g);
  const SectionClosure c = section_closure(group_, gw, limits_);
  const int x_count = group_.alphabet_size();

  AlgebraElement a_n;
  Word u(n, 0);
  while (true) {
    bool trivial;
    Word image;
    if (!c.truncated) {
      int s = c.root;
      for (Letter x : u) {
        image.push_back(c.perm_of[s][x]);
        s = c.trans[s][x];
      }
      trivial = c.identity[s];
    } else {
      WordAction act = group_.act_word(gw, u);
      image = std::move(act.image);
      trivial = is_identity(group_, act.section, limits_) == Verdict::Yes;
    }
    if (trivial) accumulate(a_n, {image, {}, u}, 1);
    int i = n - 1;
    while (i >= 0 && u[i] == x_count - 1) u[i--] = 0;
    if (i < 0) break;
    ++u[i];
  }

  AnDistance out;
  out.terms = a_n.size();
  const AlgebraElement diff = subtract(group_element(gw), a_n);
  out.psi_value = psi(multiply(adjoint(diff), diff));
  out.closed_form = Rational(count_nontrivial_sections(group_, gw, n, limits_).count, ipow(x_count, n));
  out.closed_form.canonicalize();
  return out;
}

std::string StarAlgebra::format(const Monomial &m) const {
  std::string out;
  auto add = [&](const std::string &piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  if (!m.u1.empty()) add("S[" + format_word(m.u1, group_.alphabet_size()) + "]");
  if (!m.g.empty()) add(group_.format(m.g));
  if (!m.u2.empty()) add("S[" + format_word(m.u2, group_.alphabet_size()) + "]*");
  return out.empty() ? "1" : out;
}

std::string StarAlgebra::format(const AlgebraElement &a) const {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto &[key, term] : a.terms_) {
    Rational c = term.coefficient;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    if (c != 1) out += format_rational(c) + " ";
    out += format(term.monomial);
    first = false;
  }
  return out;
}

}  // namespace selfsim
