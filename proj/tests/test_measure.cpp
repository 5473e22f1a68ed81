#include "oracle.hpp"

#include "selfsim/contracting.hpp"
#include "selfsim/error.hpp"
#include "selfsim/measure.hpp"

#include <doctest.h>

#include <random>

using namespace selfsim;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

const Group &grigorchuk() {
  static const Group g(*builtin_spec("grigorchuk"));
  return g;
}

// t = (tt, e) fixes every letter but its sections double in length, so no
// closure is ever finite.
Group growing() {
  return Group(parse_spec("alphabet_size = 2\ngen t perm = [0,1] sections = [\"tt\",\"\"]\n"));
}

}  // namespace

TEST_CASE("count_fixed examples") {
  const auto &g = grigorchuk();
  CHECK(count_fixed(g, g.parse("b"), 1) == 2);
  CHECK(count_fixed(g, g.parse("a"), 1) == 0);
  CHECK(count_fixed(g, g.parse("b"), 3) == 2);
  CHECK(count_fixed(g, GroupWord{}, 5) == 32);
  CHECK_THROWS_AS(count_fixed(g, g.parse("b"), 25), Error);
  try {
    count_fixed(g, g.parse("b"), 25);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::DepthExceeded);
  }
}

TEST_CASE("count_fixed_nontrivial examples") {
  const auto &g = grigorchuk();
  CHECK(count_fixed_nontrivial(g, g.parse("b"), 2).count == 2);
  CHECK(count_fixed_nontrivial(g, g.parse("d"), 1).count == 1);
  for (int n = 0; n < 6; ++n) CHECK(count_fixed_nontrivial(g, GroupWord{}, n).count == 0);
  CHECK_FALSE(count_fixed_nontrivial(g, g.parse("b"), 4).tainted);
}

TEST_CASE("counts agree with exhaustive enumeration") {
  std::mt19937 rng(21);
  for (const char *name : {"grigorchuk", "dihedral", "odometer"}) {
    Group g(*builtin_spec(name));
    for (int i = 0; i < 30; ++i) {
      auto h = oracle::random_group_word(rng, g.num_generators(), 6);
      for (int n : {0, 1, 3, 6}) {
        CHECK(count_fixed(g, h, n) == oracle::count_fixed(g.spec(), h, n));
        CHECK(count_fixed_nontrivial(g, h, n).count ==
              oracle::count_fixed_nontrivial(g.spec(), h, n, 6));
        CHECK(count_nontrivial_sections(g, h, n).count ==
              oracle::count_nontrivial_sections(g.spec(), h, n, 6));
      }
    }
  }
}

TEST_CASE("fixed_measure examples") {
  const auto &g = grigorchuk();
  // Hand solution of m_b = m_c/2, m_c = m_d/2, m_d = (1 + m_b)/2, m_a = 0.
  CHECK(fixed_measure(g, g.parse("a")).exact == q(0));
  CHECK(fixed_measure(g, g.parse("b")).exact == q(1, 7));
  CHECK(fixed_measure(g, g.parse("c")).exact == q(2, 7));
  CHECK(fixed_measure(g, g.parse("d")).exact == q(4, 7));
  CHECK(fixed_measure(g, GroupWord{}).exact == q(1));

  Group dih(*builtin_spec("dihedral"));
  CHECK(fixed_measure(dih, dih.parse("a")).exact == q(0));
  CHECK(fixed_measure(dih, dih.parse("b")).exact == q(0));

  auto r = fixed_measure(g, g.parse("b"));
  CHECK(r.method == MeasureMethod::LinearSystem);
  CHECK(r.lower == r.upper);
}

TEST_CASE("fixed_measure cross-checked by counting") {
  const auto &g = grigorchuk();
  auto b = g.parse("b");
  Rational prev = 1;
  for (int n = 1; n <= 20; ++n) {
    Rational cur = oracle::density(count_fixed(g, b, n), 2, n);
    CHECK(cur <= prev);
    prev = cur;
  }
  CHECK(abs(prev - q(1, 7)) <= q(1, 1024));
  CHECK(count_fixed(g, b, 12) == oracle::count_fixed(g.spec(), b, 12));
}

TEST_CASE("fixed_measure bounds on truncated closures") {
  auto t = growing();
  Limits limits{40, 10};
  auto r = fixed_measure(t, t.parse("t"), limits);
  CHECK(r.lower <= r.upper);
  CHECK(r.upper <= 1);
  CHECK(r.lower >= 0);
}

TEST_CASE("generic_defect examples") {
  const auto &g = grigorchuk();
  CHECK(generic_defect(g, g.parse("b"), 2) == q(1, 2));
  CHECK(generic_defect(g, g.parse("b"), 3) == q(1, 8));
  for (int n = 0; n < 5; ++n) CHECK(generic_defect(g, GroupWord{}, n) == 0);
}

TEST_CASE("property: fixed_measure lies within counting bounds") {
  std::mt19937 rng(22);
  const auto &g = grigorchuk();
  const int n = 10;
  for (int i = 0; i < 30; ++i) {
    auto h = oracle::random_group_word(rng, 4, 8);
    auto r = fixed_measure(g, h);
    REQUIRE(r.exact);
    long fixed = oracle::count_fixed(g.spec(), h, n);
    long nontrivial = oracle::count_fixed_nontrivial(g.spec(), h, n, 6);
    CHECK(*r.exact <= oracle::density(fixed, 2, n));
    CHECK(*r.exact >= oracle::density(fixed - nontrivial, 2, n));
  }
}

TEST_CASE("property: monotonicity and convergence") {
  std::mt19937 rng(23);
  for (const char *name : {"grigorchuk", "dihedral", "odometer"}) {
    Group g(*builtin_spec(name));
    for (int i = 0; i < 20; ++i) {
      auto h = oracle::random_group_word(rng, g.num_generators(), 6);
      auto exact = fixed_measure(g, h).exact;
      REQUIRE(exact);
      Rational prev_fixed = 1, prev_defect = 1;
      for (int n = 0; n <= 12; ++n) {
        Rational f = oracle::density(count_fixed(g, h, n), 2, n);
        Rational d = generic_defect(g, h, n);
        CHECK(f <= prev_fixed);
        CHECK(d <= prev_defect);
        CHECK(f >= *exact);
        prev_fixed = f;
        prev_defect = d;
      }
      Rational gap4 = oracle::density(count_fixed(g, h, 4), 2, 4) - *exact;
      Rational gap8 = oracle::density(count_fixed(g, h, 8), 2, 8) - *exact;
      Rational gap12 = oracle::density(count_fixed(g, h, 12), 2, 12) - *exact;
      CHECK(gap8 <= gap4);
      CHECK(gap12 <= gap8);
    }
  }
}

TEST_CASE("property: conjugation and inversion invariance") {
  std::mt19937 rng(24);
  const auto &g = grigorchuk();
  for (int i = 0; i < 60; ++i) {
    auto h = oracle::random_group_word(rng, 4, 6);
    auto k = oracle::random_group_word(rng, 4, 4);
    auto m = fixed_measure(g, h).exact;
    REQUIRE(m);
    CHECK(fixed_measure(g, g.multiply(g.multiply(k, h), g.inverse(k))).exact == m);
    CHECK(fixed_measure(g, g.inverse(h)).exact == m);
  }
}

TEST_CASE("pre_kms_check") {
  const auto &g = grigorchuk();
  auto phi = fixed_measure_function(g);
  std::vector<GroupWord> gens{g.parse("a"), g.parse("b"), g.parse("c"), g.parse("d")};
  CHECK(pre_kms_check(g, phi, gens));
  CHECK(pre_kms_check(g, phi, {GroupWord{}}));

  GroupFunction perturbed = [&](const GroupWord &h) -> std::optional<Rational> {
    if (equal(g, h, g.parse("b")) == Verdict::Yes) return q(1, 6);
    return phi(h);
  };
  CHECK_FALSE(pre_kms_check(g, perturbed, gens));

  GroupFunction unknown = [](const GroupWord &) -> std::optional<Rational> { return std::nullopt; };
  CHECK_THROWS_AS(pre_kms_check(g, unknown, gens), Error);

  for (const char *name : {"dihedral", "odometer"}) {
    Group other(*builtin_spec(name));
    std::vector<GroupWord> sample;
    for (int i = 0; i < other.num_generators(); ++i) sample.push_back(other.generator(i));
    CHECK(pre_kms_check(other, fixed_measure_function(other), sample));
  }
}

TEST_CASE("genericity classification") {
  auto gr = genericity_classify(grigorchuk());
  CHECK(gr.verdict == Genericity::One);
  CHECK(gr.covers_group);
  for (const auto &d : gr.tested) {
    CHECK(d.exact);
    CHECK(d.upper == 0);
  }

  Group dih(*builtin_spec("dihedral"));
  CHECK(genericity_classify(dih).verdict == Genericity::One);

  auto t = growing();
  auto unknown = genericity_classify(t, Limits{40, 8});
  CHECK(unknown.verdict == Genericity::Unknown);
  CHECK_FALSE(unknown.covers_group);
  bool some_inexact = false;
  for (const auto &d : unknown.tested) {
    CHECK(d.lower <= d.upper);
    if (!d.exact) some_inexact = true;
  }
  CHECK(some_inexact);
}

TEST_CASE("element_defect matches the defect limit") {
  std::mt19937 rng(25);
  const auto &g = grigorchuk();
  for (int i = 0; i < 20; ++i) {
    auto h = oracle::random_group_word(rng, 4, 8);
    auto d = element_defect(g, h);
    REQUIRE(d.exact);
    CHECK(d.lower == 0);
    CHECK(generic_defect(g, h, 20) <= q(1, 64));
  }
}

TEST_CASE("property: contraction counting bound at the moving depth") {
  const auto &g = grigorchuk();
  auto outcome = compute_nucleus(g);
  REQUIRE(outcome.nucleus);
  for (const auto &element : outcome.nucleus->elements) {
    auto m = moving_depth(g, element.word);
    REQUIRE(m);
    Integer base = ipow(2, static_cast<unsigned long>(*m)) - 1;
    Integer bound = 1;
    for (int n = 1; n <= 3; ++n) {
      bound *= base;
      CHECK(count_fixed_nontrivial(g, element.word, *m * n).count <= bound);
    }
  }
}
