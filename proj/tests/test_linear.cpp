#include "selfsim/linear.hpp"

#include <doctest.h>

#include <random>

using namespace selfsim;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

RationalMatrix random_matrix(std::mt19937 &rng, int rows, int cols) {
  std::uniform_int_distribution<int> entry(-4, 4);
  RationalMatrix m(rows, RationalVector(cols));
  for (auto &row : m)
    for (auto &x : row) x = entry(rng);
  return m;
}

RationalMatrix gram_of(const RationalMatrix &b) {
  const std::size_t n = b.size(), k = b[0].size();
  RationalMatrix m(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < k; ++t) m[i][j] += b[i][t] * b[j][t];
  return m;
}

}  // namespace

TEST_CASE("solve") {
  // The Grigorchuk fixed-point system for b, c, d.
  RationalMatrix a{{1, q(-1, 2), 0}, {0, 1, q(-1, 2)}, {q(-1, 2), 0, 1}};
  RationalVector rhs{0, 0, q(1, 2)};
  auto x = solve(a, rhs);
  REQUIRE(x);
  CHECK((*x)[0] == q(1, 7));
  CHECK((*x)[1] == q(2, 7));
  CHECK((*x)[2] == q(4, 7));

  CHECK_FALSE(solve({{1, 2}, {2, 4}}, {1, 2}));
  auto empty = solve({}, {});
  REQUIRE(empty);
  CHECK(empty->empty());
}

TEST_CASE("solve on random systems") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_matrix(rng, 5, 5);
    RationalVector x0(5);
    for (int i = 0; i < 5; ++i) x0[i] = q(trial - 2 * i, i + 1);
    RationalVector b(5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) b[i] += a[i][j] * x0[j];
    auto x = solve(a, b);
    if (x) {
      for (int i = 0; i < 5; ++i) {
        Rational sum = 0;
        for (int j = 0; j < 5; ++j) sum += a[i][j] * (*x)[j];
        CHECK(sum == b[i]);
      }
    }
  }
}

TEST_CASE("decide_psd examples") {
  auto r = decide_psd({{1, q(4, 7)}, {q(4, 7), 1}});
  REQUIRE(r.psd);
  REQUIRE(r.certificate);
  CHECK(r.certificate->diagonal == RationalVector{1, q(33, 49)});

  CHECK(decide_psd({{1}}).psd);
  CHECK(decide_psd({{0, 0}, {0, 0}}).psd);
  CHECK(decide_psd({}).psd);

  auto bad = decide_psd({{1, 2}, {2, 1}});
  REQUIRE_FALSE(bad.psd);
  REQUIRE(bad.witness);
  CHECK(quadratic_form({{1, 2}, {2, 1}}, *bad.witness) < 0);

  // Zero diagonal with a nonzero off-diagonal entry.
  RationalMatrix z{{0, 1}, {1, 0}};
  auto zr = decide_psd(z);
  REQUIRE_FALSE(zr.psd);
  CHECK(quadratic_form(z, *zr.witness) < 0);

  CHECK_FALSE(decide_psd({{-1}}).psd);
}

TEST_CASE("property: gram matrices are PSD and certificates reconstruct") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 6;
    int k = 1 + trial % 4;
    auto m = gram_of(random_matrix(rng, n, k));
    auto r = decide_psd(m);
    REQUIRE(r.psd);
    REQUIRE(r.certificate);
    const auto &c = *r.certificate;
    // Rebuild P M P^T = L D L^T on the eliminated block.
    const std::size_t p = c.diagonal.size();
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        Rational sum = 0;
        for (std::size_t t = 0; t < p; ++t) sum += c.lower[i][t] * c.diagonal[t] * c.lower[j][t];
        CHECK(sum == m[c.pivot_order[i]][c.pivot_order[j]]);
      }
    for (const auto &d : c.diagonal) CHECK(d > 0);
  }
}

TEST_CASE("property: indefinite matrices give valid witnesses") {
  std::mt19937 rng(5);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 5;
    auto b = random_matrix(rng, n, n);
    RationalMatrix m(n, RationalVector(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = b[i][j] + b[j][i];
    auto r = decide_psd(m);
    if (!r.psd) {
      ++found;
      REQUIRE(r.witness);
      CHECK(quadratic_form(m, *r.witness) < 0);
    }
  }
  CHECK(found > 0);
}
