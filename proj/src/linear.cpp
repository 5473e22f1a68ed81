#include "selfsim/linear.hpp"

#include <stdexcept>

namespace selfsim {

std::optional<RationalVector> solve(RationalMatrix a, RationalVector b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

Rational quadratic_form(const RationalMatrix &m, const RationalVector &v) {
  Rational sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) sum += v[i] * m[i][j] * v[j];
  }
  return sum;
}

PsdResult decide_psd(const RationalMatrix &m) {
  const std::size_t n = m.size();
  for (const auto &row : m)
    if (row.size() != n) throw std::invalid_argument("matrix is not square");

  // Schur complement over the indices still in play.
  RationalMatrix s = m;
  std::vector<bool> active(n, true);
  struct Step {
    int pivot;
    Rational d;
    RationalVector l;  // s[pivot][j] / d over all original indices
  };
  std::vector<Step> steps;

  // Lift a vector on the active indices to one with the same quadratic form
  // value on the original matrix, undoing eliminations in reverse.
  auto lift = [&](RationalVector x) {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      Rational acc = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (static_cast<int>(j) != it->pivot) acc += it->l[j] * x[j];
      x[it->pivot] = -acc;
    }
    return x;
  };

  while (true) {
    int pivot = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (s[i][i] < 0) {
        RationalVector x(n, 0);
        x[i] = 1;
        return {false, std::nullopt, lift(std::move(x))};
      }
      if (pivot < 0 && s[i][i] > 0) pivot = static_cast<int>(i);
    }
    if (pivot < 0) {
      // Every remaining diagonal entry is zero; PSD forces the block to vanish.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (active[i] && active[j] && s[i][j] != 0) {
            RationalVector x(n, 0);
            x[i] = 1;
            x[j] = s[i][j] > 0 ? -1 : 1;
            return {false, std::nullopt, lift(std::move(x))};
          }
      break;
    }
    Step step{pivot, s[pivot][pivot], RationalVector(n, 0)};
    for (std::size_t j = 0; j < n; ++j)
      if (active[j] && static_cast<int>(j) != pivot) step.l[j] = s[pivot][j] / step.d;
    active[pivot] = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || step.l[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j]) s[i][j] -= step.l[i] * step.d * step.l[j];
    }
    steps.push_back(std::move(step));
  }

  LdltCertificate cert;
  for (const Step &st : steps) {
    cert.pivot_order.push_back(st.pivot);
    cert.diagonal.push_back(st.d);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) {
      cert.pivot_order.push_back(static_cast<int>(i));
      ++cert.zero_block;
    }
  // L in pivot order: column k holds l of step k.
  cert.lower.assign(n, RationalVector(n, 0));
  for (std::size_t k = 0; k < n; ++k) cert.lower[k][k] = 1;
  for (std::size_t k = 0; k < steps.size(); ++k)
    for (std::size_t r = k + 1; r < n; ++r) cert.lower[r][k] = steps[k].l[cert.pivot_order[r]];
  return {true, std::move(cert), std::nullopt};
}

}  // namespace selfsim
