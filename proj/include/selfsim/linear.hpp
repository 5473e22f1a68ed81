#pragma once

// Dense exact linear algebra over the rationals.

#include "selfsim/rational.hpp"

#include <optional>
#include <vector>

namespace selfsim {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

/// Solves a x = b by Gauss-Jordan elimination. nullopt when a is singular.
std::optional<RationalVector> solve(RationalMatrix a, RationalVector b);

/// Symmetric pivoted LDL^T of a PSD matrix: P M P^T = L D L^T.
struct LdltCertificate {
  std::vector<int> pivot_order;  // original index eliminated at each step
  RationalVector diagonal;       // D, aligned with pivot_order
  RationalMatrix lower;          // L in pivot order, unit diagonal
  /// Trailing block that vanished identically; its indices follow
  /// pivot_order's entries past diagonal.size().
  int zero_block = 0;
};

struct PsdResult {
  bool psd = false;
  std::optional<LdltCertificate> certificate;
  /// Set when !psd: v with v^T M v < 0.
  std::optional<RationalVector> witness;
};

/// Decides positive semidefiniteness of a symmetric rational matrix.
PsdResult decide_psd(const RationalMatrix &m);

/// v^T m v.
Rational quadratic_form(const RationalMatrix &m, const RationalVector &v);

}  // namespace selfsim
