#pragma once

// Graph and linear-system helpers over section closures. Internal.

#include "selfsim/automaton.hpp"
#include "selfsim/linear.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace selfsim::detail {

/// Component id per vertex (-1 for vertices outside `vertices`), numbered in
/// reverse topological order (sinks first).
std::vector<int> strongly_connected_components(const std::vector<std::vector<int>> &adj,
                                               const std::vector<bool> &vertices);

using LetterFilter = std::function<bool(int state, Letter x)>;
using Boundary = std::function<Rational(int state)>;

/// Solves m_s = |X|^-1 sum_{x : keep(s,x)} val(trans[s][x]) for s in
/// `unknowns`, where val(t) = m_t for unknown t and boundary(t) otherwise.
/// Returns values indexed like the closure's states (zero outside the
/// unknowns), or nullopt when the system is singular.
std::optional<std::vector<Rational>> solve_averaging(const SectionClosure &closure,
                                                     const std::vector<int> &unknowns,
                                                     const LetterFilter &keep,
                                                     const Boundary &boundary);

}  // namespace selfsim::detail
