#include "closure_systems.hpp"

#include <algorithm>

namespace selfsim::detail {

std::vector<int> strongly_connected_components(const std::vector<std::vector<int>> &adj,
                                               const std::vector<bool> &vertices) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> comp(n, -1), low(n, 0), num(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0, components = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (!vertices[root] || num[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame &f = call.back();
      if (f.edge < adj[f.v].size()) {
        int w = adj[f.v][f.edge++];
        if (!vertices[w]) continue;
        if (num[w] < 0) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == num[v]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
          if (w == v) break;
        }
        ++components;
      }
    }
  }
  return comp;
}

std::optional<std::vector<Rational>> solve_averaging(const SectionClosure &closure,
                                                     const std::vector<int> &unknowns,
                                                     const LetterFilter &keep,
                                                     const Boundary &boundary) {
  const std::size_t k = unknowns.size();
  std::vector<int> pos(closure.size(), -1);
  for (std::size_t i = 0; i < k; ++i) pos[unknowns[i]] = static_cast<int>(i);
  const Rational weight(1, closure.alphabet_size);
  RationalMatrix a(k, RationalVector(k, 0));
  RationalVector b(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const int s = unknowns[i];
    a[i][i] += 1;
    for (Letter x = 0; x < closure.alphabet_size; ++x) {
      if (!keep(s, x)) continue;
      const int t = closure.trans[s][x];
      if (pos[t] >= 0)
        a[i][pos[t]] -= weight;
      else
        b[i] += weight * boundary(t);
    }
  }
  auto sol = solve(std::move(a), std::move(b));
  if (!sol) return std::nullopt;
  std::vector<Rational> out(closure.size(), 0);
  for (std::size_t i = 0; i < k; ++i) out[unknowns[i]] = (*sol)[i];
  return out;
}

}  // namespace selfsim::detail
