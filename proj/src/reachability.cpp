#include "dcomp/reachability.hpp"

#include <algorithm>

namespace dcomp {

std::vector<std::vector<std::size_t>> cell_steps(const PrecubicalSet& k) {
  std::vector<std::vector<std::size_t>> steps(k.num_cells());
  for (std::size_t f = 0; f < k.num_cells(); ++f) {
    CellId c = k.cell(f);
    for (CellId a : lower_faces(k, c))
      if (a != c) steps[k.flat(a)].push_back(f);
    for (CellId b : upper_faces(k, c))
      if (b != c) steps[f].push_back(k.flat(b));
  }
  for (auto& s : steps) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return steps;
}

Reachability::Reachability(const PrecubicalSet& k) : steps_(cell_steps(k)) {
  const std::size_t n = steps_.size();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& s : steps_)
    for (auto t : s) ++indeg[t];
  // Kahn with a min-ordered frontier keeps the extension deterministic.
  std::vector<std::size_t> frontier;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) frontier.push_back(v);
  std::make_heap(frontier.begin(), frontier.end(), std::greater<>{});
  while (!frontier.empty()) {
    std::pop_heap(frontier.begin(), frontier.end(), std::greater<>{});
    auto v = frontier.back();
    frontier.pop_back();
    topo_.push_back(v);
    for (auto t : steps_[v])
      if (--indeg[t] == 0) {
        frontier.push_back(t);
        std::push_heap(frontier.begin(), frontier.end(), std::greater<>{});
      }
  }
  if (topo_.size() != n) throw PrecubicalError("cell reachability: complex has loops");

  up_.assign(n, CellSet(n));
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    up_[*it].set(*it);
    for (auto t : steps_[*it]) up_[*it] |= up_[t];
  }
  down_.assign(n, CellSet(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = up_[a].first(); b < n; b = up_[a].next(b + 1)) down_[b].set(a);
}

CellSet Reachability::above_within(std::size_t a, const CellSet& within) const {
  CellSet seen(size());
  if (!within.test(a)) return seen;
  std::vector<std::size_t> stack{a};
  seen.set(a);
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto t : steps_[v])
      if (within.test(t) && !seen.test(t)) {
        seen.set(t);
        stack.push_back(t);
      }
  }
  return seen;
}

}  // namespace dcomp
