#pragma once

// Hand-rolled generators and small independent helpers shared by the tests.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dcomp/components.hpp"
#include "dcomp/fixtures.hpp"
#include "dcomp/precubical.hpp"

namespace testing {

using namespace dcomp;
using Rng = std::mt19937_64;

// Sub-complex on the face-closed flat ids in `keep`, labels carried over.
inline PrecubicalSet restrict_to(const PrecubicalSet& k, const std::vector<bool>& keep) {
  std::vector<std::uint32_t> counts;
  std::vector<std::uint32_t> new_index(k.num_cells(), kNoFace);
  for (std::size_t f = 0; f < k.num_cells(); ++f) {
    if (!keep[f]) continue;
    CellId c = k.cell(f);
    if (counts.size() <= c.dim) counts.resize(c.dim + 1, 0);
    new_index[f] = counts[c.dim]++;
  }
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  PrecubicalSet out(counts);
  for (std::size_t f = 0; f < k.num_cells(); ++f) {
    if (!keep[f]) continue;
    CellId c = k.cell(f);
    CellId nc{c.dim, new_index[f]};
    if (k.has_labels()) out.set_label(nc, k.label(c));
    for (unsigned i = 1; i <= c.dim; ++i)
      for (int e = 0; e < 2; ++e) out.set_face(nc, i, e, new_index[k.flat(k.face(c, i, e))]);
  }
  return out;
}

// Random face-closed sub-complex of the standard n-cube (never empty).
inline PrecubicalSet random_cube_subcomplex(Rng& rng, unsigned n, double p) {
  PrecubicalSet cube = standard_cube(n);
  std::vector<bool> keep(cube.num_cells(), false);
  std::bernoulli_distribution coin(p);
  std::vector<CellId> todo;
  for (std::size_t f = 0; f < cube.num_cells(); ++f)
    if (coin(rng)) todo.push_back(cube.cell(f));
  todo.push_back({0, 0});
  while (!todo.empty()) {
    CellId c = todo.back();
    todo.pop_back();
    if (keep[cube.flat(c)]) continue;
    keep[cube.flat(c)] = true;
    for (unsigned i = 1; i <= c.dim; ++i)
      for (int e = 0; e < 2; ++e) todo.push_back(cube.face(c, i, e));
  }
  return restrict_to(cube, keep);
}

// Random set of unit squares in a w x h grid, optionally with one vertex of
// the top row glued onto one of the bottom row (rejected if it makes a loop).
inline PrecubicalSet random_grid(Rng& rng, int w, int h, double p, bool glue) {
  while (true) {
    SquareComplexBuilder b;
    if (glue) {
      std::uniform_int_distribution<int> x(0, w);
      b.identify({x(rng), h}, {x(rng), 0});
    }
    std::bernoulli_distribution coin(p);
    bool any = false;
    for (int x = 0; x < w; ++x)
      for (int y = 0; y < h; ++y)
        if (coin(rng)) {
          b.add_square(x, y);
          any = true;
        }
    if (!any) b.add_square(0, 0);
    auto k = b.build();
    if (!has_loops(k)) return k;
  }
}

// A mix of the generators above, small enough for exhaustive checks.
inline PrecubicalSet random_complex(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  switch (pick(rng)) {
    case 0:
      return random_cube_subcomplex(rng, 2, 0.5);
    case 1:
      return random_cube_subcomplex(rng, 3, 0.3);
    case 2:
      return random_grid(rng, 3, 2, 0.7, false);
    default:
      return random_grid(rng, 3, 2, 0.7, true);
  }
}

// Random partition of the cells: a random coarsening of `base`.
inline ComponentSystem random_coarsening(Rng& rng, const ComponentSystem& base, double merge_p) {
  std::vector<std::size_t> parent(base.components.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::bernoulli_distribution coin(merge_p);
  std::uniform_int_distribution<std::size_t> any(0, base.components.size() - 1);
  for (std::size_t i = 0; i < base.components.size(); ++i)
    if (coin(rng)) {
      auto a = find(i), b = find(any(rng));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, std::vector<CellId>> groups;
  for (std::size_t i = 0; i < base.components.size(); ++i) {
    auto& g = groups[find(i)];
    g.insert(g.end(), base.components[i].begin(), base.components[i].end());
  }
  ComponentSystem s{base.flavor, {}};
  for (auto& [r, cells] : groups) s.components.push_back(std::move(cells));
  s.normalize();
  return s;
}

// Partition equality independent of component order.
inline std::set<std::set<CellId>> as_sets(const ComponentSystem& s) {
  std::set<std::set<CellId>> out;
  for (const auto& c : s.components) out.emplace(c.begin(), c.end());
  return out;
}

// The fixtures every acceptance-style test iterates over.
struct Case {
  std::string name;
  PrecubicalSet complex;
};

inline std::vector<Case> small_fixtures() {
  return {{"boundary_cube2", boundary_cube(2)}, {"boundary_cube3", boundary_cube(3)},
          {"standard_cube2", standard_cube(2)}, {"ex_x2", ex_x2().complex},
          {"ex_x3", ex_x3().complex},     {"point", point_complex()}};
}

}  // namespace testing
