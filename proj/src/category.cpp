#include "dcomp/category.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>

#include "dcomp/coarsest.hpp"
#include "dcomp/json_io.hpp"
#include "dcomp/parallel.hpp"

namespace dcomp {

namespace {

// Components in a linear extension of the strict order (least index first).
std::vector<std::size_t> linear_order(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (auto [i, j] : less) {
    succ[i].push_back(j);
    ++indeg[j];
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.insert(i);
  std::vector<std::size_t> out;
  while (!ready.empty()) {
    auto i = *ready.begin();
    ready.erase(ready.begin());
    out.push_back(i);
    for (auto j : succ[i])
      if (--indeg[j] == 0) ready.insert(j);
  }
  if (out.size() != n) throw CategoryError("component order has a cycle");
  return out;
}

}  // namespace

Representatives choose_representatives(const Analyzer& an, const ComponentSystem& s, RepStyle style,
                                       std::mt19937_64* rng) {
  if (style == RepStyle::Auto) style = s.flavor == Flavor::Past ? RepStyle::Past : RepStyle::Future;
  if ((s.flavor == Flavor::Future && style == RepStyle::Past) ||
      (s.flavor == Flavor::Past && style == RepStyle::Future))
    throw CategoryError("representative style does not match the system flavor");
  const auto blocks = to_blocks(an, s);
  const std::size_t n = blocks.size();
  const auto less = an.component_order(blocks);
  std::vector<std::vector<std::size_t>> lower(n), upper(n);
  for (auto [i, j] : less) {
    lower[j].push_back(i);
    upper[i].push_back(j);
  }
  std::vector<std::vector<std::size_t>> gens(n);
  for (std::size_t i = 0; i < n; ++i) gens[i] = an.generators_in(blocks[i]);

  Representatives reps;
  reps.flavor = s.flavor;
  reps.style = style;
  reps.cells.assign(n, 0);
  reps.points.assign(n, 0);
  auto order = linear_order(n, less);
  if (style == RepStyle::Past) std::reverse(order.begin(), order.end());
  for (auto i : order) {
    // Admissible cells stabilize every generator of the components already
    // placed on the relevant side; this set does not depend on earlier choices.
    std::vector<std::size_t> ok;
    for (auto z : blocks[i].indices()) {
      bool good = true;
      if (style == RepStyle::Future) {
        for (auto j : lower[i])
          for (auto alpha : gens[j])
            if (good && !an.future_stabilizes(alpha, z, blocks[i])) good = false;
      } else {
        for (auto j : upper[i])
          for (auto beta : gens[j])
            if (good && !an.past_stabilizes(blocks[i], z, beta)) good = false;
      }
      if (good) ok.push_back(z);
    }
    if (ok.empty()) throw CategoryError("no stabilizer witness for component " + std::to_string(i));
    std::size_t pick = ok.front();
    if (rng) pick = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(*rng)];
    reps.cells[i] = pick;
    reps.points[i] = an.center(pick);
  }
  if (s.flavor == Flavor::Total)
    for (auto [i, j] : less)
      if (auto p = an.stabilizing_pair(blocks[i], blocks[j])) reps.pairs.push_back({i, j, p->first, p->second});
  return reps;
}

ComponentCategory build_category(const Analyzer& an, const Representatives& reps) {
  const PathIndex& pi = an.paths();
  ComponentCategory c;
  c.n = reps.points.size();
  const std::size_t n = c.n;
  c.hom_size.assign(n, std::vector<std::size_t>(n, 0));
  c.reps.assign(n, std::vector<std::vector<EdgePath>>(n));
  c.identity.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto u = reps.points[i], v = reps.points[j];
      c.hom_size[i][j] = pi.count(u, v);
      for (std::size_t x = 0; x < c.hom_size[i][j]; ++x) c.reps[i][j].push_back(pi.representative(u, v, x));
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (c.hom_size[i][i] != 1) throw CategoryError("hom(i,i) is not a singleton");
    c.identity[i] = 0;
  }
  c.comp.assign(n * n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto& t = c.comp[(i * n + j) * n + k];
        const std::size_t a = c.hom_size[i][j], b = c.hom_size[j][k];
        t.resize(a * b);
        for (std::size_t x = 0; x < a; ++x)
          for (std::size_t y = 0; y < b; ++y)
            t[x * b + y] = pi.prepend(reps.points[k], c.reps[i][j][x], static_cast<std::uint32_t>(y));
      }
  return c;
}

bool verify_category_laws(const ComponentCategory& c, unsigned threads) {
  const std::size_t n = c.n;
  if (c.hom_size.size() != n || c.identity.size() != n || c.comp.size() != n * n * n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (c.identity[i] >= c.hom_size[i][i]) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& t = c.comp[(i * n + j) * n + k];
        if (t.size() != c.hom_size[i][j] * c.hom_size[j][k]) return false;
        for (auto v : t)
          if (v >= c.hom_size[i][k]) return false;
      }
  std::atomic<bool> ok{true};
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n && ok; ++j) {
      for (std::uint32_t x = 0; x < c.hom_size[i][j]; ++x)
        if (c.compose(i, i, j, c.identity[i], x) != x || c.compose(i, j, j, x, c.identity[j]) != x) ok = false;
      for (std::size_t k = 0; k < n && ok; ++k)
        for (std::size_t l = 0; l < n && ok; ++l)
          for (std::uint32_t x = 0; x < c.hom_size[i][j]; ++x)
            for (std::uint32_t y = 0; y < c.hom_size[j][k]; ++y)
              for (std::uint32_t z = 0; z < c.hom_size[k][l]; ++z)
                if (c.compose(i, k, l, c.compose(i, j, k, x, y), z) != c.compose(i, j, l, x, c.compose(j, k, l, y, z)))
                  ok = false;
    }
  });
  return ok;
}

ComponentCategory permute_objects(const ComponentCategory& c, const std::vector<std::size_t>& perm) {
  const std::size_t n = c.n;
  if (perm.size() != n) throw CategoryError("permutation size mismatch");
  ComponentCategory out;
  out.n = n;
  out.hom_size.assign(n, std::vector<std::size_t>(n, 0));
  out.reps.assign(n, std::vector<std::vector<EdgePath>>(n));
  out.identity.assign(n, 0);
  out.comp.assign(n * n * n, {});
  for (std::size_t i = 0; i < n; ++i) {
    out.identity[perm[i]] = c.identity[i];
    for (std::size_t j = 0; j < n; ++j) {
      out.hom_size[perm[i]][perm[j]] = c.hom_size[i][j];
      out.reps[perm[i]][perm[j]] = c.reps[i][j];
      for (std::size_t k = 0; k < n; ++k) out.comp[(perm[i] * n + perm[j]) * n + perm[k]] = c.comp[(i * n + j) * n + k];
    }
  }
  return out;
}

namespace {

// Backtracking over per-hom bijections; every assignment is closed under
// composition before the next free element is chosen.
class IsoSearch {
 public:
  IsoSearch(const ComponentCategory& a, const ComponentCategory& b) : a_(a), b_(b), n_(a.n) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        offset_.push_back(total_);
        total_ += a.hom_size[i][j];
      }
  }

  bool run() {
    std::vector<std::int64_t> phi(total_, -1);
    std::vector<std::vector<char>> used(n_ * n_);
    for (std::size_t h = 0; h < n_ * n_; ++h) used[h].assign(a_.hom_size[h / n_][h % n_], 0);
    for (std::size_t i = 0; i < n_; ++i)
      if (!assign(phi, used, i, i, a_.identity[i], b_.identity[i])) return false;
    if (!close(phi, used)) return false;
    return dfs(phi, used);
  }

 private:
  std::size_t id(std::size_t i, std::size_t j, std::size_t x) const { return offset_[i * n_ + j] + x; }

  bool assign(std::vector<std::int64_t>& phi, std::vector<std::vector<char>>& used, std::size_t i, std::size_t j,
              std::uint32_t x, std::uint32_t y) {
    auto& slot = phi[id(i, j, x)];
    if (slot >= 0) return slot == y;
    if (used[i * n_ + j][y]) return false;
    slot = y;
    used[i * n_ + j][y] = 1;
    return true;
  }

  bool close(std::vector<std::int64_t>& phi, std::vector<std::vector<char>>& used) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          for (std::size_t k = 0; k < n_; ++k)
            for (std::uint32_t x = 0; x < a_.hom_size[i][j]; ++x) {
              auto px = phi[id(i, j, x)];
              if (px < 0) continue;
              for (std::uint32_t y = 0; y < a_.hom_size[j][k]; ++y) {
                auto py = phi[id(j, k, y)];
                if (py < 0) continue;
                auto lhs = a_.compose(i, j, k, x, y);
                auto rhs = b_.compose(i, j, k, static_cast<std::uint32_t>(px), static_cast<std::uint32_t>(py));
                bool fresh = phi[id(i, k, lhs)] < 0;
                if (!assign(phi, used, i, k, lhs, rhs)) return false;
                changed = changed || fresh;
              }
            }
    }
    return true;
  }

  bool dfs(std::vector<std::int64_t>& phi, std::vector<std::vector<char>>& used) {
    std::size_t hi = 0, hj = 0, hx = 0;
    bool found = false;
    for (std::size_t i = 0; i < n_ && !found; ++i)
      for (std::size_t j = 0; j < n_ && !found; ++j)
        for (std::size_t x = 0; x < a_.hom_size[i][j] && !found; ++x)
          if (phi[id(i, j, x)] < 0) {
            hi = i, hj = j, hx = x;
            found = true;
          }
    if (!found) return true;
    for (std::uint32_t y = 0; y < b_.hom_size[hi][hj]; ++y) {
      if (used[hi * n_ + hj][y]) continue;
      auto phi2 = phi;
      auto used2 = used;
      if (assign(phi2, used2, hi, hj, static_cast<std::uint32_t>(hx), y) && close(phi2, used2) && dfs(phi2, used2))
        return true;
    }
    return false;
  }

  const ComponentCategory& a_;
  const ComponentCategory& b_;
  std::size_t n_;
  std::vector<std::size_t> offset_;
  std::size_t total_ = 0;
};

}  // namespace

bool isomorphic(const ComponentCategory& a, const ComponentCategory& b) {
  if (a.n != b.n || a.hom_size != b.hom_size) return false;
  if (!verify_category_laws(a) || !verify_category_laws(b)) return false;
  return IsoSearch(a, b).run();
}

nlohmann::json category_to_json(const Analyzer& an, const ComponentSystem& s, const Representatives& reps,
                                const ComponentCategory& c) {
  using nlohmann::json;
  const PrecubicalSet& k = an.complex();
  json objects = json::array();
  for (std::size_t i = 0; i < c.n; ++i) {
    CellId cell = k.cell(reps.cells[i]);
    json o{{"index", i}, {"size", s.components[i].size()}, {"representative", cell_to_json(cell)},
           {"point", reps.points[i]}};
    if (k.has_labels()) o["label"] = k.label(cell);
    objects.push_back(std::move(o));
  }
  json sizes = json::array(), homs = json::array(), comp = json::array();
  for (std::size_t i = 0; i < c.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < c.n; ++j) {
      row.push_back(c.hom_size[i][j]);
      if (c.hom_size[i][j] == 0) continue;
      homs.push_back({{"from", i}, {"to", j}, {"classes", c.reps[i][j]}});
    }
    sizes.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = 0; j < c.n; ++j)
      for (std::size_t l = 0; l < c.n; ++l) {
        const auto& t = c.comp[(i * c.n + j) * c.n + l];
        if (t.empty() || i == j || j == l) continue;  // unit laws make these redundant
        json table = json::array();
        for (std::uint32_t x = 0; x < c.hom_size[i][j]; ++x)
          for (std::uint32_t y = 0; y < c.hom_size[j][l]; ++y) table.push_back({x, y, c.compose(i, j, l, x, y)});
        comp.push_back({{"objects", {i, j, l}}, {"table", std::move(table)}});
      }
  json pairs = json::array();
  for (const auto& p : reps.pairs)
    pairs.push_back({{"from", p.i}, {"to", p.j}, {"first", cell_to_json(k.cell(p.first))},
                     {"second", cell_to_json(k.cell(p.second))}});
  json out{{"flavor", to_string(s.flavor)},
           {"style", reps.style == RepStyle::Past ? "past" : "future"},
           {"objects", std::move(objects)},
           {"hom_sizes", std::move(sizes)},
           {"homs", std::move(homs)},
           {"identities", c.identity},
           {"composition", std::move(comp)}};
  if (s.flavor == Flavor::Total) out["stabilizing_pairs"] = std::move(pairs);
  return out;
}

std::string category_to_dot(const ComponentSystem& s, const ComponentCategory& c) {
  std::ostringstream o;
  o << "digraph category {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < c.n; ++i)
    o << "  o" << i << " [label=\"" << i << " (" << s.components[i].size() << " cells)\"];\n";
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = 0; j < c.n; ++j)
      if (i != j && c.hom_size[i][j] > 0) o << "  o" << i << " -> o" << j << " [label=\"" << c.hom_size[i][j] << "\"];\n";
  o << "}\n";
  return o.str();
}

}  // namespace dcomp
