#include "dcomp/paths.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

namespace dcomp {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    // Smaller root wins so the root is the least member.
    if (a < b) parent[b] = a;
    else if (b < a) parent[a] = b;
  }
};

std::uint32_t src_of(const PrecubicalSet& k, std::uint32_t e) { return k.face({1, e}, 1, 0).index; }
std::uint32_t tgt_of(const PrecubicalSet& k, std::uint32_t e) { return k.face({1, e}, 1, 1).index; }

std::vector<std::vector<std::uint32_t>> outgoing(const PrecubicalSet& k) {
  std::vector<std::vector<std::uint32_t>> out(k.count(0));
  for (std::uint32_t e = 0; e < k.count(1); ++e) out[src_of(k, e)].push_back(e);
  return out;
}

void require_loop_free(const PrecubicalSet& k) {
  if (has_loops(k)) throw PathError("complex has loops");
}

}  // namespace

bool is_path(const PrecubicalSet& k, std::uint32_t u, std::uint32_t v, const EdgePath& p) {
  std::uint32_t at = u;
  for (auto e : p) {
    if (e >= k.count(1) || src_of(k, e) != at) return false;
    at = tgt_of(k, e);
  }
  return at == v;
}

std::vector<EdgePath> enumerate_edge_paths(const PrecubicalSet& k, std::uint32_t u, std::uint32_t v) {
  require_loop_free(k);
  auto out = outgoing(k);
  // Vertices that can still reach v, so the search never dead-ends.
  std::vector<char> good(k.count(0), 0);
  good[v] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t e = 0; e < k.count(1); ++e)
      if (good[tgt_of(k, e)] && !good[src_of(k, e)]) good[src_of(k, e)] = changed = true;
  }
  std::vector<EdgePath> result;
  if (!good[u]) return result;
  EdgePath cur;
  auto dfs = [&](auto&& self, std::uint32_t at) -> void {
    if (at == v) {
      result.push_back(cur);
      return;
    }
    for (auto e : out[at]) {
      if (!good[tgt_of(k, e)]) continue;
      cur.push_back(e);
      self(self, tgt_of(k, e));
      cur.pop_back();
    }
  };
  dfs(dfs, u);
  return result;
}

HomSet hom_set(const PrecubicalSet& k, std::uint32_t u, std::uint32_t v) {
  auto paths = enumerate_edge_paths(k, u, v);
  std::map<EdgePath, std::uint32_t> where;
  for (std::uint32_t i = 0; i < paths.size(); ++i) where.emplace(paths[i], i);
  // Squares keyed by their first boundary edge d^0_2 q.
  std::multimap<std::uint32_t, std::uint32_t> by_first;
  for (std::uint32_t q = 0; q < k.count(2); ++q) by_first.emplace(k.face({2, q}, 2, 0).index, q);
  UnionFind uf(paths.size());
  for (std::uint32_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    for (std::size_t pos = 0; pos + 1 < p.size(); ++pos) {
      auto [lo, hi] = by_first.equal_range(p[pos]);
      for (auto it = lo; it != hi; ++it) {
        CellId q{2, it->second};
        if (k.face(q, 1, 1).index != p[pos + 1]) continue;
        EdgePath swapped = p;
        swapped[pos] = k.face(q, 1, 0).index;
        swapped[pos + 1] = k.face(q, 2, 1).index;
        uf.unite(i, where.at(swapped));
      }
    }
  }
  HomSet h{u, v, {}};
  // Paths are in lexicographic order and roots are least members.
  for (std::uint32_t i = 0; i < paths.size(); ++i)
    if (uf.find(i) == i) h.classes.push_back({u, v, paths[i]});
  return h;
}

PathIndex::PathIndex(const PrecubicalSet& k, unsigned threads) : nv_(k.count(0)) {
  require_loop_free(k);
  src_.resize(k.count(1));
  tgt_.resize(k.count(1));
  for (std::uint32_t e = 0; e < k.count(1); ++e) {
    src_[e] = src_of(k, e);
    tgt_[e] = tgt_of(k, e);
  }
  out_edges_ = outgoing(k);
  squares_at_.resize(nv_);
  for (std::uint32_t q = 0; q < k.count(2); ++q) {
    CellId c{2, q};
    Square s{k.face(c, 2, 0).index, k.face(c, 1, 1).index, k.face(c, 1, 0).index, k.face(c, 2, 1).index,
             final_vertex(k, c).index};
    squares_at_[initial_vertex(k, c).index].push_back(static_cast<std::uint32_t>(squares_.size()));
    squares_.push_back(s);
  }
  // Reverse topological order of the vertex digraph: successors first.
  std::vector<std::uint32_t> indeg(nv_, 0), order;
  for (auto t : tgt_) ++indeg[t];
  for (std::uint32_t x = 0; x < nv_; ++x)
    if (indeg[x] == 0) order.push_back(x);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto e : out_edges_[order[i]])
      if (--indeg[tgt_[e]] == 0) order.push_back(tgt_[e]);
  rev_topo_.assign(order.rbegin(), order.rend());

  class_off_.resize(nv_);
  nodes_.resize(nv_);
  item_off_.resize(nv_);
  items_.resize(nv_);
  threads = std::max(1U, threads);
  if (threads == 1 || nv_ < 2) {
    for (std::uint32_t v = 0; v < nv_; ++v) build_target(v);
    return;
  }
  std::atomic<std::uint32_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::uint32_t v; (v = next.fetch_add(1)) < nv_;) build_target(v);
    });
  for (auto& th : pool) th.join();
}

void PathIndex::build_target(std::uint32_t v) {
  const std::uint32_t ne = static_cast<std::uint32_t>(src_.size());
  std::vector<std::vector<Node>> per_source(nv_);
  std::vector<std::vector<std::uint32_t>> per_edge(ne);
  std::vector<std::uint32_t> item_base(ne, 0);

  for (auto u : rev_topo_) {
    if (u == v) {
      per_source[u].push_back({UINT32_MAX, 0});
      continue;
    }
    std::uint32_t n_items = 0;
    for (auto e : out_edges_[u]) {
      item_base[e] = n_items;
      n_items += static_cast<std::uint32_t>(per_source[tgt_[e]].size());
    }
    if (n_items == 0) continue;
    UnionFind uf(n_items);
    for (auto qi : squares_at_[u]) {
      const Square& q = squares_[qi];
      auto tails = static_cast<std::uint32_t>(per_source[q.end].size());
      for (std::uint32_t r = 0; r < tails; ++r)
        uf.unite(item_base[q.e1] + per_edge[q.f1][r], item_base[q.e2] + per_edge[q.f2][r]);
    }
    // Items run in (edge, tail rank) order, so the least item of a group is
    // its canonical representative and groups sort by it.
    std::vector<std::uint32_t> rank_of_root(n_items, UINT32_MAX);
    auto& nodes = per_source[u];
    for (auto e : out_edges_[u]) {
      auto tails = static_cast<std::uint32_t>(per_source[tgt_[e]].size());
      per_edge[e].resize(tails);
      for (std::uint32_t r = 0; r < tails; ++r) {
        auto root = uf.find(item_base[e] + r);
        if (rank_of_root[root] == UINT32_MAX) {
          rank_of_root[root] = static_cast<std::uint32_t>(nodes.size());
          nodes.push_back({e, r});
        }
        per_edge[e][r] = rank_of_root[root];
      }
    }
  }

  auto& off = class_off_[v];
  off.assign(nv_ + 1, 0);
  for (std::uint32_t u = 0; u < nv_; ++u) off[u + 1] = off[u] + per_source[u].size();
  auto& nodes = nodes_[v];
  nodes.reserve(off[nv_]);
  for (std::uint32_t u = 0; u < nv_; ++u) nodes.insert(nodes.end(), per_source[u].begin(), per_source[u].end());
  auto& ioff = item_off_[v];
  ioff.assign(ne + 1, 0);
  for (std::uint32_t e = 0; e < ne; ++e) ioff[e + 1] = ioff[e] + per_edge[e].size();
  auto& items = items_[v];
  items.reserve(ioff[ne]);
  for (std::uint32_t e = 0; e < ne; ++e) items.insert(items.end(), per_edge[e].begin(), per_edge[e].end());
}

EdgePath PathIndex::representative(std::uint32_t u, std::uint32_t v, std::size_t rank) const {
  EdgePath p;
  while (true) {
    const Node& n = nodes_[v][class_off_[v][u] + rank];
    if (n.first_edge == UINT32_MAX) return p;
    p.push_back(n.first_edge);
    u = tgt_[n.first_edge];
    rank = n.next;
  }
}

HomSet PathIndex::hom(std::uint32_t u, std::uint32_t v) const {
  HomSet h{u, v, {}};
  for (std::size_t r = 0; r < count(u, v); ++r) h.classes.push_back({u, v, representative(u, v, r)});
  return h;
}

PathClass PathIndex::compose(const PathClass& h1, const PathClass& h2) const {
  if (h1.target != h2.source) throw PathError("compose: endpoint mismatch");
  EdgePath p = h1.rep;
  p.insert(p.end(), h2.rep.begin(), h2.rep.end());
  return {h1.source, h2.target, representative(h1.source, h2.target, class_of(h2.target, p))};
}

std::vector<std::uint32_t> PathIndex::precompose_map(const PathClass& h, std::uint32_t w) const {
  std::vector<std::uint32_t> m(count(h.target, w));
  for (std::uint32_t r = 0; r < m.size(); ++r) m[r] = prepend(w, h.rep, r);
  return m;
}

std::vector<std::uint32_t> PathIndex::postcompose_map(std::uint32_t u, const PathClass& h) const {
  std::vector<std::uint32_t> m(count(u, h.source));
  const std::uint32_t tail = class_of(h.target, h.rep);
  for (std::uint32_t r = 0; r < m.size(); ++r)
    m[r] = prepend(h.target, representative(u, h.source, r), tail);
  return m;
}

bool is_bijection(const std::vector<std::uint32_t>& map, std::size_t codomain_size) {
  if (map.size() != codomain_size) return false;
  std::vector<char> hit(codomain_size, 0);
  for (auto x : map) {
    if (x >= codomain_size || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

}  // namespace dcomp
