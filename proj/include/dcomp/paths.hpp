#pragma once

#include <cstdint>
#include <vector>

#include "dcomp/precubical.hpp"

namespace dcomp {

/// Sequence of 1-cell indices; empty means the constant path.
using EdgePath = std::vector<std::uint32_t>;

struct PathClass {
  std::uint32_t source = 0;  // vertex index
  std::uint32_t target = 0;
  EdgePath rep;              // lexicographically least representative

  friend bool operator==(const PathClass&, const PathClass&) = default;
};

struct HomSet {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::vector<PathClass> classes;  // sorted by rep

  std::size_t size() const { return classes.size(); }
  friend bool operator==(const HomSet&, const HomSet&) = default;
};

class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All directed edge paths u -> v in lexicographic order of edge indices.
std::vector<EdgePath> enumerate_edge_paths(const PrecubicalSet& k, std::uint32_t u, std::uint32_t v);

/// Enumerated paths modulo single-square swaps (union-find).
HomSet hom_set(const PrecubicalSet& k, std::uint32_t u, std::uint32_t v);

/// True iff consecutive edges match and the path runs u -> v.
bool is_path(const PrecubicalSet& k, std::uint32_t u, std::uint32_t v, const EdgePath& p);

/// Memoized path classes for every vertex pair, built eagerly so the object
/// is immutable afterwards. Class ranks within P(u,v) follow the order of
/// canonical representatives, matching hom_set().
class PathIndex {
 public:
  explicit PathIndex(const PrecubicalSet& k, unsigned threads = 1);

  std::uint32_t num_vertices() const { return nv_; }
  std::uint32_t edge_source(std::uint32_t e) const { return src_[e]; }
  std::uint32_t edge_target(std::uint32_t e) const { return tgt_[e]; }
  bool vertex_reaches(std::uint32_t u, std::uint32_t v) const { return count(u, v) > 0; }

  std::size_t count(std::uint32_t u, std::uint32_t v) const {
    return class_off_[v][u + 1] - class_off_[v][u];
  }
  EdgePath representative(std::uint32_t u, std::uint32_t v, std::size_t rank) const;
  HomSet hom(std::uint32_t u, std::uint32_t v) const;

  /// Rank of the class of e * (class `rank` of P(target(e), v)) in P(source(e), v).
  std::uint32_t extend(std::uint32_t v, std::uint32_t e, std::uint32_t rank) const {
    return items_[v][item_off_[v][e] + rank];
  }
  /// Rank of the class of p in P(u, v); p must be a path u -> v.
  std::uint32_t class_of(std::uint32_t v, const EdgePath& p) const { return prepend(v, p, 0); }
  /// Rank of [p * (class `rank` of P(start(p)..., v))] where p ends where that class starts.
  std::uint32_t prepend(std::uint32_t v, const EdgePath& p, std::uint32_t rank) const {
    for (auto it = p.rbegin(); it != p.rend(); ++it) rank = extend(v, *it, rank);
    return rank;
  }

  PathClass compose(const PathClass& h1, const PathClass& h2) const;
  /// [w] -> [h * w] from P(target(h), w) to P(source(h), w).
  std::vector<std::uint32_t> precompose_map(const PathClass& h, std::uint32_t w) const;
  /// [w] -> [w * h] from P(u, source(h)) to P(u, target(h)).
  std::vector<std::uint32_t> postcompose_map(std::uint32_t u, const PathClass& h) const;

 private:
  struct Node {
    std::uint32_t first_edge;  // UINT32_MAX for the constant class
    std::uint32_t next;        // rank of the tail class at target(first_edge)
  };
  // Boundary paths e1*f1 and e2*f2 of a 2-cell, ending at `end`.
  struct Square {
    std::uint32_t e1, f1, e2, f2, end;
  };
  void build_target(std::uint32_t v);

  std::uint32_t nv_ = 0;
  std::vector<std::uint32_t> src_, tgt_;
  std::vector<std::vector<std::uint32_t>> out_edges_;
  std::vector<Square> squares_;
  std::vector<std::vector<std::uint32_t>> squares_at_;  // by initial vertex
  std::vector<std::uint32_t> rev_topo_;
  // Per target v.
  std::vector<std::vector<std::size_t>> class_off_;
  std::vector<std::vector<Node>> nodes_;
  std::vector<std::vector<std::size_t>> item_off_;
  std::vector<std::vector<std::uint32_t>> items_;
};

/// Injective and onto a codomain of the given size.
bool is_bijection(const std::vector<std::uint32_t>& map, std::size_t codomain_size);

}  // namespace dcomp
