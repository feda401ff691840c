#pragma once

#include <vector>

#include "dcomp/cell_set.hpp"
#include "dcomp/precubical.hpp"

namespace dcomp {

/// Direct steps of the cell relation: a -> c for a a lower face of c, and
/// c -> b for b an upper face of c (self-steps omitted). Indexed by flat id.
std::vector<std::vector<std::size_t>> cell_steps(const PrecubicalSet& k);

/// Reflexive-transitive closure of cell_steps. Throws PrecubicalError when
/// the step graph has a cycle (which happens iff the complex has loops).
class Reachability {
 public:
  explicit Reachability(const PrecubicalSet& k);

  std::size_t size() const { return up_.size(); }
  bool reaches(std::size_t a, std::size_t b) const { return up_[a].test(b); }
  const CellSet& above(std::size_t a) const { return up_[a]; }
  const CellSet& below(std::size_t b) const { return down_[b]; }
  const std::vector<std::vector<std::size_t>>& steps() const { return steps_; }
  /// Flat ids in a linear extension of the order.
  const std::vector<std::size_t>& topological_order() const { return topo_; }

  /// Cells reachable from a by chains whose cells all lie in `within`.
  CellSet above_within(std::size_t a, const CellSet& within) const;

 private:
  std::vector<std::vector<std::size_t>> steps_;
  std::vector<std::size_t> topo_;
  std::vector<CellSet> up_;
  std::vector<CellSet> down_;
};

}  // namespace dcomp
