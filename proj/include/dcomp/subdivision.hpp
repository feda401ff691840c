#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcomp/precubical.hpp"

namespace dcomp {

/// Per-coordinate position of a subcell inside its parent cube c:
/// H sits at 1/2, L spans [0,1/2], U spans [1/2,1]. Zero and One are only
/// used by lift() for points on the boundary of c.
enum class Sub : std::uint8_t { H = 0, L = 1, U = 2, Zero = 3, One = 4 };

std::string to_string(const std::vector<Sub>& word);

/// Midpoint subdivision K' of K. Subcells are (c, s) with s in {H,L,U}^dim c;
/// dim (c, s) is the number of L/U letters. Indices: K cells in flat order,
/// then s in lexicographic order with H < L < U.
struct Subdivision {
  PrecubicalSet complex;
  std::vector<CellId> center;         // flat K id -> vertex (c, H...H)
  std::vector<std::size_t> parent;    // flat K' id -> flat K id
  std::vector<std::size_t> table_at;  // flat K id -> start in `cells`
  std::vector<CellId> cells;          // (c, s) by base-3 code of s

  CellId subcell(std::size_t parent_flat, const std::vector<Sub>& s) const;
  /// Subcell for a word over {Zero,One,H,L,U} in c's frame: the boundary
  /// letters select a face of c first.
  CellId lift(const PrecubicalSet& k, CellId c, std::vector<Sub> word) const;
};

Subdivision subdivide(const PrecubicalSet& k);

}  // namespace dcomp
