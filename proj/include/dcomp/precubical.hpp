#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcomp {

inline constexpr std::uint32_t kNoFace = UINT32_MAX;
inline constexpr unsigned kMaxCubeDim = 8;

struct CellId {
  std::uint32_t dim = 0;
  std::uint32_t index = 0;

  friend auto operator<=>(const CellId&, const CellId&) = default;
};

std::string to_string(CellId c);

class PrecubicalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite pre-cubical set. Cells of dimension n are numbered 0..count(n)-1;
/// face (i, eps) of an n-cell is an (n-1)-cell, i in 1..n.
class PrecubicalSet {
 public:
  PrecubicalSet() = default;
  explicit PrecubicalSet(std::vector<std::uint32_t> counts);

  /// Number of dimension slots (top dimension + 1); zero for the empty set.
  std::size_t num_dims() const { return counts_.size(); }
  std::uint32_t count(std::uint32_t dim) const { return dim < counts_.size() ? counts_[dim] : 0; }
  const std::vector<std::uint32_t>& counts() const { return counts_; }
  std::size_t num_cells() const { return offsets_.empty() ? 0 : offsets_.back(); }

  std::size_t flat(CellId c) const { return offsets_[c.dim] + c.index; }
  CellId cell(std::size_t flat) const;
  bool contains(CellId c) const { return c.dim < counts_.size() && c.index < counts_[c.dim]; }

  /// Face d^eps_i c. Throws if unset or out of range.
  CellId face(CellId c, unsigned i, int eps) const;
  /// Stored target index without checks (kNoFace when unset).
  std::uint32_t raw_face(CellId c, unsigned i, int eps) const {
    return faces_[c.dim][(static_cast<std::size_t>(c.index) * c.dim + (i - 1)) * 2 + eps];
  }
  void set_face(CellId c, unsigned i, int eps, std::uint32_t target);

  /// Applies d^eps_j for every j in mask (bit j-1), from the highest j down.
  CellId face_multi(CellId c, std::uint32_t mask, int eps) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(CellId c) const;
  void set_label(CellId c, std::string text);
  std::optional<CellId> find_label(const std::string& text) const;

  friend bool operator==(const PrecubicalSet&, const PrecubicalSet&) = default;

 private:
  std::vector<std::uint32_t> counts_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::uint32_t>> faces_;
  std::vector<std::vector<std::string>> labels_;
};

struct Violation {
  enum class Kind { MissingFace, OutOfRange, Relation };
  Kind kind = Kind::MissingFace;
  CellId cell;
  unsigned i = 0, j = 0;
  int eps = 0, eta = 0;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every missing or out-of-range face, then every (c, i<j, eps, eta) breaking
/// d^eps_i d^eta_j = d^eta_{j-1} d^eps_i. Order: by cell, then i, j, eps, eta.
std::vector<Violation> validate(const PrecubicalSet& k);

/// True iff the 1-skeleton has a directed cycle (self-loop edges included).
bool has_loops(const PrecubicalSet& k);

PrecubicalSet standard_cube(unsigned n);
PrecubicalSet boundary_cube(unsigned n);

CellId initial_vertex(const PrecubicalSet& k, CellId c);
CellId final_vertex(const PrecubicalSet& k, CellId c);

/// Iterated faces using only eps = 0 (resp. 1), c included. Sorted, unique.
std::vector<CellId> lower_faces(const PrecubicalSet& k, CellId c);
std::vector<CellId> upper_faces(const PrecubicalSet& k, CellId c);

/// Same cells, faces d^eps_i replaced by d^{1-eps}_i.
PrecubicalSet opposite(const PrecubicalSet& k);

}  // namespace dcomp
