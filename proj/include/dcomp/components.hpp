#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcomp/cell_set.hpp"
#include "dcomp/paths.hpp"
#include "dcomp/precubical.hpp"
#include "dcomp/reachability.hpp"
#include "dcomp/subdivision.hpp"

namespace dcomp {

enum class Flavor { Future, Past, Total };

std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

/// Partition of the cells into components. Normalized form: cells sorted
/// inside each component, components sorted by their least cell.
struct ComponentSystem {
  Flavor flavor = Flavor::Total;
  std::vector<std::vector<CellId>> components;

  void normalize();
  friend bool operator==(const ComponentSystem&, const ComponentSystem&) = default;
};

/// Empty string when `s` partitions the cells of `k`, otherwise the reason.
std::string partition_error(const PrecubicalSet& k, const ComponentSystem& s);

ComponentSystem canonical_total(const PrecubicalSet& k);
ComponentSystem canonical_future(const PrecubicalSet& k);
ComponentSystem canonical_past(const PrecubicalSet& k);
ComponentSystem canonical(const PrecubicalSet& k, Flavor f);

/// Components linked by overlapping cells are merged (equivalence closure).
ComponentSystem union_systems(const PrecubicalSet& k, const ComponentSystem& a, const ComponentSystem& b);

/// True iff every component of `fine` lies inside one component of `coarse`.
bool refines(const ComponentSystem& fine, const ComponentSystem& coarse);

nlohmann::json system_to_json(const ComponentSystem& s);
ComponentSystem system_from_json(const nlohmann::json& j, const PrecubicalSet& k);

/// A directed path between sample points (cell centers) of the subdivided
/// complex, realizing one step of the cell relation or a constant.
struct Generator {
  std::size_t from_cell = 0;  // flat ids in K
  std::size_t to_cell = 0;
  std::uint32_t from_pt = 0;  // vertex ids in the subdivision
  std::uint32_t to_pt = 0;
  EdgePath path;              // edges of the subdivision
};

struct GeneratorWitness {
  std::size_t generator = 0;
  std::optional<std::size_t> stabilizer;  // flat cell id
  // When no stabilizer exists: the first candidate tried and the generator
  // whose bijection check failed against it.
  std::optional<std::size_t> failed_at;
  std::optional<std::size_t> failing_generator;
};

struct StabilityReport {
  bool verdict = true;
  std::vector<GeneratorWitness> witnesses;
  std::optional<std::pair<std::size_t, std::size_t>> stabilizing_pair;  // total only
};

struct ComponentReport {
  bool convex = false;
  bool future_connected = false;
  bool past_connected = false;
  bool future_trivial = false;
  bool past_trivial = false;
  std::optional<std::size_t> final_cell;
  std::optional<std::size_t> initial_cell;
};

struct PairReport {
  std::size_t i = 0, j = 0;
  bool future = false, past = false, total = false;
  std::optional<std::pair<std::size_t, std::size_t>> stabilizing_pair;
};

struct SystemReport {
  Flavor flavor = Flavor::Total;
  std::string partition_error;
  std::vector<ComponentReport> components;
  std::vector<PairReport> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> order;  // strict i < j
  bool antisymmetric = true;
  bool closed = false;
  bool valid = false;
  std::optional<bool> deep_valid;
};

struct AnalyzerOptions {
  unsigned threads = 1;
  /// Re-run the system check on the subdivided complex as well.
  bool deep = false;
};

/// Stability machinery for one complex K. Sample points are the vertices of
/// subdivide(K), i.e. one center per cell; generators are constants and the
/// face steps between cells. Immutable apart from an internal atomic cache,
/// so concurrent queries are safe.
class Analyzer {
 public:
  explicit Analyzer(const PrecubicalSet& k, AnalyzerOptions opts = {});
  ~Analyzer();
  Analyzer(const Analyzer&) = delete;
  Analyzer& operator=(const Analyzer&) = delete;

  const PrecubicalSet& complex() const { return k_; }
  const Reachability& reach() const { return reach_; }
  const Subdivision& subdivision() const { return sub_; }
  const PathIndex& paths() const { return *paths_; }
  const AnalyzerOptions& options() const { return opts_; }
  std::size_t num_cells() const { return k_.num_cells(); }
  std::uint32_t center(std::size_t cell) const { return sub_.center[cell].index; }
  const std::vector<Generator>& generators() const { return gens_; }

  CellSet to_set(const std::vector<CellId>& cells) const;
  std::vector<CellId> to_cells(const CellSet& s) const;

  bool is_convex(const CellSet& c) const;
  bool is_future_connected(const CellSet& c) const;
  bool is_past_connected(const CellSet& c) const;
  /// Maximum (resp. minimum) of c under reachability inside c, if any.
  std::optional<std::size_t> final_cell(const CellSet& c) const;
  std::optional<std::size_t> initial_cell(const CellSet& c) const;
  /// Least maximal (resp. minimal) cell; always exists for non-empty c.
  std::size_t cofinal_cell(const CellSet& c) const;
  std::size_t coinitial_cell(const CellSet& c) const;

  /// P(alpha(1), beta(0)) -> P(alpha(0), beta(1)), w -> [alpha * w * beta], is bijective.
  bool bij(std::size_t alpha, std::size_t beta) const;
  /// z future-stabilizes generator alpha in B.
  bool future_stabilizes(std::size_t alpha, std::size_t z, const CellSet& b) const;
  /// w past-stabilizes generator beta in A.
  bool past_stabilizes(const CellSet& a, std::size_t w, std::size_t beta) const;
  /// Least maximal cell of B stabilizing alpha (maximal cells suffice by up-closure).
  std::optional<std::size_t> future_witness(std::size_t alpha, const CellSet& b) const;
  std::optional<std::size_t> past_witness(const CellSet& a, std::size_t beta) const;

  /// B is future stable with respect to every path in A.
  StabilityReport future_stable(const CellSet& a, const CellSet& b, bool stop_early = false) const;
  /// A is past stable with respect to every path in B.
  StabilityReport past_stable(const CellSet& a, const CellSet& b, bool stop_early = false) const;
  StabilityReport total_stable(const CellSet& a, const CellSet& b, bool stop_early = false) const;
  std::optional<std::pair<std::size_t, std::size_t>> stabilizing_pair(const CellSet& a, const CellSet& b) const;

  bool is_trivial(const CellSet& c, Flavor f) const;
  /// Path classes between the witness points of the pair (in the subdivision).
  HomSet stable_hom(const CellSet& a, const CellSet& b, Flavor f) const;

  /// Strict component order: i < j iff some cell of A_i reaches one of A_j.
  std::vector<std::pair<std::size_t, std::size_t>> component_order(const std::vector<CellSet>& comps) const;

  SystemReport check_system(const ComponentSystem& s) const;

  /// Generators with both endpoint cells in `c`.
  std::vector<std::size_t> generators_in(const CellSet& c) const;

 private:
  PrecubicalSet k_;
  AnalyzerOptions opts_;
  Reachability reach_;
  Subdivision sub_;
  std::unique_ptr<PathIndex> paths_;
  std::vector<Generator> gens_;
  std::vector<std::vector<std::size_t>> gens_from_;  // by source cell
  std::vector<std::vector<std::size_t>> gens_to_;    // by target cell
  mutable std::unique_ptr<std::atomic<std::uint8_t>[]> bij_cache_;
};

nlohmann::json report_to_json(const Analyzer& an, const SystemReport& r);
nlohmann::json stability_to_json(const Analyzer& an, const StabilityReport& r);

/// Components of `s` lifted to the subdivision: each K'-cell joins the
/// component of its parent cell.
ComponentSystem lift_system(const Analyzer& an, const ComponentSystem& s);

}  // namespace dcomp
