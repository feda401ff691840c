#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dcomp/cell_set.hpp"
#include "dcomp/components.hpp"

namespace dcomp {

/// Cached validity test for partitions given as cell sets. Agrees with
/// Analyzer::check_system(...).valid; block and pair verdicts are memoized
/// so candidate searches can share work. Thread-safe.
class ValidityChecker {
 public:
  ValidityChecker(const Analyzer& an, Flavor f) : an_(an), flavor_(f) {}

  Flavor flavor() const { return flavor_; }
  bool block_ok(const CellSet& b);
  bool pair_ok(const CellSet& a, const CellSet& b);
  /// `blocks` must partition the cells.
  bool valid(const std::vector<CellSet>& blocks);

 private:
  struct PairKey {
    CellSet a, b;
    friend bool operator==(const PairKey&, const PairKey&) = default;
  };
  struct PairHash {
    std::size_t operator()(const PairKey& k) const { return k.a.hash() * 31 + k.b.hash(); }
  };

  const Analyzer& an_;
  Flavor flavor_;
  std::mutex mu_;
  std::unordered_map<CellSet, bool, CellSetHash> blocks_;
  std::unordered_map<PairKey, bool, PairHash> pairs_;
};

std::vector<CellSet> to_blocks(const Analyzer& an, const ComponentSystem& s);
ComponentSystem from_blocks(const Analyzer& an, Flavor f, const std::vector<CellSet>& blocks);

struct SearchBudget {
  std::size_t max_candidates = 1'000'000;
  bool exhaustive = false;
  /// Node budget of the guided multi-merge search run when no single merge
  /// of the current blocks is valid; 0 disables it.
  std::size_t guided_nodes = 5'000'000;
};

struct OracleOptions {
  std::size_t cap = 26;  // maximum number of canonical components
  std::size_t node_budget = 200'000'000;
  std::size_t keep = 64;  // valid systems retained for inspection
};

struct OracleResult {
  ComponentSystem system;                  // fold of every valid partition
  std::vector<ComponentSystem> samples;    // up to `keep` valid partitions
  std::size_t valid_count = 0;
  std::size_t nodes = 0;
  bool complete = false;
};

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumerates the partitions of the canonical components into d-convex,
/// order-connected blocks, keeps the valid ones and folds them with
/// union_systems. Exact when `complete` is set.
OracleResult exhaustive_oracle(const Analyzer& an, Flavor f, const OracleOptions& opts = {});

/// Same search, with atoms taken from the components of `start`.
OracleResult oracle_from(const Analyzer& an, const ComponentSystem& start, const OracleOptions& opts = {});

struct CoarsestResult {
  ComponentSystem system;
  bool certified = false;
  bool fixpoint = false;       // heuristic converged within budget
  bool heuristic_matches_oracle = false;
  std::size_t candidates = 0;  // candidate partitions validated
  std::size_t rounds = 0;
  std::size_t guided_searches = 0;
  std::vector<ComponentSystem> discovered;  // valid systems met along the way
  std::optional<OracleResult> oracle;
  bool oracle_full = false;  // oracle started from the canonical system
};

/// Union-closure search from the canonical system; with budget.exhaustive
/// the oracle runs as well and certifies (or corrects) the result. When the
/// canonical system exceeds the oracle cap, the oracle starts from the
/// heuristic result instead (see certify_report).
CoarsestResult coarsest(const Analyzer& an, Flavor f, const SearchBudget& budget = {},
                        const OracleOptions& oracle_opts = {});

struct Certificate {
  bool valid = false;
  bool full = false;      // searched from the canonical system
  bool complete = false;
  bool certified = false;
  std::size_t nodes = 0;
};

/// S is valid and union_systems(S, T) = S for every valid T the oracle finds.
/// Within the cap the oracle starts from the canonical system; above it,
/// from the components of S, so only coarsenings of S are ruled out and
/// the verdict leans on union-closure.
Certificate certify_report(const Analyzer& an, const ComponentSystem& s, const OracleOptions& opts = {});
bool certify(const Analyzer& an, const ComponentSystem& s, const OracleOptions& opts = {});

}  // namespace dcomp
