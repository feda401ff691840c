#include "dcomp/coarsest.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "dcomp/parallel.hpp"

namespace dcomp {

bool ValidityChecker::block_ok(const CellSet& b) {
  {
    std::lock_guard lock(mu_);
    if (auto it = blocks_.find(b); it != blocks_.end()) return it->second;
  }
  const bool fut = flavor_ != Flavor::Past, pst = flavor_ != Flavor::Future;
  bool ok = an_.is_convex(b);
  ok = ok && (!fut || (an_.is_future_connected(b) && an_.is_trivial(b, Flavor::Future)));
  ok = ok && (!pst || (an_.is_past_connected(b) && an_.is_trivial(b, Flavor::Past)));
  std::lock_guard lock(mu_);
  blocks_.emplace(b, ok);
  return ok;
}

bool ValidityChecker::pair_ok(const CellSet& a, const CellSet& b) {
  PairKey key{a, b};
  {
    std::lock_guard lock(mu_);
    if (auto it = pairs_.find(key); it != pairs_.end()) return it->second;
  }
  bool ok = true;
  if (flavor_ != Flavor::Past) ok = an_.future_stable(a, b, true).verdict;
  if (ok && flavor_ != Flavor::Future) ok = an_.past_stable(a, b, true).verdict;
  if (ok && flavor_ == Flavor::Total) ok = an_.stabilizing_pair(a, b).has_value();
  std::lock_guard lock(mu_);
  pairs_.emplace(std::move(key), ok);
  return ok;
}

bool ValidityChecker::valid(const std::vector<CellSet>& blocks) {
  for (const auto& b : blocks)
    if (!block_ok(b)) return false;
  auto order = an_.component_order(blocks);
  std::set<std::pair<std::size_t, std::size_t>> seen(order.begin(), order.end());
  for (auto [i, j] : order)
    if (seen.count({j, i})) return false;
  for (const auto& a : blocks)
    for (const auto& b : blocks)
      if (!pair_ok(a, b)) return false;
  return true;
}

std::vector<CellSet> to_blocks(const Analyzer& an, const ComponentSystem& s) {
  std::vector<CellSet> out;
  for (const auto& c : s.components) out.push_back(an.to_set(c));
  return out;
}

ComponentSystem from_blocks(const Analyzer& an, Flavor f, const std::vector<CellSet>& blocks) {
  ComponentSystem s{f, {}};
  for (const auto& b : blocks) s.components.push_back(an.to_cells(b));
  s.normalize();
  return s;
}

namespace {

// Depth-first enumeration of partitions of the atoms. Atoms are visited in
// reverse linear-extension order, so every cell between two cells of a block
// and every common upper bound is already placed when a block grows; the
// convexity, future-connectedness and fixed-maximum bijection tests below
// are therefore exact necessary conditions and safe to prune on.
class PartitionSearch {
 public:
  /// Restrict merges to atoms with equal group ids.
  void set_groups(std::vector<std::size_t> g) { group_ = std::move(g); }

  PartitionSearch(const Analyzer& prune_an, ValidityChecker& checker, std::vector<CellSet> atoms,
                  const OracleOptions& opts, bool first_coarser = false)
      : an_(prune_an), checker_(checker), opts_(opts), atoms_(std::move(atoms)), first_coarser_(first_coarser) {
    const std::size_t n = atoms_.size();
    // Linear extension of the atom order (least index first among ready atoms).
    auto order = an_.component_order(atoms_);
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (auto [i, j] : order) {
      succ[i].push_back(j);
      ++indeg[j];
    }
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) ready.insert(i);
    std::vector<std::size_t> topo;
    while (!ready.empty()) {
      auto i = *ready.begin();
      ready.erase(ready.begin());
      topo.push_back(i);
      for (auto j : succ[i])
        if (--indeg[j] == 0) ready.insert(j);
    }
    if (topo.size() != n) throw std::logic_error("oracle: atom order has a cycle");
    visit_.assign(topo.rbegin(), topo.rend());
    top_.resize(n);
    touching_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto m = an_.final_cell(atoms_[i]);
      if (!m) throw std::logic_error("oracle: atom without a maximum cell");
      top_[i] = *m;
    }
    const auto& gens = an_.generators();
    std::vector<std::size_t> atom_of(an_.num_cells(), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (auto f : atoms_[i].indices()) atom_of[f] = i;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      touching_[atom_of[gens[g].from_cell]].push_back(g);
      if (atom_of[gens[g].to_cell] != atom_of[gens[g].from_cell]) touching_[atom_of[gens[g].to_cell]].push_back(g);
    }
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  OracleResult run(Flavor f) {
    OracleResult res;
    aborted_ = false;
    dfs(0);
    res.complete = !aborted_;
    res.nodes = nodes_;
    res.valid_count = valid_count_;
    res.samples = std::move(samples_);
    std::map<std::size_t, CellSet> groups;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      auto r = find(i);
      auto [it, fresh] = groups.try_emplace(r, atoms_[i]);
      if (!fresh) it->second |= atoms_[i];
    }
    std::vector<CellSet> blocks;
    for (auto& [_, b] : groups) blocks.push_back(std::move(b));
    res.system = from_blocks(an_, f, blocks);
    return res;
  }

 private:
  struct Block {
    CellSet cells;
    std::size_t top;
    std::vector<std::size_t> gens;
    std::vector<std::size_t> atoms;
  };

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  // New generators `fresh` of block `self` against every block's maximum,
  // plus (for a brand-new block) every older generator against its maximum.
  bool stable_with_others(std::size_t self, const std::vector<std::size_t>& fresh, bool is_new) {
    for (auto g : fresh)
      for (const auto& y : blocks_)
        if (!an_.bij(g, y.top)) return false;
    if (is_new)
      for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b == self) continue;
        for (auto g : blocks_[b].gens)
          if (!an_.bij(g, blocks_[self].top)) return false;
      }
    return true;
  }

  std::vector<std::size_t> fresh_gens(std::size_t atom, const CellSet& cells) const {
    std::vector<std::size_t> out;
    const auto& gens = an_.generators();
    for (auto g : touching_[atom])
      if (cells.test(gens[g].from_cell) && cells.test(gens[g].to_cell)) out.push_back(g);
    return out;
  }

  void dfs(std::size_t t) {
    if (aborted_ || done_) return;
    if (++nodes_ > opts_.node_budget) {
      aborted_ = true;
      return;
    }
    if (t == visit_.size()) {
      leaf();
      return;
    }
    const std::size_t a = visit_[t];
    const CellSet& atom = atoms_[a];
    for (std::size_t b = 0; b <= blocks_.size(); ++b) {
      if (b == blocks_.size()) {
        Block nb{atom, top_[a], {}, {a}};
        blocks_.push_back(std::move(nb));
        auto fresh = fresh_gens(a, atom);
        blocks_.back().gens = fresh;
        if (stable_with_others(b, fresh, true)) dfs(t + 1);
        blocks_.pop_back();
        break;
      }
      Block& blk = blocks_[b];
      if (!group_.empty() && group_[blk.atoms.front()] != group_[a]) continue;
      CellSet merged = blk.cells | atom;
      if (!an_.is_convex(merged)) continue;
      bool connected = true;
      for (auto x : atom.indices())
        if (!an_.reach().above_within(x, merged).test(blk.top)) {
          connected = false;
          break;
        }
      if (!connected) continue;
      auto fresh = fresh_gens(a, merged);
      CellSet saved = blk.cells;
      std::size_t n_gens = blk.gens.size();
      blk.cells = merged;
      blk.gens.insert(blk.gens.end(), fresh.begin(), fresh.end());
      blk.atoms.push_back(a);
      if (stable_with_others(b, fresh, false)) dfs(t + 1);
      Block& again = blocks_[b];
      again.cells = std::move(saved);
      again.gens.resize(n_gens);
      again.atoms.pop_back();
      if (aborted_ || done_) return;
    }
  }

  void leaf() {
    if (first_coarser_ && blocks_.size() == atoms_.size()) return;
    std::vector<CellSet> cells;
    for (const auto& b : blocks_) cells.push_back(b.cells);
    if (!checker_.valid(cells)) return;
    ++valid_count_;
    for (const auto& b : blocks_)
      for (auto x : b.atoms) {
        auto r1 = find(b.atoms.front()), r2 = find(x);
        if (r1 != r2) parent_[std::max(r1, r2)] = std::min(r1, r2);
      }
    if (samples_.size() < opts_.keep) samples_.push_back(from_blocks(an_, checker_.flavor(), cells));
    if (first_coarser_) done_ = true;
  }

  const Analyzer& an_;
  ValidityChecker& checker_;
  OracleOptions opts_;
  std::vector<CellSet> atoms_;
  std::vector<std::size_t> visit_;
  std::vector<std::size_t> top_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> group_;
  std::vector<ComponentSystem> samples_;
  std::size_t nodes_ = 0;
  std::size_t valid_count_ = 0;
  bool first_coarser_ = false;
  bool aborted_ = false;
  bool done_ = false;
};

}  // namespace

namespace {

// Past searches prune in the opposite complex, where they become future ones.
struct PruneContext {
  std::unique_ptr<Analyzer> op;
  const Analyzer* an;
  PruneContext(const Analyzer& base, Flavor f) : an(&base) {
    if (f == Flavor::Past) {
      op = std::make_unique<Analyzer>(opposite(base.complex()), base.options());
      an = op.get();
    }
  }
};

}  // namespace

OracleResult oracle_from(const Analyzer& an, const ComponentSystem& start, const OracleOptions& opts) {
  if (start.components.size() > opts.cap)
    throw OracleCapExceeded("oracle: " + std::to_string(start.components.size()) + " components exceed cap " +
                            std::to_string(opts.cap));
  ValidityChecker checker(an, start.flavor);
  PruneContext ctx(an, start.flavor);
  PartitionSearch search(*ctx.an, checker, to_blocks(*ctx.an, start), opts);
  return search.run(start.flavor);
}

OracleResult exhaustive_oracle(const Analyzer& an, Flavor f, const OracleOptions& opts) {
  return oracle_from(an, canonical(an.complex(), f), opts);
}

namespace {

// Grow x until it is convex and a union of blocks.
CellSet close_over(const Analyzer& an, const std::vector<CellSet>& blocks, CellSet x) {
  while (true) {
    CellSet up(an.num_cells()), down(an.num_cells());
    for (auto f : x.indices()) {
      up |= an.reach().above(f);
      down |= an.reach().below(f);
    }
    CellSet grown = x | (up & down);
    for (const auto& b : blocks)
      if (b.intersects(grown)) grown |= b;
    if (grown == x) return x;
    x = std::move(grown);
  }
}

std::vector<CellSet> propose(const Analyzer& an, Flavor f, const std::vector<CellSet>& blocks) {
  const std::size_t n = blocks.size();
  auto order = an.component_order(blocks);
  std::vector<std::vector<char>> less(n, std::vector<char>(n, 0));
  for (auto [i, j] : order) less[i][j] = 1;
  std::set<CellSet> seen;
  std::vector<CellSet> out;
  auto add = [&](CellSet x) {
    x = close_over(an, blocks, std::move(x));
    for (const auto& b : blocks)
      if (b == x) return;  // no merge happened
    if (seen.insert(x).second) out.push_back(std::move(x));
  };
  for (auto [i, j] : order) add(blocks[i] | blocks[j]);
  for (std::size_t i = 0; i < n; ++i) {
    if (f != Flavor::Past) {
      CellSet up = blocks[i];
      for (std::size_t j = 0; j < n; ++j)
        if (less[i][j]) up |= blocks[j];
      add(up);
    }
    if (f != Flavor::Future) {
      CellSet down = blocks[i];
      for (std::size_t j = 0; j < n; ++j)
        if (less[j][i]) down |= blocks[j];
      add(down);
    }
  }
  CellSet all(an.num_cells());
  for (const auto& b : blocks) all |= b;
  add(all);
  return out;
}

std::vector<CellSet> replace_with(const std::vector<CellSet>& blocks, const CellSet& merged) {
  std::vector<CellSet> out;
  for (const auto& b : blocks)
    if (!b.intersects(merged)) out.push_back(b);
  out.push_back(merged);
  return out;
}

// Common refinement of two systems, with each block split into the pieces
// connected by comparability. Every valid total system refines both coarsest
// one-sided systems, so this bounds the total search from above.
std::vector<CellSet> split_meet(const Analyzer& an, const ComponentSystem& s1, const ComponentSystem& s2) {
  const std::size_t n = an.num_cells();
  std::vector<std::size_t> g1(n), g2(n), parent(n);
  auto b1 = to_blocks(an, s1), b2 = to_blocks(an, s2);
  for (std::size_t i = 0; i < b1.size(); ++i)
    for (auto x : b1[i].indices()) g1[x] = i;
  for (std::size_t i = 0; i < b2.size(); ++i)
    for (auto x : b2[i].indices()) g2[x] = i;
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (auto y : an.reach().above(x).indices())
      if (g1[x] == g1[y] && g2[x] == g2[y]) {
        auto rx = find(x), ry = find(y);
        if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
      }
  std::map<std::size_t, CellSet> by_root;
  for (std::size_t x = 0; x < n; ++x) {
    auto [it, _] = by_root.try_emplace(find(x), n);
    it->second.set(x);
  }
  std::vector<CellSet> out;
  for (auto& [r, b] : by_root) out.push_back(std::move(b));
  return out;
}

}  // namespace

CoarsestResult coarsest(const Analyzer& an, Flavor f, const SearchBudget& budget, const OracleOptions& oracle_opts) {
  CoarsestResult res;
  const PrecubicalSet& k = an.complex();
  ComponentSystem current = canonical(k, f);
  res.discovered.push_back(current);
  ValidityChecker checker(an, f);
  std::unique_ptr<PruneContext> ctx;
  bool exhausted = false;
  std::vector<std::size_t> meet_group;
  if (f == Flavor::Total) {
    SearchBudget side = budget;
    side.exhaustive = false;
    auto fut = coarsest(an, Flavor::Future, side);
    auto past = coarsest(an, Flavor::Past, side);
    auto meet = split_meet(an, fut.system, past.system);
    ++res.candidates;
    if (checker.valid(meet)) {
      auto sys = from_blocks(an, f, meet);
      res.discovered.push_back(sys);
      current = union_systems(k, current, sys);
    }
    if (fut.fixpoint && past.fixpoint) {
      meet_group.assign(an.num_cells(), 0);
      for (std::size_t i = 0; i < meet.size(); ++i)
        for (auto x : meet[i].indices()) meet_group[x] = i;
    }
  }
  while (true) {
    ++res.rounds;
    auto blocks = to_blocks(an, current);
    auto cands = propose(an, f, blocks);
    if (res.candidates + cands.size() > budget.max_candidates) {
      cands.resize(budget.max_candidates - std::min(budget.max_candidates, res.candidates));
      exhausted = true;
    }
    std::vector<char> ok(cands.size(), 0);
    parallel_for(cands.size(), an.options().threads,
                 [&](std::size_t i) { ok[i] = checker.valid(replace_with(blocks, cands[i])); });
    res.candidates += cands.size();
    ComponentSystem next = current;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (!ok[i]) continue;
      auto sys = from_blocks(an, f, replace_with(blocks, cands[i]));
      res.discovered.push_back(sys);
      next = union_systems(k, next, sys);
    }
    if (next == current && !exhausted && budget.guided_nodes > 0) {
      // No single merge is valid; look for a multi-block merge instead.
      if (!ctx) ctx = std::make_unique<PruneContext>(an, f);
      OracleOptions o;
      o.node_budget = budget.guided_nodes;
      o.keep = 1;
      PartitionSearch guided(*ctx->an, checker, blocks, o, true);
      if (!meet_group.empty()) {
        std::vector<std::size_t> g;
        for (const auto& b : blocks) g.push_back(meet_group[b.first()]);
        guided.set_groups(std::move(g));
      }
      auto found = guided.run(f);
      ++res.guided_searches;
      if (!found.samples.empty()) {
        res.discovered.push_back(found.samples.front());
        next = union_systems(k, next, found.samples.front());
      } else if (!found.complete) {
        exhausted = true;
      }
    }
    if (next == current || exhausted) {
      current = std::move(next);
      break;
    }
    current = std::move(next);
  }
  res.fixpoint = !exhausted;
  res.system = current;
  if (budget.exhaustive) {
    res.oracle_full = canonical(k, f).components.size() <= oracle_opts.cap;
    // Above the cap only coarsenings of the heuristic result are enumerated.
    res.oracle = res.oracle_full ? exhaustive_oracle(an, f, oracle_opts) : oracle_from(an, current, oracle_opts);
    res.heuristic_matches_oracle = res.oracle->complete && res.oracle->system == current;
    if (res.oracle->complete) {
      res.system = res.oracle->system;
      res.certified = checker.valid(to_blocks(an, res.system));
    }
  }
  return res;
}

Certificate certify_report(const Analyzer& an, const ComponentSystem& s, const OracleOptions& opts) {
  Certificate c;
  ComponentSystem norm = s;
  norm.normalize();
  if (!partition_error(an.complex(), norm).empty()) return c;
  ValidityChecker checker(an, s.flavor);
  c.valid = checker.valid(to_blocks(an, norm));
  if (!c.valid) return c;
  c.full = canonical(an.complex(), s.flavor).components.size() <= opts.cap;
  auto res = c.full ? exhaustive_oracle(an, s.flavor, opts) : oracle_from(an, norm, opts);
  c.complete = res.complete;
  c.nodes = res.nodes;
  c.certified = res.complete && res.system == norm;
  return c;
}

bool certify(const Analyzer& an, const ComponentSystem& s, const OracleOptions& opts) {
  return certify_report(an, s, opts).certified;
}

}  // namespace dcomp
