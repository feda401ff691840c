#include "dcomp/components.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "dcomp/json_io.hpp"
#include "dcomp/parallel.hpp"

namespace dcomp {

using nlohmann::json;

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Future:
      return "future";
    case Flavor::Past:
      return "past";
    case Flavor::Total:
      return "total";
  }
  return "?";
}

Flavor flavor_from_string(const std::string& s) {
  if (s == "future") return Flavor::Future;
  if (s == "past") return Flavor::Past;
  if (s == "total") return Flavor::Total;
  throw FormatError("unknown flavor: " + s);
}

void ComponentSystem::normalize() {
  for (auto& c : components) std::sort(c.begin(), c.end());
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.empty() ? !b.empty() : (!b.empty() && a[0] < b[0]); });
}

std::string partition_error(const PrecubicalSet& k, const ComponentSystem& s) {
  std::vector<int> owner(k.num_cells(), -1);
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    if (s.components[i].empty()) return "component " + std::to_string(i) + " is empty";
    for (CellId c : s.components[i]) {
      if (!k.contains(c)) return "cell " + to_string(c) + " out of range";
      auto& o = owner[k.flat(c)];
      if (o != -1) return "cell " + to_string(c) + " appears twice";
      o = static_cast<int>(i);
    }
  }
  for (std::size_t f = 0; f < owner.size(); ++f)
    if (owner[f] == -1) return "cell " + to_string(k.cell(f)) + " not covered";
  return {};
}

namespace {

ComponentSystem group_cells(const PrecubicalSet& k, Flavor flavor, auto&& key) {
  std::map<std::size_t, std::vector<CellId>> groups;
  for (std::size_t f = 0; f < k.num_cells(); ++f) groups[key(k.cell(f))].push_back(k.cell(f));
  ComponentSystem s{flavor, {}};
  for (auto& [_, cells] : groups) s.components.push_back(std::move(cells));
  s.normalize();
  return s;
}

}  // namespace

ComponentSystem canonical_total(const PrecubicalSet& k) {
  return group_cells(k, Flavor::Total, [&](CellId c) { return k.flat(c); });
}

ComponentSystem canonical_future(const PrecubicalSet& k) {
  return group_cells(k, Flavor::Future, [&](CellId c) { return k.flat(final_vertex(k, c)); });
}

ComponentSystem canonical_past(const PrecubicalSet& k) {
  return group_cells(k, Flavor::Past, [&](CellId c) { return k.flat(initial_vertex(k, c)); });
}

ComponentSystem union_systems(const PrecubicalSet& k, const ComponentSystem& a, const ComponentSystem& b) {
  if (a.flavor != b.flavor) throw std::invalid_argument("union_systems: flavor mismatch");
  for (const auto* s : {&a, &b})
    if (auto err = partition_error(k, *s); !err.empty()) throw std::invalid_argument("union_systems: " + err);
  std::vector<std::size_t> parent(k.num_cells());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto* s : {&a, &b})
    for (const auto& comp : s->components)
      for (CellId c : comp) {
        auto r1 = find(k.flat(comp[0])), r2 = find(k.flat(c));
        if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
      }
  return group_cells(k, a.flavor, [&](CellId c) { return find(k.flat(c)); });
}

bool refines(const ComponentSystem& fine, const ComponentSystem& coarse) {
  std::map<CellId, std::size_t> owner;
  for (std::size_t i = 0; i < coarse.components.size(); ++i)
    for (CellId c : coarse.components[i]) owner[c] = i;
  for (const auto& comp : fine.components) {
    if (comp.empty()) continue;
    auto it = owner.find(comp[0]);
    if (it == owner.end()) return false;
    for (CellId c : comp) {
      auto jt = owner.find(c);
      if (jt == owner.end() || jt->second != it->second) return false;
    }
  }
  return true;
}

ComponentSystem canonical(const PrecubicalSet& k, Flavor f) {
  switch (f) {
    case Flavor::Future:
      return canonical_future(k);
    case Flavor::Past:
      return canonical_past(k);
    case Flavor::Total:
      break;
  }
  return canonical_total(k);
}

json system_to_json(const ComponentSystem& s) {
  json comps = json::array();
  for (const auto& comp : s.components) {
    json cells = json::array();
    for (CellId c : comp) cells.push_back(cell_to_json(c));
    comps.push_back(std::move(cells));
  }
  return {{"flavor", to_string(s.flavor)}, {"components", std::move(comps)}};
}

ComponentSystem system_from_json(const json& j, const PrecubicalSet& k) {
  if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
    throw FormatError("system: missing \"components\" array");
  ComponentSystem s;
  s.flavor = flavor_from_string(j.value("flavor", std::string("total")));
  for (const auto& comp : j["components"]) {
    if (!comp.is_array()) throw FormatError("system: component must be an array of cells");
    std::vector<CellId> cells;
    for (const auto& c : comp) cells.push_back(cell_from_json(c, k));
    s.components.push_back(std::move(cells));
  }
  return s;
}

// ---------------------------------------------------------------------------

Analyzer::Analyzer(const PrecubicalSet& k, AnalyzerOptions opts)
    : k_(k), opts_(opts), reach_((has_loops(k) ? throw PrecubicalError("complex has loops") : k)), sub_(subdivide(k)) {
  paths_ = std::make_unique<PathIndex>(sub_.complex, opts_.threads);
  const std::size_t n = k_.num_cells();
  gens_from_.resize(n);
  gens_to_.resize(n);
  auto add = [&](std::size_t from, std::size_t to, EdgePath path) {
    Generator g{from, to, center(from), center(to), std::move(path)};
    gens_from_[from].push_back(gens_.size());
    gens_to_[to].push_back(gens_.size());
    gens_.push_back(std::move(g));
  };
  for (std::size_t f = 0; f < n; ++f) add(f, f, {});
  for (std::size_t f = 0; f < n; ++f) {
    CellId c = k_.cell(f);
    for (std::uint32_t mask = 1; mask < (1U << c.dim); ++mask) {
      // Lower step: from the center of d^0_J c up to the center of c.
      std::vector<Sub> p(c.dim, Sub::H);
      for (unsigned j = 0; j < c.dim; ++j)
        if (mask & (1U << j)) p[j] = Sub::Zero;
      EdgePath lower;
      for (unsigned j = 0; j < c.dim; ++j) {
        if (!(mask & (1U << j))) continue;
        auto w = p;
        w[j] = Sub::L;
        lower.push_back(sub_.lift(k_, c, w).index);
        p[j] = Sub::H;
      }
      add(k_.flat(k_.face_multi(c, mask, 0)), f, std::move(lower));
      // Upper step: from the center of c to the center of d^1_J c.
      EdgePath upper;
      for (unsigned j = 0; j < c.dim; ++j) {
        if (!(mask & (1U << j))) continue;
        auto w = p;
        w[j] = Sub::U;
        upper.push_back(sub_.lift(k_, c, w).index);
        p[j] = Sub::One;
      }
      add(f, k_.flat(k_.face_multi(c, mask, 1)), std::move(upper));
    }
  }
  const std::size_t g = gens_.size();
  bij_cache_.reset(new std::atomic<std::uint8_t>[g * g]);
  for (std::size_t i = 0; i < g * g; ++i) bij_cache_[i].store(0, std::memory_order_relaxed);
}

Analyzer::~Analyzer() = default;

CellSet Analyzer::to_set(const std::vector<CellId>& cells) const {
  CellSet s(num_cells());
  for (CellId c : cells) s.set(k_.flat(c));
  return s;
}

std::vector<CellId> Analyzer::to_cells(const CellSet& s) const {
  std::vector<CellId> out;
  for (auto f : s.indices()) out.push_back(k_.cell(f));
  return out;
}

bool Analyzer::is_convex(const CellSet& c) const {
  CellSet up(num_cells()), down(num_cells());
  for (auto f : c.indices()) {
    up |= reach_.above(f);
    down |= reach_.below(f);
  }
  return (up & down).subset_of(c);
}

bool Analyzer::is_future_connected(const CellSet& c) const {
  auto idx = c.indices();
  std::vector<CellSet> ups;
  for (auto f : idx) ups.push_back(reach_.above_within(f, c));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (!ups[a].intersects(ups[b])) return false;
  return true;
}

bool Analyzer::is_past_connected(const CellSet& c) const {
  // Cells below x inside c: run the restricted search on reversed steps.
  auto idx = c.indices();
  std::vector<CellSet> downs(idx.size(), CellSet(num_cells()));
  for (std::size_t b = 0; b < idx.size(); ++b) {
    const CellSet up = reach_.above_within(idx[b], c);
    for (std::size_t a = 0; a < idx.size(); ++a)
      if (up.test(idx[a])) downs[a].set(idx[b]);
  }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (!downs[a].intersects(downs[b])) return false;
  return true;
}

std::optional<std::size_t> Analyzer::final_cell(const CellSet& c) const {
  if (c.empty()) return std::nullopt;
  CellSet common = c;
  for (auto f : c.indices()) common &= reach_.above_within(f, c);
  if (common.empty()) return std::nullopt;
  return common.first();  // antisymmetry leaves a single candidate
}

std::optional<std::size_t> Analyzer::initial_cell(const CellSet& c) const {
  if (c.empty()) return std::nullopt;
  for (auto z : c.indices()) {
    const CellSet up = reach_.above_within(z, c);
    if (c.subset_of(up)) return z;
  }
  return std::nullopt;
}

std::size_t Analyzer::cofinal_cell(const CellSet& c) const {
  for (auto z : c.indices()) {
    CellSet up = reach_.above(z) & c;
    if (up.count() == 1) return z;
  }
  throw std::invalid_argument("cofinal_cell: empty set");
}

std::size_t Analyzer::coinitial_cell(const CellSet& c) const {
  for (auto z : c.indices()) {
    CellSet down = reach_.below(z) & c;
    if (down.count() == 1) return z;
  }
  throw std::invalid_argument("coinitial_cell: empty set");
}

bool Analyzer::bij(std::size_t alpha, std::size_t beta) const {
  auto& slot = bij_cache_[alpha * gens_.size() + beta];
  if (auto v = slot.load(std::memory_order_relaxed); v != 0) return v == 2;
  const Generator& a = gens_[alpha];
  const Generator& b = gens_[beta];
  const PathIndex& P = *paths_;
  const std::size_t n1 = P.count(a.to_pt, b.from_pt);
  const std::size_t n2 = P.count(a.from_pt, b.to_pt);
  bool ok = (n1 == n2);
  if (ok && n1 > 0) {
    const std::uint32_t tail = P.class_of(b.to_pt, b.path);
    std::vector<char> hit(n2, 0);
    for (std::size_t r = 0; r < n1 && ok; ++r) {
      std::uint32_t x = P.prepend(b.to_pt, P.representative(a.to_pt, b.from_pt, r), tail);
      x = P.prepend(b.to_pt, a.path, x);
      if (hit[x]) ok = false;
      hit[x] = 1;
    }
  }
  slot.store(ok ? 2 : 1, std::memory_order_relaxed);
  return ok;
}

bool Analyzer::future_stabilizes(std::size_t alpha, std::size_t z, const CellSet& b) const {
  const CellSet above = reach_.above(z) & b;
  for (auto y : above.indices())
    for (auto beta : gens_from_[y])
      if (b.test(gens_[beta].to_cell) && !bij(alpha, beta)) return false;
  return true;
}

bool Analyzer::past_stabilizes(const CellSet& a, std::size_t w, std::size_t beta) const {
  const CellSet below = reach_.below(w) & a;
  for (auto x : below.indices())
    for (auto alpha : gens_to_[x])
      if (a.test(gens_[alpha].from_cell) && !bij(alpha, beta)) return false;
  return true;
}

namespace {

std::vector<std::size_t> extremal(const Reachability& r, const CellSet& c, bool top) {
  std::vector<std::size_t> out;
  for (auto z : c.indices())
    if (((top ? r.above(z) : r.below(z)) & c).count() == 1) out.push_back(z);
  return out;
}

}  // namespace

std::optional<std::size_t> Analyzer::future_witness(std::size_t alpha, const CellSet& b) const {
  for (auto z : extremal(reach_, b, true))
    if (future_stabilizes(alpha, z, b)) return z;
  return std::nullopt;
}

std::optional<std::size_t> Analyzer::past_witness(const CellSet& a, std::size_t beta) const {
  for (auto w : extremal(reach_, a, false))
    if (past_stabilizes(a, w, beta)) return w;
  return std::nullopt;
}

std::vector<std::size_t> Analyzer::generators_in(const CellSet& c) const {
  std::vector<std::size_t> out;
  for (auto f : c.indices())
    for (auto g : gens_from_[f])
      if (c.test(gens_[g].to_cell)) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

StabilityReport Analyzer::future_stable(const CellSet& a, const CellSet& b, bool stop_early) const {
  StabilityReport rep;
  const auto tops = extremal(reach_, b, true);
  for (auto alpha : generators_in(a)) {
    GeneratorWitness w{alpha, future_witness(alpha, b), std::nullopt, std::nullopt};
    if (!w.stabilizer) {
      rep.verdict = false;
      if (!tops.empty()) {
        w.failed_at = tops.front();
        for (auto y : (reach_.above(tops.front()) & b).indices())
          for (auto beta : gens_from_[y])
            if (!w.failing_generator && b.test(gens_[beta].to_cell) && !bij(alpha, beta)) w.failing_generator = beta;
      }
    }
    rep.witnesses.push_back(w);
    if (!rep.verdict && stop_early) break;
  }
  return rep;
}

StabilityReport Analyzer::past_stable(const CellSet& a, const CellSet& b, bool stop_early) const {
  StabilityReport rep;
  const auto bottoms = extremal(reach_, a, false);
  for (auto beta : generators_in(b)) {
    GeneratorWitness w{beta, past_witness(a, beta), std::nullopt, std::nullopt};
    if (!w.stabilizer) {
      rep.verdict = false;
      if (!bottoms.empty()) {
        w.failed_at = bottoms.front();
        for (auto x : (reach_.below(bottoms.front()) & a).indices())
          for (auto alpha : gens_to_[x])
            if (!w.failing_generator && a.test(gens_[alpha].from_cell) && !bij(alpha, beta))
              w.failing_generator = alpha;
      }
    }
    rep.witnesses.push_back(w);
    if (!rep.verdict && stop_early) break;
  }
  return rep;
}

std::optional<std::pair<std::size_t, std::size_t>> Analyzer::stabilizing_pair(const CellSet& a,
                                                                              const CellSet& b) const {
  // Constant generators share their cell's flat id.
  for (auto x : extremal(reach_, a, false))
    for (auto y : extremal(reach_, b, true))
      if (future_stabilizes(x, y, b) && past_stabilizes(a, x, y)) return std::pair{x, y};
  return std::nullopt;
}

StabilityReport Analyzer::total_stable(const CellSet& a, const CellSet& b, bool stop_early) const {
  StabilityReport rep = future_stable(a, b, stop_early);
  if (stop_early && !rep.verdict) return rep;
  StabilityReport past = past_stable(a, b, stop_early);
  rep.verdict = rep.verdict && past.verdict;
  rep.witnesses.insert(rep.witnesses.end(), past.witnesses.begin(), past.witnesses.end());
  if (stop_early && !rep.verdict) return rep;
  rep.stabilizing_pair = stabilizing_pair(a, b);
  rep.verdict = rep.verdict && rep.stabilizing_pair.has_value();
  return rep;
}

bool Analyzer::is_trivial(const CellSet& c, Flavor f) const {
  if (c.empty()) return false;
  if (f == Flavor::Total) return is_trivial(c, Flavor::Future) && is_trivial(c, Flavor::Past);
  const std::size_t x = c.first();
  if (f == Flavor::Future) {
    if (!future_stable(c, c, true).verdict) return false;
    auto z = future_witness(x, c);
    return z && paths_->count(center(x), center(*z)) == 1;
  }
  if (!past_stable(c, c, true).verdict) return false;
  auto w = past_witness(c, x);
  return w && paths_->count(center(*w), center(x)) == 1;
}

HomSet Analyzer::stable_hom(const CellSet& a, const CellSet& b, Flavor f) const {
  if (a.empty() || b.empty()) throw std::invalid_argument("stable_hom: empty component");
  std::size_t from = 0, to = 0;
  if (f == Flavor::Future) {
    from = a.first();
    auto z = future_witness(from, b);
    if (!z) throw std::logic_error("stable_hom: no future stabilizer");
    to = *z;
  } else if (f == Flavor::Past) {
    to = b.first();
    auto w = past_witness(a, to);
    if (!w) throw std::logic_error("stable_hom: no past stabilizer");
    from = *w;
  } else {
    auto p = stabilizing_pair(a, b);
    if (!p) throw std::logic_error("stable_hom: no stabilizing pair");
    std::tie(from, to) = *p;
  }
  return paths_->hom(center(from), center(to));
}

std::vector<std::pair<std::size_t, std::size_t>> Analyzer::component_order(const std::vector<CellSet>& comps) const {
  std::vector<CellSet> ups;
  for (const auto& c : comps) {
    CellSet up(num_cells());
    for (auto f : c.indices()) up |= reach_.above(f);
    ups.push_back(std::move(up));
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = 0; j < comps.size(); ++j)
      if (i != j && ups[i].intersects(comps[j])) out.emplace_back(i, j);
  return out;
}

SystemReport Analyzer::check_system(const ComponentSystem& s) const {
  SystemReport r;
  r.flavor = s.flavor;
  r.partition_error = partition_error(k_, s);
  if (!r.partition_error.empty()) return r;
  std::vector<CellSet> comps;
  for (const auto& c : s.components) comps.push_back(to_set(c));
  const std::size_t n = comps.size();
  const bool fut = s.flavor != Flavor::Past, pst = s.flavor != Flavor::Future;

  r.components.resize(n);
  parallel_for(n, opts_.threads, [&](std::size_t i) {
    auto& cr = r.components[i];
    cr.convex = is_convex(comps[i]);
    cr.future_connected = is_future_connected(comps[i]);
    cr.past_connected = is_past_connected(comps[i]);
    cr.final_cell = final_cell(comps[i]);
    cr.initial_cell = initial_cell(comps[i]);
    // A single cell needs no pair checks: its stable hom is its own center.
    bool single_point = num_cells() == 1;
    cr.future_trivial = single_point || is_trivial(comps[i], Flavor::Future);
    cr.past_trivial = single_point || is_trivial(comps[i], Flavor::Past);
  });

  r.pairs.resize(n * n);
  parallel_for(n * n, opts_.threads, [&](std::size_t t) {
    auto& pr = r.pairs[t];
    pr.i = t / n;
    pr.j = t % n;
    if (num_cells() == 1) {
      pr.future = pr.past = pr.total = true;
      pr.stabilizing_pair = std::pair<std::size_t, std::size_t>{0, 0};
      return;
    }
    const auto& a = comps[pr.i];
    const auto& b = comps[pr.j];
    if (fut) pr.future = future_stable(a, b, true).verdict;
    if (pst) pr.past = past_stable(a, b, true).verdict;
    if (s.flavor == Flavor::Total) {
      pr.stabilizing_pair = stabilizing_pair(a, b);
      pr.total = pr.future && pr.past && pr.stabilizing_pair.has_value();
    }
  });

  r.order = component_order(comps);
  for (auto [i, j] : r.order)
    if (std::find(r.order.begin(), r.order.end(), std::pair{j, i}) != r.order.end()) r.antisymmetric = false;

  bool ok = r.antisymmetric;
  bool closed_f = true, closed_p = true;
  for (const auto& cr : r.components) {
    ok = ok && cr.convex;
    if (fut) ok = ok && cr.future_connected && cr.future_trivial;
    if (pst) ok = ok && cr.past_connected && cr.past_trivial;
    closed_f = closed_f && cr.final_cell && k_.cell(*cr.final_cell).dim == 0;
    closed_p = closed_p && cr.initial_cell && k_.cell(*cr.initial_cell).dim == 0;
  }
  for (const auto& pr : r.pairs) {
    if (fut) ok = ok && pr.future;
    if (pst) ok = ok && pr.past;
    if (s.flavor == Flavor::Total) ok = ok && pr.total;
  }
  r.closed = (!fut || closed_f) && (!pst || closed_p);
  r.valid = ok;
  if (opts_.deep) {
    Analyzer inner(sub_.complex, {opts_.threads, false});
    r.deep_valid = inner.check_system(lift_system(*this, s)).valid;
  }
  return r;
}

ComponentSystem lift_system(const Analyzer& an, const ComponentSystem& s) {
  const auto& sub = an.subdivision();
  const auto& k = an.complex();
  std::vector<std::size_t> owner(k.num_cells(), 0);
  for (std::size_t i = 0; i < s.components.size(); ++i)
    for (CellId c : s.components[i]) owner[k.flat(c)] = i;
  ComponentSystem out{s.flavor, std::vector<std::vector<CellId>>(s.components.size())};
  for (std::size_t f = 0; f < sub.complex.num_cells(); ++f)
    out.components[owner[sub.parent[f]]].push_back(sub.complex.cell(f));
  out.normalize();
  return out;
}

namespace {

json opt_cell(const Analyzer& an, std::optional<std::size_t> f) {
  return f ? cell_to_json(an.complex().cell(*f)) : json(nullptr);
}

json opt_pair(const Analyzer& an, const std::optional<std::pair<std::size_t, std::size_t>>& p) {
  if (!p) return nullptr;
  return json::array({cell_to_json(an.complex().cell(p->first)), cell_to_json(an.complex().cell(p->second))});
}

}  // namespace

json report_to_json(const Analyzer& an, const SystemReport& r) {
  json j;
  j["flavor"] = to_string(r.flavor);
  j["valid"] = r.valid;
  if (!r.partition_error.empty()) {
    j["partition_error"] = r.partition_error;
    return j;
  }
  j["closed"] = r.closed;
  j["antisymmetric"] = r.antisymmetric;
  json comps = json::array();
  for (const auto& c : r.components)
    comps.push_back({{"convex", c.convex},
                     {"future_connected", c.future_connected},
                     {"past_connected", c.past_connected},
                     {"future_trivial", c.future_trivial},
                     {"past_trivial", c.past_trivial},
                     {"final_cell", opt_cell(an, c.final_cell)},
                     {"initial_cell", opt_cell(an, c.initial_cell)}});
  j["components"] = std::move(comps);
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    json e = {{"i", p.i}, {"j", p.j}};
    if (r.flavor != Flavor::Past) e["future"] = p.future;
    if (r.flavor != Flavor::Future) e["past"] = p.past;
    if (r.flavor == Flavor::Total) {
      e["total"] = p.total;
      e["stabilizing_pair"] = opt_pair(an, p.stabilizing_pair);
    }
    pairs.push_back(std::move(e));
  }
  j["pairs"] = std::move(pairs);
  j["order"] = r.order;
  if (r.deep_valid) j["deep_valid"] = *r.deep_valid;
  return j;
}

json stability_to_json(const Analyzer& an, const StabilityReport& r) {
  json ws = json::array();
  for (const auto& w : r.witnesses) {
    const auto& g = an.generators()[w.generator];
    json e = {{"generator", w.generator},
              {"from", cell_to_json(an.complex().cell(g.from_cell))},
              {"to", cell_to_json(an.complex().cell(g.to_cell))},
              {"stabilizer", opt_cell(an, w.stabilizer)}};
    if (w.failed_at) e["failed_at"] = opt_cell(an, w.failed_at);
    if (w.failing_generator) e["failing_generator"] = *w.failing_generator;
    ws.push_back(std::move(e));
  }
  json j = {{"verdict", r.verdict}, {"witnesses", std::move(ws)}};
  if (r.stabilizing_pair) j["stabilizing_pair"] = opt_pair(an, r.stabilizing_pair);
  return j;
}

}  // namespace dcomp
