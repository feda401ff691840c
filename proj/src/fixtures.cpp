#include "dcomp/fixtures.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dcomp {

SquareComplexBuilder::Point SquareComplexBuilder::canon(Point p) const {
  for (auto it = alias_.find(p); it != alias_.end(); it = alias_.find(p)) p = it->second;
  return p;
}

void SquareComplexBuilder::add_vertex(Point p) { vertices_.push_back(canon(p)); }

void SquareComplexBuilder::add_edge(Point from, Point to) {
  add_vertex(from);
  add_vertex(to);
  edges_.emplace_back(canon(from), canon(to));
}

void SquareComplexBuilder::add_square(int x, int y) {
  add_edge({x, y}, {x + 1, y});
  add_edge({x, y + 1}, {x + 1, y + 1});
  add_edge({x, y}, {x, y + 1});
  add_edge({x + 1, y}, {x + 1, y + 1});
  squares_.emplace_back(x, y);
}

std::string SquareComplexBuilder::vertex_label(Point p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::string SquareComplexBuilder::edge_label(Point from, Point to) {
  return vertex_label(from) + "-" + vertex_label(to);
}

std::string SquareComplexBuilder::square_label(int x, int y) {
  return "sq" + vertex_label({x, y});
}

PrecubicalSet SquareComplexBuilder::build() const {
  std::set<Point> vs(vertices_.begin(), vertices_.end());
  std::set<std::pair<Point, Point>> es(edges_.begin(), edges_.end());
  std::set<Point> qs(squares_.begin(), squares_.end());
  std::vector<Point> vlist(vs.begin(), vs.end());
  std::vector<std::pair<Point, Point>> elist(es.begin(), es.end());
  std::vector<Point> qlist(qs.begin(), qs.end());
  auto vidx = [&](Point p) {
    return static_cast<std::uint32_t>(std::lower_bound(vlist.begin(), vlist.end(), canon(p)) - vlist.begin());
  };
  auto eidx = [&](Point a, Point b) {
    std::pair<Point, Point> key{canon(a), canon(b)};
    auto it = std::lower_bound(elist.begin(), elist.end(), key);
    if (it == elist.end() || *it != key) throw std::logic_error("missing edge");
    return static_cast<std::uint32_t>(it - elist.begin());
  };
  std::vector<std::uint32_t> counts{static_cast<std::uint32_t>(vlist.size())};
  if (!elist.empty()) counts.push_back(static_cast<std::uint32_t>(elist.size()));
  if (!qlist.empty()) counts.push_back(static_cast<std::uint32_t>(qlist.size()));
  PrecubicalSet k(counts);
  for (std::uint32_t i = 0; i < vlist.size(); ++i) k.set_label({0, i}, vertex_label(vlist[i]));
  for (std::uint32_t i = 0; i < elist.size(); ++i) {
    const auto& [a, b] = elist[i];
    k.set_label({1, i}, edge_label(a, b));
    k.set_face({1, i}, 1, 0, vidx(a));
    k.set_face({1, i}, 1, 1, vidx(b));
  }
  for (std::uint32_t i = 0; i < qlist.size(); ++i) {
    auto [x, y] = qlist[i];
    CellId q{2, i};
    k.set_label(q, square_label(x, y));
    k.set_face(q, 1, 0, eidx({x, y}, {x, y + 1}));
    k.set_face(q, 1, 1, eidx({x + 1, y}, {x + 1, y + 1}));
    k.set_face(q, 2, 0, eidx({x, y}, {x + 1, y}));
    k.set_face(q, 2, 1, eidx({x, y + 1}, {x + 1, y + 1}));
  }
  return k;
}

ComponentSystem NamedFixture::system(Flavor f, const std::vector<std::string>& groups) const {
  ComponentSystem s{f, {}};
  for (const auto& g : groups) {
    std::vector<CellId> cells;
    for (char r : g) {
      const auto& part = regions.at(std::string(1, r));
      cells.insert(cells.end(), part.begin(), part.end());
    }
    s.components.push_back(std::move(cells));
  }
  s.normalize();
  return s;
}

namespace {

CellId by_label(const PrecubicalSet& k, const std::string& label) {
  auto c = k.find_label(label);
  if (!c) throw std::logic_error("no cell labelled " + label);
  return *c;
}

std::set<CellId> closure(const PrecubicalSet& k, std::vector<CellId> cells) {
  std::set<CellId> out;
  while (!cells.empty()) {
    CellId c = cells.back();
    cells.pop_back();
    if (!out.insert(c).second) continue;
    for (unsigned i = 1; i <= c.dim; ++i)
      for (int e = 0; e < 2; ++e) cells.push_back(k.face(c, i, e));
  }
  return out;
}

std::vector<CellId> minus(const std::set<CellId>& a, const std::set<CellId>& b, const std::set<CellId>& c) {
  std::vector<CellId> out;
  for (CellId x : a)
    if (!b.count(x) && !c.count(x)) out.push_back(x);
  return out;
}

std::vector<CellId> squares_of(const PrecubicalSet& k, std::initializer_list<std::pair<int, int>> sq) {
  std::vector<CellId> out;
  for (auto [x, y] : sq) out.push_back(by_label(k, SquareComplexBuilder::square_label(x, y)));
  return out;
}

NamedFixture four_regions(std::string name, PrecubicalSet k, std::vector<CellId> a_sq, std::vector<CellId> d_sq,
                          std::vector<CellId> b_sq, std::vector<CellId> c_sq) {
  auto a = closure(k, a_sq), d = closure(k, d_sq);
  NamedFixture fx{std::move(name), k, {}};
  fx.regions["A"] = {a.begin(), a.end()};
  fx.regions["D"] = {d.begin(), d.end()};
  fx.regions["B"] = minus(closure(k, b_sq), a, d);
  fx.regions["C"] = minus(closure(k, c_sq), a, d);
  fx.complex = std::move(k);
  return fx;
}

}  // namespace

NamedFixture ex_x1() {
  NamedFixture fx{"ex_x1", boundary_cube(2), {}};
  auto pick = [&](std::initializer_list<const char*> labels) {
    std::vector<CellId> out;
    for (const char* l : labels) out.push_back(by_label(fx.complex, l));
    std::sort(out.begin(), out.end());
    return out;
  };
  fx.regions["A"] = pick({"00"});
  fx.regions["B"] = pick({"0*", "01", "*1"});
  fx.regions["C"] = pick({"*0", "10", "1*"});
  fx.regions["D"] = pick({"11"});
  return fx;
}

NamedFixture ex_x2() {
  SquareComplexBuilder b;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x != 1 || y != 1) b.add_square(x, y);
  PrecubicalSet k = b.build();
  auto a = squares_of(k, {{0, 0}}), d = squares_of(k, {{2, 2}});
  auto bs = squares_of(k, {{0, 1}, {0, 2}, {1, 2}}), cs = squares_of(k, {{1, 0}, {2, 0}, {2, 1}});
  return four_regions("ex_x2", std::move(k), a, d, bs, cs);
}

NamedFixture ex_x3() {
  SquareComplexBuilder b;
  b.identify({0, 2}, {2, 0});
  b.identify({1, 2}, {3, 0});
  b.add_square(0, 0);
  b.add_square(0, 1);
  b.add_square(1, 0);
  b.add_square(2, 0);
  PrecubicalSet k = b.build();
  auto a = squares_of(k, {{0, 0}}), d = squares_of(k, {{2, 0}});
  auto bs = squares_of(k, {{0, 1}}), cs = squares_of(k, {{1, 0}});
  return four_regions("ex_x3", std::move(k), a, d, bs, cs);
}

PrecubicalSet point_complex() {
  PrecubicalSet k({1});
  k.set_label({0, 0}, "*");
  return k;
}

}  // namespace dcomp
