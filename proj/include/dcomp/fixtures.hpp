#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dcomp/components.hpp"
#include "dcomp/precubical.hpp"

namespace dcomp {

/// Builds 2-dimensional complexes out of unit squares on the integer grid,
/// with optional vertex identifications. Coordinate 1 is x, coordinate 2 is y.
class SquareComplexBuilder {
 public:
  using Point = std::pair<int, int>;

  /// Glue vertex `a` onto vertex `b` (must be called before adding cells).
  void identify(Point a, Point b) { alias_[a] = b; }
  void add_square(int x, int y);
  void add_edge(Point from, Point to);
  void add_vertex(Point p);

  PrecubicalSet build() const;

  static std::string vertex_label(Point p);
  static std::string edge_label(Point from, Point to);
  static std::string square_label(int x, int y);

 private:
  Point canon(Point p) const;

  std::map<Point, Point> alias_;
  std::vector<Point> vertices_;
  std::vector<std::pair<Point, Point>> edges_;
  std::vector<Point> squares_;
};

/// A reference example with named regions, each a set of cell labels.
struct NamedFixture {
  std::string name;
  PrecubicalSet complex;
  std::map<std::string, std::vector<CellId>> regions;

  /// System whose components are unions of the named regions, e.g. {"A", "BCD"}.
  ComponentSystem system(Flavor f, const std::vector<std::string>& groups) const;
};

/// X1: the boundary of the square. Regions A = {00}, D = {11},
/// B = {0*, 01, *1}, C = {*0, 10, 1*}.
NamedFixture ex_x1();
/// X2: 3x3 grid of squares without the middle one. A and D are the closed
/// corner squares, B the upper-left arm and C the lower-right arm.
NamedFixture ex_x2();
/// X3: squares A=[0,1]^2, B=[0,1]x[1,2], C=[1,2]x[0,1], D=[2,3]x[0,1] with
/// the top edge of B glued onto the bottom edge of D.
NamedFixture ex_x3();

/// The single vertex.
PrecubicalSet point_complex();

}  // namespace dcomp
