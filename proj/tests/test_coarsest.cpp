#include <doctest.h>

#include "dcomp/coarsest.hpp"
#include "dcomp/fixtures.hpp"
#include "support.hpp"

using namespace dcomp;

TEST_CASE("coarsest systems of the X fixtures") {
  for (const auto& fx : {ex_x1(), ex_x2(), ex_x3()}) {
    CAPTURE(fx.name);
    Analyzer an(fx.complex, {2, false});
    CHECK(coarsest(an, Flavor::Future).system == fx.system(Flavor::Future, {"A", "BCD"}));
    CHECK(coarsest(an, Flavor::Past).system == fx.system(Flavor::Past, {"ABC", "D"}));
    CHECK(coarsest(an, Flavor::Total).system == fx.system(Flavor::Total, {"A", "B", "C", "D"}));
  }
}

TEST_CASE("coarsest systems of cubes") {
  Analyzer b3(boundary_cube(3), {2, false});
  CHECK(coarsest(b3, Flavor::Total).system.components.size() == 1);
  Analyzer b2(boundary_cube(2));
  auto fut = coarsest(b2, Flavor::Future).system;
  REQUIRE(fut.components.size() == 2);
  CHECK(fut.components[0] == std::vector<CellId>{*b2.complex().find_label("00")});
  Analyzer sq(standard_cube(2));
  CHECK(coarsest(sq, Flavor::Total).system.components.size() == 1);
  Analyzer pt(point_complex());
  CHECK(coarsest(pt, Flavor::Total).system.components.size() == 1);
}

TEST_CASE("heuristic agrees with the oracle on random small complexes") {
  testing::Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    auto k = testing::random_complex(rng);
    Analyzer an(k);
    for (auto f : {Flavor::Future, Flavor::Past, Flavor::Total}) {
      if (canonical(k, f).components.size() > 14) continue;
      auto h = coarsest(an, f);
      auto o = exhaustive_oracle(an, f);
      REQUIRE(o.complete);
      CHECK(h.system == o.system);
      CHECK(h.fixpoint);
      CHECK(an.check_system(h.system).valid);
      CHECK(refines(canonical(k, f), h.system));
      // Lattice top: every valid system the oracle met is absorbed.
      for (const auto& s : o.samples) CHECK(union_systems(k, h.system, s) == h.system);
    }
  }
}

TEST_CASE("certification") {
  auto fx = ex_x3();
  Analyzer an(fx.complex);
  CHECK(certify(an, fx.system(Flavor::Total, {"A", "B", "C", "D"})));
  CHECK_FALSE(certify(an, canonical_total(fx.complex)));
  CHECK_FALSE(certify(an, fx.system(Flavor::Total, {"AD", "B", "C"})));
  auto r = certify_report(an, fx.system(Flavor::Future, {"A", "BCD"}));
  CHECK(r.full);
  CHECK(r.certified);
}

TEST_CASE("oracle cap") {
  Analyzer an(ex_x2().complex);
  CHECK_THROWS_AS(exhaustive_oracle(an, Flavor::Total), OracleCapExceeded);
}

TEST_CASE("coarsest is deterministic across thread counts") {
  auto k = ex_x2().complex;
  Analyzer a1(k, {1, false}), a4(k, {4, false});
  for (auto f : {Flavor::Future, Flavor::Past, Flavor::Total}) CHECK(coarsest(a1, f).system == coarsest(a4, f).system);
}
