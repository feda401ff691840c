#include <doctest.h>

#include <numeric>

#include "dcomp/fixtures.hpp"
#include "dcomp/paths.hpp"
#include "dcomp/subdivision.hpp"
#include "support.hpp"

using namespace dcomp;

namespace {

std::uint32_t vertex(const PrecubicalSet& k, const std::string& label) { return k.find_label(label)->index; }

// Lattice paths of the n-cube are permutations of the axes; two paths are
// related by a square iff they differ by one adjacent transposition.
std::size_t permutation_classes(unsigned n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::size_t> parent(perms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (unsigned t = 0; t + 1 < n; ++t) {
      auto q = perms[a];
      std::swap(q[t], q[t + 1]);
      auto b = std::lower_bound(perms.begin(), perms.end(), q) - perms.begin();
      parent[find(a)] = find(static_cast<std::size_t>(b));
    }
  std::size_t roots = 0;
  for (std::size_t a = 0; a < perms.size(); ++a) roots += find(a) == a;
  return roots;
}

}  // namespace

TEST_CASE("edge path enumeration") {
  auto sq = standard_cube(2);
  CHECK(enumerate_edge_paths(sq, vertex(sq, "00"), vertex(sq, "11")).size() == 2);
  auto b3 = boundary_cube(3);
  CHECK(enumerate_edge_paths(b3, vertex(b3, "000"), vertex(b3, "111")).size() == 6);
  auto paths = enumerate_edge_paths(sq, 0, 0);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].empty());
  CHECK(enumerate_edge_paths(sq, vertex(sq, "11"), vertex(sq, "00")).empty());
}

TEST_CASE("hom-set sizes of cubes") {
  auto b2 = boundary_cube(2);
  CHECK(hom_set(b2, vertex(b2, "00"), vertex(b2, "11")).size() == 2);
  auto b3 = boundary_cube(3);
  CHECK(hom_set(b3, vertex(b3, "000"), vertex(b3, "111")).size() == 1);
  for (unsigned n = 1; n <= 4; ++n) {
    auto k = standard_cube(n);
    auto h = hom_set(k, 0, k.count(0) - 1);
    CHECK(h.size() == permutation_classes(n));
    CHECK(h.size() == 1);
  }
}

TEST_CASE("X3 hom-sets") {
  auto k = ex_x3().complex;
  auto x0 = vertex(k, "(0,0)"), y0 = vertex(k, "(1,0)"), z = vertex(k, "(2,1)");
  CHECK(hom_set(k, x0, z).size() == 2);
  CHECK(hom_set(k, y0, z).size() == 1);
  PathIndex pi(k);
  PathClass bottom{x0, y0, {}};
  bottom.rep = pi.representative(x0, y0, 0);
  auto m = pi.precompose_map(bottom, z);
  CHECK(m.size() == 1);
  CHECK_FALSE(is_bijection(m, pi.count(x0, z)));
}

TEST_CASE("is_bijection") {
  CHECK(is_bijection({0}, 2) == false);
  CHECK(is_bijection({1, 0, 2}, 3));
  CHECK_FALSE(is_bijection({0, 0}, 2));
  CHECK(is_bijection({}, 0));
}

TEST_CASE("composition of the two half paths of the square boundary") {
  auto k = boundary_cube(2);
  PathIndex pi(k);
  auto v00 = vertex(k, "00"), v10 = vertex(k, "10"), v01 = vertex(k, "01"), v11 = vertex(k, "11");
  PathClass a{v00, v10, pi.representative(v00, v10, 0)}, b{v10, v11, pi.representative(v10, v11, 0)};
  PathClass c{v00, v01, pi.representative(v00, v01, 0)}, d{v01, v11, pi.representative(v01, v11, 0)};
  auto h1 = pi.compose(a, b), h2 = pi.compose(c, d);
  CHECK_FALSE(h1 == h2);
  auto hom = pi.hom(v00, v11);
  std::set<EdgePath> reps{hom.classes[0].rep, hom.classes[1].rep};
  CHECK(reps == std::set<EdgePath>{h1.rep, h2.rep});
}

TEST_CASE("identity, associativity and functoriality of composition") {
  testing::Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    auto k = testing::random_complex(rng);
    PathIndex pi(k);
    const auto nv = pi.num_vertices();
    std::vector<PathClass> all;
    for (std::uint32_t u = 0; u < nv; ++u)
      for (std::uint32_t v = 0; v < nv; ++v)
        for (const auto& c : pi.hom(u, v).classes) all.push_back(c);
    for (std::uint32_t u = 0; u < nv; ++u) {
      auto h = pi.hom(u, u);
      REQUIRE(h.size() == 1);
      CHECK(h.classes[0].rep.empty());
    }
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int s = 0; s < 200; ++s) {
      const auto& h1 = all[pick(rng)];
      PathClass id_s{h1.source, h1.source, {}}, id_t{h1.target, h1.target, {}};
      CHECK(pi.compose(id_s, h1) == h1);
      CHECK(pi.compose(h1, id_t) == h1);
      std::vector<PathClass> next, after;
      for (const auto& c : all)
        if (c.source == h1.target) next.push_back(c);
      const auto& h2 = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
      for (const auto& c : all)
        if (c.source == h2.target) after.push_back(c);
      const auto& h3 = after[std::uniform_int_distribution<std::size_t>(0, after.size() - 1)(rng)];
      CHECK(pi.compose(pi.compose(h1, h2), h3) == pi.compose(h1, pi.compose(h2, h3)));
      // Any representative of a class composes to the same class.
      for (const auto& p : enumerate_edge_paths(k, h1.source, h1.target)) {
        if (pi.class_of(h1.target, p) != pi.class_of(h1.target, h1.rep)) continue;
        PathClass alt{h1.source, h1.target, p};
        CHECK(pi.compose(alt, h2) == pi.compose(h1, h2));
      }
      // (h1 h2)^* = h1^* o h2^* on P(-, w).
      auto w = h3.target;
      auto m12 = pi.precompose_map(pi.compose(h1, h2), w);
      auto m1 = pi.precompose_map(h1, w), m2 = pi.precompose_map(h2, w);
      for (std::size_t x = 0; x < m12.size(); ++x) CHECK(m12[x] == m1[m2[x]]);
    }
  }
}

TEST_CASE("memoized path index agrees with enumeration") {
  testing::Rng rng(7);
  for (int t = 0; t < 80; ++t) {
    auto k = testing::random_complex(rng);
    PathIndex pi(k, 2);
    for (std::uint32_t u = 0; u < k.count(0); ++u)
      for (std::uint32_t v = 0; v < k.count(0); ++v) {
        auto ground = hom_set(k, u, v);
        CHECK(pi.hom(u, v) == ground);
        for (const auto& c : ground.classes) CHECK(is_path(k, u, v, c.rep));
      }
  }
}

TEST_CASE("subdivision counts and naming") {
  auto s1 = subdivide(standard_cube(1));
  CHECK(s1.complex.counts() == std::vector<std::uint32_t>{3, 2});
  auto s2 = subdivide(standard_cube(2));
  CHECK(s2.complex.counts() == std::vector<std::uint32_t>{9, 12, 4});
  CHECK(validate(s2.complex).empty());
  CHECK(s2.complex.label(s2.center[standard_cube(2).flat(*standard_cube(2).find_label("**"))]) == "**/hh");
}

TEST_CASE("subdivision preserves hom-set sizes between original vertices") {
  testing::Rng rng(13);
  std::vector<PrecubicalSet> ks;
  for (const auto& c : testing::small_fixtures()) ks.push_back(c.complex);
  for (int t = 0; t < 25; ++t) ks.push_back(testing::random_complex(rng));
  for (const auto& k : ks) {
    auto s = subdivide(k);
    CHECK(validate(s.complex).empty());
    CHECK_FALSE(has_loops(s.complex));
    auto s2 = subdivide(s.complex);
    PathIndex p0(k), p1(s.complex), p2(s2.complex);
    for (std::uint32_t u = 0; u < k.count(0); ++u)
      for (std::uint32_t v = 0; v < k.count(0); ++v) {
        auto u1 = s.center[k.flat({0, u})].index, v1 = s.center[k.flat({0, v})].index;
        auto u2 = s2.center[s.complex.flat({0, u1})].index, v2 = s2.center[s.complex.flat({0, v1})].index;
        CHECK(p1.count(u1, v1) == p0.count(u, v));
        CHECK(p2.count(u2, v2) == p0.count(u, v));
      }
  }
}
