#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vcspace/error.hpp"
#include "vcspace/homology.hpp"

using namespace vcspace;

namespace {

// Two vertices, two edges a: v0 -> v1, b: v1 -> v0.
ChainComplex two_cell_circle() { return ChainComplex({2, 2}, {IntMatrix(0, 2), IntMatrix{{-1, 1}, {1, -1}}}); }

ChainComplex projective_plane() {
  return ChainComplex({1, 1, 1}, {IntMatrix(0, 1), IntMatrix{{0}}, IntMatrix{{2}}});
}

ChainComplex point() { return ChainComplex({1}, {IntMatrix(0, 1)}); }

}  // namespace

TEST_CASE("homology of small complexes") {
  CHECK(homology(two_cell_circle()) == make_homology({1, 1}));
  CHECK(homology(projective_plane()) == make_homology({1, 0, 0}, {{}, {2}, {}}));
  CHECK(homology(projective_plane()).to_string() == "(Z, Z/2, 0)");
  CHECK(rational_betti(projective_plane()) == std::vector<Int>{1, 0, 0});
}

TEST_CASE("boundary shape is checked") {
  CHECK_THROWS_AS(ChainComplex({1, 1}, {IntMatrix(0, 1), IntMatrix(2, 1)}), Error);
}

TEST_CASE("mapping cylinder collapses to the target") {
  auto circle = two_cell_circle();
  ChainMap f;
  f.maps = {IntMatrix{{1, 1}}, IntMatrix(0, 2)};
  auto pt = point();
  REQUIRE(is_chain_map(circle, pt, f));
  auto cyl = mapping_cylinder(circle, pt, f);
  CHECK(cyl.boundary_squared_zero());
  CHECK(homology(cyl) == make_homology({1, 0, 0}));
}

TEST_CASE("gluing two cones over a circle gives a sphere") {
  auto circle = two_cell_circle();
  ChainMap f;
  f.maps = {IntMatrix{{1, 1}}, IntMatrix(0, 2)};
  auto glued = glue_cylinders(circle, {point(), point()}, {f, f});
  CHECK(glued.boundary_squared_zero());
  CHECK(homology(glued) == make_homology({1, 0, 1}));
  auto layout = cylinder_layout(circle, {point(), point()});
  CHECK(layout.sourceCount == std::vector<std::size_t>{2, 2, 0});
}

TEST_CASE("free rotation quotient of a circle") {
  auto circle = two_cell_circle();
  FiniteAction act;
  SignedPermutation id0{{0, 1}, {1, 1}}, swap{{1, 0}, {1, 1}};
  act.perElement = {{id0, id0}, {swap, swap}};
  act.product = {{0, 1}, {1, 0}};
  CHECK_NOTHROW(check_action(circle, act));
  auto q = quotient_by_action(circle, act);
  CHECK(q.complex.counts() == std::vector<std::size_t>{1, 1});
  CHECK(homology(q.complex) == make_homology({1, 1}));
  Chain both{1, IntVector{1, 1}};
  CHECK(pushforward(q.tau, 1, both).coeffs == IntVector{2});
}

TEST_CASE("orientation-reversing self maps are not admissible") {
  // Reflection of an interval through its midpoint flips the edge.
  ChainComplex interval({2, 1}, {IntMatrix(0, 2), IntMatrix{{-1}, {1}}});
  FiniteAction act;
  SignedPermutation id0{{0, 1}, {1, 1}}, id1{{0}, {1}}, flipV{{1, 0}, {1, 1}}, flipE{{0}, {-1}};
  act.perElement = {{id0, id1}, {flipV, flipE}};
  act.product = {{0, 1}, {1, 0}};
  CHECK_NOTHROW(check_action(interval, act));
  try {
    quotient_by_action(interval, act);
    FAIL("expected NotAdmissible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAdmissible);
  }
}

TEST_CASE("actions that are not chain maps are rejected") {
  auto circle = two_cell_circle();
  FiniteAction act;
  SignedPermutation id0{{0, 1}, {1, 1}}, bad{{0, 1}, {1, -1}};
  act.perElement = {{id0, id0}, {id0, bad}};
  act.product = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(check_action(circle, act), Error);
}

TEST_CASE("filling chains") {
  auto rp2 = projective_plane();
  auto x = find_filling_chain(rp2, Chain{1, IntVector{2}}, {0});
  REQUIRE(x);
  CHECK(x->coeffs == IntVector{1});
  CHECK_FALSE(find_filling_chain(rp2, Chain{1, IntVector{1}}, {0}).has_value());
  CHECK_FALSE(find_filling_chain(rp2, Chain{1, IntVector{2}}, {}).has_value());
}

TEST_CASE("chain map composition") {
  auto circle = two_cell_circle();
  ChainMap swap;
  swap.maps = {IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{0, 1}, {1, 0}}};
  REQUIRE(is_chain_map(circle, circle, swap));
  auto twice = compose(swap, swap);
  CHECK(twice.maps[0] == IntMatrix::identity(2));
  CHECK(twice.maps[1] == IntMatrix::identity(2));
}
