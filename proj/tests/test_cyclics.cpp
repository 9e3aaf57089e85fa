#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vcspace/cyclics.hpp"
#include "vcspace/error.hpp"

using namespace vcspace;

TEST_CASE("class counts at bound 1") {
  CHECK(enumerate_classes(catalog_group("p1"), 1).classes.size() == 4);
  CHECK(enumerate_classes(catalog_group("p2"), 1).classes.size() == 4);
  CHECK(enumerate_classes(catalog_group("p4"), 1).classes.size() == 2);
  CHECK(enumerate_classes(catalog_group("P1"), 1).classes.size() == 13);
}

TEST_CASE("p1 class count matches primitive vectors up to sign") {
  for (int bound = 1; bound <= 4; ++bound) {
    std::size_t primitive = 0;
    for (long a = -bound; a <= bound; ++a)
      for (long b = -bound; b <= bound; ++b)
        if (std::gcd(std::labs(a), std::labs(b)) == 1) ++primitive;
    CHECK(enumerate_classes(catalog_group("p1"), bound).classes.size() == primitive / 2);
  }
}

TEST_CASE("classes carry adapted bases and closed orbits") {
  for (const char* name : {"p1", "p2", "pg", "pm", "p4"}) {
    auto g = catalog_group(name);
    auto set = enumerate_classes(g, 2);
    for (const auto& c : set.classes) {
      CHECK(c.adaptedBasis.column(0) == c.vector);
      CHECK(determinant(c.adaptedBasis) == 1);
      CHECK(std::find(c.orbit.begin(), c.orbit.end(), c.vector) != c.orbit.end());
      for (const auto& m : g.pointGroup)
        for (const auto& w : c.orbit) CHECK(set.find(m * w) == set.find(c.vector));
      IntMatrix p = quotient_lattice_map(c);
      CHECK((p * c.vector) == IntVector(g.rank - 1, 0));
    }
  }
}

TEST_CASE("vector class sets") {
  auto g = catalog_group("p1");
  auto set = class_set_from_vectors(g, {IntVector{1, 0}, IntVector{1, 2}});
  CHECK(set.classes.size() == 2);
  CHECK(set.bound == 2);
  CHECK(set.find(IntVector{-1, -2}).has_value());
  CHECK_FALSE(set.find(IntVector{0, 1}).has_value());
  try {
    class_set_from_vectors(g, {IntVector{2, 0}});
    FAIL("expected NotPrimitive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrimitive);
  }
}

TEST_CASE("normalizer membership") {
  auto p4 = catalog_group("p4");
  auto half = p4.cosetReps[p4.point_index(IntMatrix{{-1, 0}, {0, -1}})];
  auto quarter = p4.cosetReps[p4.point_index(IntMatrix{{0, -1}, {1, 0}})];
  CHECK(normalizer_contains(half, IntVector{1, 0}));
  CHECK_FALSE(normalizer_contains(quarter, IntVector{1, 0}));
}

TEST_CASE("induced line maps commute with the projections") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> coord(-7, 7);
  for (const char* name : {"p2", "pg", "p4", "P1"}) {
    auto g = catalog_group(name);
    auto set = enumerate_classes(g, 1);
    for (const auto& c : set.classes)
      for (const auto& member : c.orbit)
        for (const auto& rep : g.cosetReps) {
          AffineIsometry gamma = AffineIsometry::translation(IntVector(g.rank, 1)) * rep;
          auto ind = induced_line_map(gamma, member);
          REQUIRE(set.find(ind.toVector) == set.find(member));
          IntMatrix pFrom = quotient_lattice_map(hnf_extend_primitive(member));
          IntMatrix pTo = quotient_lattice_map(hnf_extend_primitive(ind.toVector));
          for (int trial = 0; trial < 5; ++trial) {
            RatVector x;
            for (int i = 0; i < g.rank; ++i) x.push_back(make_rational(coord(rng), 3));
            CHECK(pTo * gamma.apply(x) == add(ind.linear * (pFrom * x), ind.trans));
          }
        }
  }
}
