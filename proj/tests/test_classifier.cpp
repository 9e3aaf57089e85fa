#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vcspace/classifier.hpp"
#include "vcspace/error.hpp"

using namespace vcspace;

namespace {

std::vector<std::vector<long>> as_longs(const ClassSet& s) {
  std::vector<std::vector<long>> out;
  for (const auto& c : s.classes) {
    std::vector<long> v;
    for (const auto& x : c.vector) v.push_back(x.get_si());
    out.push_back(v);
  }
  return out;
}

std::vector<long> betti_of(const HomologyResult& h) {
  std::vector<long> out;
  for (const auto& d : h.dims) out.push_back(d.betti.get_si());
  return out;
}

AffineIsometry iso(IntMatrix m, long a, long b) { return {std::move(m), {Rational(a), Rational(b)}}; }
const IntMatrix kMinus{{-1, 0}, {0, -1}};

}  // namespace

TEST_CASE("p1 models agree with the pair sequence") {
  auto p1 = catalog_group("p1");
  std::vector<std::vector<IntVector>> sets = {
      {IntVector{1, 0}, IntVector{0, 1}},
      {IntVector{1, 0}, IntVector{1, 2}},
      {IntVector{1, 0}, IntVector{1, 3}},
      {IntVector{2, 1}, IntVector{1, -1}},
      {IntVector{1, 0}, IntVector{0, 1}, IntVector{1, 1}},
      {IntVector{1, 0}},
  };
  for (const auto& vs : sets) {
    auto classes = class_set_from_vectors(p1, vs);
    auto model = assemble(p1, classes);
    auto h = homology(model.total);
    auto cl = as_longs(classes);
    CAPTURE(h.to_string());
    CHECK(betti_of(h) == oracle::cylinder_model_betti(cl, 2));
    std::vector<long> torsion;
    for (const auto& t : h.dims[1].torsion) torsion.push_back(t.get_si());
    CHECK(torsion == oracle::rank2_h1_torsion(cl));
    for (std::size_t d = 0; d < h.dims.size(); ++d)
      if (d != 1) CHECK(h.dims[d].torsion.empty());
    CHECK(model.quotient);
    CHECK(homology(model.quotient->complex) == h);
  }
}

TEST_CASE("rank of the top homology is k - 1") {
  auto p1 = catalog_group("p1");
  for (int bound = 1; bound <= 2; ++bound) {
    auto classes = enumerate_classes(p1, bound);
    auto model = assemble(p1, classes, {.quotient = false});
    auto h = homology(model.total);
    CHECK(h.dims[3].betti == static_cast<long>(classes.classes.size()) - 1);
    CHECK(betti_of(h) == oracle::cylinder_model_betti(as_longs(classes), 2));
  }
}

TEST_CASE("rank three model with two classes") {
  auto g = catalog_group("P1");
  auto classes = class_set_from_vectors(g, {IntVector{1, 0, 0}, IntVector{0, 1, 0}});
  auto model = assemble(g, classes);
  auto h = homology(model.total);
  CHECK(h == make_homology({1, 1, 0, 1, 1}));
  CHECK(betti_of(h) == oracle::cylinder_model_betti(as_longs(classes), 3));
}

TEST_CASE("no cells above dimension n + 1") {
  for (const char* name : {"p1", "p2", "p4"}) {
    auto g = catalog_group(name);
    auto model = assemble(g, enumerate_classes(g, 1));
    CHECK(model.total.top_dimension() <= 3);
    REQUIRE(model.quotient);
    CHECK(model.quotient->complex.top_dimension() <= 3);
    CHECK(model.total.boundary_squared_zero());
    CHECK(model.quotient->complex.boundary_squared_zero());
  }
}

TEST_CASE("the orbit map is a chain map") {
  for (const char* name : {"p2", "p4"}) {
    auto g = catalog_group(name);
    auto model = assemble(g, enumerate_classes(g, 1));
    REQUIRE(model.quotient);
    const auto& q = *model.quotient;
    ChainMap tau;
    for (int d = 0; d <= model.total.top_dimension(); ++d) {
      IntMatrix m(q.complex.count(d), model.total.count(d));
      for (std::size_t c = 0; c < model.total.count(d); ++c) m(q.tau.orbit[d][c], c) = q.tau.sign[d][c];
      tau.maps.push_back(m);
    }
    CHECK(is_chain_map(model.total, q.complex, tau));
    CHECK_NOTHROW(check_action(model.total, model.action));
  }
}

TEST_CASE("relabeling classes by a lattice automorphism") {
  auto p1 = catalog_group("p1");
  IntMatrix r{{0, -1}, {1, 0}};
  std::vector<IntVector> vs{IntVector{1, 0}, IntVector{1, 2}};
  std::vector<IntVector> turned;
  for (const auto& v : vs) turned.push_back(r * v);
  auto a = assemble(p1, class_set_from_vectors(p1, vs));
  auto b = assemble(p1, class_set_from_vectors(p1, turned));
  CHECK(a.total.counts() == b.total.counts());
  CHECK(homology(a.total) == homology(b.total));

  auto p4 = catalog_group("p4");
  auto c = assemble(p4, class_set_from_vectors(p4, {IntVector{1, 0}}));
  auto d = assemble(p4, class_set_from_vectors(p4, {IntVector{0, 1}}));
  CHECK(c.total.counts() == d.total.counts());
  CHECK(homology(c.quotient->complex) == homology(d.quotient->complex));
}

TEST_CASE("cylinder examples") {
  auto p1 = catalog_group("p1");
  auto model = assemble(p1, class_set_from_vectors(p1, {IntVector{1, 0}, IntVector{2, 1}}), {.quotient = false});
  for (const IntVector& v : {IntVector{1, 0}, IntVector{2, 1}}) {
    auto r = validate_cylinder(model, v);
    CHECK(r.passed);
    CHECK(r.baseIsTorus);
    REQUIRE(r.cylinderHomology.size() == 1);
    CHECK(r.cylinderHomology[0] == make_homology({1, 1, 0, 0}));
  }
  CHECK_THROWS_AS(validate_cylinder(model, IntVector{0, 1}), Error);

  auto g = catalog_group("P1");
  auto m3 = assemble(g, class_set_from_vectors(g, {IntVector{1, 0, 0}}), {.quotient = false});
  auto r3 = validate_cylinder(m3, IntVector{1, 0, 0});
  CHECK(r3.passed);
  CHECK(r3.cylinderHomology[0] == make_homology({1, 2, 1, 0, 0}));
}

TEST_CASE("certificate for p1") {
  auto p1 = catalog_group("p1");
  auto model = assemble(p1, class_set_from_vectors(p1, {IntVector{1, 0}, IntVector{0, 1}}));
  auto cert = verify_theorem(model, IntVector{1, 0}, IntVector{0, 1});
  CHECK(cert.valid());
  CHECK_FALSE(cert.targetZero);
  CHECK(cert.quotientHomology == make_homology({1, 0, 0, 1}));
  CHECK_THROWS_AS(verify_theorem(model, IntVector{1, 0}, IntVector{1, 1}), Error);
  try {
    verify_theorem(model, IntVector{1, 0}, IntVector{-1, 0});
    FAIL("expected ConjugateClasses");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConjugateClasses);
  }
}

TEST_CASE("certificate for p4") {
  auto p4 = catalog_group("p4");
  auto model = assemble(p4, enumerate_classes(p4, 1));
  auto cert = verify_theorem(model, IntVector{0, 1}, IntVector{1, -1});
  CHECK(cert.valid());
}

TEST_CASE("torus homology helper") {
  CHECK(torus_homology(1, 3) == make_homology({1, 1, 0, 0}));
  CHECK(torus_homology(2, 2) == make_homology({1, 2, 1}));
}

TEST_CASE("fixed sets: finite rotation") {
  auto p2 = catalog_group("p2");
  auto r = fixed_set({p2, {iso(kMinus, 0, 0)}}, enumerate_classes(p2, 1));
  CHECK(r.classification.tag == SubgroupClass::Tag::Finite);
  REQUIRE(r.baseFixedSpace);
  CHECK(r.baseFixedSpace->dimension() == 0);
  CHECK(r.baseFixedSpace->base == RatVector{Rational(0), Rational(0)});
  CHECK(r.entries.size() == 4);
  for (const auto& e : r.entries) CHECK(e.inNormalizer);
  CHECK(r.verdict == FixedSetVerdict::ContractibleFiniteCase);
  CHECK(r.consistent);
}

TEST_CASE("fixed sets: infinite dihedral") {
  auto p2 = catalog_group("p2");
  auto classes = enumerate_classes(p2, 1);
  auto r = fixed_set({p2, {iso(kMinus, 0, 0), iso(kMinus, 1, 0)}}, classes);
  CHECK(r.classification.tag == SubgroupClass::Tag::InfiniteVC);
  CHECK_FALSE(r.baseFixedSpace);
  CHECK(r.verdict == FixedSetVerdict::ContractibleInfiniteVC);
  CHECK(r.uniquenessCount == 1);
  REQUIRE(r.verdictClass);
  CHECK(classes.classes[*r.verdictClass].vector == IntVector{1, 0});
  for (const auto& e : r.entries)
    if (e.member == IntVector{1, 0}) {
      REQUIRE(e.lineFixedSpace);
      CHECK(e.lineFixedSpace->dimension() == 0);
    }
  CHECK(r.consistent);
}

TEST_CASE("fixed sets: lattice and out-of-bound classes") {
  auto p1 = catalog_group("p1");
  auto classes = enumerate_classes(p1, 1);
  auto t = [](long x, long y) { return AffineIsometry::translation(IntVector{x, y}); };
  auto r = fixed_set({p1, {t(1, 0), t(0, 1)}}, classes);
  CHECK(r.verdict == FixedSetVerdict::EmptyNotVC);
  CHECK(r.uniquenessCount == 0);
  try {
    fixed_set({p1, {t(1, 2)}}, classes);
    FAIL("expected ClassOutsideBound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ClassOutsideBound);
  }
}

TEST_CASE("line fixed spaces follow the index of HC/C") {
  auto p1 = catalog_group("p1");
  auto classes = enumerate_classes(p1, 1);
  auto r = fixed_set({p1, {AffineIsometry::translation(IntVector{1, 0})}}, classes);
  for (const auto& e : r.entries) {
    CHECK(e.inNormalizer);
    if (e.member == IntVector{1, 0}) {
      REQUIRE(e.lineFixedSpace);
      CHECK(e.lineFixedSpace->dimension() == 1);
    } else {
      CHECK_FALSE(e.lineFixedSpace);
    }
  }
}
