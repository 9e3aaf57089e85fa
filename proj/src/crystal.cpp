#include "vcspace/crystal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "vcspace/error.hpp"

namespace vcspace {

AffineIsometry AffineIsometry::identity(std::size_t n) { return {IntMatrix::identity(n), RatVector(n, Rational(0))}; }

AffineIsometry AffineIsometry::translation(const IntVector& v) {
  return {IntMatrix::identity(v.size()), to_rational(v)};
}

AffineIsometry AffineIsometry::operator*(const AffineIsometry& other) const {
  return {linear * other.linear, add(linear * other.trans, trans)};
}

AffineIsometry AffineIsometry::inverse() const {
  IntMatrix inv = unimodular_inverse(linear);
  return {inv, scale(inv * trans, Rational(-1))};
}

RatVector AffineIsometry::apply(const RatVector& x) const { return add(linear * x, trans); }

bool AffineIsometry::is_translation() const { return linear == IntMatrix::identity(dim()); }

int CrystalGroup::point_index(const IntMatrix& m) const {
  for (std::size_t i = 0; i < pointGroup.size(); ++i)
    if (pointGroup[i] == m) return static_cast<int>(i);
  return -1;
}

std::pair<int, IntVector> CrystalGroup::decompose(const AffineIsometry& g) const {
  int idx = point_index(g.linear);
  if (idx < 0) return {-1, {}};
  RatVector diff = sub(g.trans, cosetReps[static_cast<std::size_t>(idx)].trans);
  IntVector a(diff.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    if (diff[i].get_den() != 1) return {-1, {}};
    a[i] = diff[i].get_num();
  }
  return {idx, a};
}

bool CrystalGroup::contains(const AffineIsometry& g) const {
  if (g.dim() != static_cast<std::size_t>(rank) || g.linear.rows() != g.dim() || g.linear.cols() != g.dim())
    return false;
  return decompose(g).first >= 0;
}

int CrystalGroup::product_index(int a, int b) const {
  return point_index(pointGroup[static_cast<std::size_t>(a)] * pointGroup[static_cast<std::size_t>(b)]);
}

void check_group_axioms(const CrystalGroup& g) {
  const std::size_t n = static_cast<std::size_t>(g.rank);
  auto fail = [&](const std::string& why) { throw invalid_input("InvalidGroup", g.name + ": " + why); };
  if (g.pointGroup.empty() || g.pointGroup.size() != g.cosetReps.size()) fail("point group / coset reps mismatch");
  if (!(g.pointGroup[0] == IntMatrix::identity(n))) fail("first point-group element is not the identity");
  if (!(g.cosetReps[0] == AffineIsometry::identity(n))) fail("identity coset rep is not the identity isometry");
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (!(g.cosetReps[i].linear == g.pointGroup[i])) fail("coset rep linear part mismatch");
    if (abs(determinant(g.pointGroup[i])) != 1) fail("point-group element not unimodular");
    if (g.point_index(unimodular_inverse(g.pointGroup[i])) < 0) fail("point group not closed under inverse");
  }
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j) {
      AffineIsometry prod = g.cosetReps[i] * g.cosetReps[j];
      if (g.point_index(prod.linear) < 0) fail("point group not closed under products");
      if (!g.contains(prod)) fail("coset representatives not closed modulo the lattice");
    }
}

namespace {

IntMatrix diag(std::initializer_list<long> d) {
  IntMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (long x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

CrystalGroup make_group(const std::string& name, int rank, const std::vector<IntMatrix>& generators,
                        const std::vector<std::pair<IntMatrix, RatVector>>& nonzero_trans = {}) {
  const std::size_t n = static_cast<std::size_t>(rank);
  CrystalGroup g;
  g.name = name;
  g.rank = rank;
  g.pointGroup.push_back(IntMatrix::identity(n));
  // Multiplicative closure in BFS order keeps the element order deterministic.
  for (std::size_t head = 0; head < g.pointGroup.size(); ++head)
    for (const auto& s : generators) {
      IntMatrix p = g.pointGroup[head] * s;
      if (g.point_index(p) < 0) g.pointGroup.push_back(p);
    }
  for (const auto& m : g.pointGroup) {
    RatVector t(n, Rational(0));
    for (const auto& [lin, tr] : nonzero_trans)
      if (lin == m) t = tr;
    g.cosetReps.push_back({m, t});
  }
  check_group_axioms(g);
  return g;
}

}  // namespace

std::vector<std::string> catalog_names() { return {"p1", "p2", "pm", "pg", "pmm", "p4", "p3", "P1", "P2", "P222", "P4"}; }

CrystalGroup catalog_group(const std::string& name) {
  const IntMatrix r4{{0, -1}, {1, 0}};
  const IntMatrix r3{{0, -1}, {1, -1}};
  const IntMatrix rz4{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
  const Rational half(1, 2);
  if (name == "p1") return make_group(name, 2, {});
  if (name == "p2") return make_group(name, 2, {diag({-1, -1})});
  if (name == "pm") return make_group(name, 2, {diag({1, -1})});
  if (name == "pg") return make_group(name, 2, {diag({1, -1})}, {{diag({1, -1}), {half, Rational(0)}}});
  if (name == "pmm") return make_group(name, 2, {diag({1, -1}), diag({-1, 1})});
  if (name == "p4") return make_group(name, 2, {r4});
  if (name == "p3") return make_group(name, 2, {r3});
  if (name == "P1") return make_group(name, 3, {});
  if (name == "P2") return make_group(name, 3, {diag({-1, -1, 1})});
  if (name == "P222") return make_group(name, 3, {diag({-1, -1, 1}), diag({-1, 1, -1})});
  if (name == "P4") return make_group(name, 3, {rz4});
  throw unknown_group("unknown group '" + name + "'");
}

std::string tag_name(SubgroupClass::Tag tag) {
  switch (tag) {
    case SubgroupClass::Tag::Finite:
      return "Finite";
    case SubgroupClass::Tag::InfiniteVC:
      return "InfiniteVC";
    case SubgroupClass::Tag::NotVC:
      return "NotVC";
  }
  return "?";
}

void validate_subgroup(const SubgroupSpec& spec) {
  for (std::size_t i = 0; i < spec.generators.size(); ++i)
    if (!spec.ambient.contains(spec.generators[i]))
      throw invalid_input("InvalidGenerator",
                          "generator " + std::to_string(i) + " is not an element of " + spec.ambient.name);
}

namespace {

struct Transversal {
  std::vector<IntMatrix> linear;        // point image, BFS order
  std::vector<AffineIsometry> element;  // h_k with linear part linear[k]
};

Transversal schreier_transversal(const SubgroupSpec& spec) {
  const std::size_t n = static_cast<std::size_t>(spec.ambient.rank);
  Transversal t;
  t.linear.push_back(IntMatrix::identity(n));
  t.element.push_back(AffineIsometry::identity(n));
  for (std::size_t head = 0; head < t.linear.size(); ++head)
    for (const auto& s : spec.generators) {
      AffineIsometry h = t.element[head] * s;
      if (std::find(t.linear.begin(), t.linear.end(), h.linear) == t.linear.end()) {
        t.linear.push_back(h.linear);
        t.element.push_back(h);
      }
    }
  return t;
}

}  // namespace

std::vector<IntMatrix> point_image(const SubgroupSpec& spec) {
  validate_subgroup(spec);
  return schreier_transversal(spec).linear;
}

IntMatrix kernel_lattice(const SubgroupSpec& spec) {
  validate_subgroup(spec);
  const std::size_t n = static_cast<std::size_t>(spec.ambient.rank);
  Transversal t = schreier_transversal(spec);
  std::vector<IntVector> gens;
  for (std::size_t k = 0; k < t.linear.size(); ++k)
    for (const auto& s : spec.generators) {
      AffineIsometry ts = t.element[k] * s;
      auto it = std::find(t.linear.begin(), t.linear.end(), ts.linear);
      const AffineIsometry& rep = t.element[static_cast<std::size_t>(it - t.linear.begin())];
      AffineIsometry kernel_elt = ts * rep.inverse();
      IntVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = kernel_elt.trans[i].get_num();  // integral by membership
      gens.push_back(std::move(v));
    }
  return IntMatrix::from_columns(lattice_basis(gens, n), n);
}

IntVector canonical_sign(const IntVector& v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x > 0) return v;
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
  }
  return v;
}

IntVector primitive_part(const IntVector& v) {
  Int g = gcd_of(v);
  if (g == 0) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

SubgroupClass classify_subgroup(const SubgroupSpec& spec) {
  IntMatrix kernel = kernel_lattice(spec);
  SubgroupClass out;
  if (kernel.cols() == 0) {
    // Finite: explicit closure of the generators, capped.
    constexpr std::size_t kCap = 1000;
    const std::size_t n = static_cast<std::size_t>(spec.ambient.rank);
    std::vector<AffineIsometry> elems{AffineIsometry::identity(n)};
    for (std::size_t head = 0; head < elems.size(); ++head)
      for (const auto& s : spec.generators) {
        AffineIsometry p = elems[head] * s;
        if (std::find(elems.begin(), elems.end(), p) == elems.end()) {
          elems.push_back(p);
          if (elems.size() > kCap) throw invalid_input("OrderCapExceeded", "finite subgroup exceeds 1000 elements");
        }
      }
    out.tag = SubgroupClass::Tag::Finite;
    out.order = elems.size();
  } else if (kernel.cols() == 1) {
    out.tag = SubgroupClass::Tag::InfiniteVC;
    out.vector = canonical_sign(primitive_part(kernel.column(0)));
  } else {
    out.tag = SubgroupClass::Tag::NotVC;
  }
  return out;
}

}  // namespace vcspace
