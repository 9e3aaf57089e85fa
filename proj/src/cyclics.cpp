#include "vcspace/cyclics.hpp"

#include <algorithm>
#include <set>

#include "vcspace/error.hpp"

namespace vcspace {

Int sup_norm(const IntVector& v) {
  Int m = 0;
  for (const auto& x : v) m = std::max(m, Int(abs(x)));
  return m;
}

namespace {

bool norm_lex_less(const IntVector& a, const IntVector& b) {
  Int na = sup_norm(a), nb = sup_norm(b);
  if (na != nb) return na < nb;
  return a < b;
}

}  // namespace

MaxCyclicClass make_class(const CrystalGroup& group, const IntVector& v) {
  if (v.size() != static_cast<std::size_t>(group.rank)) throw invalid_input("DimensionMismatch", "class vector rank");
  if (gcd_of(v) != 1) throw not_primitive("class vector is not primitive");
  std::set<IntVector> orbit;
  for (const auto& m : group.pointGroup) orbit.insert(canonical_sign(m * v));
  MaxCyclicClass c;
  c.orbit.assign(orbit.begin(), orbit.end());
  c.vector = *std::min_element(c.orbit.begin(), c.orbit.end(), norm_lex_less);
  c.adaptedBasis = hnf_extend_primitive(c.vector);
  return c;
}

std::optional<std::size_t> ClassSet::find(const IntVector& v) const {
  IntVector key = canonical_sign(v);
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::binary_search(classes[i].orbit.begin(), classes[i].orbit.end(), key)) return i;
  return std::nullopt;
}

namespace {

void sort_classes(ClassSet& set) {
  std::sort(set.classes.begin(), set.classes.end(),
            [](const MaxCyclicClass& a, const MaxCyclicClass& b) { return norm_lex_less(a.vector, b.vector); });
}

void enumerate_box(std::size_t n, int bound, IntVector& cur, std::size_t i, std::vector<IntVector>& out) {
  if (i == n) {
    if (gcd_of(cur) == 1 && canonical_sign(cur) == cur) out.push_back(cur);
    return;
  }
  for (int x = -bound; x <= bound; ++x) {
    cur[i] = x;
    enumerate_box(n, bound, cur, i + 1, out);
  }
}

}  // namespace

ClassSet enumerate_classes(const CrystalGroup& group, int bound) {
  if (bound < 1) throw invalid_input("InvalidBound", "bound must be >= 1");
  const std::size_t n = static_cast<std::size_t>(group.rank);
  std::vector<IntVector> vectors;
  IntVector cur(n);
  enumerate_box(n, bound, cur, 0, vectors);
  ClassSet set{group, bound, {}};
  for (const auto& v : vectors) {
    if (set.find(v)) continue;
    set.classes.push_back(make_class(group, v));
  }
  sort_classes(set);
  return set;
}

ClassSet class_set_from_vectors(const CrystalGroup& group, const std::vector<IntVector>& vectors) {
  ClassSet set{group, 0, {}};
  for (const auto& v : vectors) {
    MaxCyclicClass c = make_class(group, v);
    set.bound = std::max(set.bound, static_cast<int>(sup_norm(v).get_si()));
    if (set.find(v)) continue;
    set.classes.push_back(std::move(c));
  }
  sort_classes(set);
  return set;
}

bool normalizer_contains(const AffineIsometry& gamma, const IntVector& classVector) {
  IntVector image = gamma.linear * classVector;
  return canonical_sign(image) == canonical_sign(classVector);
}

bool subgroup_in_normalizer(const SubgroupSpec& spec, const IntVector& classVector) {
  validate_subgroup(spec);
  return std::all_of(spec.generators.begin(), spec.generators.end(),
                     [&](const AffineIsometry& g) { return normalizer_contains(g, classVector); });
}

IntMatrix quotient_lattice_map(const IntMatrix& adaptedBasis) {
  IntMatrix inv = unimodular_inverse(adaptedBasis);
  const std::size_t n = inv.rows();
  IntMatrix p(n - 1, n);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i - 1, j) = inv(i, j);
  return p;
}

IntMatrix quotient_lattice_map(const MaxCyclicClass& c) { return quotient_lattice_map(c.adaptedBasis); }

InducedLineMap induced_line_map(const AffineIsometry& gamma, const IntVector& fromVector) {
  const std::size_t n = fromVector.size();
  IntVector to = canonical_sign(gamma.linear * fromVector);
  IntMatrix fromBasis = hnf_extend_primitive(canonical_sign(fromVector));
  IntMatrix pTo = quotient_lattice_map(hnf_extend_primitive(to));
  IntMatrix complement(n, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) complement(i, j - 1) = fromBasis(i, j);
  return {pTo * gamma.linear * complement, pTo * gamma.trans, to};
}

}  // namespace vcspace
