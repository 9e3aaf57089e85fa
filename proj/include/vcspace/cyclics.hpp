#pragma once

// Maximal cyclic subgroups of the translation lattice, up to conjugacy.

#include <optional>
#include <vector>

#include "vcspace/crystal.hpp"

namespace vcspace {

struct MaxCyclicClass {
  IntVector vector;             // canonical primitive representative
  std::vector<IntVector> orbit; // canonical forms of ±M v over the point group, sorted
  IntMatrix adaptedBasis;       // det +1, first column == vector
};

struct ClassSet {
  CrystalGroup group;
  int bound = 0;
  std::vector<MaxCyclicClass> classes;

  // Index of the class whose orbit contains canonical_sign(v), or nullopt.
  std::optional<std::size_t> find(const IntVector& v) const;
};

Int sup_norm(const IntVector& v);

// All primitive vectors with sup norm <= bound, grouped into conjugacy orbits.
ClassSet enumerate_classes(const CrystalGroup& group, int bound);
// Orbits of the given primitive vectors only (deduplicated); bound records the
// largest sup norm among the inputs. Throws NotPrimitive.
ClassSet class_set_from_vectors(const CrystalGroup& group, const std::vector<IntVector>& vectors);
MaxCyclicClass make_class(const CrystalGroup& group, const IntVector& v);

bool normalizer_contains(const AffineIsometry& gamma, const IntVector& classVector);
inline bool normalizer_contains(const AffineIsometry& gamma, const MaxCyclicClass& c) {
  return normalizer_contains(gamma, c.vector);
}
bool subgroup_in_normalizer(const SubgroupSpec& spec, const IntVector& classVector);
inline bool subgroup_in_normalizer(const SubgroupSpec& spec, const MaxCyclicClass& c) {
  return subgroup_in_normalizer(spec, c.vector);
}

// (n-1) x n matrix P: the last n-1 rows of adaptedBasis^{-1}. P v = 0 and P maps Z^n onto Z^{n-1}.
IntMatrix quotient_lattice_map(const MaxCyclicClass& c);
IntMatrix quotient_lattice_map(const IntMatrix& adaptedBasis);

// Induced action of gamma on line spaces: for y = P_from x, returns (Q, s) with
// P_to (gamma x) = Q y + s, where `to` is the class of gamma's linear part applied to `fromVector`.
struct InducedLineMap {
  IntMatrix linear;
  RatVector trans;
  IntVector toVector;
};
InducedLineMap induced_line_map(const AffineIsometry& gamma, const IntVector& fromVector);

}  // namespace vcspace
