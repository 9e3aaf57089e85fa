#pragma once

// Crystallographic groups of rank 2 and 3 in lattice coordinates: the translation
// lattice is Z^n and every point-group matrix is integral.

#include <string>
#include <vector>

#include "vcspace/latticealg.hpp"

namespace vcspace {

struct AffineIsometry {
  IntMatrix linear;
  RatVector trans;

  static AffineIsometry identity(std::size_t n);
  static AffineIsometry translation(const IntVector& v);

  std::size_t dim() const { return trans.size(); }
  AffineIsometry operator*(const AffineIsometry& other) const;  // (M1,t1)(M2,t2) = (M1M2, M1t2+t1)
  AffineIsometry inverse() const;
  RatVector apply(const RatVector& x) const;
  bool is_translation() const;
  AffineMap as_map() const { return {linear, trans}; }
  bool operator==(const AffineIsometry&) const = default;
};

struct CrystalGroup {
  std::string name;
  int rank = 0;
  std::vector<IntMatrix> pointGroup;        // pointGroup[0] is the identity
  std::vector<AffineIsometry> cosetReps;    // cosetReps[i].linear == pointGroup[i]

  std::size_t order() const { return pointGroup.size(); }
  // Index into pointGroup, or -1.
  int point_index(const IntMatrix& m) const;
  bool contains(const AffineIsometry& g) const;
  // Index of the coset rep whose product with the given rep stays in the same coset.
  int product_index(int a, int b) const;
  // Coset representative and lattice translation a with g = t_a * rep.
  std::pair<int, IntVector> decompose(const AffineIsometry& g) const;
};

// Verifies identity, closure, inverses and the coset-representative law modulo Z^n.
void check_group_axioms(const CrystalGroup& g);

CrystalGroup catalog_group(const std::string& name);
std::vector<std::string> catalog_names();

struct SubgroupSpec {
  CrystalGroup ambient;
  std::vector<AffineIsometry> generators;
};

struct SubgroupClass {
  enum class Tag { Finite, InfiniteVC, NotVC };
  Tag tag = Tag::Finite;
  std::size_t order = 0;  // Finite only
  IntVector vector;       // InfiniteVC only: canonical primitive vector of H ∩ A
};

std::string tag_name(SubgroupClass::Tag tag);

// Throws InvalidInput("InvalidGenerator") if some generator is not in the ambient group.
void validate_subgroup(const SubgroupSpec& spec);

std::vector<IntMatrix> point_image(const SubgroupSpec& spec);
// Columns span H ∩ A (pure translations of H); the matrix has n rows and rank-many columns.
IntMatrix kernel_lattice(const SubgroupSpec& spec);
SubgroupClass classify_subgroup(const SubgroupSpec& spec);

// First nonzero coordinate made positive.
IntVector canonical_sign(const IntVector& v);
IntVector primitive_part(const IntVector& v);

}  // namespace vcspace
