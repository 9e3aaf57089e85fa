#pragma once

// Truncated model of E_VC(Γ)/A and its G-quotient: a common refinement X* of the torus with one
// mapping cylinder per maximal cyclic subgroup of the truncation, all glued along X*.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vcspace/crystal.hpp"
#include "vcspace/cyclics.hpp"
#include "vcspace/homology.hpp"
#include "vcspace/toruscomplex.hpp"

namespace vcspace {

struct CylinderData {
  IntVector member;        // canonical vector of this C
  std::size_t classIndex;  // conjugacy class in the ClassSet
  ProjectionSubdivision projection;
  ChainComplex lineChains;
};

struct AssembledModel {
  CrystalGroup group;
  ClassSet classSet;
  std::shared_ptr<const TorusComplex> base;  // X*
  ChainComplex baseChains;
  std::vector<CylinderData> cylinders;       // class order, orbit order inside a class
  ChainComplex total;
  CylinderLayout layout;
  FiniteAction action;
  std::optional<QuotientResult> quotient;
  int refinementPasses = 0;
  std::string orientationConvention = kOrientationConvention;

  int rank() const { return group.rank; }
  // Cylinder index of a canonical member vector.
  std::optional<std::size_t> cylinder_of(const IntVector& v) const;
};

struct AssembleOptions {
  bool quotient = true;
  int maxRefinementPasses = 2;
};

// Throws NotAdmissible if the action is still not admissible after the allowed passes.
AssembledModel assemble(const CrystalGroup& group, const ClassSet& classes, const AssembleOptions& opts = {});

// The fundamental cycle of X*: every top cell with the sign of its frame determinant.
Chain fundamental_cycle(const AssembledModel& model);

struct CycleCertificate {
  IntVector classC;
  IntVector classCPrime;
  Chain target;  // pushforward of the fundamental cycle
  Chain chiC;
  Chain chiCPrime;
  Chain z;
  bool targetZero = false;
  bool boundaryMatchesTarget = false;
  bool cycle = false;
  bool nonzero = false;
  bool topDegreeEmpty = false;
  bool nontrivialClass = false;
  HomologyResult quotientHomology;
  bool valid() const { return boundaryMatchesTarget && cycle && nonzero && topDegreeEmpty && nontrivialClass; }
};

// Throws ConjugateClasses if C and C' lie in one orbit, ClassOutsideBound if either is not
// in the model, InvalidInput("NoFilling") if no filling chain exists.
CycleCertificate verify_theorem(const AssembledModel& model, const IntVector& c, const IntVector& cPrime);

struct CylinderReport {
  IntVector classVector;
  std::vector<IntVector> members;
  std::vector<HomologyResult> cylinderHomology;
  HomologyResult expected;  // homology of T^{n-1}
  HomologyResult baseHomology;
  bool baseIsTorus = false;
  bool passed = false;
};

// Homology of T^dim, padded with zeros up to topDimension.
HomologyResult torus_homology(int dim, int topDimension);
CylinderReport validate_cylinder(const AssembledModel& model, const IntVector& classVector);

enum class FixedSetVerdict { ContractibleFiniteCase, ContractibleInfiniteVC, EmptyNotVC };
std::string verdict_name(FixedSetVerdict v);

struct FixedSetEntry {
  std::size_t classIndex;
  IntVector member;
  bool inNormalizer = false;
  std::optional<AffineSubspace> lineFixedSpace;  // only when inNormalizer
};

struct FixedSetReport {
  SubgroupClass classification;
  std::optional<AffineSubspace> baseFixedSpace;
  std::vector<FixedSetEntry> entries;  // one per orbit member of every class
  FixedSetVerdict verdict = FixedSetVerdict::EmptyNotVC;
  std::optional<std::size_t> verdictClass;  // InfiniteVC: class of H ∩ A
  std::size_t uniquenessCount = 0;          // members with H in N(C) and a nonempty line fixed set
  int bound = 0;
  bool consistent = false;                  // fixed sets agree with the verdict row
};

FixedSetReport fixed_set(const SubgroupSpec& spec, const ClassSet& classes);

}  // namespace vcspace
