#pragma once

// Integral chain complexes, Smith-form homology, mapping cylinders and orbit quotients.

#include <optional>
#include <string>
#include <vector>

#include "vcspace/latticealg.hpp"

namespace vcspace {

class ChainComplex {
 public:
  ChainComplex() = default;
  // boundaries[d] maps C_d -> C_{d-1}: counts[d-1] rows, counts[d] columns (boundaries[0] has 0 rows).
  ChainComplex(std::vector<std::size_t> counts, std::vector<IntMatrix> boundaries);

  int top_dimension() const { return static_cast<int>(counts_.size()) - 1; }
  std::size_t count(int d) const;
  const std::vector<std::size_t>& counts() const { return counts_; }
  // Zero matrix of the right shape outside the stored range.
  IntMatrix boundary(int d) const;
  const std::vector<std::string>& labels(int d) const;
  void set_labels(int d, std::vector<std::string> labels);

  bool boundary_squared_zero() const;

 private:
  std::vector<std::size_t> counts_;
  std::vector<IntMatrix> boundaries_;
  std::vector<std::vector<std::string>> labels_;
};

struct DimHomology {
  Int betti = 0;
  std::vector<Int> torsion;  // each > 1, d_1 | d_2 | ...
  bool operator==(const DimHomology&) const = default;
};

struct HomologyResult {
  std::vector<DimHomology> dims;
  bool operator==(const HomologyResult&) const = default;
  std::string to_string() const;  // e.g. "(Z, Z/2, 0, Z)"
};

HomologyResult homology(const ChainComplex& cc);
// Betti numbers via rational ranks, an independent check on the Smith-form route.
std::vector<Int> rational_betti(const ChainComplex& cc);
// Convenience: homology from Betti numbers and torsion lists.
HomologyResult make_homology(std::vector<long> betti, std::vector<std::vector<long>> torsion = {});

struct ChainMap {
  std::vector<IntMatrix> maps;  // maps[d]: target count(d) x source count(d)
  IntMatrix at(int d, std::size_t rows, std::size_t cols) const;
};

bool is_chain_map(const ChainComplex& source, const ChainComplex& target, const ChainMap& f);
ChainMap compose(const ChainMap& second, const ChainMap& first);

// Cylinders sharing one copy of the source: per dimension the cells are ordered
// [source_d][cyl_0: source_{d-1} x I, target0_d][cyl_1: ...]. Boundary of e x I is
// f(e) - e - (de) x I.
ChainComplex glue_cylinders(const ChainComplex& source, const std::vector<ChainComplex>& targets,
                            const std::vector<ChainMap>& maps);
ChainComplex mapping_cylinder(const ChainComplex& source, const ChainComplex& target, const ChainMap& f);

struct CylinderLayout {
  // offsets[d]: start of the source block, then for each cylinder the prism block and the target block.
  std::vector<std::size_t> sourceCount;
  std::vector<std::vector<std::size_t>> prismStart;   // [cyl][d]
  std::vector<std::vector<std::size_t>> targetStart;  // [cyl][d]
};
CylinderLayout cylinder_layout(const ChainComplex& source, const std::vector<ChainComplex>& targets);

struct Chain {
  int dim = 0;
  IntVector coeffs;
  bool is_zero() const;
};

Chain boundary_of(const ChainComplex& cc, const Chain& c);

struct SignedPermutation {
  std::vector<std::size_t> image;
  std::vector<int> sign;
};

struct FiniteAction {
  // perElement[g][d]; element 0 is the identity. product[g][h] is the index of g*h.
  std::vector<std::vector<SignedPermutation>> perElement;
  std::vector<std::vector<std::size_t>> product;
  std::size_t order() const { return perElement.size(); }
};

// Action axioms and the chain-map property; throws InvalidInput("InvalidAction").
void check_action(const ChainComplex& cc, const FiniteAction& act);

struct OrbitMap {
  std::vector<std::vector<std::size_t>> orbit;  // [d][cell] -> quotient cell
  std::vector<std::vector<int>> sign;           // [d][cell]: cell ≡ sign * representative
};

struct QuotientResult {
  ChainComplex complex;
  OrbitMap tau;
};

// Orbit complex of an admissible action. A cell mapped to itself with sign -1 is a
// NotAdmissible error.
QuotientResult quotient_by_action(const ChainComplex& cc, const FiniteAction& act);
Chain pushforward(const OrbitMap& tau, std::size_t targetCount, const Chain& c);

// x supported on `support` ((d+1)-cells) with boundary(x) == target, if one exists.
std::optional<Chain> find_filling_chain(const ChainComplex& cc, const Chain& target,
                                        const std::vector<std::size_t>& support);

}  // namespace vcspace
