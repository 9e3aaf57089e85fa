#pragma once

// Polytopal CW structures on the torus R^n / Z^n. Every periodic complex here is the
// arrangement cut out of the closed unit cube by finitely many periodic hyperplane
// families; cells are identified across the cube faces by integer translation.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "vcspace/crystal.hpp"
#include "vcspace/cyclics.hpp"
#include "vcspace/homology.hpp"

namespace vcspace {

// The periodic family {x : normal . x in offset + Z}; normal primitive with canonical
// sign, offset in [0, 1).
struct Family {
  IntVector normal;
  Rational offset;
  bool operator<(const Family& other) const {
    if (normal != other.normal) return normal < other.normal;
    return offset < other.offset;
  }
  bool operator==(const Family&) const = default;
};

Family make_family(const IntVector& normal, const Rational& offset);
std::vector<Family> axis_families(std::size_t n);
// Sorted, deduplicated.
std::vector<Family> normalize_families(std::vector<Family> families);

struct Hyperplane {
  IntVector normal;
  Rational level;
};

struct LiftedFace {
  std::vector<RatVector> vertices;  // sorted lexicographically
  std::vector<std::size_t> facets;  // indices into the faces one dimension down
};

struct LiftedComplex {
  std::size_t ambient = 0;
  bool periodic = true;
  std::vector<std::vector<LiftedFace>> faces;  // [dim]
};

struct Incidence {
  std::size_t cell;
  int sign;
};

struct Cell {
  std::vector<RatVector> vertices;  // representative lift, sorted; lexmin vertex lies in [0,1)^n
  std::vector<Incidence> boundary;  // summed coefficients, zero entries dropped
};

// A point p lies in the relative interior of cells(dim)[cell] translated by shift.
struct Location {
  int dim = 0;
  std::size_t cell = 0;
  IntVector shift;
};

class TorusComplex {
 public:
  TorusComplex() = default;
  static TorusComplex from_lifted(LiftedComplex lifted);

  std::size_t ambient() const { return ambient_; }
  bool periodic() const { return periodic_; }
  int top_dimension() const { return static_cast<int>(cells_.size()) - 1; }
  std::size_t count(int d) const;
  std::vector<std::size_t> counts() const;
  const std::vector<Cell>& cells(int d) const { return cells_.at(static_cast<std::size_t>(d)); }
  long euler_characteristic() const;

  const LiftedComplex& lifted() const { return *lifted_; }
  // Torus cell of a lifted face, and the translation t with lifted = representative + t.
  std::size_t cell_of_lifted(int d, std::size_t face) const { return liftCell_[static_cast<std::size_t>(d)][face]; }
  const IntVector& lift_shift(int d, std::size_t face) const { return liftShift_[static_cast<std::size_t>(d)][face]; }

  // Index of the cell whose representative is a translate of the given vertex set.
  std::optional<std::size_t> find(int d, const std::vector<RatVector>& vertices) const;

  // Arrangement data; only complexes built by arrangement_complex carry it.
  bool is_arrangement() const { return !planes_.empty(); }
  const std::vector<Family>& families() const { return families_; }
  const std::vector<Hyperplane>& hyperplanes() const { return planes_; }
  Location locate(const RatVector& p) const;
  // Whether p lies in the closure of the representative of cells(d)[cell].
  bool in_closure(const RatVector& p, int d, std::size_t cell) const;

 private:
  friend TorusComplex arrangement_complex(std::size_t n, std::vector<Family> families);

  std::size_t ambient_ = 0;
  bool periodic_ = true;
  std::vector<std::vector<Cell>> cells_;
  std::shared_ptr<const LiftedComplex> lifted_;
  std::vector<std::vector<std::size_t>> liftCell_;
  std::vector<std::vector<IntVector>> liftShift_;
  std::vector<std::vector<std::size_t>> repFace_;  // [d][cell] -> lifted face
  std::vector<std::map<std::vector<RatVector>, std::size_t>> keyIndex_;

  std::vector<Family> families_;
  std::vector<Hyperplane> planes_;
  std::map<std::vector<signed char>, std::pair<int, std::size_t>> signIndex_;  // -> (dim, lifted face)
  std::vector<std::vector<std::vector<signed char>>> faceSigns_;              // [d][lifted face]
};

// Translation-invariant key of a vertex set: sorted, then shifted so the lexmin vertex
// lies in [0,1)^n (periodic) or left as is.
std::vector<RatVector> cell_key(std::vector<RatVector> vertices, bool periodic);
RatVector centroid(const std::vector<RatVector>& points);

// Orientation convention: the frame of a cell is the greedy independent subset of
// v_i - v_0 over its sorted vertices. Two frames of the same subspace are compared on
// the lexicographically first coordinate rows where the reference is nonsingular.
inline constexpr const char* kOrientationConvention = "lexframe-outward-first/v1";
std::vector<RatVector> cell_frame(const std::vector<RatVector>& sortedVertices);
int compare_orientation(const std::vector<RatVector>& frame, const std::vector<RatVector>& reference);
// Sign of det(frame) for a full-dimensional cell.
int top_cell_sign(const std::vector<RatVector>& sortedVertices);
int boundary_sign(const std::vector<RatVector>& cellVertices, const std::vector<RatVector>& facetVertices);

// The closed cube [0,1]^n cut by the given families (axis families are always added).
TorusComplex arrangement_complex(std::size_t n, std::vector<Family> families);
// Throws UnsupportedDimension unless n in {1,2,3}.
TorusComplex cubical_torus(int n);
// Two vertices and one edge in R^1, not periodic.
TorusComplex interval_complex();

std::vector<Family> transform_families(const std::vector<Family>& families, const AffineMap& g);
std::vector<Family> close_families(std::vector<Family> families, const std::vector<AffineMap>& maps);
// Families upstairs whose hyperplanes are the preimages under y = P x.
std::vector<Family> preimage_families(const std::vector<Family>& families, const IntMatrix& p);
// Families on the line torus generated by the projected cells of X: for each cell whose image
// is codimension one the hyperplane containing the image, for lower images the axis
// hyperplanes through the image point.
std::vector<Family> projected_families(const TorusComplex& x, const IntMatrix& p);
// Families spanned by the codimension-one simplices of the barycentric subdivision.
std::vector<Family> barycentric_families(const TorusComplex& x);

struct CellImage {
  std::size_t cell = 0;
  int sign = 1;
  bool fixesPointwise = false;  // image is the cell itself with every point fixed
};
// Image of a cell under x -> M x + t; throws InvalidInput("NotInvariant") if it is not a cell.
CellImage apply_affine(const TorusComplex& x, int d, std::size_t cell, const AffineMap& g);
// Same, with the image looked up in another complex (fixesPointwise is then always false).
CellImage apply_affine(const TorusComplex& from, int d, std::size_t cell, const AffineMap& g, const TorusComplex& to);

struct CellularMap {
  std::shared_ptr<const TorusComplex> source;
  std::shared_ptr<const TorusComplex> target;
  IntMatrix pointMap;
  std::vector<std::vector<Location>> cellAssignment;  // [d][source cell]: target cell carrying P(interior)
};

struct ProjectionSubdivision {
  IntVector classVector;
  std::shared_ptr<const TorusComplex> refined;  // X'
  std::shared_ptr<const TorusComplex> line;     // Y
  CellularMap pi;                               // X' -> Y
  ChainMap subdivision;                         // C(X) -> C(X')
  ChainMap pushforward;                         // C(X') -> C(Y)
  ChainMap composite;                           // C(X) -> C(Y)
};

// Y built from the projected cells of X, then X refined by the preimages of Y.
ProjectionSubdivision projection_subdivision(const TorusComplex& x, const IntVector& classVector);
ProjectionSubdivision projection_subdivision(const TorusComplex& x, const MaxCyclicClass& c);
// Same with a prescribed line complex, which must be generated by families that make
// every projected cell of X a union of cells.
ProjectionSubdivision subdivide_for_projection(const TorusComplex& x, const IntVector& classVector,
                                               std::shared_ptr<const TorusComplex> line);

struct CommonRefinement {
  std::shared_ptr<const TorusComplex> complex;  // X*
  std::vector<IntVector> members;               // every orbit member of every class, class order
  std::vector<ProjectionSubdivision> maps;      // one per member
};

// X's families plus the coordinate rows of each member's projection, closed under the point group.
std::vector<Family> refinement_families(const TorusComplex& x, const ClassSet& classes);
CommonRefinement common_refinement(const TorusComplex& x, const ClassSet& classes);

TorusComplex barycentric_subdivision(const TorusComplex& x);

// Exact volume of the representative of a full-dimensional cell.
Rational cell_volume(const TorusComplex& x, std::size_t topCell);

// Cellular chain complex; throws NonregularIncidence on a coefficient outside {-1,0,1}.
ChainComplex chain_complex(const TorusComplex& x);
ChainMap cellular_chain_map(const CellularMap& f);
// fine must refine coarse; coarse must be an arrangement.
ChainMap subdivision_chain_map(const TorusComplex& coarse, const TorusComplex& fine);

struct SubdivisionCheck {
  bool eulerZero = false;
  bool cellular = false;
  bool volumeConserved = false;
  bool boundarySquaredZero = false;
  bool chainMaps = false;
  bool ok() const { return eulerZero && cellular && volumeConserved && boundarySquaredZero && chainMaps; }
};
// Verifies one X' / Y pair against the coarse complex X.
SubdivisionCheck check_subdivision(const TorusComplex& x, const ProjectionSubdivision& s);
bool is_cellular(const CellularMap& f);
bool volumes_conserved(const TorusComplex& coarse, const TorusComplex& fine);

}  // namespace vcspace
