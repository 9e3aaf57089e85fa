#include <algorithm>
#include <deque>
#include <set>

#include "vcspace/error.hpp"
#include "vcspace/toruscomplex.hpp"

namespace vcspace {

namespace {

// Smallest primitive integer vector on the ray of a nonzero rational vector.
IntVector primitive_direction(const RatVector& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = Rational(v[i] * Rational(l)).get_num();
  return primitive_part(w);
}

// Normal of the hyperplane through m affinely independent points in R^m (m <= 3).
IntVector normal_through(const std::vector<RatVector>& pts) {
  const std::size_t m = pts[0].size();
  if (m == 1) return {Int(1)};
  if (m == 2) {
    RatVector d = sub(pts[1], pts[0]);
    return primitive_direction({Rational(-d[1]), d[0]});
  }
  RatVector a = sub(pts[1], pts[0]), b = sub(pts[2], pts[0]);
  return primitive_direction({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
}

Family family_through(const std::vector<RatVector>& pts) {
  IntVector w = normal_through(pts);
  return make_family(w, dot(w, pts[0]));
}

RatVector apply_point(const IntMatrix& p, const RatVector& x) { return p * x; }

std::vector<RatVector> image_of(const IntMatrix& p, const std::vector<RatVector>& pts) {
  std::vector<RatVector> out;
  for (const auto& x : pts) out.push_back(apply_point(p, x));
  return out;
}

using FaceRef = std::pair<std::size_t, std::size_t>;  // (dim, lifted face)

// All proper faces of every lifted face, through the facet relation.
std::vector<std::vector<std::set<FaceRef>>> proper_faces(const LiftedComplex& l) {
  std::vector<std::vector<std::set<FaceRef>>> out(l.faces.size());
  for (std::size_t d = 0; d < l.faces.size(); ++d) {
    out[d].resize(l.faces[d].size());
    if (d == 0) continue;
    for (std::size_t f = 0; f < l.faces[d].size(); ++f)
      for (auto g : l.faces[d][f].facets) {
        out[d][f].insert({d - 1, g});
        out[d][f].insert(out[d - 1][g].begin(), out[d - 1][g].end());
      }
  }
  return out;
}

// Chains F_0 < ... < F_{len-1} ending at `top`.
void chains_ending(const std::vector<std::vector<std::set<FaceRef>>>& below, FaceRef top, std::size_t len,
                   std::vector<FaceRef>& cur, std::vector<std::vector<FaceRef>>& out) {
  cur.push_back(top);
  if (len == 1) {
    out.emplace_back(cur.rbegin(), cur.rend());
  } else {
    for (const auto& g : below[top.first][top.second]) chains_ending(below, g, len - 1, cur, out);
  }
  cur.pop_back();
}

}  // namespace

std::vector<Family> transform_families(const std::vector<Family>& families, const AffineMap& g) {
  IntMatrix inv_t = unimodular_inverse(g.linear).transpose();
  std::vector<Family> out;
  for (const auto& f : families) {
    IntVector w = inv_t * f.normal;
    out.push_back(make_family(w, f.offset + dot(w, g.trans)));
  }
  return out;
}

std::vector<Family> close_families(std::vector<Family> families, const std::vector<AffineMap>& maps) {
  constexpr std::size_t kCap = 100000;
  std::set<Family> seen(families.begin(), families.end());
  std::deque<Family> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    Family f = queue.front();
    queue.pop_front();
    for (const auto& g : maps) {
      Family h = transform_families({f}, g)[0];
      if (seen.insert(h).second) {
        if (seen.size() > kCap) throw invalid_input("OrderCapExceeded", "family closure does not terminate");
        queue.push_back(h);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Family> preimage_families(const std::vector<Family>& families, const IntMatrix& p) {
  std::vector<Family> out;
  IntMatrix pt = p.transpose();
  for (const auto& f : families) {
    IntVector w = pt * f.normal;
    Int g = gcd_of(w);
    if (g == 0) throw invalid_input("DegenerateProjection", "projection kills a family normal");
    IntVector prim(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) prim[i] = w[i] / g;
    for (Int k = 0; k < g; ++k) out.push_back(make_family(prim, (f.offset + Rational(k)) / Rational(g)));
  }
  return normalize_families(std::move(out));
}

std::vector<Family> projected_families(const TorusComplex& x, const IntMatrix& p) {
  const std::size_t m = p.rows();
  std::vector<Family> out = axis_families(m);
  for (int d = 0; d <= x.top_dimension(); ++d)
    for (const auto& cell : x.cells(d)) {
      auto img = image_of(p, cell.vertices);
      const int k = affine_dimension(img);
      if (k == static_cast<int>(m)) continue;
      if (k == static_cast<int>(m) - 1) {
        // Affinely independent points spanning the image.
        std::vector<RatVector> basis{img[0]};
        for (std::size_t i = 1; i < img.size() && basis.size() < m; ++i) {
          basis.push_back(img[i]);
          if (affine_dimension(basis) != static_cast<int>(basis.size()) - 1) basis.pop_back();
        }
        out.push_back(family_through(basis));
        if (k > 0) continue;
      }
      for (std::size_t i = 0; i < m; ++i) {
        IntVector e(m);
        e[i] = 1;
        out.push_back(make_family(e, img[0][i]));
      }
    }
  return normalize_families(std::move(out));
}

std::vector<Family> barycentric_families(const TorusComplex& x) {
  const LiftedComplex& l = x.lifted();
  const std::size_t m = x.ambient();
  auto below = proper_faces(l);
  std::vector<Family> out;
  for (std::size_t d = m - 1; d <= m && d < l.faces.size(); ++d)
    for (std::size_t f = 0; f < l.faces[d].size(); ++f) {
      std::vector<FaceRef> cur;
      std::vector<std::vector<FaceRef>> chains;
      chains_ending(below, {d, f}, m, cur, chains);
      for (const auto& ch : chains) {
        std::vector<RatVector> pts;
        for (auto [cd, cf] : ch) pts.push_back(centroid(l.faces[cd][cf].vertices));
        out.push_back(family_through(pts));
      }
    }
  return normalize_families(std::move(out));
}

TorusComplex barycentric_subdivision(const TorusComplex& x) {
  const LiftedComplex& l = x.lifted();
  auto below = proper_faces(l);
  LiftedComplex out;
  out.ambient = l.ambient;
  out.periodic = l.periodic;
  out.faces.resize(l.faces.size());
  std::vector<std::map<std::vector<FaceRef>, std::size_t>> index(l.faces.size());
  for (std::size_t k = 0; k < l.faces.size(); ++k) {
    std::vector<std::vector<FaceRef>> chains;
    for (std::size_t d = k; d < l.faces.size(); ++d)
      for (std::size_t f = 0; f < l.faces[d].size(); ++f) {
        std::vector<FaceRef> cur;
        chains_ending(below, {d, f}, k + 1, cur, chains);
      }
    std::sort(chains.begin(), chains.end());
    for (const auto& ch : chains) {
      LiftedFace s;
      for (auto [cd, cf] : ch) s.vertices.push_back(centroid(l.faces[cd][cf].vertices));
      std::sort(s.vertices.begin(), s.vertices.end());
      if (k > 0)
        for (std::size_t drop = 0; drop < ch.size(); ++drop) {
          std::vector<FaceRef> sub = ch;
          sub.erase(sub.begin() + static_cast<long>(drop));
          s.facets.push_back(index[k - 1].at(sub));
        }
      std::sort(s.facets.begin(), s.facets.end());
      index[k].emplace(ch, out.faces[k].size());
      out.faces[k].push_back(std::move(s));
    }
  }
  return TorusComplex::from_lifted(std::move(out));
}

ChainMap cellular_chain_map(const CellularMap& f) {
  const TorusComplex& src = *f.source;
  const TorusComplex& dst = *f.target;
  ChainMap out;
  for (int d = 0; d <= src.top_dimension(); ++d) {
    IntMatrix m(dst.count(d), src.count(d));
    for (std::size_t c = 0; c < src.count(d); ++c) {
      const Location& a = f.cellAssignment[static_cast<std::size_t>(d)][c];
      if (a.dim != d) continue;
      std::vector<RatVector> frame;
      for (const auto& v : cell_frame(src.cells(d)[c].vertices)) frame.push_back(f.pointMap * v);
      m(a.cell, c) = compare_orientation(frame, cell_frame(dst.cells(d)[a.cell].vertices));
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

ChainMap subdivision_chain_map(const TorusComplex& coarse, const TorusComplex& fine) {
  ChainMap out;
  for (int d = 0; d <= fine.top_dimension(); ++d) {
    IntMatrix m(fine.count(d), coarse.count(d));
    for (std::size_t c = 0; c < fine.count(d); ++c) {
      const auto& verts = fine.cells(d)[c].vertices;
      Location parent = coarse.locate(centroid(verts));
      if (parent.dim != d) continue;
      m(c, parent.cell) = compare_orientation(cell_frame(verts), cell_frame(coarse.cells(d)[parent.cell].vertices));
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

namespace {

CellularMap make_cellular_map(std::shared_ptr<const TorusComplex> source, std::shared_ptr<const TorusComplex> target,
                              const IntMatrix& p) {
  CellularMap f{std::move(source), std::move(target), p, {}};
  for (int d = 0; d <= f.source->top_dimension(); ++d) {
    std::vector<Location> row;
    for (const auto& cell : f.source->cells(d)) row.push_back(f.target->locate(p * centroid(cell.vertices)));
    f.cellAssignment.push_back(std::move(row));
  }
  return f;
}

}  // namespace

ProjectionSubdivision subdivide_for_projection(const TorusComplex& x, const IntVector& classVector,
                                               std::shared_ptr<const TorusComplex> line) {
  if (!x.is_arrangement()) throw invalid_input("NotAnArrangement", "projection subdivision needs an arrangement");
  IntVector v = canonical_sign(classVector);
  IntMatrix p = quotient_lattice_map(hnf_extend_primitive(v));
  if (line->ambient() + 1 != x.ambient()) throw invalid_input("DimensionMismatch", "line torus dimension");
  std::vector<Family> fams = x.families();
  auto pre = preimage_families(line->families(), p);
  fams.insert(fams.end(), pre.begin(), pre.end());
  ProjectionSubdivision s;
  s.classVector = v;
  s.refined = std::make_shared<const TorusComplex>(arrangement_complex(x.ambient(), fams));
  s.line = std::move(line);
  s.pi = make_cellular_map(s.refined, s.line, p);
  s.subdivision = subdivision_chain_map(x, *s.refined);
  s.pushforward = cellular_chain_map(s.pi);
  s.composite = compose(s.pushforward, s.subdivision);
  return s;
}

ProjectionSubdivision projection_subdivision(const TorusComplex& x, const IntVector& classVector) {
  IntVector v = canonical_sign(classVector);
  IntMatrix p = quotient_lattice_map(hnf_extend_primitive(v));
  auto line = std::make_shared<const TorusComplex>(arrangement_complex(p.rows(), projected_families(x, p)));
  return subdivide_for_projection(x, v, std::move(line));
}

ProjectionSubdivision projection_subdivision(const TorusComplex& x, const MaxCyclicClass& c) {
  return projection_subdivision(x, c.vector);
}

std::vector<Family> refinement_families(const TorusComplex& x, const ClassSet& classes) {
  std::vector<Family> fams = x.families();
  for (const auto& c : classes.classes)
    for (const auto& w : c.orbit) {
      IntMatrix p = quotient_lattice_map(hnf_extend_primitive(w));
      for (std::size_t i = 0; i < p.rows(); ++i) fams.push_back(make_family(p.row(i), Rational(0)));
    }
  std::vector<AffineMap> maps;
  for (const auto& g : classes.group.cosetReps) maps.push_back(g.as_map());
  return close_families(std::move(fams), maps);
}

CommonRefinement common_refinement(const TorusComplex& x, const ClassSet& classes) {
  if (classes.classes.empty()) throw invalid_input("EmptyClassSet", "common refinement needs at least one class");
  CommonRefinement r;
  r.complex = std::make_shared<const TorusComplex>(arrangement_complex(x.ambient(), refinement_families(x, classes)));
  for (const auto& c : classes.classes)
    for (const auto& w : c.orbit) {
      r.members.push_back(w);
      r.maps.push_back(projection_subdivision(*r.complex, w));
    }
  return r;
}

bool is_cellular(const CellularMap& f) {
  const TorusComplex& dst = *f.target;
  for (int d = 0; d <= f.source->top_dimension(); ++d)
    for (std::size_t c = 0; c < f.source->count(d); ++c) {
      const Location& a = f.cellAssignment[static_cast<std::size_t>(d)][c];
      auto img = image_of(f.pointMap, f.source->cells(d)[c].vertices);
      if (affine_dimension(img) != a.dim) return false;
      for (auto& y : img) {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= Rational(a.shift[i]);
        if (!dst.in_closure(y, a.dim, a.cell)) return false;
      }
      for (const auto& v : dst.cells(a.dim)[a.cell].vertices)
        if (std::find(img.begin(), img.end(), v) == img.end()) return false;
    }
  return true;
}

bool volumes_conserved(const TorusComplex& coarse, const TorusComplex& fine) {
  const int n = coarse.top_dimension();
  if (fine.top_dimension() != n) return false;
  std::vector<Rational> acc(coarse.count(n), Rational(0));
  for (std::size_t c = 0; c < fine.count(n); ++c) {
    Location parent = coarse.locate(centroid(fine.cells(n)[c].vertices));
    if (parent.dim != n) return false;
    acc[parent.cell] += cell_volume(fine, c);
  }
  Rational total = 0;
  for (std::size_t c = 0; c < coarse.count(n); ++c) {
    if (acc[c] != cell_volume(coarse, c)) return false;
    total += acc[c];
  }
  return total == 1;
}

SubdivisionCheck check_subdivision(const TorusComplex& x, const ProjectionSubdivision& s) {
  SubdivisionCheck out;
  out.eulerZero = s.refined->euler_characteristic() == 0 && s.line->euler_characteristic() == 0;
  out.cellular = is_cellular(s.pi);
  out.volumeConserved = volumes_conserved(x, *s.refined);
  try {
    ChainComplex cx = chain_complex(x), cr = chain_complex(*s.refined), cy = chain_complex(*s.line);
    out.boundarySquaredZero = true;
    out.chainMaps = is_chain_map(cx, cr, s.subdivision) && is_chain_map(cr, cy, s.pushforward);
  } catch (const Error&) {
    out.boundarySquaredZero = false;
  }
  return out;
}

}  // namespace vcspace
