#include "vcspace/toruscomplex.hpp"

#include <algorithm>
#include <set>

#include "vcspace/error.hpp"

namespace vcspace {

namespace {

int sign_of(const Rational& r) { return sgn(r); }

bool is_integral(const Rational& r) { return r.get_den() == 1; }

}  // namespace

Family make_family(const IntVector& normal, const Rational& offset) {
  if (gcd_of(normal) != 1) throw not_primitive("family normal is not primitive");
  IntVector w = canonical_sign(normal);
  Rational c = (w == normal) ? offset : Rational(-offset);
  return {w, frac_of(c)};
}

std::vector<Family> axis_families(std::size_t n) {
  std::vector<Family> out;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    out.push_back({e, Rational(0)});
  }
  return out;
}

std::vector<Family> normalize_families(std::vector<Family> families) {
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());
  return families;
}

std::vector<RatVector> cell_key(std::vector<RatVector> vertices, bool periodic) {
  std::sort(vertices.begin(), vertices.end());
  if (!periodic || vertices.empty()) return vertices;
  const RatVector base = vertices.front();
  for (auto& v : vertices)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= Rational(floor_of(base[i]));
  return vertices;
}

RatVector centroid(const std::vector<RatVector>& points) {
  RatVector c(points.front().size(), Rational(0));
  for (const auto& p : points)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (auto& x : c) x /= static_cast<long>(points.size());
  return c;
}

std::vector<RatVector> cell_frame(const std::vector<RatVector>& sortedVertices) {
  std::vector<RatVector> frame;
  for (std::size_t i = 1; i < sortedVertices.size(); ++i) {
    RatVector d = sub(sortedVertices[i], sortedVertices[0]);
    frame.push_back(d);
    if (rational_rank(frame) < frame.size()) frame.pop_back();
  }
  return frame;
}

namespace {

std::vector<std::size_t> frame_rows(const std::vector<RatVector>& frame) {
  const std::size_t k = frame.size();
  if (k == 0) return {};
  const std::size_t n = frame[0].size();
  std::vector<std::size_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  while (true) {
    RatMatrix m(k, RatVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = frame[i][rows[j]];
    if (rational_determinant(m) != 0) return rows;
    // next k-combination of {0..n-1} in lexicographic order
    std::size_t i = k;
    while (i > 0 && rows[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++rows[i - 1];
    for (std::size_t j = i; j < k; ++j) rows[j] = rows[j - 1] + 1;
  }
  throw invalid_input("DegenerateFrame", "cell frame is singular");
}

int restricted_sign(const std::vector<RatVector>& vectors, const std::vector<std::size_t>& rows) {
  const std::size_t k = rows.size();
  RatMatrix m(k, RatVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m[i][j] = vectors[i][rows[j]];
  return sign_of(rational_determinant(m));
}

}  // namespace

int compare_orientation(const std::vector<RatVector>& frame, const std::vector<RatVector>& reference) {
  if (frame.size() != reference.size()) throw invalid_input("DimensionMismatch", "frames of different size");
  if (frame.empty()) return 1;
  auto rows = frame_rows(reference);
  int s = restricted_sign(frame, rows);
  if (s == 0) throw invalid_input("DegenerateFrame", "frames span different subspaces");
  return s * restricted_sign(reference, rows);
}

int top_cell_sign(const std::vector<RatVector>& sortedVertices) {
  auto frame = cell_frame(sortedVertices);
  RatMatrix m(frame.begin(), frame.end());
  return sign_of(rational_determinant(m));
}

int boundary_sign(const std::vector<RatVector>& cellVertices, const std::vector<RatVector>& facetVertices) {
  auto cellFrame = cell_frame(cellVertices);
  auto facetFrame = cell_frame(facetVertices);
  const RatVector* off = nullptr;
  for (const auto& v : cellVertices)
    if (std::find(facetVertices.begin(), facetVertices.end(), v) == facetVertices.end()) {
      off = &v;
      break;
    }
  if (!off) throw invalid_input("DegenerateFrame", "facet contains every vertex of its cell");
  std::vector<RatVector> induced{sub(facetVertices[0], *off)};  // outward first
  induced.insert(induced.end(), facetFrame.begin(), facetFrame.end());
  return compare_orientation(induced, cellFrame);
}

// --- TorusComplex ------------------------------------------------------------

std::size_t TorusComplex::count(int d) const {
  if (d < 0 || d > top_dimension()) return 0;
  return cells_[static_cast<std::size_t>(d)].size();
}

std::vector<std::size_t> TorusComplex::counts() const {
  std::vector<std::size_t> out;
  for (const auto& c : cells_) out.push_back(c.size());
  return out;
}

long TorusComplex::euler_characteristic() const {
  long chi = 0;
  for (int d = 0; d <= top_dimension(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(count(d));
  return chi;
}

TorusComplex TorusComplex::from_lifted(LiftedComplex lifted) {
  TorusComplex t;
  t.ambient_ = lifted.ambient;
  t.periodic_ = lifted.periodic;
  const std::size_t dims = lifted.faces.size();
  t.cells_.resize(dims);
  t.liftCell_.resize(dims);
  t.liftShift_.resize(dims);
  t.repFace_.resize(dims);
  t.keyIndex_.resize(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    const auto& faces = lifted.faces[d];
    std::vector<std::vector<RatVector>> keys;
    keys.reserve(faces.size());
    std::map<std::vector<RatVector>, std::size_t> firstFace;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      keys.push_back(cell_key(faces[f].vertices, lifted.periodic));
      firstFace.emplace(keys.back(), f);
    }
    std::size_t idx = 0;
    for (auto& [key, face] : firstFace) {
      t.keyIndex_[d].emplace(key, idx++);
      t.cells_[d].push_back({key, {}});
      t.repFace_[d].push_back(face);
    }
    for (std::size_t f = 0; f < faces.size(); ++f) {
      t.liftCell_[d].push_back(t.keyIndex_[d].at(keys[f]));
      IntVector shift(lifted.ambient);
      if (lifted.periodic)
        for (std::size_t i = 0; i < lifted.ambient; ++i) shift[i] = floor_of(faces[f].vertices.front()[i]);
      t.liftShift_[d].push_back(std::move(shift));
    }
  }
  for (std::size_t d = 1; d < dims; ++d)
    for (std::size_t c = 0; c < t.cells_[d].size(); ++c) {
      const LiftedFace& rep = lifted.faces[d][t.repFace_[d][c]];
      std::map<std::size_t, long> acc;
      for (auto f : rep.facets) acc[t.liftCell_[d - 1][f]] += boundary_sign(rep.vertices, lifted.faces[d - 1][f].vertices);
      for (auto [cell, coef] : acc)
        if (coef != 0) t.cells_[d][c].boundary.push_back({cell, static_cast<int>(coef)});
    }
  t.lifted_ = std::make_shared<const LiftedComplex>(std::move(lifted));
  return t;
}

std::optional<std::size_t> TorusComplex::find(int d, const std::vector<RatVector>& vertices) const {
  if (d < 0 || d > top_dimension()) return std::nullopt;
  const auto& index = keyIndex_[static_cast<std::size_t>(d)];
  auto it = index.find(cell_key(vertices, periodic_));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<signed char> sign_vector(const std::vector<Hyperplane>& planes, const RatVector& p) {
  std::vector<signed char> s(planes.size());
  for (std::size_t j = 0; j < planes.size(); ++j)
    s[j] = static_cast<signed char>(sign_of(dot(planes[j].normal, p) - planes[j].level));
  return s;
}

}  // namespace

Location TorusComplex::locate(const RatVector& p) const {
  if (!is_arrangement()) throw invalid_input("NotAnArrangement", "point location needs arrangement data");
  if (p.size() != ambient_) throw invalid_input("DimensionMismatch", "point dimension");
  IntVector k(ambient_);
  RatVector reduced(ambient_);
  for (std::size_t i = 0; i < ambient_; ++i) {
    k[i] = floor_of(p[i]);
    reduced[i] = p[i] - Rational(k[i]);
  }
  auto it = signIndex_.find(sign_vector(planes_, reduced));
  if (it == signIndex_.end()) throw invalid_input("LocateFailed", "point is in no cell");
  auto [d, face] = it->second;
  Location loc{d, liftCell_[static_cast<std::size_t>(d)][face], k};
  const IntVector& a = liftShift_[static_cast<std::size_t>(d)][face];
  for (std::size_t i = 0; i < ambient_; ++i) loc.shift[i] += a[i];
  return loc;
}

bool TorusComplex::in_closure(const RatVector& p, int d, std::size_t cell) const {
  if (!is_arrangement()) throw invalid_input("NotAnArrangement", "closure test needs arrangement data");
  const std::size_t ud = static_cast<std::size_t>(d);
  const std::size_t face = repFace_[ud][cell];
  const IntVector& a = liftShift_[ud][face];
  RatVector q(ambient_);
  for (std::size_t i = 0; i < ambient_; ++i) {
    q[i] = p[i] + Rational(a[i]);
    if (q[i] < 0 || q[i] > 1) return false;
  }
  const auto& signs = faceSigns_[ud][face];
  for (std::size_t j = 0; j < planes_.size(); ++j) {
    int s = sign_of(dot(planes_[j].normal, q) - planes_[j].level);
    if (s != 0 && s != signs[j]) return false;
  }
  return true;
}

// --- arrangements ------------------------------------------------------------

namespace {

struct Builder {
  std::size_t n = 0;
  std::vector<Hyperplane> planes;
  std::vector<RatVector> pts;
  std::map<RatVector, std::size_t> index;
  std::vector<std::vector<std::size_t>> tight;  // sorted plane ids through each point
  std::vector<std::vector<std::size_t>> cells;  // full-dimensional cells as point ids
  std::size_t processed = 0;

  Rational side(std::size_t h, const RatVector& x) const { return dot(planes[h].normal, x) - planes[h].level; }

  std::size_t add_point(const RatVector& p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    const std::size_t id = pts.size();
    pts.push_back(p);
    index.emplace(p, id);
    std::vector<std::size_t> t;
    for (std::size_t h = 0; h < processed; ++h)
      if (side(h, p) == 0) t.push_back(h);
    tight.push_back(std::move(t));
    return id;
  }

  // Two vertices of a current cell span an edge iff their common supporting hyperplanes
  // cut out a line.
  bool is_edge(std::size_t u, std::size_t v) const {
    if (n == 1) return true;
    std::vector<std::size_t> common;
    std::set_intersection(tight[u].begin(), tight[u].end(), tight[v].begin(), tight[v].end(),
                          std::back_inserter(common));
    if (common.size() < n - 1) return false;
    RatMatrix rows;
    for (auto h : common) rows.push_back(to_rational(planes[h].normal));
    return rational_rank(std::move(rows)) == n - 1;
  }

  void cut(std::size_t h) {
    for (std::size_t p = 0; p < pts.size(); ++p)
      if (side(h, pts[p]) == 0) tight[p].push_back(h);
    processed = h + 1;
    std::vector<std::vector<std::size_t>> next;
    for (const auto& cell : cells) {
      std::vector<std::size_t> neg, pos, zero;
      std::vector<Rational> value(cell.size());
      for (std::size_t i = 0; i < cell.size(); ++i) {
        value[i] = side(h, pts[cell[i]]);
        int s = sign_of(value[i]);
        (s < 0 ? neg : s > 0 ? pos : zero).push_back(i);
      }
      if (neg.empty() || pos.empty()) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::size_t> fresh;
      for (auto i : neg)
        for (auto j : pos) {
          if (!is_edge(cell[i], cell[j])) continue;
          const Rational t = value[i] / (value[i] - value[j]);
          RatVector p = add(pts[cell[i]], scale(sub(pts[cell[j]], pts[cell[i]]), t));
          fresh.push_back(add_point(p));
        }
      std::vector<std::size_t> lo = fresh, hi = fresh;
      for (auto i : zero) {
        lo.push_back(cell[i]);
        hi.push_back(cell[i]);
      }
      for (auto i : neg) lo.push_back(cell[i]);
      for (auto i : pos) hi.push_back(cell[i]);
      for (auto* piece : {&lo, &hi}) {
        std::sort(piece->begin(), piece->end());
        piece->erase(std::unique(piece->begin(), piece->end()), piece->end());
        next.push_back(std::move(*piece));
      }
    }
    cells = std::move(next);
  }
};

std::vector<Hyperplane> in_cube_hyperplanes(const Family& f) {
  Int lo = 0, hi = 0;
  for (const auto& w : f.normal) {
    if (w < 0) lo += w;
    if (w > 0) hi += w;
  }
  std::vector<Hyperplane> out;
  Rational start = Rational(lo) - f.offset;
  Int k = floor_of(start);
  if (Rational(k) < start) k += 1;
  for (; Rational(k) + f.offset <= Rational(hi); k += 1) out.push_back({f.normal, Rational(k) + f.offset});
  return out;
}

}  // namespace

TorusComplex arrangement_complex(std::size_t n, std::vector<Family> families) {
  if (n < 1 || n > 3) throw invalid_input("UnsupportedDimension", "torus dimension must be 1, 2 or 3");
  for (const auto& f : families)
    if (f.normal.size() != n) throw invalid_input("DimensionMismatch", "family dimension");
  auto axes = axis_families(n);
  families.insert(families.end(), axes.begin(), axes.end());
  families = normalize_families(std::move(families));

  Builder b;
  b.n = n;
  for (const auto& f : axes)
    for (auto& h : in_cube_hyperplanes(f)) b.planes.push_back(h);
  for (const auto& f : families) {
    if (std::find(axes.begin(), axes.end(), f) != axes.end()) continue;
    for (auto& h : in_cube_hyperplanes(f)) b.planes.push_back(h);
  }
  b.processed = 2 * n;
  std::vector<std::size_t> cube;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    RatVector v(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) v[i] = 1;
    cube.push_back(b.add_point(v));
  }
  std::sort(cube.begin(), cube.end());
  b.cells.push_back(cube);
  for (std::size_t h = 2 * n; h < b.planes.size(); ++h) b.cut(h);

  // Face lattice: facets of a k-face are its maximal intersections with supporting hyperplanes.
  std::vector<std::vector<std::vector<std::size_t>>> ids(n + 1);
  std::vector<std::vector<std::vector<std::size_t>>> facets(n + 1);
  ids[n] = b.cells;
  std::sort(ids[n].begin(), ids[n].end());
  for (std::size_t k = n; k >= 1; --k) {
    std::map<std::vector<std::size_t>, std::size_t> lower;
    std::map<std::vector<std::size_t>, bool> rejected;
    facets[k].resize(ids[k].size());
    for (std::size_t f = 0; f < ids[k].size(); ++f) {
      const auto& w = ids[k][f];
      std::set<std::size_t> candidates;
      for (auto p : w) candidates.insert(b.tight[p].begin(), b.tight[p].end());
      std::set<std::size_t> mine;
      for (auto h : candidates) {
        std::vector<std::size_t> s;
        for (auto p : w)
          if (std::binary_search(b.tight[p].begin(), b.tight[p].end(), h)) s.push_back(p);
        if (s.size() < k || s.size() == w.size()) continue;
        auto it = lower.find(s);
        if (it == lower.end()) {
          if (rejected.count(s)) continue;
          std::vector<RatVector> coords;
          for (auto p : s) coords.push_back(b.pts[p]);
          if (affine_dimension(coords) != static_cast<int>(k) - 1) {
            rejected[s] = true;
            continue;
          }
          it = lower.emplace(s, ids[k - 1].size()).first;
          ids[k - 1].push_back(s);
        }
        mine.insert(it->second);
      }
      facets[k][f].assign(mine.begin(), mine.end());
    }
  }

  LiftedComplex lifted;
  lifted.ambient = n;
  lifted.periodic = true;
  lifted.faces.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t f = 0; f < ids[k].size(); ++f) {
      LiftedFace face;
      for (auto p : ids[k][f]) face.vertices.push_back(b.pts[p]);
      std::sort(face.vertices.begin(), face.vertices.end());
      if (k > 0) face.facets = facets[k][f];
      lifted.faces[k].push_back(std::move(face));
    }

  TorusComplex t = TorusComplex::from_lifted(std::move(lifted));
  t.families_ = families;
  t.planes_ = b.planes;
  t.faceSigns_.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t f = 0; f < t.lifted().faces[k].size(); ++f) {
      auto s = sign_vector(t.planes_, centroid(t.lifted().faces[k][f].vertices));
      t.signIndex_.emplace(s, std::make_pair(static_cast<int>(k), f));
      t.faceSigns_[k].push_back(std::move(s));
    }
  return t;
}

TorusComplex cubical_torus(int n) {
  if (n < 1 || n > 3) throw invalid_input("UnsupportedDimension", "cubical torus needs n in {1,2,3}");
  return arrangement_complex(static_cast<std::size_t>(n), {});
}

TorusComplex interval_complex() {
  LiftedComplex l;
  l.ambient = 1;
  l.periodic = false;
  l.faces.resize(2);
  l.faces[0] = {{{RatVector{Rational(0)}}, {}}, {{RatVector{Rational(1)}}, {}}};
  l.faces[1] = {{{RatVector{Rational(0)}, RatVector{Rational(1)}}, {0, 1}}};
  return TorusComplex::from_lifted(std::move(l));
}

// --- cell-level operations ---------------------------------------------------

ChainComplex chain_complex(const TorusComplex& x) {
  std::vector<std::size_t> counts = x.counts();
  std::vector<IntMatrix> bnd;
  for (int d = 0; d <= x.top_dimension(); ++d) {
    IntMatrix m(x.count(d - 1), x.count(d));
    if (d > 0)
      for (std::size_t c = 0; c < x.count(d); ++c)
        for (const auto& inc : x.cells(d)[c].boundary) {
          if (inc.sign < -1 || inc.sign > 1)
            throw invalid_input("NonregularIncidence", "incidence " + std::to_string(inc.sign) + " on cell " +
                                                           std::to_string(d) + ":" + std::to_string(c));
          m(inc.cell, c) = inc.sign;
        }
    bnd.push_back(std::move(m));
  }
  ChainComplex cc(std::move(counts), std::move(bnd));
  if (!cc.boundary_squared_zero()) throw invalid_input("BoundaryNotClosed", "cellular boundary does not square to zero");
  for (int d = 0; d <= x.top_dimension(); ++d) {
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < x.count(d); ++c) labels.push_back(std::to_string(d) + ":" + std::to_string(c));
    cc.set_labels(d, std::move(labels));
  }
  return cc;
}

CellImage apply_affine(const TorusComplex& x, int d, std::size_t cell, const AffineMap& g) {
  return apply_affine(x, d, cell, g, x);
}

CellImage apply_affine(const TorusComplex& x, int d, std::size_t cell, const AffineMap& g, const TorusComplex& to) {
  const auto& verts = x.cells(d).at(cell).vertices;
  std::vector<RatVector> image;
  for (const auto& v : verts) image.push_back(add(g.linear * v, g.trans));
  auto target = to.find(d, image);
  if (!target) throw invalid_input("NotInvariant", "cell " + std::to_string(d) + ":" + std::to_string(cell) +
                                                       " is not mapped onto a cell");
  CellImage out;
  out.cell = *target;
  std::vector<RatVector> frame;
  for (const auto& f : cell_frame(verts)) frame.push_back(g.linear * f);
  out.sign = compare_orientation(frame, cell_frame(to.cells(d)[*target].vertices));
  if (&to == &x && *target == cell) {
    out.fixesPointwise = true;
    RatVector s0 = sub(image[0], verts[0]);
    for (const auto& c : s0)
      if (!is_integral(c)) out.fixesPointwise = false;
    for (std::size_t i = 1; i < verts.size() && out.fixesPointwise; ++i)
      if (sub(image[i], verts[i]) != s0) out.fixesPointwise = false;
  }
  return out;
}

namespace {

void collect_simplices(const LiftedComplex& l, std::size_t d, std::size_t face, std::vector<std::vector<RatVector>>& out) {
  const LiftedFace& f = l.faces[d][face];
  if (d == 0) {
    out.push_back({f.vertices[0]});
    return;
  }
  const RatVector& apex = f.vertices[0];
  for (auto g : f.facets) {
    const auto& gv = l.faces[d - 1][g].vertices;
    if (std::find(gv.begin(), gv.end(), apex) != gv.end()) continue;
    std::vector<std::vector<RatVector>> sub;
    collect_simplices(l, d - 1, g, sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

Rational cell_volume(const TorusComplex& x, std::size_t topCell) {
  const int n = x.top_dimension();
  const LiftedComplex& l = x.lifted();
  // Any lift has the same volume; use the first lifted face of this cell.
  std::size_t face = 0;
  while (x.cell_of_lifted(n, face) != topCell) ++face;
  std::vector<std::vector<RatVector>> simplices;
  collect_simplices(l, static_cast<std::size_t>(n), face, simplices);
  Rational vol = 0;
  Int fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (const auto& s : simplices) {
    RatMatrix m;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) m.push_back(sub(s[i], s.back()));
    vol += abs(rational_determinant(m));
  }
  return vol / Rational(fact);
}

}  // namespace vcspace
