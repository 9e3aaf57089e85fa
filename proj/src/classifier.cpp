#include "vcspace/classifier.hpp"

#include <algorithm>
#include <set>

#include "vcspace/error.hpp"

namespace vcspace {

namespace {

std::vector<AffineMap> group_maps(const CrystalGroup& g) {
  std::vector<AffineMap> out;
  for (const auto& r : g.cosetReps) out.push_back(r.as_map());
  return out;
}

AffineMap as_map(const InducedLineMap& m) { return {m.linear, m.trans}; }

std::string vector_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

// First cell that some map sends to itself without fixing it pointwise.
std::optional<std::string> admissibility_violation(const TorusComplex& x, const std::vector<AffineMap>& maps) {
  for (std::size_t g = 0; g < maps.size(); ++g)
    for (int d = 0; d <= x.top_dimension(); ++d)
      for (std::size_t c = 0; c < x.count(d); ++c) {
        CellImage im = apply_affine(x, d, c, maps[g]);
        if (im.cell == c && !im.fixesPointwise)
          return "element " + std::to_string(g) + " moves points of cell " + std::to_string(d) + ":" + std::to_string(c);
      }
  return std::nullopt;
}

std::vector<AffineMap> stabilizer_line_maps(const CrystalGroup& group, const IntVector& v) {
  std::vector<AffineMap> out;
  for (const auto& g : group.cosetReps)
    if (canonical_sign(g.linear * v) == v) out.push_back(as_map(induced_line_map(g, v)));
  return out;
}

struct LineStage {
  std::vector<Family> repFamilies;
  std::shared_ptr<const TorusComplex> repLine;
  std::vector<std::shared_ptr<const TorusComplex>> memberLines;  // orbit order
  std::optional<std::string> violation;
};

LineStage build_lines(const CrystalGroup& group, const TorusComplex& base, const MaxCyclicClass& c,
                      const std::vector<Family>& extra) {
  const std::size_t m = base.ambient() - 1;
  LineStage st;
  const IntVector& v = c.vector;
  IntMatrix p = quotient_lattice_map(c);
  auto stab = stabilizer_line_maps(group, v);
  std::vector<Family> fams = projected_families(base, p);
  fams.insert(fams.end(), extra.begin(), extra.end());
  st.repFamilies = close_families(std::move(fams), stab);
  st.repLine = std::make_shared<const TorusComplex>(arrangement_complex(m, st.repFamilies));
  st.violation = admissibility_violation(*st.repLine, stab);
  for (const auto& w : c.orbit) {
    if (w == v) {
      st.memberLines.push_back(st.repLine);
      continue;
    }
    // Transport along the first coset representative taking v to w.
    for (const auto& g : group.cosetReps) {
      if (canonical_sign(g.linear * v) != w) continue;
      auto moved = transform_families(st.repFamilies, as_map(induced_line_map(g, v)));
      st.memberLines.push_back(std::make_shared<const TorusComplex>(arrangement_complex(m, moved)));
      break;
    }
  }
  return st;
}

}  // namespace

std::optional<std::size_t> AssembledModel::cylinder_of(const IntVector& v) const {
  IntVector key = canonical_sign(v);
  for (std::size_t j = 0; j < cylinders.size(); ++j)
    if (cylinders[j].member == key) return j;
  return std::nullopt;
}

AssembledModel assemble(const CrystalGroup& group, const ClassSet& classes, const AssembleOptions& opts) {
  if (classes.classes.empty()) throw invalid_input("EmptyClassSet", "assemble needs at least one class");
  const std::size_t n = static_cast<std::size_t>(group.rank);
  const auto gmaps = group_maps(group);
  const TorusComplex cube = cubical_torus(group.rank);
  const std::vector<Family> baseFamilies = refinement_families(cube, classes);

  AssembledModel model;
  model.group = group;
  model.classSet = classes;

  std::vector<Family> extraX;
  std::vector<std::vector<Family>> extraY(classes.classes.size());
  std::vector<LineStage> lines;
  for (int pass = 0;; ++pass) {
    std::vector<Family> fams = baseFamilies;
    fams.insert(fams.end(), extraX.begin(), extraX.end());
    model.base = std::make_shared<const TorusComplex>(arrangement_complex(n, close_families(fams, gmaps)));
    auto baseViolation = admissibility_violation(*model.base, gmaps);
    lines.clear();
    bool linesOk = true;
    for (std::size_t ci = 0; ci < classes.classes.size(); ++ci) {
      lines.push_back(build_lines(group, *model.base, classes.classes[ci], extraY[ci]));
      linesOk = linesOk && !lines.back().violation;
    }
    model.refinementPasses = pass;
    if (!baseViolation && linesOk) break;
    if (pass >= opts.maxRefinementPasses) {
      std::string why = baseViolation ? "base complex: " + *baseViolation : "line complex not admissible";
      throw not_admissible(why + " after " + std::to_string(pass) + " refinement passes");
    }
    // Barycentric refinement of whatever failed; an invariant refinement of an admissible
    // complex stays admissible.
    extraX = baseViolation ? barycentric_families(*model.base) : model.base->families();
    for (std::size_t ci = 0; ci < lines.size(); ++ci)
      extraY[ci] = lines[ci].violation ? barycentric_families(*lines[ci].repLine) : lines[ci].repFamilies;
  }

  model.baseChains = chain_complex(*model.base);
  std::vector<ChainComplex> targets;
  std::vector<ChainMap> maps;
  for (std::size_t ci = 0; ci < classes.classes.size(); ++ci) {
    const auto& c = classes.classes[ci];
    for (std::size_t k = 0; k < c.orbit.size(); ++k) {
      CylinderData cyl{c.orbit[k], ci, subdivide_for_projection(*model.base, c.orbit[k], lines[ci].memberLines[k]),
                       chain_complex(*lines[ci].memberLines[k])};
      targets.push_back(cyl.lineChains);
      maps.push_back(cyl.projection.composite);
      model.cylinders.push_back(std::move(cyl));
    }
  }
  model.total = glue_cylinders(model.baseChains, targets, maps);
  model.layout = cylinder_layout(model.baseChains, targets);

  // Point-group action on every cell of the glued complex.
  const int top = model.total.top_dimension();
  const TorusComplex& base = *model.base;
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    const AffineIsometry& g = group.cosetReps[gi];
    std::vector<std::vector<CellImage>> baseImage(static_cast<std::size_t>(base.top_dimension() + 1));
    for (int d = 0; d <= base.top_dimension(); ++d)
      for (std::size_t c = 0; c < base.count(d); ++c) baseImage[static_cast<std::size_t>(d)].push_back(apply_affine(base, d, c, gmaps[gi]));
    std::vector<SignedPermutation> perDim;
    for (int d = 0; d <= top; ++d) {
      const std::size_t ud = static_cast<std::size_t>(d);
      SignedPermutation sp{std::vector<std::size_t>(model.total.count(d)), std::vector<int>(model.total.count(d), 1)};
      for (std::size_t c = 0; c < base.count(d); ++c) {
        sp.image[c] = baseImage[ud][c].cell;
        sp.sign[c] = baseImage[ud][c].sign;
      }
      for (std::size_t j = 0; j < model.cylinders.size(); ++j) {
        const CylinderData& cyl = model.cylinders[j];
        const std::size_t j2 = *model.cylinder_of(g.linear * cyl.member);
        if (d >= 1)
          for (std::size_t e = 0; e < base.count(d - 1); ++e) {
            const CellImage& im = baseImage[ud - 1][e];
            sp.image[model.layout.prismStart[j][ud] + e] = model.layout.prismStart[j2][ud] + im.cell;
            sp.sign[model.layout.prismStart[j][ud] + e] = im.sign;
          }
        const TorusComplex& line = *cyl.projection.line;
        if (d <= line.top_dimension()) {
          AffineMap induced = as_map(induced_line_map(g, cyl.member));
          for (std::size_t f = 0; f < line.count(d); ++f) {
            CellImage im = apply_affine(line, d, f, induced, *model.cylinders[j2].projection.line);
            sp.image[model.layout.targetStart[j][ud] + f] = model.layout.targetStart[j2][ud] + im.cell;
            sp.sign[model.layout.targetStart[j][ud] + f] = im.sign;
          }
        }
      }
      perDim.push_back(std::move(sp));
    }
    model.action.perElement.push_back(std::move(perDim));
  }
  for (std::size_t a = 0; a < group.order(); ++a) {
    std::vector<std::size_t> row;
    for (std::size_t b = 0; b < group.order(); ++b)
      row.push_back(static_cast<std::size_t>(group.product_index(static_cast<int>(a), static_cast<int>(b))));
    model.action.product.push_back(std::move(row));
  }
  if (opts.quotient) model.quotient = quotient_by_action(model.total, model.action);
  return model;
}

Chain fundamental_cycle(const AssembledModel& model) {
  const int n = model.rank();
  Chain t{n, IntVector(model.total.count(n))};
  for (std::size_t c = 0; c < model.base->count(n); ++c) t.coeffs[c] = top_cell_sign(model.base->cells(n)[c].vertices);
  return t;
}

CycleCertificate verify_theorem(const AssembledModel& model, const IntVector& c, const IntVector& cPrime) {
  auto ci = model.classSet.find(c);
  auto cpi = model.classSet.find(cPrime);
  if (!ci) throw class_outside_bound("class " + vector_string(c) + " is not in the model");
  if (!cpi) throw class_outside_bound("class " + vector_string(cPrime) + " is not in the model");
  if (*ci == *cpi)
    throw conjugate_classes(vector_string(c) + " and " + vector_string(cPrime) + " are conjugate");
  if (!model.quotient) throw invalid_input("NoQuotient", "model was assembled without its quotient");
  const int n = model.rank();
  const ChainComplex& q = model.quotient->complex;
  const OrbitMap& tau = model.quotient->tau;

  CycleCertificate cert;
  cert.classC = model.classSet.classes[*ci].vector;
  cert.classCPrime = model.classSet.classes[*cpi].vector;
  cert.target = pushforward(tau, q.count(n), fundamental_cycle(model));
  cert.targetZero = cert.target.is_zero();

  auto filling = [&](std::size_t cls) {
    std::set<std::size_t> support;
    for (std::size_t j = 0; j < model.cylinders.size(); ++j) {
      if (model.cylinders[j].classIndex != cls) continue;
      for (std::size_t e = 0; e < model.base->count(n); ++e)
        support.insert(tau.orbit[static_cast<std::size_t>(n + 1)][model.layout.prismStart[j][static_cast<std::size_t>(n + 1)] + e]);
    }
    auto chi = find_filling_chain(q, cert.target, {support.begin(), support.end()});
    if (!chi)
      throw invalid_input("NoFilling", "no filling chain inside the cylinders of " +
                                           vector_string(model.classSet.classes[cls].vector));
    return *chi;
  };
  cert.chiC = filling(*ci);
  cert.chiCPrime = filling(*cpi);
  cert.z = {n + 1, IntVector(q.count(n + 1))};
  for (std::size_t i = 0; i < cert.z.coeffs.size(); ++i) cert.z.coeffs[i] = cert.chiC.coeffs[i] - cert.chiCPrime.coeffs[i];

  auto bc = boundary_of(q, cert.chiC), bcp = boundary_of(q, cert.chiCPrime);
  cert.boundaryMatchesTarget = bc.coeffs == cert.target.coeffs && bcp.coeffs == cert.target.coeffs;
  cert.cycle = boundary_of(q, cert.z).is_zero();
  cert.nonzero = !cert.z.is_zero();
  cert.topDegreeEmpty = q.count(n + 2) == 0 && model.total.count(n + 2) == 0 && q.top_dimension() <= n + 1;
  cert.nontrivialClass =
      cert.cycle && cert.nonzero && !solve_linear_integer(q.boundary(n + 2), cert.z.coeffs).has_value();
  cert.quotientHomology = homology(q);
  return cert;
}

HomologyResult torus_homology(int dim, int topDimension) {
  HomologyResult h;
  for (int d = 0; d <= topDimension; ++d) {
    Int b = 0;
    if (d <= dim) mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(dim), static_cast<unsigned long>(d));
    h.dims.push_back({b, {}});
  }
  return h;
}

CylinderReport validate_cylinder(const AssembledModel& model, const IntVector& classVector) {
  auto ci = model.classSet.find(classVector);
  if (!ci) throw class_outside_bound("class " + vector_string(classVector) + " is not in the model");
  const int n = model.rank();
  CylinderReport r;
  r.classVector = model.classSet.classes[*ci].vector;
  r.expected = torus_homology(n - 1, n + 1);
  r.baseHomology = homology(model.baseChains);
  r.baseIsTorus = r.baseHomology == torus_homology(n, n);
  r.passed = r.baseIsTorus;
  for (const auto& cyl : model.cylinders) {
    if (cyl.classIndex != *ci) continue;
    r.members.push_back(cyl.member);
    r.cylinderHomology.push_back(homology(mapping_cylinder(model.baseChains, cyl.lineChains, cyl.projection.composite)));
    r.passed = r.passed && r.cylinderHomology.back() == r.expected;
  }
  return r;
}

std::string verdict_name(FixedSetVerdict v) {
  switch (v) {
    case FixedSetVerdict::ContractibleFiniteCase:
      return "ContractibleFiniteCase";
    case FixedSetVerdict::ContractibleInfiniteVC:
      return "ContractibleInfiniteVC";
    case FixedSetVerdict::EmptyNotVC:
      return "EmptyNotVC";
  }
  return "?";
}

FixedSetReport fixed_set(const SubgroupSpec& spec, const ClassSet& classes) {
  validate_subgroup(spec);
  FixedSetReport r;
  r.bound = classes.bound;
  r.classification = classify_subgroup(spec);
  const std::size_t n = static_cast<std::size_t>(spec.ambient.rank);
  std::vector<AffineMap> gens;
  for (const auto& g : spec.generators) gens.push_back(g.as_map());
  r.baseFixedSpace = affine_fixed_space(gens, n);

  std::optional<std::size_t> vcEntry;
  for (std::size_t ci = 0; ci < classes.classes.size(); ++ci)
    for (const auto& w : classes.classes[ci].orbit) {
      FixedSetEntry e{ci, w, subgroup_in_normalizer(spec, w), std::nullopt};
      if (e.inNormalizer) {
        std::vector<AffineMap> induced;
        for (const auto& g : spec.generators) induced.push_back(as_map(induced_line_map(g, w)));
        e.lineFixedSpace = affine_fixed_space(induced, n - 1);
        if (e.lineFixedSpace) ++r.uniquenessCount;
      }
      if (r.classification.tag == SubgroupClass::Tag::InfiniteVC && w == r.classification.vector)
        vcEntry = r.entries.size();
      r.entries.push_back(std::move(e));
    }

  switch (r.classification.tag) {
    case SubgroupClass::Tag::Finite: {
      r.verdict = FixedSetVerdict::ContractibleFiniteCase;
      bool linesOk = std::all_of(r.entries.begin(), r.entries.end(), [](const FixedSetEntry& e) {
        return !e.inNormalizer || e.lineFixedSpace.has_value();
      });
      r.consistent = r.baseFixedSpace.has_value() && linesOk;
      break;
    }
    case SubgroupClass::Tag::InfiniteVC: {
      if (!vcEntry)
        throw class_outside_bound("H ∩ A is spanned by " + vector_string(r.classification.vector) +
                                  ", outside the truncation bound " + std::to_string(classes.bound));
      r.verdict = FixedSetVerdict::ContractibleInfiniteVC;
      r.verdictClass = r.entries[*vcEntry].classIndex;
      const auto& e = r.entries[*vcEntry];
      r.consistent = !r.baseFixedSpace && e.inNormalizer && e.lineFixedSpace && r.uniquenessCount == 1;
      break;
    }
    case SubgroupClass::Tag::NotVC:
      r.verdict = FixedSetVerdict::EmptyNotVC;
      r.consistent = !r.baseFixedSpace && r.uniquenessCount == 0;
      break;
  }
  return r;
}

}  // namespace vcspace
