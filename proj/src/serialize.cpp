#include "vcspace/serialize.hpp"

#include <fstream>
#include <sstream>

#include "vcspace/error.hpp"

namespace vcspace {

Json to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_string(x));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const std::optional<AffineSubspace>& s) {
  if (!s) return Json(nullptr);
  Json dirs = Json::array();
  for (const auto& d : s->directions) dirs.push_back(to_json(d));
  return {{"dimension", s->dimension()}, {"base", to_json(s->base)}, {"directions", dirs}};
}

Json to_json(const AffineIsometry& g) { return {{"linear", to_json(g.linear)}, {"trans", to_json(g.trans)}}; }

Json to_json(const CrystalGroup& g) {
  Json reps = Json::array();
  for (const auto& r : g.cosetReps) reps.push_back(to_json(r));
  return {{"name", g.name}, {"rank", g.rank}, {"order", g.order()}, {"cosetReps", reps}};
}

Json to_json(const ClassSet& s) {
  Json classes = Json::array();
  for (const auto& c : s.classes) {
    Json orbit = Json::array();
    for (const auto& w : c.orbit) orbit.push_back(to_json(w));
    classes.push_back({{"vector", to_json(c.vector)}, {"orbit", orbit}, {"adaptedBasis", to_json(c.adaptedBasis)}});
  }
  return {{"group", s.group.name}, {"bound", s.bound}, {"classes", classes}};
}

Json to_json(const TorusComplex& x) {
  Json cells = Json::array();
  for (int d = 0; d <= x.top_dimension(); ++d) {
    Json dim = Json::array();
    for (const auto& c : x.cells(d)) {
      Json verts = Json::array(), offs = Json::array(), bnd = Json::array();
      for (const auto& v : c.vertices) {
        RatVector reduced(v.size());
        IntVector off(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
          off[i] = floor_of(v[i]);
          reduced[i] = v[i] - Rational(off[i]);
        }
        verts.push_back(to_json(reduced));
        offs.push_back(to_json(off));
      }
      for (const auto& inc : c.boundary) bnd.push_back({{"cell", inc.cell}, {"sign", inc.sign}});
      dim.push_back({{"vertices", verts}, {"offsets", offs}, {"boundary", bnd}});
    }
    cells.push_back(dim);
  }
  return {{"dimension", x.ambient()},
          {"periodic", x.periodic()},
          {"orientationConvention", kOrientationConvention},
          {"counts", x.counts()},
          {"cells", cells}};
}

Json to_json(const HomologyResult& h) {
  Json dims = Json::array();
  for (const auto& d : h.dims) {
    Json tors = Json::array();
    for (const auto& t : d.torsion) tors.push_back(to_json(t));
    dims.push_back({{"betti", to_json(d.betti)}, {"torsion", tors}});
  }
  return {{"dims", dims}, {"text", h.to_string()}};
}

Json to_json(const Chain& c) { return {{"dim", c.dim}, {"coeffs", to_json(c.coeffs)}}; }

Json to_json(const CycleCertificate& c) {
  return {{"classC", to_json(c.classC)},
          {"classCPrime", to_json(c.classCPrime)},
          {"target", to_json(c.target)},
          {"targetZero", c.targetZero},
          {"chiC", to_json(c.chiC)},
          {"chiCPrime", to_json(c.chiCPrime)},
          {"z", to_json(c.z)},
          {"checks",
           {{"boundaryMatchesTarget", c.boundaryMatchesTarget},
            {"cycle", c.cycle},
            {"nonzero", c.nonzero},
            {"topDegreeEmpty", c.topDegreeEmpty},
            {"nontrivialClass", c.nontrivialClass}}},
          {"valid", c.valid()},
          {"quotientHomology", to_json(c.quotientHomology)}};
}

Json to_json(const CylinderReport& r) {
  Json members = Json::array(), hs = Json::array();
  for (const auto& m : r.members) members.push_back(to_json(m));
  for (const auto& h : r.cylinderHomology) hs.push_back(to_json(h));
  return {{"class", to_json(r.classVector)}, {"members", members},          {"cylinderHomology", hs},
          {"expected", to_json(r.expected)}, {"baseHomology", to_json(r.baseHomology)}, {"baseIsTorus", r.baseIsTorus},
          {"passed", r.passed}};
}

Json to_json(const FixedSetReport& r) {
  Json cls = {{"tag", tag_name(r.classification.tag)}};
  if (r.classification.tag == SubgroupClass::Tag::Finite) cls["order"] = r.classification.order;
  if (r.classification.tag == SubgroupClass::Tag::InfiniteVC) cls["vector"] = to_json(r.classification.vector);
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"classIndex", e.classIndex},
                       {"member", to_json(e.member)},
                       {"inNormalizer", e.inNormalizer},
                       {"lineFixedSpace", to_json(e.lineFixedSpace)}});
  Json out = {{"bound", r.bound},
              {"truncated", true},
              {"classification", cls},
              {"baseFixedSpace", to_json(r.baseFixedSpace)},
              {"entries", entries},
              {"verdict", verdict_name(r.verdict)}};
  out["verdictClass"] = r.verdictClass ? Json(*r.verdictClass) : Json(nullptr);
  out["uniquenessCount"] = r.uniquenessCount;
  out["consistent"] = r.consistent;
  return out;
}

Json model_json(const AssembledModel& m, bool withBase) {
  Json cyls = Json::array();
  for (const auto& c : m.cylinders)
    cyls.push_back({{"member", to_json(c.member)},
                    {"classIndex", c.classIndex},
                    {"lineCounts", c.projection.line->counts()},
                    {"refinedCounts", c.projection.refined->counts()}});
  Json out = {{"group", m.group.name},
              {"bound", m.classSet.bound},
              {"orientationConvention", m.orientationConvention},
              {"classes", to_json(m.classSet)},
              {"refinementPasses", m.refinementPasses},
              {"baseCounts", m.base->counts()},
              {"cylinders", cyls},
              {"totalCounts", m.total.counts()},
              {"totalHomology", to_json(homology(m.total))}};
  if (m.quotient) {
    out["quotientCounts"] = m.quotient->complex.counts();
    out["quotientHomology"] = to_json(homology(m.quotient->complex));
  }
  if (withBase) out["base"] = to_json(*m.base);
  return out;
}

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw invalid_input("ParseError", msg); }

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) parse_error("bad integer '" + j.get<std::string>() + "'");
    return x;
  }
  parse_error("expected an integer");
}

}  // namespace

IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) parse_error("expected an integer array");
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("expected a nonempty matrix");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r));
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) parse_error("ragged matrix");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rows[i][k];
  }
  return m;
}

AffineIsometry isometry_from_json(const Json& j, std::size_t rank) {
  if (!j.is_object() || !j.contains("linear")) parse_error("generator needs a 'linear' field");
  AffineIsometry g;
  g.linear = int_matrix_from_json(j.at("linear"));
  if (j.contains("trans")) {
    if (!j.at("trans").is_array()) parse_error("'trans' must be an array");
    for (const auto& x : j.at("trans")) {
      if (x.is_string()) g.trans.push_back(parse_rational(x.get<std::string>()));
      else g.trans.push_back(Rational(int_from_json(x)));
    }
  } else {
    g.trans.assign(rank, Rational(0));
  }
  if (g.linear.rows() != rank || g.linear.cols() != rank || g.trans.size() != rank)
    throw invalid_input("DimensionMismatch", "generator does not match the group rank");
  return g;
}

SubgroupSpec subgroup_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("group") || !j.at("group").is_string()) parse_error("subgroup needs a 'group' name");
  SubgroupSpec spec{catalog_group(j.at("group").get<std::string>()), {}};
  if (!j.contains("generators") || !j.at("generators").is_array()) parse_error("subgroup needs a 'generators' array");
  for (const auto& g : j.at("generators"))
    spec.generators.push_back(isometry_from_json(g, static_cast<std::size_t>(spec.ambient.rank)));
  validate_subgroup(spec);
  return spec;
}

SubgroupSpec load_subgroup(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("ParseError", "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input("ParseError", path + ": " + e.what());
  }
  return subgroup_from_json(j);
}

}  // namespace vcspace
