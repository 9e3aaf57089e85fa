#pragma once

// JSON forms of every report. Rationals are written as "p/q" strings; integers that fit in
// 64 bits are JSON numbers, larger ones decimal strings.

#include <json.hpp>

#include <string>

#include "vcspace/classifier.hpp"

namespace vcspace {

using Json = nlohmann::ordered_json;

Json to_json(const Int& x);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const std::optional<AffineSubspace>& s);
Json to_json(const AffineIsometry& g);
Json to_json(const CrystalGroup& g);
Json to_json(const ClassSet& s);
Json to_json(const TorusComplex& x);
Json to_json(const HomologyResult& h);
Json to_json(const Chain& c);
Json to_json(const CycleCertificate& c);
Json to_json(const CylinderReport& r);
Json to_json(const FixedSetReport& r);
// Summary of a model: counts, per-cylinder data, homology of the total and quotient complexes.
Json model_json(const AssembledModel& m, bool withBase);

IntVector int_vector_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
AffineIsometry isometry_from_json(const Json& j, std::size_t rank);
// {group, generators: [{linear, trans}]}; throws ParseError / UnknownGroup / InvalidGenerator.
SubgroupSpec subgroup_from_json(const Json& j);
SubgroupSpec load_subgroup(const std::string& path);

}  // namespace vcspace
