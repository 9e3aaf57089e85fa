#include "vcspace/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "vcspace/error.hpp"
#include "vcspace/serialize.hpp"

namespace vcspace {

namespace {

IntVector parse_vector(const std::string& text) {
  IntVector v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    Int x;
    if (item.empty() || x.set_str(item, 10) != 0) throw invalid_input("ParseError", "bad class vector '" + text + "'");
    v.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return v;
}

std::vector<IntVector> parse_classes(const RunConfig& c, const CrystalGroup& g) {
  std::vector<IntVector> out;
  for (const auto& s : c.classes) {
    auto v = parse_vector(s);
    if (v.size() != static_cast<std::size_t>(g.rank))
      throw invalid_input("DimensionMismatch", "class '" + s + "' does not have " + std::to_string(g.rank) + " entries");
    out.push_back(v);
  }
  return out;
}

const CrystalGroup& require_group(const RunConfig& c, std::optional<CrystalGroup>& slot) {
  if (c.group.empty()) throw invalid_input("ParseError", "--group is required");
  if (!slot) slot = catalog_group(c.group);
  return *slot;
}

int require_bound(const RunConfig& c, int fallback) {
  int b = c.bound.value_or(fallback);
  if (b < 1) throw invalid_input("InvalidBound", "--bound must be at least 1");
  return b;
}

// --bound enumerates every class; otherwise the listed classes form the model.
ClassSet model_classes(const RunConfig& c, const CrystalGroup& g) {
  if (c.bound || c.classes.empty()) return enumerate_classes(g, require_bound(c, 1));
  return class_set_from_vectors(g, parse_classes(c, g));
}

Json run_command(const RunConfig& c) {
  std::optional<CrystalGroup> group;
  if (c.command == "catalog") {
    Json groups = Json::array();
    if (!c.group.empty()) groups.push_back(to_json(require_group(c, group)));
    else
      for (const auto& name : catalog_names()) groups.push_back(to_json(catalog_group(name)));
    return {{"groups", groups}};
  }
  if (c.command == "cyclics") {
    const auto& g = require_group(c, group);
    if (!c.classes.empty() && !c.bound) return to_json(class_set_from_vectors(g, parse_classes(c, g)));
    return to_json(enumerate_classes(g, require_bound(c, 1)));
  }
  if (c.command == "build" || c.command == "homology") {
    const auto& g = require_group(c, group);
    auto model = assemble(g, model_classes(c, g));
    if (c.command == "build") return model_json(model, c.withBase);
    Json out = {{"group", g.name},
                {"bound", model.classSet.bound},
                {"orientationConvention", model.orientationConvention},
                {"totalHomology", to_json(homology(model.total))}};
    if (model.quotient) out["quotientHomology"] = to_json(homology(model.quotient->complex));
    return out;
  }
  if (c.command == "verify") {
    const auto& g = require_group(c, group);
    auto vs = parse_classes(c, g);
    if (vs.size() != 2) throw invalid_input("ParseError", "verify needs exactly two --classes");
    for (const auto& v : vs) make_class(g, v);
    auto classes = c.bound ? enumerate_classes(g, require_bound(c, 1)) : class_set_from_vectors(g, vs);
    auto model = assemble(g, classes);
    Json out = to_json(verify_theorem(model, vs[0], vs[1]));
    out["group"] = g.name;
    out["bound"] = model.classSet.bound;
    out["orientationConvention"] = model.orientationConvention;
    return out;
  }
  if (c.command == "validate-cylinder") {
    const auto& g = require_group(c, group);
    auto classes = model_classes(c, g);
    auto model = assemble(g, classes, {.quotient = false});
    Json reports = Json::array();
    bool all = true;
    for (const auto& cls : model.classSet.classes) {
      auto r = validate_cylinder(model, cls.vector);
      all = all && r.passed;
      reports.push_back(to_json(r));
    }
    return {{"group", g.name},
            {"bound", model.classSet.bound},
            {"orientationConvention", model.orientationConvention},
            {"cylinders", reports},
            {"passed", all}};
  }
  if (c.command == "fixed-set") {
    if (c.subgroup.empty()) throw invalid_input("ParseError", "--subgroup is required");
    auto spec = load_subgroup(c.subgroup);
    if (!c.group.empty() && c.group != spec.ambient.name)
      throw invalid_input("DimensionMismatch", "subgroup file is for " + spec.ambient.name + ", not " + c.group);
    auto r = fixed_set(spec, enumerate_classes(spec.ambient, require_bound(c, 1)));
    Json out = to_json(r);
    out["group"] = spec.ambient.name;
    out["orientationConvention"] = kOrientationConvention;
    return out;
  }
  throw invalid_input("ParseError", "unknown command '" + c.command + "'");
}

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw invalid_input("IOError", "cannot write '" + tmp.string() + "'");
    f << text;
    if (!f.flush()) throw invalid_input("IOError", "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw invalid_input("IOError", "cannot move report into '" + path + "': " + ec.message());
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Json report;
  int code = 0;
  try {
    auto start = std::chrono::steady_clock::now();
    report = run_command(config);
    if (!report.contains("bound")) report["bound"] = config.bound ? Json(*config.bound) : Json(nullptr);
    if (!report.contains("orientationConvention")) report["orientationConvention"] = kOrientationConvention;
    if (config.verbose) {
      std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
      err << config.command << ": " << secs.count() << " s\n";
    }
  } catch (const Error& e) {
    code = static_cast<int>(e.code());
    report = {{"error", {{"name", e.name()}, {"code", code}, {"message", e.what()}}}};
    err << "error: " << e.name() << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = static_cast<int>(ErrorCode::InvalidInput);
    report = {{"error", {{"name", "InternalError"}, {"code", code}, {"message", e.what()}}}};
    err << "error: " << e.what() << "\n";
  }
  std::string text = report.dump(config.pretty ? 2 : -1) + "\n";
  if (config.out.empty()) {
    out << text;
    return code;
  }
  try {
    write_atomic(config.out, text);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return static_cast<int>(e.code());
  }
  return code;
}

}  // namespace vcspace
