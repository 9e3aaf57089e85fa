// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vcspace/cli.hpp"
#include "vcspace/error.hpp"
#include "vcspace/serialize.hpp"

using namespace vcspace;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string intent;
  double limitSeconds;  // 0 means no time limit
  std::function<Outcome()> run;
};

#define EXPECT(out, cond, msg)          \
  do {                                  \
    if (!(cond)) {                      \
      (out).pass = false;               \
      if (!(out).detail.empty()) (out).detail += "; "; \
      (out).detail += (msg);            \
    }                                   \
  } while (0)

Json cli(RunConfig c, int& code) {
  std::ostringstream out, err;
  code = run(c, out, err);
  return Json::parse(out.str());
}

std::vector<std::vector<long>> as_longs(const ClassSet& s) {
  std::vector<std::vector<long>> out;
  for (const auto& c : s.classes) {
    std::vector<long> v;
    for (const auto& x : c.vector) v.push_back(x.get_si());
    out.push_back(v);
  }
  return out;
}

std::vector<long> betti_of(const HomologyResult& h) {
  std::vector<long> out;
  for (const auto& d : h.dims) out.push_back(d.betti.get_si());
  return out;
}

bool torsion_free(const HomologyResult& h) {
  for (const auto& d : h.dims)
    if (!d.torsion.empty()) return false;
  return true;
}

Outcome ac1() {
  Outcome o;
  int code = 0;
  auto r = cli({.command = "build", .group = "p1", .classes = {"1,0", "0,1"}}, code);
  EXPECT(o, code == 0, "exit code " + std::to_string(code));
  if (code != 0) return o;
  auto expected = to_json(make_homology({1, 0, 0, 1}));
  EXPECT(o, r["totalHomology"] == expected, "total " + r["totalHomology"]["text"].get<std::string>());
  EXPECT(o, r["quotientHomology"] == expected, "quotient " + r["quotientHomology"]["text"].get<std::string>());
  o.detail = o.pass ? "H = " + r["quotientHomology"]["text"].get<std::string>() : o.detail;
  return o;
}

Outcome ac2() {
  Outcome o;
  auto g = catalog_group("p1");
  auto classes = class_set_from_vectors(g, {IntVector{1, 0}, IntVector{1, 2}});
  auto h = homology(assemble(g, classes).total);
  EXPECT(o, h.dims.size() == 4, "dimension count");
  if (!o.pass) return o;
  EXPECT(o, h.dims[1].betti == 0 && h.dims[1].torsion == std::vector<Int>{2}, "H_1 is not Z/2");
  EXPECT(o, h.dims[3].betti == 1 && h.dims[3].torsion.empty(), "H_3 is not Z");
  auto tor = oracle::rank2_h1_torsion(as_longs(classes));
  EXPECT(o, tor == std::vector<long>{2}, "oracle torsion disagrees");
  EXPECT(o, betti_of(h) == oracle::cylinder_model_betti(as_longs(classes), 2), "oracle Betti numbers disagree");
  if (o.pass) o.detail = "H = " + h.to_string();
  return o;
}

Outcome ac3() {
  Outcome o;
  auto g = catalog_group("p1");
  auto classes = enumerate_classes(g, 1);
  long k = static_cast<long>(classes.classes.size());
  EXPECT(o, k == 4, "k = " + std::to_string(k));
  auto model = assemble(g, classes);
  auto h = homology(model.total);
  EXPECT(o, h.dims[3].betti == k - 1, "rank H_3 = " + h.dims[3].betti.get_str());
  EXPECT(o, betti_of(h) == oracle::cylinder_model_betti(as_longs(classes), 2), "oracle Betti numbers disagree");
  // With no 4-cells H_3 is the cycle group, so the rank of the z's in homology is their rank as chains.
  std::vector<IntVector> zs;
  for (long j = 1; j < k; ++j) {
    auto cert = verify_theorem(model, classes.classes[0].vector, classes.classes[j].vector);
    EXPECT(o, cert.valid(), "certificate " + std::to_string(j) + " invalid");
    zs.push_back(cert.z.coeffs);
  }
  EXPECT(o, model.quotient->complex.count(4) == 0, "4-cells present");
  std::size_t spanRank = integer_rank(IntMatrix::from_columns(zs, zs[0].size()));
  EXPECT(o, static_cast<long>(spanRank) == k - 1, "z span rank " + std::to_string(spanRank));
  if (o.pass) o.detail = "rank H_3 = " + std::to_string(k - 1) + ", spanned by " + std::to_string(k - 1) + " z-cycles";
  return o;
}

Outcome ac4() {
  Outcome o;
  int code = 0;
  auto r = cli({.command = "verify", .group = "p2", .classes = {"1,0", "0,1"}}, code);
  EXPECT(o, code == 0, "exit code " + std::to_string(code));
  if (code != 0) return o;
  for (const char* check : {"boundaryMatchesTarget", "cycle", "nonzero", "topDegreeEmpty", "nontrivialClass"})
    EXPECT(o, r["checks"][check] == true, std::string(check) + " false");
  EXPECT(o, r["targetZero"] == false, "pushforward target is zero");
  EXPECT(o, r["valid"] == true, "certificate invalid");
  if (o.pass) o.detail = "H(quotient) = " + r["quotientHomology"]["text"].get<std::string>();
  return o;
}

Outcome ac5() {
  Outcome o;
  auto g = catalog_group("P1");
  auto classes = class_set_from_vectors(g, {IntVector{1, 0, 0}, IntVector{0, 1, 0}});
  auto h = homology(assemble(g, classes).total);
  EXPECT(o, h == make_homology({1, 1, 0, 1, 1}), "H = " + h.to_string());
  EXPECT(o, torsion_free(h), "torsion present");
  EXPECT(o, betti_of(h) == oracle::cylinder_model_betti(as_longs(classes), 3), "oracle Betti numbers disagree");
  if (o.pass) o.detail = "H = " + h.to_string();
  return o;
}

Outcome ac6() {
  Outcome o;
  std::size_t total = 0, passed = 0;
  for (auto [name, bound] : std::vector<std::pair<const char*, int>>{{"p1", 2}, {"P1", 1}}) {
    auto g = catalog_group(name);
    auto model = assemble(g, enumerate_classes(g, bound), {.quotient = false});
    for (const auto& c : model.classSet.classes) {
      ++total;
      auto r = validate_cylinder(model, c.vector);
      if (r.passed) ++passed;
      else EXPECT(o, false, std::string(name) + " class " + to_json(c.vector).dump());
    }
  }
  if (o.pass) o.detail = std::to_string(passed) + "/" + std::to_string(total) + " cylinders";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::size_t total = 0;
  for (auto [n, bound] : std::vector<std::pair<int, int>>{{2, 3}, {3, 1}}) {
    auto x = cubical_torus(n);
    auto classes = enumerate_classes(catalog_group(n == 2 ? "p1" : "P1"), bound);
    for (const auto& c : classes.classes) {
      ++total;
      auto s = projection_subdivision(x, c.vector);
      auto chk = check_subdivision(x, s);
      if (!chk.ok()) EXPECT(o, false, "class " + to_json(c.vector).dump());
    }
  }
  auto x = cubical_torus(2);
  auto c11 = projection_subdivision(x, IntVector{1, 1}).refined->counts();
  auto c21 = projection_subdivision(x, IntVector{2, 1}).refined->counts();
  EXPECT(o, c11 == (std::vector<std::size_t>{1, 3, 2}), "(1,1) counts");
  EXPECT(o, c21 == (std::vector<std::size_t>{2, 5, 3}), "(2,1) counts");
  if (o.pass) o.detail = std::to_string(total) + " subdivisions, counts (1,3,2) and (2,5,3)";
  return o;
}

Outcome ac8() {
  Outcome o;
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(std::string(VCSPACE_DATA_DIR) + "/subgroups"))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::set<std::string> groups;
  std::size_t passed = 0;
  for (const auto& f : files) {
    std::ifstream in(f);
    Json doc = Json::parse(in);
    const Json& expect = doc["expect"];
    std::string name = f.stem().string();
    try {
      auto spec = subgroup_from_json(doc);
      groups.insert(spec.ambient.name);
      auto r = fixed_set(spec, enumerate_classes(spec.ambient, 1));
      bool ok = tag_name(r.classification.tag) == expect["tag"].get<std::string>() &&
                verdict_name(r.verdict) == expect["verdict"].get<std::string>() && r.consistent;
      if (expect.contains("order")) ok = ok && r.classification.order == expect["order"].get<std::size_t>();
      if (expect.contains("vector")) ok = ok && to_json(r.classification.vector) == expect["vector"];
      if (r.classification.tag != SubgroupClass::Tag::Finite) ok = ok && r.uniquenessCount <= 1;
      if (expect.contains("uniquenessCount"))
        ok = ok && r.uniquenessCount == expect["uniquenessCount"].get<std::size_t>();
      if (ok) ++passed;
      else EXPECT(o, false, name);
    } catch (const Error& e) {
      EXPECT(o, false, name + ": " + e.what());
    }
  }
  EXPECT(o, files.size() >= 12, "corpus has " + std::to_string(files.size()) + " specs");
  for (const char* g : {"p1", "p2", "pg", "p4"}) EXPECT(o, groups.count(g) == 1, std::string("no spec over ") + g);
  if (o.pass) o.detail = std::to_string(passed) + "/" + std::to_string(files.size()) + " specs";
  return o;
}

Outcome ac9() {
  Outcome o;
  std::mt19937 rng(20261014);
  std::uniform_int_distribution<int> dim(1, 6);
  std::size_t snfFailures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    auto m = oracle::random_matrix(rng, r, c, -9, 9);
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = m[i][j];
    auto s = smith_normal_form(a);
    bool ok = s.U * a * s.V == s.D && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
    Int prev = 1;
    bool zero = false;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t j = 0; j < c && ok; ++j) {
        const Int& d = s.D(i, j);
        if (i != j) ok = d == 0;
        else if (d == 0) zero = true;
        else {
          ok = !zero && d > 0 && d % prev == 0;
          prev = d;
        }
      }
    if (!ok) ++snfFailures;
  }
  EXPECT(o, snfFailures == 0, std::to_string(snfFailures) + " Smith form failures");

  std::size_t hnfCases = 0, hnfFailures = 0;
  for (int n = 2; n <= 3; ++n) {
    std::vector<long> v(n, -5);
    while (true) {
      IntVector iv(v.begin(), v.end());
      bool primitive = oracle::gcd_all(v) == 1;
      ++hnfCases;
      try {
        IntMatrix b = hnf_extend_primitive(iv);
        oracle::Mat bl(n, std::vector<long>(n));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) bl[i][j] = b(i, j).get_si();
        if (!primitive || b.column(0) != iv || oracle::det(bl) != 1) ++hnfFailures;
      } catch (const Error& e) {
        if (primitive || e.code() != ErrorCode::NotPrimitive) ++hnfFailures;
      }
      int k = 0;
      while (k < n && v[k] == 5) v[k++] = -5;
      if (k == n) break;
      ++v[k];
    }
  }
  EXPECT(o, hnfFailures == 0, std::to_string(hnfFailures) + " completion failures");
  if (o.pass) o.detail = "1000 Smith forms, " + std::to_string(hnfCases) + " completions";
  return o;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"AC1", "p1 with (1,0),(0,1) has the homology of S^3", 5, ac1},
      {"AC2", "(1,0),(1,2) gives Z/2 in H_1 and Z in H_3", 0, ac2},
      {"AC3", "rank H_3 = k - 1 for the four p1 classes of bound 1", 0, ac3},
      {"AC4", "p2 certificate for (1,0),(0,1)", 60, ac4},
      {"AC5", "P1 with (1,0,0),(0,1,0)", 120, ac5},
      {"AC6", "every cylinder of p1 bound 2 and P1 bound 1", 0, ac6},
      {"AC7", "subdivision suite up to bound 3 (rank 2) and 1 (rank 3)", 0, ac7},
      {"AC8", "fixed-set corpus verdicts", 0, ac8},
      {"AC9", "Smith forms and unimodular completions", 30, ac9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limitSeconds > 0 && secs >= c.limitSeconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limitSeconds)) + " s limit)";
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << "  " << c.intent << ": " << o.detail << "  ("
              << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
