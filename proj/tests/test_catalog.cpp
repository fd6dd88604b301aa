#include <doctest.h>

#include <filesystem>

#include "nilqp/catalog.hpp"
#include "nilqp/io.hpp"
#include "support.hpp"

using namespace nilqp;
using testing::S;
namespace fs = std::filesystem;

namespace {

using Table = std::map<std::pair<std::size_t, std::size_t>, SparseVector>;

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("nilqp_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("required keys and aliases") {
  for (const char* key : {"abelian_1", "abelian_8", "n3", "n5", "n7", "filiform_3", "filiform_4", "filiform_5",
                          "n7_142", "n7_143", "37B", "37D", "L5_parity_counterexample", "N1_84", "N1_82", "N2_82",
                          "N3_82", "N4_82", "N5_82", "g_sec6", "n3+n3", "n3+n3+C", "n3+C3", "n5+C"})
    CHECK_MESSAGE(catalog::get(key).key == key, key);
  CHECK(catalog::get("R^3").key == "abelian_3");
  CHECK(catalog::get("C^8").key == "abelian_8");
  CHECK(catalog::get("(37D)").key == "37D");
  CHECK(catalog::get("N_1^{8,4}").key == "N1_84");
  CHECK(catalog::get("N_5^{8,2}").key == "N5_82");
  CHECK(testing::error_kind([] { catalog::get("n4"); }) == "UnknownKey");

  auto keys = catalog::keys();
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(keys.size() == catalog::entries().size());
  CHECK(catalog::version() == "nilqp-catalog-1");
}

TEST_CASE("N5_82 structure and its grading") {
  const auto& e = catalog::get("N5_82");
  Table t{{{0, 1}, {{6, 1}}}, {{2, 3}, {{6, 1}}}, {{4, 5}, {{6, 1}}}, {{3, 4}, {{7, 1}}}, {{1, 2}, {{7, 1}}}};
  CHECK(e.algebra.brackets() == t);
  const auto& g = e.bigradings.at(0);
  Subspace hol = Subspace::span(8, {{1, 0, 0, 0, 0, S("i"), 0, 0},
                                    {0, 0, 1, S("i"), 0, S("i"), 0, 0},
                                    {0, S("i"), 0, S("i"), 1, S("i"), 0, 0}});
  CHECK(g.space(-1, 0, 8) == hol);
  CHECK(g.space(-1, -1, 8) == Subspace::span(8, {{0, 0, 0, 0, 0, 0, S("-2*i"), 0}, {0, 0, 0, 0, 0, 0, 0, S("-2*i")}}));
}

TEST_CASE("g_sec6 structure") {
  const auto& e = catalog::get("g_sec6");
  // X1 X2 Y1 Y2 Z1 Z2 A B
  Table t{{{0, 2}, {{4, 1}}}, {{1, 3}, {{4, 1}}}, {{1, 2}, {{5, 1}}}, {{0, 3}, {{5, 1}}},
          {{0, 4}, {{6, 1}}}, {{1, 5}, {{6, 1}}}, {{2, 4}, {{7, 1}}}, {{3, 5}, {{7, 1}}}};
  CHECK(e.algebra.brackets() == t);
  const auto& g = e.bigradings.at(0);
  CHECK(g.space(-2, -1, 8) == Subspace::span(8, {{0, 0, 0, 0, 0, 0, S("-2*i"), 2}}));
  CHECK(g.space(-1, -2, 8) == Subspace::span(8, {{0, 0, 0, 0, 0, 0, S("2*i"), 2}}));
  CHECK(e.support_through == std::optional<std::size_t>(2));
}

TEST_CASE("full catalog self-test") {
  for (const auto& e : catalog::entries()) {
    CAPTURE(e.key);
    CHECK(validate(e.algebra).jacobi_ok);
    for (const auto& g : e.bigradings) {
      auto r = verify_bigrading(e.algebra, g, VerifyMode::Strict, e.support_through);
      CHECK(r.valid());
      if (r.shape == Shape::General) CHECK(e.key == "g_sec6");
    }
    for (const auto& t : e.transformations)
      CHECK(verify_isomorphism(e.algebra, catalog::get(t.target).algebra, t.matrix));
    auto b = betti_numbers(e.algebra).betti;
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(b[k] == b[b.size() - 1 - k]);
    if (!e.alternate_of.empty()) CHECK_NOTHROW(catalog::get(e.alternate_of));
  }
  CHECK(first_betti(catalog::get("n7_142").algebra) == 4);
  CHECK(first_betti(catalog::get("n7_143").algebra) == 4);
  CHECK(first_betti(catalog::get("N1_84").algebra) == 4);
  for (const char* key : {"N1_82", "N2_82", "N3_82", "N4_82", "N5_82"}) CHECK(first_betti(catalog::get(key).algebra) == 6);
}

TEST_CASE("export round trip") {
  fs::path dir = scratch("export");
  for (const auto& e : catalog::entries()) {
    CAPTURE(e.key);
    auto written = catalog::export_entry(e.key, dir);
    CHECK(written.size() == 1 + e.bigradings.size() + e.transformations.size());
    fs::path file = dir / (e.key + ".algebra.json");
    LieAlgebra back = io::parse_algebra(io::read_file(file), file.string());
    CHECK(back.same_structure(e.algebra));
    CHECK(back.basis_names() == e.algebra.basis_names());
    CHECK(back.field() == e.algebra.field());
    CHECK(back.real_structure() == e.algebra.real_structure());
    for (std::size_t i = 0; i < e.bigradings.size(); ++i) {
      fs::path gf = dir / (e.key + ".bigrading." + std::to_string(i + 1) + ".json");
      Bigrading g = io::bigrading_from_json(io::parse_json(io::read_file(gf)), e.algebra.dim());
      CHECK(same_splitting(g, e.bigradings[i], e.algebra.dim()));
      CHECK(g.generator_matrix(e.algebra.dim()) == e.bigradings[i].generator_matrix(e.algebra.dim()));
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("exported sidecar transformation reproduces the target") {
  fs::path dir = scratch("sidecar");
  catalog::export_entry("n7_142", dir);
  LieAlgebra src = io::parse_algebra(io::read_file(dir / "n7_142.algebra.json"));
  Matrix t = io::transform_from_json(io::parse_json(io::read_file(dir / "n7_142.transform.37D.json")), 7);
  CHECK(apply_basis_change(src, t).same_structure(catalog::get("(37D)").algebra));
  fs::remove_all(dir);
}

TEST_CASE("mutated export breaks Jacobi") {
  fs::path dir = scratch("mutate");
  catalog::export_entry("n5", dir);
  io::Json j = io::parse_json(io::read_file(dir / "n5.algebra.json"));
  // [X1, Y1] = Z becomes Z + X2; Jacobi then fails on (X1, Y1, Y2).
  for (auto& b : j["brackets"])
    if (b["i"] == 0 && b["j"] == 2) b["coeffs"]["1"] = "1";
  io::write_file(dir / "bad.json", io::dump(j));
  CHECK(testing::error_kind([&] { io::parse_algebra(io::read_file(dir / "bad.json")); }) == "JacobiViolation");
  CHECK(testing::error_kind([&] { catalog::export_entry("nope", dir); }) == "UnknownKey");
  CHECK(testing::error_kind([&] { catalog::export_entry("n3", dir / "n5.algebra.json" / "sub"); }) == "IOFailure");
  fs::remove_all(dir);
}
