#include <doctest.h>

#include <random>

#include "nilqp/catalog.hpp"
#include "nilqp/qp.hpp"
#include "support.hpp"

using namespace nilqp;

namespace {

const LieAlgebra& alg(const char* key) { return catalog::get(key).algebra; }

Verdict run(const LieAlgebra& l, std::size_t m = 1) { return check({l, m}); }

const VerdictReason* reason(const Verdict& v, const std::string& test) {
  for (const auto& r : v.reasons)
    if (r.test == test) return &r;
  return nullptr;
}

std::vector<ClassificationRow> rows_of(std::size_t dim) { return reproduce_classification(dim).rows; }

Bigrading diagonal(std::size_t n, const std::vector<int>& weights) {
  std::map<int, BigradingComponent> by;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n);
    e[i] = 1;
    auto& c = by[weights[i]];
    c.p = c.q = weights[i];
    c.generators.push_back(e);
  }
  Bigrading g;
  for (auto& [w, c] : by) g.components.push_back(c);
  return g;
}

}  // namespace

TEST_CASE("check goldens") {
  auto f4 = run(alg("filiform_4"));
  CHECK(f4.status == VerdictStatus::Obstructed);
  REQUIRE(reason(f4, "class"));
  CHECK_FALSE(reason(f4, "class")->passed);
  CHECK(reason(f4, "class")->witness.at("nilpotency_class") == 3);

  auto n3 = run(alg("n3"));
  CHECK(n3.status == VerdictStatus::BigradingExhibited);
  CHECK(n3.b1 == 2);
  CHECK(n3.bigrading.has_value());

  auto l5 = run(alg("L5_parity_counterexample"));
  CHECK(l5.status == VerdictStatus::Obstructed);
  REQUIRE(reason(l5, "parity"));
  CHECK(reason(l5, "parity")->witness.at("b1_core") == 3);
  CHECK(reason(l5, "parity")->witness.at("k") == 0);

  auto g = run(alg("g_sec6"));
  CHECK(g.status == VerdictStatus::Obstructed);
  CHECK(reason(g, "class")->witness.at("nilpotency_class") == 3);
  CHECK(g.reasons.size() == 1);
}

TEST_CASE("m is echoed and m = 0 is the compact criterion") {
  CHECK(run(alg("n3"), 5).m == 5);
  CHECK(run(alg("n3"), 5).status == run(alg("n3"), 1).status);
  CHECK(run(alg("n3"), 0).status == VerdictStatus::Obstructed);
  CHECK(reason(run(alg("n3"), 0), "compact"));
  CHECK(run(alg("abelian_4"), 0).status == VerdictStatus::BigradingExhibited);
}

TEST_CASE("check input errors") {
  AlgebraData d = alg("n3").data();
  d.field = Field::Qi;
  CHECK(testing::error_kind([&] { run(LieAlgebra(d)); }) == "NotLatticeAdmissible");
  LieAlgebra solvable = testing::make("s", {"X", "Y", "Z"}, {{{0, 1}, {{2, 1}}}, {{0, 2}, {{1, 1}}}});
  CHECK(testing::error_kind([&] { run(solvable); }) == "NotNilpotent");
}

TEST_CASE("complex presentations are judged through their real form") {
  CHECK(run(alg("N1_84")).status == VerdictStatus::BigradingExhibited);
  CHECK(run(alg("37D")).status == run(alg("n7_142")).status);
  CHECK(run(alg("37B")).status == run(alg("n7_143")).status);
}

TEST_CASE("classification goldens") {
  auto d3 = rows_of(3);
  REQUIRE(d3.size() == 2);
  CHECK(d3[0].b1 == 2);
  CHECK(d3[0].exhibited == std::vector<std::string>{"n3"});
  CHECK(d3[1].b1 == 3);
  CHECK(d3[1].exhibited == std::vector<std::string>{"abelian_3"});

  bool found = false;
  for (const auto& r : rows_of(7))
    if (r.b1 == 4) {
      found = true;
      CHECK(std::find(r.exhibited.begin(), r.exhibited.end(), "n7_142") != r.exhibited.end());
      CHECK(std::find(r.exhibited.begin(), r.exhibited.end(), "n7_143") != r.exhibited.end());
    }
  CHECK(found);

  for (const auto& r : rows_of(8))
    if (r.b1 == 4) CHECK(r.exhibited == std::vector<std::string>{"N1_84"});

  CHECK(reproduce_classification(3).catalog_version == catalog::version());
  CHECK(testing::error_kind([] { reproduce_classification(0); }) == "DimensionOutOfRange");
  CHECK(testing::error_kind([] { reproduce_classification(9); }) == "DimensionOutOfRange");
}

TEST_CASE("diagonal_h1_check") {
  const auto& e = catalog::get("abelian_6");
  CHECK(diagonal_h1_check(e.algebra, e.bigradings.at(0)));
  CHECK(testing::error_kind([] { diagonal_h1_check(alg("n3"), catalog::get("n3").bigradings.at(0)); }) ==
        "GradingNotDiagonal");
  // Z at (-2,-2) is bracket compatible but H^2 then sits at (3,3), outside I_2.
  CHECK(testing::error_kind([] { diagonal_h1_check(alg("n3"), diagonal(3, {-1, -1, -2})); }) ==
        "GradingNotVerified");
}

TEST_CASE("the counting argument holds on generated diagonal gradings") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> w(-3, -1);
  std::size_t accepted = 0;
  for (const auto& e : catalog::entries())
    for (int trial = 0; trial < 6; ++trial) {
      const std::size_t n = e.algebra.dim();
      std::vector<int> weights(n);
      for (auto& x : weights) x = trial == 0 ? -1 : w(rng);
      Bigrading g = diagonal(n, weights);
      bool abelian = false;
      const std::string kind = testing::error_kind([&] { abelian = diagonal_h1_check(e.algebra, g); });
      if (kind.empty()) {
        CHECK_MESSAGE(abelian, e.key);
        ++accepted;
      } else {
        CHECK_MESSAGE(kind == "GradingNotVerified", e.key);
      }
    }
  CHECK(accepted >= 8);  // at least the all-(-1,-1) grading on each abelian entry
}

TEST_CASE("verdict invariants over the catalog") {
  for (const auto& e : catalog::entries()) {
    if (e.algebra.dim() == 0) continue;
    Verdict v = run(e.algebra);
    const std::size_t cls = lower_central_series(e.algebra).nilpotency_class;
    const bool class_obstructed = reason(v, "class") && !reason(v, "class")->passed;
    CHECK_MESSAGE(class_obstructed == (cls >= 3), e.key);
    if (v.status == VerdictStatus::Obstructed) CHECK(!v.reasons.empty());
    if (v.status == VerdictStatus::BigradingExhibited) {
      REQUIRE(v.bigrading);
      auto r = verify_bigrading(e.algebra, *v.bigrading, VerifyMode::Lax);
      CHECK_MESSAGE(r.valid(), e.key);
      CHECK_MESSAGE(r.shape == Shape::Restricted, e.key);
    }
    if (cls <= 2 && e.algebra.field() == Field::Q && e.algebra.dim() <= 6) {
      Verdict plus = run(direct_sum(e.algebra, LieAlgebra::abelian(2)));
      CHECK_MESSAGE(plus.status == v.status, e.key);
    }
  }
}
