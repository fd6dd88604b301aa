#include <doctest.h>

#include "nilqp/catalog.hpp"
#include "nilqp/mhs.hpp"
#include "support.hpp"

using namespace nilqp;
using testing::S;

namespace {

const catalog::Entry& entry(const char* key) { return catalog::get(key); }

Bigrading n3_grading() { return entry("n3").bigradings.at(0); }

bool has_failure(const GradingReport& r, const std::string& check) {
  for (const auto& f : r.failures)
    if (f.check == check) return true;
  return false;
}

}  // namespace

TEST_CASE("verify: abelian diagonal grading") {
  const auto& e = entry("abelian_4");
  auto r = verify_bigrading(complexify(e.algebra), e.bigradings.at(0));
  CHECK(r.valid());
  CHECK(r.shape == Shape::Restricted);
  CHECK(r.conjugation == Conjugation::Exact);
}

TEST_CASE("verify: n3_grading and a misplaced Z") {
  LieAlgebra c = complexify(entry("n3").algebra);
  auto ok = verify_bigrading(c, n3_grading());
  CHECK(ok.valid());
  CHECK(ok.shape == Shape::Restricted);
  CHECK(ok.failures.empty());

  Bigrading bad = n3_grading();
  bad.components[2].p = -1;
  bad.components[2].q = 0;
  bad.components[0].generators.push_back(bad.components[2].generators[0]);
  bad.components.pop_back();
  auto r = verify_bigrading(c, bad);
  CHECK_FALSE(r.valid());
  CHECK_FALSE(r.bracket_compatible);
  bool witnessed = false;
  for (const auto& f : r.failures)
    if (f.check == "bracket" && f.witness == std::vector<int>{-1, 0, 0, -1, -1, -1}) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("verify: well-formedness and spanning") {
  LieAlgebra c = complexify(entry("n3").algebra);
  Bigrading dup = n3_grading();
  dup.components[1].p = -1;
  dup.components[1].q = 0;
  CHECK_FALSE(verify_bigrading(c, dup).well_formed);

  Bigrading zero = n3_grading();
  zero.components[2].p = 0;
  zero.components[2].q = 0;
  CHECK_FALSE(verify_bigrading(c, zero).well_formed);

  Bigrading short_g = n3_grading();
  short_g.components.pop_back();
  auto r = verify_bigrading(c, short_g);
  CHECK_FALSE(r.spans);
  CHECK(has_failure(r, "spans"));

  AlgebraData d = c.data();
  d.real_structure.reset();
  CHECK(testing::error_kind([&] { verify_bigrading(LieAlgebra(d), n3_grading()); }) == "MissingRealStructure");
}

TEST_CASE("verify: strict and lax conjugation") {
  LieAlgebra c = complexify(entry("n3").algebra);
  // X1 + iY1 + Z conjugates to the (0,-1) generator plus Z, which has lower weight.
  Bigrading g{{{-1, 0, {{1, S("i"), 1}}}, {0, -1, {{1, S("-i"), 0}}}, {-1, -1, {{0, 0, 1}}}}};
  auto strict = verify_bigrading(c, g, VerifyMode::Strict);
  auto lax = verify_bigrading(c, g, VerifyMode::Lax);
  CHECK(strict.conjugation == Conjugation::ModLowerWeight);
  CHECK_FALSE(strict.valid());
  CHECK(lax.valid());

  Bigrading off{{{-1, 0, {{1, S("i"), 0}}}, {0, -1, {{1, S("2*i"), 0}}}, {-1, -1, {{0, 0, 1}}}}};
  CHECK(verify_bigrading(c, off, VerifyMode::Lax).conjugation == Conjugation::Fails);
}

TEST_CASE("verify: reference gradings") {
  for (const char* key : {"37D", "37B", "n7_142", "n7_143", "N1_84", "N1_82", "N2_82", "N3_82", "N4_82", "N5_82"}) {
    const auto& e = entry(key);
    REQUIRE(!e.bigradings.empty());
    for (const auto& g : e.bigradings) {
      auto r = verify_bigrading(e.algebra, g, VerifyMode::Strict);
      CHECK_MESSAGE(r.valid(), key);
      CHECK_MESSAGE(r.shape == Shape::Restricted, key);
    }
  }
}

TEST_CASE("verify: the 3-step grading meets the first two degrees only") {
  const auto& e = entry("g_sec6");
  const auto& g = e.bigradings.at(0);
  CHECK(g.components.size() == 5);

  auto low = verify_bigrading(e.algebra, g, VerifyMode::Strict, 2);
  CHECK(low.valid());
  CHECK(low.shape == Shape::General);
  CHECK(low.support_checked_through == 2);

  auto full = verify_bigrading(e.algebra, g, VerifyMode::Strict);
  CHECK(full.bracket_compatible);
  CHECK(full.conjugation == Conjugation::Exact);
  CHECK_FALSE(full.cohomology_support_ok);
  int lowest = 99;
  bool saw_41 = false;
  for (const auto& f : full.failures)
    if (f.check == "support") {
      lowest = std::min(lowest, f.witness.at(0));
      saw_41 = saw_41 || f.witness == std::vector<int>{3, 4, 1};
    }
  CHECK(lowest == 3);
  CHECK(saw_41);
}

TEST_CASE("filtrations of the diagonal grading") {
  const auto& e = entry("abelian_3");
  FiltrationPair fp = filtrations_from_bigrading(e.bigradings.at(0), 3);
  CHECK(fp.weight(-2) == Subspace::full(3));
  CHECK(fp.weight(-3).is_zero());
  CHECK(fp.hodge(-1) == Subspace::full(3));
  CHECK(fp.hodge(0).is_zero());
}

TEST_CASE("filtrations of n3_grading") {
  Bigrading g = n3_grading();
  FiltrationPair fp = filtrations_from_bigrading(g, 3);
  Subspace z = Subspace::span(3, {{0, 0, 1}});
  CHECK(fp.weight(-1) == Subspace::full(3));
  CHECK(fp.weight(-2) == z);
  CHECK(fp.weight(-3).is_zero());
  CHECK(fp.hodge(0) == g.space(0, -1, 3));
  CHECK(fp.hodge(-1) == Subspace::full(3));
  CHECK(fp.hodge(1).is_zero());
}

TEST_CASE("single component filtrations jump once") {
  Bigrading g{{{-2, -1, {{1, 0}, {0, 1}}}}};
  FiltrationPair fp = filtrations_from_bigrading(g, 2);
  CHECK(fp.weight(-4).is_zero());
  CHECK(fp.weight(-3) == Subspace::full(2));
  CHECK(fp.weight(0) == Subspace::full(2));
  CHECK(fp.hodge(-2) == Subspace::full(2));
  CHECK(fp.hodge(-1).is_zero());
  CHECK(fp.hodge(-5) == Subspace::full(2));
}

TEST_CASE("filtration round trip on every stored grading") {
  for (const auto& e : catalog::entries())
    for (const auto& g : e.bigradings) {
      const std::size_t n = e.algebra.dim();
      Bigrading back = bigrading_from_filtrations(filtrations_from_bigrading(g, n), e.algebra.conjugation());
      CHECK_MESSAGE(same_splitting(back, g, n), e.key);
    }
}

TEST_CASE("bigrading_from_filtrations rejects non-filtrations") {
  FiltrationPair fp = filtrations_from_bigrading(n3_grading(), 3);
  FiltrationPair bad_w = fp;
  bad_w.W[-3] = Subspace::full(3);  // W_{-3} ⊄ W_{-2}
  CHECK(testing::error_kind([&] { bigrading_from_filtrations(bad_w, Matrix::identity(3)); }) == "NotAFiltration");
  FiltrationPair bad_f = fp;
  bad_f.F[2] = Subspace::full(3);
  CHECK(testing::error_kind([&] { bigrading_from_filtrations(bad_f, Matrix::identity(3)); }) == "NotAFiltration");
  FiltrationPair bad_amb = fp;
  bad_amb.W[-1] = Subspace::full(4);
  CHECK(testing::error_kind([&] { bigrading_from_filtrations(bad_amb, Matrix::identity(3)); }) == "NotAFiltration");
}

TEST_CASE("search goldens") {
  auto n3 = search_bigrading(complexify(entry("n3").algebra));
  REQUIRE(n3.status == SearchStatus::Found);
  REQUIRE(n3.bigrading);
  CHECK(n3.report->valid());
  CHECK(n3.report->shape == Shape::Restricted);
  CHECK(n3.bigrading->space(-1, -1, 3) == Subspace::span(3, {{0, 0, 1}}));
  CHECK(n3.bigrading->space(-1, 0, 3).dim() == 1);

  auto l5 = search_bigrading(complexify(entry("L5_parity_counterexample").algebra));
  CHECK(l5.status == SearchStatus::Obstructed);
  CHECK(l5.reason == "parity");
  CHECK(l5.witness.at("b1_core") == 3);

  auto f4 = search_bigrading(complexify(entry("filiform_4").algebra));
  CHECK(f4.status == SearchStatus::Obstructed);
  CHECK(f4.reason == "class");
  CHECK(f4.witness.at("nilpotency_class") == 3);

  auto noj = search_bigrading(entry("37B_std").algebra);
  CHECK(noj.status == SearchStatus::NotFoundWithinBounds);
  CHECK(noj.bounds.depth == 2);
  CHECK(noj.nodes_explored > 0);
}

TEST_CASE("search is deterministic") {
  const auto& l = entry("n5+C").algebra;
  auto a = search_bigrading(l), b = search_bigrading(l);
  REQUIRE(a.bigrading);
  REQUIRE(b.bigrading);
  CHECK(a.bigrading->generator_matrix(l.dim()) == b.bigrading->generator_matrix(l.dim()));
}

TEST_CASE("search soundness and shape constraint over the catalog") {
  for (const auto& e : catalog::entries()) {
    auto out = search_bigrading(e.algebra);
    if (out.status == SearchStatus::Found) {
      auto r = verify_bigrading(e.algebra, *out.bigrading, VerifyMode::Lax);
      CHECK_MESSAGE(r.valid(), e.key);
      CHECK_MESSAGE(r.shape == Shape::Restricted, e.key);
      CHECK_MESSAGE(lower_central_series(e.algebra).nilpotency_class <= 2, e.key);
    }
  }
}

TEST_CASE("verified gradings have mirror-symmetric dimensions") {
  for (const auto& e : catalog::entries())
    for (const auto& g : e.bigradings)
      for (const auto& c : g.components) {
        const auto* m = g.find(c.q, c.p);
        REQUIRE_MESSAGE(m, e.key);
        CHECK_MESSAGE(m->generators.size() == c.generators.size(), e.key);
      }
}
