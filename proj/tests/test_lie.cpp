#include <doctest.h>

#include "nilqp/catalog.hpp"
#include "nilqp/lie.hpp"
#include "support.hpp"

using namespace nilqp;
using testing::S;

namespace {

LieAlgebra n3() { return catalog::get("n3").algebra; }

LieAlgebra n3_with(SparseVector extra_xz) {
  return testing::make("n3'", {"X1", "Y1", "Z"}, {{{0, 1}, {{2, 1}}}, {{0, 2}, std::move(extra_xz)}});
}

}  // namespace

TEST_CASE("validate goldens") {
  auto rep = validate(n3());
  CHECK(rep.jacobi_ok);
  CHECK(rep.lattice_admissible);
  CHECK(validate(LieAlgebra::abelian(4)).jacobi_ok);
  // A real structure supplies a rational real form.
  CHECK(validate(catalog::get("N1_84").algebra).lattice_admissible);
  auto bare = testing::make("n3_qi", {"X1", "Y1", "Z"}, {{{0, 1}, {{2, 1}}}}, Field::Qi);
  CHECK_FALSE(validate(bare).lattice_admissible);
}

TEST_CASE("a Jacobi-breaking mutation of n3 is rejected with a witness") {
  try {
    n3_with({{0, 1}});  // [X1, Z] = X1
    FAIL("expected JacobiViolation");
  } catch (const JacobiViolation& e) {
    CHECK(e.kind() == "JacobiViolation");
    const auto& w = e.witness();
    CHECK(std::tuple(w.i, w.j, w.k) == std::tuple(0u, 1u, 2u));
    CHECK_FALSE(is_zero(w.residual));
  }
}

TEST_CASE("[X1,Z] = Y1 keeps Jacobi but leaves the nilpotent world") {
  LieAlgebra m = n3_with({{1, 1}});
  CHECK(validate(m).jacobi_ok);
  CHECK(testing::error_kind([&] { lower_central_series(m); }) == "NotNilpotent");
}

TEST_CASE("invalid real structures are rejected") {
  AlgebraData d = n3().data();
  d.field = Field::Qi;
  d.real_structure = testing::rows(3, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});  // swaps X1, Y1: not a bracket automorphism
  CHECK(testing::error_kind([&] { LieAlgebra{d}; }) == "InvalidRealStructure");
  d.real_structure = testing::rows(3, {{S("i"), 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(testing::error_kind([&] { LieAlgebra{d}; }) == "InvalidRealStructure");
}

TEST_CASE("lower central series goldens") {
  CHECK(lower_central_series(LieAlgebra::abelian(3)).nilpotency_class == 1);
  auto s3 = lower_central_series(n3());
  CHECK(s3.nilpotency_class == 2);
  CHECK(s3.terms.at(1) == Subspace::span(3, {{0, 0, 1}}));

  auto f4 = lower_central_series(catalog::get("filiform_4").algebra);
  CHECK(f4.nilpotency_class == 3);
  CHECK(f4.terms.at(1) == Subspace::span(4, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  CHECK(f4.terms.at(2) == Subspace::span(4, {{0, 0, 0, 1}}));
  CHECK(f4.terms.at(3).is_zero());
  CHECK(lower_central_series(catalog::get("g_sec6").algebra).nilpotency_class == 3);
}

TEST_CASE("center and commutator goldens") {
  CHECK(center(n3()) == Subspace::span(3, {{0, 0, 1}}));
  CHECK(commutator_ideal(n3()) == center(n3()));
  CHECK(center(LieAlgebra::abelian(3)) == Subspace::full(3));
  CHECK(commutator_ideal(LieAlgebra::abelian(3)).is_zero());
  const auto& l5 = catalog::get("L5_parity_counterexample").algebra;
  Subspace z = Subspace::span(5, {{0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
  CHECK(center(l5) == z);
  CHECK(commutator_ideal(l5) == z);
  CHECK(first_betti(l5) == 3);
}

TEST_CASE("complexify") {
  LieAlgebra c = complexify(n3());
  CHECK(c.field() == Field::Qi);
  REQUIRE(c.real_structure());
  CHECK(*c.real_structure() == Matrix::identity(3));
  CHECK(c.same_structure(n3()));
  CHECK(complexify(LieAlgebra::abelian(4)).dim() == 4);
  CHECK(complexify(catalog::get("g_sec6").algebra).field() == Field::Qi);
  CHECK(testing::error_kind([&] { complexify(c); }) == "AlreadyComplex");
}

TEST_CASE("apply_basis_change") {
  CHECK(apply_basis_change(n3(), Matrix::identity(3)).same_structure(n3()));
  // Z -> 2Z rescales the structure constant
  LieAlgebra scaled = apply_basis_change(n3(), testing::rows(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  CHECK(scaled.bracket_basis(0, 1) == SparseVector{{2, Scalar::rational(1, 2)}});
  CHECK(testing::error_kind([&] { apply_basis_change(n3(), Matrix(3, 3)); }) == "SingularTransformation");
}

TEST_CASE("stored transformations produce the complex tables") {
  const auto& e142 = catalog::get("n7_142");
  REQUIRE(e142.transformations.size() == 1);
  LieAlgebra d = apply_basis_change(e142.algebra, e142.transformations[0].matrix);
  CHECK(d.field() == Field::Qi);
  // Table obtained from the stored transform (0-based): [e0,e2]=e4, [e0,e3]=e5, [e1,e2]=e5, [e1,e3]=e6.
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> expect{
      {{0, 2}, {{4, 1}}}, {{0, 3}, {{5, 1}}}, {{1, 2}, {{5, 1}}}, {{1, 3}, {{6, 1}}}};
  CHECK(d.brackets() == expect);
  CHECK(d.same_structure(catalog::get("37D").algebra));

  const auto& e143 = catalog::get("n7_143");
  LieAlgebra b = apply_basis_change(e143.algebra, e143.transformations[0].matrix);
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> expect_b{
      {{0, 1}, {{4, 1}}}, {{1, 2}, {{6, 1}}}, {{2, 3}, {{5, 1}}}};
  CHECK(b.brackets() == expect_b);

  // The standard normal forms are relabelings of the computed tables.
  for (const char* key : {"37D", "37B"}) {
    const auto& e = catalog::get(key);
    REQUIRE(e.transformations.size() == 1);
    const auto& t = e.transformations[0];
    CHECK(verify_isomorphism(e.algebra, catalog::get(t.target).algebra, t.matrix));
  }
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> standard_b{
      {{0, 1}, {{4, 1}}}, {{1, 2}, {{5, 1}}}, {{2, 3}, {{6, 1}}}};
  CHECK(catalog::get("37B_std").algebra.brackets() == standard_b);
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> standard_d{
      {{0, 1}, {{4, 1}}}, {{2, 3}, {{4, 1}}}, {{0, 2}, {{5, 1}}}, {{1, 3}, {{6, 1}}}};
  CHECK(catalog::get("37D_std").algebra.brackets() == standard_d);
}

TEST_CASE("verify_isomorphism") {
  CHECK(verify_isomorphism(n3(), n3(), Matrix::identity(3)));
  CHECK_FALSE(verify_isomorphism(n3(), LieAlgebra::abelian(3), Matrix::identity(3)));
  CHECK(testing::error_kind([&] { verify_isomorphism(n3(), LieAlgebra::abelian(4), Matrix::identity(3)); }) ==
        "DimensionMismatch");
}

TEST_CASE("strip_abelian_factor goldens") {
  auto ab = strip_abelian_factor(LieAlgebra::abelian(5));
  CHECK(ab.k == 5);
  CHECK(ab.core.dim() == 0);

  auto plain = strip_abelian_factor(n3());
  CHECK(plain.k == 0);
  CHECK(plain.core.dim() == 3);

  LieAlgebra sum = direct_sum(n3(), LieAlgebra::abelian(1));
  auto s = strip_abelian_factor(sum);
  CHECK(s.k == 1);
  CHECK(verify_isomorphism(s.core, n3(), Matrix::identity(3)));
  CHECK(s.abelian_basis == testing::rows(4, {{0, 0, 0, 1}}));
}

TEST_CASE("strip_abelian_factor hides an abelian factor behind a basis change") {
  // n3 ⊕ R with the central direction mixed into X1 and Z.
  LieAlgebra sum = direct_sum(n3(), LieAlgebra::abelian(1));
  Matrix t = testing::rows(4, {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}});
  LieAlgebra mixed = apply_basis_change(sum, t);
  auto s = strip_abelian_factor(mixed);
  CHECK(s.k == 1);
  CHECK(center(s.core).dim() == 1);
  CHECK(commutator_ideal(s.core).contains(center(s.core)));
  LieAlgebra rebuilt = direct_sum(s.core, LieAlgebra::abelian(s.k));
  CHECK(verify_isomorphism(mixed, rebuilt, s.transformation()));
}

TEST_CASE("direct_sum") {
  LieAlgebra z = LieAlgebra::abelian(0);
  CHECK(direct_sum(n3(), z).same_structure(n3()));
  LieAlgebra nn = direct_sum(n3(), n3());
  CHECK(nn.dim() == 6);
  CHECK(nn.brackets().size() == 2);
  CHECK(nn.bracket_basis(3, 4) == SparseVector{{5, 1}});
  CHECK(testing::error_kind([&] { direct_sum(n3(), complexify(n3())); }) == "FieldMismatch");
}

TEST_CASE("real_form of complex presentations") {
  for (const char* key : {"37D", "37B", "N1_84"}) {
    const auto& e = catalog::get(key);
    RealForm rf = real_form(e.algebra);
    CHECK(rf.algebra.field() == Field::Q);
    CHECK(rf.algebra.dim() == e.algebra.dim());
    CHECK(lower_central_series(rf.algebra).nilpotency_class == 2);
    CHECK(first_betti(rf.algebra) == first_betti(e.algebra));
  }
  AlgebraData d = n3().data();
  d.field = Field::Qi;
  CHECK(testing::error_kind([&] { real_form(LieAlgebra(d)); }) == "MissingRealStructure");
}
