#include <doctest.h>

#include <random>

#include "nilqp/cohomology.hpp"
#include "nilqp/exact.hpp"
#include "support.hpp"

using namespace nilqp;
using testing::S;

TEST_CASE("scalar parsing and canonical form") {
  CHECK(S("2/4") == Scalar::rational(1, 2));
  CHECK(S("-6/4").str() == "-3/2");
  CHECK(S("-1/2+3*i") == Scalar(mpq_class(-1, 2), mpq_class(3)));
  CHECK(S("2*i") == Scalar(mpq_class(0), mpq_class(2)));
  CHECK(S("-i") == -Scalar::i());
  CHECK(S("0").is_zero());
  CHECK(S("3+0*i") == Scalar(3));
  CHECK(S("3+0*i").is_real());
  CHECK(S("1/2-1/3*i").str() == "1/2-1/3*i");
  CHECK(Scalar::parse(S("-7/3+5/2*i").str()) == S("-7/3+5/2*i"));
}

TEST_CASE("malformed scalars are rejected") {
  for (const char* bad : {"", "1/0", "abc", "1+", "2**i", "1/2/3", "i*i", "-6/-4"})
    CHECK_MESSAGE(testing::error_kind([&] { Scalar::parse(bad); }) == "MalformedScalar", bad);
}

TEST_CASE("gaussian arithmetic is exact") {
  Scalar a = S("1+2*i"), b = S("3-i");
  CHECK(a * b == S("5+5*i"));
  CHECK((a / b) * b == a);
  CHECK(a.conj() == S("1-2*i"));
  CHECK((a * a.conj()).is_real());
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  Scalar c = a;
  c.sub_mul(a, b);
  CHECK(c == a - a * b);
}

TEST_CASE("rref_rank goldens") {
  auto id = rref_rank(Matrix::identity(2));
  CHECK(id.rank == 2);
  CHECK(id.rref == Matrix::identity(2));

  Matrix m = testing::rows(2, {{1, 2}, {2, 4}});
  auto r = rref_rank(m);
  CHECK(r.rank == 1);
  CHECK(r.rref == testing::rows(2, {{1, 2}, {0, 0}}));
  CHECK(m == testing::rows(2, {{1, 2}, {2, 4}}));
}

TEST_CASE("kernel goldens") {
  CHECK(kernel_basis(Matrix(3, 3)) == Subspace::full(3));
  CHECK(kernel_basis(Matrix::identity(3)).is_zero());
  CHECK(kernel_basis(testing::rows(3, {{1, 1, 0}})).dim() == 2);
}

TEST_CASE("sum and intersection goldens") {
  Subspace a = Subspace::span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  Subspace b = Subspace::span(4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  auto si = subspace_sum_intersect(a, b);
  CHECK(si.sum == Subspace::full(4));
  CHECK(si.intersection.is_zero());

  auto same = subspace_sum_intersect(a, a);
  CHECK(same.sum == a);
  CHECK(same.intersection == a);

  auto small = subspace_sum_intersect(Subspace::span(2, {{1, 1}}), Subspace::span(2, {{0, 1}}));
  CHECK(small.sum == Subspace::full(2));
  CHECK(small.intersection.is_zero());

  Subspace c = Subspace::span(3, {{1, 1, 0}, {0, 0, 1}});
  Subspace d = Subspace::span(3, {{1, 0, 0}, {0, 1, 1}});
  auto cd = subspace_sum_intersect(c, d);
  CHECK(cd.intersection == Subspace::span(3, {{1, 1, 1}}));

  CHECK(testing::error_kind([] { subspace_sum(Subspace(2), Subspace(3)); }) == "AmbientMismatch");
}

TEST_CASE("subspace canonical form is structural") {
  Subspace a = Subspace::span(3, {{1, 2, 3}, {0, 1, 1}});
  Subspace b = Subspace::span(3, {{2, 5, 7}, {1, 1, 2}, {3, 6, 9}});
  CHECK(a == b);
  CHECK(a.basis() == b.basis());
  CHECK(a.contains(Vector{3, 7, 10}));
  CHECK_FALSE(a.contains(Vector{0, 0, 1}));
  CHECK(is_zero(a.reduce(Vector{1, 3, 4})));
}

TEST_CASE("conjugate_vector goldens") {
  CHECK(conjugate_vector(Vector{S("1+i"), 2}, Matrix::identity(2)) == Vector{S("1-i"), 2});
  Matrix swap = testing::rows(2, {{0, 1}, {1, 0}});
  CHECK(conjugate_vector(Vector{S("1+i"), 0}, swap) == Vector{0, S("1-i")});
  Matrix rot = testing::rows(2, {{0, 1}, {1, 1}});
  CHECK(testing::error_kind([&] { conjugate_vector(Vector{1, 0}, rot); }) == "InvalidRealStructure");
}

TEST_CASE("inverse and row solving") {
  Matrix t = testing::rows(2, {{S("1+i"), 1}, {0, 2}});
  CHECK(t * inverse(t) == Matrix::identity(2));
  CHECK(testing::error_kind([] { inverse(testing::rows(2, {{1, 2}, {2, 4}})); }) == "SingularTransformation");
  Vector x;
  CHECK(solve_row_combination(testing::rows(2, {{1, 0}, {1, 1}}), Vector{3, 2}, x));
  CHECK(x == Vector{1, 2});
  CHECK_FALSE(solve_row_combination(testing::rows(2, {{1, 1}}), Vector{1, 0}, x));
}

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, bool complex) {
  std::uniform_int_distribution<int> d(-2, 2);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Scalar(mpq_class(d(rng), 1 + (d(rng) & 1)), complex ? mpq_class(d(rng)) : mpq_class(0));
      if (d(rng) < 0) m(i, j) = 0;
    }
  return m;
}

}  // namespace

TEST_CASE("linear algebra properties on random matrices") {
  std::mt19937 rng(20261014);
  for (int trial = 0; trial < 200; ++trial) {
    const bool complex = trial % 2;
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    Matrix m = random_matrix(rng, r, c, complex);
    auto once = rref_rank(m);
    CHECK(rank(m) == once.rank);
    // Rank-deficient products exercise fraction-free elimination on zero pivots.
    std::size_t k = 1 + rng() % 3;
    Matrix thin = random_matrix(rng, r + 2, k, complex) * random_matrix(rng, k, c + 2, !complex);
    CHECK(rank(thin) == rref_rank(thin).rank);
    CHECK(rank(thin) <= k);
    CHECK(rref_rank(once.rref).rref == once.rref);
    CHECK(rank(m) == rank(m.transpose()));
    CHECK(kernel_basis(m).dim() + once.rank == c);
    for (const auto& v : kernel_basis(m).basis().row_vectors()) CHECK(is_zero(m.apply(v)));

    Subspace a = Subspace::span(random_matrix(rng, 1 + rng() % 4, c, complex));
    Subspace b = Subspace::span(random_matrix(rng, 1 + rng() % 4, c, complex));
    auto si = subspace_sum_intersect(a, b);
    CHECK(si.sum.dim() + si.intersection.dim() == a.dim() + b.dim());
    CHECK(a.contains(si.intersection));
    CHECK(b.contains(si.intersection));
    CHECK(si.sum.contains(a));

    Vector v(c);
    for (auto& s : v) s = Scalar(mpq_class(static_cast<int>(rng() % 5) - 2), mpq_class(static_cast<int>(rng() % 5) - 2));
    Scalar lambda(mpq_class(static_cast<int>(rng() % 7) - 3, 2), mpq_class(static_cast<int>(rng() % 5) - 2));
    Matrix s = Matrix::identity(c);
    CHECK(conjugate_vector(conjugate_vector(v, s), s) == v);
    Vector lv = v;
    for (auto& x : lv) x *= lambda;
    Vector lhs = conjugate_vector(lv, s), rhs = conjugate_vector(v, s);
    for (auto& x : rhs) x *= lambda.conj();
    CHECK(lhs == rhs);
  }
}
