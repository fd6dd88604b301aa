#pragma once

// Exact scalars over Q and Q(i), dense matrices and row-echelon subspaces.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nilqp {

enum class Field { Q, Qi };

std::string to_string(Field f);

/// Element of Q(i) stored as a pair of GMP rationals. An element whose
/// imaginary part is zero is the corresponding rational; all arithmetic
/// takes a real-only path when both operands are real.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& re) : re_(re) {}  // NOLINT
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar rational(long num, long den = 1);

  /// Parses "p/q", "p", "p/q+r/s*i", "-1/2+3*i", "2*i", "i", "-i".
  /// Throws InputError("MalformedScalar") naming the offending column.
  static Scalar parse(std::string_view text);
  std::string str() const;

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return is_real() && re_ == 1; }

  Scalar conj() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  /// *this -= a * b without allocating temporaries on the real path.
  void sub_mul(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  mpq_class re_;
  mpq_class im_;
};

using Vector = std::vector<Scalar>;

Vector conj(std::span<const Scalar> v);
bool is_zero(std::span<const Scalar> v);
bool is_real(std::span<const Scalar> v);

/// Dense row-major matrix. The field is derived from the entries: any
/// non-real entry promotes the whole matrix to Q(i).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::size_t cols, const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const;
  std::vector<Vector> row_vectors() const;

  void append_row(std::span<const Scalar> v);

  Field field() const;
  bool is_zero() const;

  Matrix transpose() const;
  Matrix conj() const;
  Matrix operator*(const Matrix& o) const;
  Vector apply(std::span<const Scalar> v) const;  ///< M v, v a column vector

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Vector row_times(std::span<const Scalar> v, const Matrix& m);  ///< v^T M

struct RrefResult {
  Matrix rref;                       ///< same shape as the input
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;   ///< pivot column of row r, r < rank
};

/// Reduced row-echelon form with first-nonzero pivoting. Input untouched.
RrefResult rref_rank(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Returns the inverse or throws InputError("SingularTransformation").
Matrix inverse(const Matrix& m);

/// Solves x^T M = b^T for x when b lies in the row space of M.
/// Returns false when it does not.
bool solve_row_combination(const Matrix& m, std::span<const Scalar> b, Vector& x);

/// A linear subspace of K^n stored as its canonical reduced row-echelon
/// basis (rows), so equal subspaces compare structurally equal.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  /// Span of the rows of m.
  static Subspace span(const Matrix& m);
  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace full(std::size_t n);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix& basis() const { return basis_; }

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;

  /// Remainder of v after clearing every pivot coordinate of the basis.
  Vector reduce(std::span<const Scalar> v) const;

  /// Image under v -> S conj(v).
  Subspace conjugate(const Matrix& real_structure) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
};

/// Null space of m acting on column vectors.
Subspace kernel_basis(const Matrix& m);

struct SumIntersection {
  Subspace sum;
  Subspace intersection;
};

/// Throws InputError("AmbientMismatch") when ambient dimensions differ.
SumIntersection subspace_sum_intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// True iff S conj(S) = I.
bool is_antilinear_involution(const Matrix& real_structure);

/// S conj(v). Throws InputError("InvalidRealStructure") if S is not an
/// antilinear involution.
Vector conjugate_vector(std::span<const Scalar> v, const Matrix& real_structure);

/// Same as conjugate_vector without re-checking the involution property.
Vector conjugate_unchecked(std::span<const Scalar> v, const Matrix& real_structure);

}  // namespace nilqp
