#include "nilqp/exact.hpp"

#include <cctype>
#include <utility>

#include "nilqp/error.hpp"

namespace nilqp {

std::string to_string(Field f) { return f == Field::Q ? "Q" : "Qi"; }

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

Scalar Scalar::rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Scalar parse() {
    skip_space();
    if (at_end()) fail("empty scalar");
    bool have_re = false;
    bool have_im = false;
    mpq_class re(0);
    mpq_class im(0);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      mpq_class coeff(1);
      bool has_number = false;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = parse_rational();
        has_number = true;
        skip_space();
      }
      bool imaginary = false;
      if (!at_end() && peek() == '*') {
        if (!has_number) fail("'*' without a coefficient");
        ++pos_;
        skip_space();
        if (at_end() || peek() != 'i') fail("expected 'i' after '*'");
        ++pos_;
        imaginary = true;
      } else if (!at_end() && peek() == 'i') {
        if (has_number) fail("write the imaginary part as r*i");
        ++pos_;
        imaginary = true;
      } else if (!has_number) {
        fail("expected a number or 'i'");
      }
      skip_space();
      coeff *= sign;
      if (imaginary) {
        if (have_im) fail("imaginary part given twice");
        have_im = true;
        im = coeff;
      } else {
        if (have_re) fail("real part given twice");
        have_re = true;
        re = coeff;
      }
    }
    return Scalar(re, im);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out += text_[pos_++];
    if (out.empty()) fail("expected digits");
    return out;
  }

  mpq_class parse_rational() {
    mpz_class num(digits());
    mpz_class den(1);
    if (!at_end() && peek() == '/') {
      ++pos_;
      den = mpz_class(digits());
      if (den == 0) fail("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("MalformedScalar", "malformed scalar '" + std::string(text_) + "' at column " +
                                            std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).parse(); }

std::string Scalar::str() const {
  if (is_real()) return re_.get_str();
  std::string im = im_.get_str() + "*i";
  if (sgn(re_) == 0) return im;
  if (sgn(im_) > 0) return re_.get_str() + "+" + im;
  return re_.get_str() + im;
}

Scalar Scalar::conj() const {
  Scalar out(*this);
  if (!out.is_real()) out.im_ = -out.im_;
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out(*this);
  out.re_ = -out.re_;
  if (!out.is_real()) out.im_ = -out.im_;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (!o.is_real()) im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (!o.is_real()) im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw InvariantViolation("DivisionByZero", "division by zero scalar");
  if (o.is_real()) {
    re_ /= o.re_;
    if (!is_real()) im_ /= o.re_;
    return *this;
  }
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

void Scalar::sub_mul(const Scalar& a, const Scalar& b) {
  if (a.is_real() && b.is_real()) {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
    mpq_sub(re_.get_mpq_t(), re_.get_mpq_t(), tmp.get_mpq_t());
    return;
  }
  *this -= a * b;
}

Vector conj(std::span<const Scalar> v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.conj());
  return out;
}

bool is_zero(std::span<const Scalar> v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

bool is_real(std::span<const Scalar> v) {
  for (const auto& s : v)
    if (!s.is_real()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw InvariantViolation("ShapeMismatch", "row length differs from column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return Vector(s.begin(), s.end());
}

std::vector<Vector> Matrix::row_vectors() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
  return out;
}

void Matrix::append_row(std::span<const Scalar> v) {
  if (v.size() != cols_) throw InvariantViolation("ShapeMismatch", "appended row has wrong length");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

Field Matrix::field() const {
  for (const auto& s : data_)
    if (!s.is_real()) return Field::Qi;
  return Field::Q;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::conj() const {
  Matrix out(*this);
  for (auto& s : out.data_) s = s.conj();
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw InvariantViolation("ShapeMismatch", "matrix product shape mismatch");
  Matrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        const Scalar& b = o(k, c);
        if (!b.is_zero()) out(r, c).sub_mul(-a, b);
      }
    }
  return out;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw InvariantViolation("ShapeMismatch", "matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero() && !v[c].is_zero()) out[r].sub_mul(-a, v[c]);
    }
  return out;
}

Vector row_times(std::span<const Scalar> v, const Matrix& m) {
  if (v.size() != m.rows()) throw InvariantViolation("ShapeMismatch", "vector-matrix shape mismatch");
  Vector out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (v[r].is_zero()) continue;
    Scalar neg = -v[r];
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) out[c].sub_mul(neg, m(r, c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

namespace {

/// In-place RREF on the first `limit` columns; returns pivots.
std::vector<std::size_t> eliminate(Matrix& m, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t col = 0; col < limit && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m(piv, col).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(piv, c), m(rank, c));
    if (!m(rank, col).is_one()) {
      Scalar inv = Scalar(1) / m(rank, col);
      for (std::size_t c = col; c < cols; ++c)
        if (!m(rank, c).is_zero()) m(rank, c) *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t c = col; c < cols; ++c)
      if (!m(rank, c).is_zero()) nz.push_back(c);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m(r, col).is_zero()) continue;
      Scalar f = m(r, col);
      for (std::size_t c : nz) m(r, c).sub_mul(f, m(rank, c));
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

}  // namespace

RrefResult rref_rank(const Matrix& m) {
  RrefResult out;
  out.rref = m;
  out.pivots = eliminate(out.rref, m.cols());
  out.rank = out.pivots.size();
  return out;
}

namespace {

// Gaussian integer, so Q and Q(i) share one fraction-free elimination.
struct GaussInt {
  mpz_class re, im;
  bool zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

// a*b - c*d
GaussInt cross(const GaussInt& a, const GaussInt& b, const GaussInt& c, const GaussInt& d, bool real) {
  if (real) return {a.re * b.re - c.re * d.re, 0};
  return {a.re * b.re - a.im * b.im - (c.re * d.re - c.im * d.im),
          a.re * b.im + a.im * b.re - (c.re * d.im + c.im * d.re)};
}

void divexact(GaussInt& a, const GaussInt& b, bool real) {
  if (real) {
    mpz_divexact(a.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
    return;
  }
  const mpz_class norm = b.re * b.re + b.im * b.im;
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  mpz_divexact(a.re.get_mpz_t(), re.get_mpz_t(), norm.get_mpz_t());
  mpz_divexact(a.im.get_mpz_t(), im.get_mpz_t(), norm.get_mpz_t());
}

}  // namespace

// Bareiss elimination on the matrix with each row cleared of denominators;
// every division is exact, so entries stay integers of bounded growth.
std::size_t rank(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const bool real = m.field() == Field::Q;
  std::vector<std::vector<GaussInt>> a(rows, std::vector<GaussInt>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).im().get_den_mpz_t());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      a[r][c].re = m(r, c).re().get_num() * (l / m(r, c).re().get_den());
      a[r][c].im = m(r, c).im().get_num() * (l / m(r, c).im().get_den());
    }
  }
  GaussInt prev{1, 0};
  std::size_t rk = 0;
  for (std::size_t col = 0; col < cols && rk < rows; ++col) {
    std::size_t piv = rk;
    while (piv < rows && a[piv][col].zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rk]);
    for (std::size_t r = rk + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r][c] = cross(a[rk][col], a[r][c], a[r][col], a[rk][c], real);
        divexact(a[r][c], prev, real);
      }
      a[r][col] = {0, 0};
    }
    prev = a[rk][col];
    ++rk;
  }
  return rk;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InputError("SingularTransformation", "matrix is not square");
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  auto pivots = eliminate(aug, n);
  if (pivots.size() != n) throw InputError("SingularTransformation", "matrix is singular");
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

bool solve_row_combination(const Matrix& m, std::span<const Scalar> b, Vector& x) {
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  if (b.size() != n) throw InvariantViolation("ShapeMismatch", "right-hand side has wrong length");
  // M^T x = b
  Matrix aug(n, k + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) aug(r, c) = m(c, r);
    aug(r, k) = b[r];
  }
  auto pivots = eliminate(aug, k);
  for (std::size_t r = pivots.size(); r < n; ++r)
    if (!aug(r, k).is_zero()) return false;
  x.assign(k, Scalar());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, k);
  return true;
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

Subspace Subspace::span(const Matrix& m) {
  Matrix work = m;
  auto pivots = eliminate(work, m.cols());
  Subspace s(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) s.basis_.append_row(work.row(r));
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  return span(Matrix::from_rows(ambient_dim, vectors));
}

Subspace Subspace::full(std::size_t n) { return span(Matrix::identity(n)); }

bool Subspace::contains(std::span<const Scalar> v) const { return nilqp::is_zero(reduce(v)); }

Vector Subspace::reduce(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw InputError("AmbientMismatch", "vector length differs from ambient dimension");
  Vector w(v.begin(), v.end());
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    auto row = basis_.row(r);
    std::size_t p = 0;
    while (row[p].is_zero()) ++p;
    if (w[p].is_zero()) continue;
    Scalar f = w[p];
    for (std::size_t c = p; c < ambient_; ++c)
      if (!row[c].is_zero()) w[c].sub_mul(f, row[c]);
  }
  return w;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw InputError("AmbientMismatch", "subspaces live in different spaces");
  for (std::size_t r = 0; r < other.dim(); ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

Subspace Subspace::conjugate(const Matrix& real_structure) const {
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < dim(); ++r) rows.push_back(conjugate_unchecked(basis_.row(r), real_structure));
  return span(ambient_, rows);
}

Subspace kernel_basis(const Matrix& m) {
  const std::size_t n = m.cols();
  RrefResult rr = rref_rank(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vector> vecs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < rr.rank; ++r) v[rr.pivots[r]] = -rr.rref(r, f);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(n, vecs);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw InputError("AmbientMismatch", "subspaces have different ambient dimensions");
  Matrix m = a.basis();
  for (std::size_t r = 0; r < b.dim(); ++r) m.append_row(b.basis().row(r));
  return Subspace::span(m);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw InputError("AmbientMismatch", "subspaces have different ambient dimensions");
  // A ∩ B = ann(ann A + ann B) under the bilinear pairing.
  Subspace ann_a = kernel_basis(a.basis());
  Subspace ann_b = kernel_basis(b.basis());
  Matrix stacked = ann_a.basis();
  for (std::size_t r = 0; r < ann_b.dim(); ++r) stacked.append_row(ann_b.basis().row(r));
  return kernel_basis(stacked);
}

SumIntersection subspace_sum_intersect(const Subspace& a, const Subspace& b) {
  return {subspace_sum(a, b), subspace_intersect(a, b)};
}

bool is_antilinear_involution(const Matrix& s) {
  if (s.rows() != s.cols()) return false;
  return s * s.conj() == Matrix::identity(s.rows());
}

Vector conjugate_unchecked(std::span<const Scalar> v, const Matrix& s) {
  Vector c = nilqp::conj(v);
  return s.apply(c);
}

Vector conjugate_vector(std::span<const Scalar> v, const Matrix& s) {
  if (!is_antilinear_involution(s))
    throw InputError("InvalidRealStructure", "real structure S does not satisfy S*conj(S) = I");
  if (v.size() != s.cols()) throw InputError("AmbientMismatch", "vector length differs from real structure size");
  return conjugate_unchecked(v, s);
}

}  // namespace nilqp
