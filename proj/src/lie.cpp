#include "nilqp/lie.hpp"

#include <array>
#include <set>
#include <sstream>

namespace nilqp {

namespace {

std::string vector_str(std::span<const Scalar> v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
  os << ")";
  return os.str();
}

void add_scaled(Vector& out, const Scalar& f, const SparseVector& v) {
  for (const auto& [k, c] : v) out[k].sub_mul(-f, c);
}

/// [X_i, sum_k v_k X_k] against raw data.
Vector bracket_basis_dense(const AlgebraData& d, std::size_t i, std::span<const Scalar> v) {
  const std::size_t n = d.basis.size();
  Vector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (v[j].is_zero() || i == j) continue;
    if (i < j) {
      auto it = d.brackets.find({i, j});
      if (it != d.brackets.end()) add_scaled(out, v[j], it->second);
    } else {
      auto it = d.brackets.find({j, i});
      if (it != d.brackets.end()) add_scaled(out, -v[j], it->second);
    }
  }
  return out;
}

Vector basis_bracket_dense(const AlgebraData& d, std::size_t i, std::size_t j) {
  Vector e(d.basis.size());
  e[j] = 1;
  return bracket_basis_dense(d, i, e);
}

Vector dense_bracket(const AlgebraData& d, std::span<const Scalar> u, std::span<const Scalar> v) {
  const std::size_t n = d.basis.size();
  Vector out(n);
  for (const auto& [ij, c] : d.brackets) {
    auto [i, j] = ij;
    Scalar f = u[i] * v[j];
    f.sub_mul(u[j], v[i]);
    if (!f.is_zero()) add_scaled(out, f, c);
  }
  return out;
}

void check_shape(const AlgebraData& d) {
  const std::size_t n = d.basis.size();
  for (const auto& [ij, coeffs] : d.brackets) {
    auto [i, j] = ij;
    if (i >= j)
      throw InputError("MalformedAlgebra", "bracket (" + std::to_string(i) + "," + std::to_string(j) +
                                               ") must have i < j");
    if (j >= n)
      throw InputError("MalformedAlgebra", "bracket (" + std::to_string(i) + "," + std::to_string(j) +
                                               ") out of range for dim " + std::to_string(n));
    for (const auto& [k, c] : coeffs) {
      if (k >= n)
        throw InputError("MalformedAlgebra", "coefficient index " + std::to_string(k) + " in bracket (" +
                                                 std::to_string(i) + "," + std::to_string(j) +
                                                 ") out of range");
      if (d.field == Field::Q && !c.is_real())
        throw InputError("MalformedAlgebra", "complex coefficient " + c.str() + " in bracket (" +
                                                 std::to_string(i) + "," + std::to_string(j) +
                                                 ") of an algebra declared over Q");
    }
  }
}

void clean(AlgebraData& d) {
  for (auto it = d.brackets.begin(); it != d.brackets.end();) {
    for (auto c = it->second.begin(); c != it->second.end();) {
      if (c->second.is_zero())
        c = it->second.erase(c);
      else
        ++c;
    }
    if (it->second.empty())
      it = d.brackets.erase(it);
    else
      ++it;
  }
}

SparseVector to_sparse(std::span<const Scalar> v) {
  SparseVector out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.emplace(k, v[k]);
  return out;
}

std::vector<std::string> default_names(std::size_t n, const std::string& stem) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

}  // namespace

JacobiViolation::JacobiViolation(JacobiWitness w)
    : InputError("JacobiViolation", "Jacobi identity fails on basis triple (" + std::to_string(w.i) + "," +
                                        std::to_string(w.j) + "," + std::to_string(w.k) +
                                        "): residual " + vector_str(w.residual)),
      witness_(std::move(w)) {}

Vector jacobi_residual(const AlgebraData& d, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = d.basis.size();
  Vector out(n);
  auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
    Vector inner = basis_bracket_dense(d, b, c);
    Vector outer = bracket_basis_dense(d, a, inner);
    for (std::size_t t = 0; t < n; ++t) out[t] += outer[t];
  };
  term(i, j, k);
  term(j, k, i);
  term(k, i, j);
  return out;
}

namespace {

// Jacobi is homogeneous of degree two in the structure constants, so it can
// be tested on constants scaled to Gaussian integers. Returns the first
// failing triple.
std::optional<std::array<std::size_t, 3>> first_jacobi_failure(const AlgebraData& d) {
  const std::size_t n = d.basis.size();
  mpz_class den = 1;
  bool real = true;
  for (const auto& [ij, coeffs] : d.brackets)
    for (const auto& [k, c] : coeffs) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.im().get_den_mpz_t());
      real = real && c.is_real();
    }
  // re/im of C_ab^t at (a * n + b) * n + t, antisymmetry filled in.
  std::vector<mpz_class> re(n * n * n), im(real ? 0 : n * n * n);
  auto at = [n](std::size_t a, std::size_t b, std::size_t t) { return (a * n + b) * n + t; };
  for (const auto& [ij, coeffs] : d.brackets)
    for (const auto& [k, c] : coeffs) {
      mpz_class r = c.re().get_num() * (den / c.re().get_den());
      re[at(ij.first, ij.second, k)] = r;
      re[at(ij.second, ij.first, k)] = -r;
      if (!real) {
        mpz_class q = c.im().get_num() * (den / c.im().get_den());
        im[at(ij.first, ij.second, k)] = q;
        im[at(ij.second, ij.first, k)] = -q;
      }
    }
  std::vector<mpz_class> acc_re(n), acc_im(n);
  mpz_class tmp;
  auto add_term = [&](std::size_t a, std::size_t b, std::size_t c) {
    // [X_a, [X_b, X_c]] = sum_m C_bc^m C_am^t
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t bc = at(b, c, m);
      const bool zr = sgn(re[bc]) == 0, zi = real || sgn(im[bc]) == 0;
      if (zr && zi) continue;
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t am = at(a, m, t);
        if (!zr) mpz_addmul(acc_re[t].get_mpz_t(), re[bc].get_mpz_t(), re[am].get_mpz_t());
        if (real) continue;
        if (!zi) mpz_submul(acc_re[t].get_mpz_t(), im[bc].get_mpz_t(), im[am].get_mpz_t());
        if (!zr) mpz_addmul(acc_im[t].get_mpz_t(), re[bc].get_mpz_t(), im[am].get_mpz_t());
        if (!zi) mpz_addmul(acc_im[t].get_mpz_t(), im[bc].get_mpz_t(), re[am].get_mpz_t());
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t t = 0; t < n; ++t) acc_re[t] = acc_im[t] = 0;
        add_term(i, j, k);
        add_term(j, k, i);
        add_term(k, i, j);
        for (std::size_t t = 0; t < n; ++t)
          if (sgn(acc_re[t]) != 0 || sgn(acc_im[t]) != 0) return std::array{i, j, k};
      }
  return std::nullopt;
}

}  // namespace

ValidationReport validate(const AlgebraData& data) {
  check_shape(data);
  ValidationReport report;
  const std::size_t n = data.basis.size();
  if (auto bad = first_jacobi_failure(data)) {
    const auto [i, j, k] = *bad;
    throw JacobiViolation(JacobiWitness{i, j, k, jacobi_residual(data, i, j, k)});
  }
  report.triples_checked = n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;

  if (data.real_structure) {
    const Matrix& s = *data.real_structure;
    if (s.rows() != n || s.cols() != n)
      throw InputError("InvalidRealStructure", "real structure must be " + std::to_string(n) + "x" +
                                                   std::to_string(n));
    if (data.field == Field::Q && !(s == Matrix::identity(n)))
      throw InputError("InvalidRealStructure", "an algebra over Q admits only the identity real structure");
    if (!is_antilinear_involution(s))
      throw InputError("InvalidRealStructure", "real structure S does not satisfy S*conj(S) = I");
    // sigma[X_i, X_j] == [sigma X_i, sigma X_j]
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Vector lhs = conjugate_unchecked(basis_bracket_dense(data, i, j), s);
        Vector si(n), sj(n);
        for (std::size_t r = 0; r < n; ++r) {
          si[r] = s(r, i);
          sj[r] = s(r, j);
        }
        Vector rhs = dense_bracket(data, si, sj);
        if (lhs != rhs)
          throw InputError("InvalidRealStructure", "conjugation is not a bracket automorphism on pair (" +
                                                       std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }
  report.lattice_admissible = data.field == Field::Q || data.real_structure.has_value();
  return report;
}

// ---------------------------------------------------------------------------
// LieAlgebra
// ---------------------------------------------------------------------------

LieAlgebra::LieAlgebra(AlgebraData data) : data_(std::move(data)) {
  clean(data_);
  validate(data_);
}

LieAlgebra LieAlgebra::abelian(std::size_t n, Field field) {
  AlgebraData d;
  d.name = "abelian_" + std::to_string(n);
  d.field = field;
  d.basis = default_names(n, "x");
  if (field == Field::Qi) d.real_structure = Matrix::identity(n);
  return LieAlgebra(std::move(d));
}

SparseVector LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  if (i == j) return {};
  if (i < j) {
    auto it = data_.brackets.find({i, j});
    return it == data_.brackets.end() ? SparseVector{} : it->second;
  }
  auto it = data_.brackets.find({j, i});
  if (it == data_.brackets.end()) return {};
  SparseVector out;
  for (const auto& [k, c] : it->second) out.emplace(k, -c);
  return out;
}

Vector LieAlgebra::bracket(std::span<const Scalar> u, std::span<const Scalar> v) const {
  return dense_bracket(data_, u, v);
}

Matrix LieAlgebra::conjugation() const {
  return data_.real_structure ? *data_.real_structure : Matrix::identity(dim());
}

LieAlgebra LieAlgebra::renamed(std::string name) const {
  AlgebraData d = data_;
  d.name = std::move(name);
  return LieAlgebra(std::move(d));
}

bool LieAlgebra::same_structure(const LieAlgebra& other) const {
  return dim() == other.dim() && data_.brackets == other.data_.brackets;
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

Matrix adjoint(const LieAlgebra& l, std::size_t i) {
  const std::size_t n = l.dim();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [k, c] : l.bracket_basis(i, j)) m(k, j) = c;
  return m;
}

Subspace commutator_ideal(const LieAlgebra& l) {
  Matrix rows(0, l.dim());
  for (const auto& [ij, c] : l.brackets()) {
    Vector v(l.dim());
    for (const auto& [k, s] : c) v[k] = s;
    rows.append_row(v);
  }
  return Subspace::span(rows);
}

Subspace center(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  Matrix stacked(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix ad = adjoint(l, i);
    for (std::size_t r = 0; r < n; ++r)
      if (!is_zero(ad.row(r))) stacked.append_row(ad.row(r));
  }
  return kernel_basis(stacked);
}

bool is_abelian(const LieAlgebra& l) { return l.brackets().empty(); }

std::size_t first_betti(const LieAlgebra& l) { return l.dim() - commutator_ideal(l).dim(); }

LowerCentralSeries lower_central_series(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  LowerCentralSeries out;
  Subspace current = Subspace::full(n);
  out.terms.push_back(current);
  while (!current.is_zero()) {
    Matrix rows(0, n);
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n);
      e[i] = 1;
      for (std::size_t r = 0; r < current.dim(); ++r) {
        Vector b = l.bracket(e, current.basis().row(r));
        if (!is_zero(b)) rows.append_row(b);
      }
    }
    Subspace next = Subspace::span(rows);
    if (next == current)
      throw InputError("NotNilpotent", "lower central series of '" + l.name() + "' stabilizes at dimension " +
                                           std::to_string(current.dim()));
    out.terms.push_back(next);
    current = std::move(next);
  }
  out.nilpotency_class = out.terms.size() - 1;
  return out;
}

LieAlgebra complexify(const LieAlgebra& l) {
  if (l.field() == Field::Qi) throw InputError("AlreadyComplex", "'" + l.name() + "' is already over Q(i)");
  AlgebraData d = l.data();
  d.field = Field::Qi;
  d.real_structure = Matrix::identity(l.dim());
  return LieAlgebra(std::move(d));
}

LieAlgebra apply_basis_change(const LieAlgebra& l, const Matrix& t) {
  const std::size_t n = l.dim();
  if (t.rows() != n || t.cols() != n)
    throw InputError("SingularTransformation", "transformation must be " + std::to_string(n) + "x" +
                                                   std::to_string(n));
  if (l.field() == Field::Q && t.field() == Field::Qi) return apply_basis_change(complexify(l), t);
  Matrix tinv = inverse(t);
  AlgebraData d;
  d.name = l.name();
  d.field = l.field();
  d.basis = l.basis_names();
  if (!(t == Matrix::identity(n))) d.basis = default_names(n, "e");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector w = l.bracket(t.row(a), t.row(b));
      if (is_zero(w)) continue;
      SparseVector sv = to_sparse(row_times(w, tinv));
      if (!sv.empty()) d.brackets.emplace(std::make_pair(a, b), std::move(sv));
    }
  if (l.real_structure()) {
    // S' = T^{-T} S conj(T)^T
    d.real_structure = tinv.transpose() * (*l.real_structure() * t.conj().transpose());
  }
  return LieAlgebra(std::move(d));
}

LieAlgebra restrict_to(const LieAlgebra& l, const Matrix& rows, std::string name) {
  const std::size_t m = rows.rows();
  AlgebraData d;
  d.name = std::move(name);
  d.field = l.field() == Field::Qi || rows.field() == Field::Qi ? Field::Qi : Field::Q;
  d.basis = default_names(m, "b");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      Vector w = l.bracket(rows.row(a), rows.row(b));
      if (is_zero(w)) continue;
      Vector x;
      if (!solve_row_combination(rows, w, x))
        throw InvariantViolation("NotASubalgebra", "span is not closed under the bracket");
      SparseVector sv = to_sparse(x);
      if (!sv.empty()) d.brackets.emplace(std::make_pair(a, b), std::move(sv));
    }
  if (d.field == Field::Qi) {
    Matrix s = l.conjugation();
    Matrix sr(m, m);
    bool stable = true;
    for (std::size_t j = 0; j < m && stable; ++j) {
      Vector cj = conjugate_unchecked(rows.row(j), s);
      Vector x;
      if (!solve_row_combination(rows, cj, x)) {
        stable = false;
        break;
      }
      for (std::size_t r = 0; r < m; ++r) sr(r, j) = x[r];
    }
    if (stable) d.real_structure = sr;
  }
  return LieAlgebra(std::move(d));
}

bool verify_isomorphism(const LieAlgebra& a, const LieAlgebra& b, const Matrix& t) {
  if (a.dim() != b.dim())
    throw InputError("DimensionMismatch", "algebras have dimensions " + std::to_string(a.dim()) + " and " +
                                              std::to_string(b.dim()));
  return apply_basis_change(a, t).same_structure(b);
}

Matrix AbelianSplitting::transformation() const {
  Matrix t = core_basis;
  for (std::size_t r = 0; r < abelian_basis.rows(); ++r) t.append_row(abelian_basis.row(r));
  return t;
}

AbelianSplitting strip_abelian_factor(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  Subspace z = center(l);
  Subspace c1 = commutator_ideal(l);
  Subspace zc = subspace_intersect(z, c1);

  // Central complement: extend Z ∩ C^1 to Z greedily over the canonical basis of Z.
  Matrix abelian(0, n);
  Subspace acc = zc;
  for (std::size_t r = 0; r < z.dim(); ++r) {
    auto v = z.basis().row(r);
    if (acc.contains(v)) continue;
    abelian.append_row(v);
    acc = subspace_sum(acc, Subspace::span(Matrix::from_rows(n, {Vector(v.begin(), v.end())})));
  }

  // Ideal containing C^1 complementary to the central part.
  Matrix ideal_rows = c1.basis();
  Subspace filled = subspace_sum(c1, Subspace::span(abelian));
  for (std::size_t j = 0; j < n && filled.dim() < n; ++j) {
    Vector e(n);
    e[j] = 1;
    if (filled.contains(e)) continue;
    ideal_rows.append_row(e);
    filled = subspace_sum(filled, Subspace::span(Matrix::from_rows(n, {e})));
  }
  Subspace ideal = Subspace::span(ideal_rows);

  const std::size_t k = abelian.rows();
  std::string core_name = k == 0 ? l.name() : l.name() + "_core";
  LieAlgebra core = k == 0 ? l : restrict_to(l, ideal.basis(), core_name);
  if (k != 0) {
    AlgebraData d = core.data();
    d.basis.clear();
    for (std::size_t r = 0; r < ideal.dim(); ++r) {
      auto row = ideal.basis().row(r);
      std::size_t p = 0;
      while (row[p].is_zero()) ++p;
      d.basis.push_back(l.basis_names()[p]);
    }
    core = LieAlgebra(std::move(d));
  }
  return AbelianSplitting{std::move(core), k, ideal.basis(), std::move(abelian)};
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, std::string name) {
  if (a.field() != b.field())
    throw InputError("FieldMismatch", "cannot sum algebras over " + to_string(a.field()) + " and " +
                                          to_string(b.field()));
  const std::size_t na = a.dim();
  const std::size_t n = na + b.dim();
  AlgebraData d;
  d.name = name.empty() ? a.name() + "+" + b.name() : std::move(name);
  d.field = a.field();
  std::set<std::string> seen;
  for (const auto& s : a.basis_names()) {
    d.basis.push_back(s);
    seen.insert(s);
  }
  for (std::string s : b.basis_names()) {
    while (seen.count(s)) s += "'";
    d.basis.push_back(s);
    seen.insert(s);
  }
  d.brackets = a.brackets();
  for (const auto& [ij, c] : b.brackets()) {
    SparseVector shifted;
    for (const auto& [k, s] : c) shifted.emplace(k + na, s);
    d.brackets.emplace(std::make_pair(ij.first + na, ij.second + na), std::move(shifted));
  }
  if (d.field == Field::Qi) {
    Matrix s(n, n);
    Matrix sa = a.conjugation();
    Matrix sb = b.conjugation();
    for (std::size_t r = 0; r < na; ++r)
      for (std::size_t c = 0; c < na; ++c) s(r, c) = sa(r, c);
    for (std::size_t r = 0; r < b.dim(); ++r)
      for (std::size_t c = 0; c < b.dim(); ++c) s(na + r, na + c) = sb(r, c);
    d.real_structure = s;
  }
  return LieAlgebra(std::move(d));
}

RealForm real_form(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  if (l.field() == Field::Q) return RealForm{l, Matrix::identity(n)};
  if (!l.real_structure())
    throw InputError("MissingRealStructure", "'" + l.name() + "' is over Q(i) without a real structure");
  const Matrix& s = *l.real_structure();
  // v = a + i b fixed by v -> S conj(v), with S = P + iQ:
  //   (P - I) a + Q b = 0,  Q a - (P + I) b = 0.
  Matrix sys(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Scalar p(s(r, c).re());
      Scalar q(s(r, c).im());
      sys(r, c) = r == c ? p - 1 : p;
      sys(r, n + c) = q;
      sys(n + r, c) = q;
      sys(n + r, n + c) = r == c ? -p - 1 : -p;
    }
  Subspace fixed = kernel_basis(sys);
  Matrix basis(0, n);
  for (std::size_t r = 0; r < fixed.dim(); ++r) {
    Vector v(n);
    for (std::size_t c = 0; c < n; ++c) v[c] = Scalar(fixed.basis()(r, c).re(), fixed.basis()(r, n + c).re());
    basis.append_row(v);
  }
  if (basis.rows() != n || rank(basis) != n)
    throw InvariantViolation("RealFormRank", "fixed points of the real structure do not span");
  LieAlgebra restricted = restrict_to(l, basis, l.name() + "_real");
  AlgebraData d = restricted.data();
  d.field = Field::Q;
  d.real_structure.reset();
  d.basis = default_names(n, "r");
  for (const auto& [ij, c] : d.brackets)
    for (const auto& [k, v] : c)
      if (!v.is_real()) throw InvariantViolation("RealFormNotRational", "real form has complex constants");
  return RealForm{LieAlgebra(std::move(d)), std::move(basis)};
}

}  // namespace nilqp
