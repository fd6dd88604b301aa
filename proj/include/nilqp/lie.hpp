#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nilqp/error.hpp"
#include "nilqp/exact.hpp"

namespace nilqp {

/// Sparse coordinate vector: basis index -> nonzero coefficient.
using SparseVector = std::map<std::size_t, Scalar>;

/// Unvalidated description of a Lie algebra, as read from a file or written
/// by hand. Brackets are given for i < j only; missing pairs are zero.
struct AlgebraData {
  std::string name;
  Field field = Field::Q;
  std::vector<std::string> basis;
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> brackets;
  std::optional<Matrix> real_structure;
};

struct JacobiWitness {
  std::size_t i = 0, j = 0, k = 0;
  Vector residual;
};

/// Jacobi failure on a basis triple, with the nonzero residual.
class JacobiViolation : public InputError {
 public:
  explicit JacobiViolation(JacobiWitness w);
  const JacobiWitness& witness() const { return witness_; }

 private:
  JacobiWitness witness_;
};

struct ValidationReport {
  bool jacobi_ok = true;
  bool real_structure_ok = true;   ///< vacuous when no real structure is given
  bool lattice_admissible = false; ///< rational structure constants
  std::size_t triples_checked = 0;
};

/// Finite-dimensional Lie algebra over Q or Q(i) given by structure
/// constants [X_i, X_j] = sum_k C_ij^k X_k. Instances are immutable and are
/// always validated at construction.
class LieAlgebra {
 public:
  /// Validates and throws JacobiViolation / InvalidRealStructure /
  /// MalformedAlgebra (InputError) on failure.
  explicit LieAlgebra(AlgebraData data);

  static LieAlgebra abelian(std::size_t n, Field field = Field::Q);

  const std::string& name() const { return data_.name; }
  std::size_t dim() const { return data_.basis.size(); }
  Field field() const { return data_.field; }
  const std::vector<std::string>& basis_names() const { return data_.basis; }
  const std::map<std::pair<std::size_t, std::size_t>, SparseVector>& brackets() const {
    return data_.brackets;
  }
  const std::optional<Matrix>& real_structure() const { return data_.real_structure; }
  const AlgebraData& data() const { return data_; }

  /// [X_i, X_j] for any i, j (antisymmetry applied); empty when zero.
  SparseVector bracket_basis(std::size_t i, std::size_t j) const;
  Vector bracket(std::span<const Scalar> u, std::span<const Scalar> v) const;

  /// Real structure, or identity (entrywise conjugation) when absent.
  Matrix conjugation() const;

  LieAlgebra renamed(std::string name) const;

  /// Structure constants equal (names and real structure ignored).
  bool same_structure(const LieAlgebra& other) const;

 private:
  AlgebraData data_;
};

/// Checks Jacobi on all triples and the real structure. Throws on failure.
ValidationReport validate(const AlgebraData& data);
inline ValidationReport validate(const LieAlgebra& l) { return validate(l.data()); }

/// Residual of Jacobi on basis triple (i, j, k).
Vector jacobi_residual(const AlgebraData& data, std::size_t i, std::size_t j, std::size_t k);

struct LowerCentralSeries {
  std::vector<Subspace> terms;  ///< C^0 = L, C^1, ..., C^t = 0
  std::size_t nilpotency_class = 0;
};

/// Throws InputError("NotNilpotent") if the series stalls above zero.
LowerCentralSeries lower_central_series(const LieAlgebra& l);

Subspace center(const LieAlgebra& l);
Subspace commutator_ideal(const LieAlgebra& l);
bool is_abelian(const LieAlgebra& l);

/// dim L - dim [L, L], which equals dim H^1.
std::size_t first_betti(const LieAlgebra& l);

/// Matrix of ad(X_i) acting on coordinate column vectors.
Matrix adjoint(const LieAlgebra& l, std::size_t i);

/// Same structure constants over Q(i) with the identity real structure.
/// Throws InputError("AlreadyComplex").
LieAlgebra complexify(const LieAlgebra& l);

/// Re-expresses l in the basis e_i = sum_j T_ij X_j (rows of T). A complex T
/// promotes a rational algebra to Q(i). The real structure is transported.
/// Throws InputError("SingularTransformation").
LieAlgebra apply_basis_change(const LieAlgebra& l, const Matrix& t);

/// l restricted to the subalgebra spanned by the rows of `rows`, expressed in
/// that basis. Throws InvariantViolation if the span is not closed.
LieAlgebra restrict_to(const LieAlgebra& l, const Matrix& rows, std::string name);

bool verify_isomorphism(const LieAlgebra& a, const LieAlgebra& b, const Matrix& t);

struct AbelianSplitting {
  LieAlgebra core;
  std::size_t k = 0;
  Matrix core_basis;     ///< rows: core basis vectors in l's coordinates
  Matrix abelian_basis;  ///< rows: central complement of C^1 inside Z
  /// Rows of core_basis followed by abelian_basis; maps l onto core ⊕ R^k.
  Matrix transformation() const;
};

AbelianSplitting strip_abelian_factor(const LieAlgebra& l);

/// Block-diagonal sum. Throws InputError("FieldMismatch").
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, std::string name = {});

struct RealForm {
  LieAlgebra algebra;  ///< over Q
  Matrix basis;        ///< rows: fixed vectors of the real structure, in l's coordinates
};

/// Fixed points of the real structure, as a Q-algebra. For a rational
/// algebra this is the algebra itself with the identity basis.
/// Throws InputError("MissingRealStructure") for Q(i) without one.
RealForm real_form(const LieAlgebra& l);

}  // namespace nilqp
