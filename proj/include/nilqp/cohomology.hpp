#pragma once

// Chevalley–Eilenberg complex (Λ•L*, d) of a Lie algebra.
//
// Sign convention: for a 1-form a, (da)(X, Y) = -a([X, Y]), so that
//   d x^m = -sum_{i<j} C_ij^m x^i ∧ x^j,
// extended to higher degrees as an odd derivation. Monomials are increasing
// index tuples in lexicographic order.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "nilqp/exact.hpp"
#include "nilqp/lie.hpp"

namespace nilqp {

struct Bigrading;

/// Lexicographically ordered k-subsets of {0..n-1}.
class ExteriorBasis {
 public:
  ExteriorBasis(std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t degree() const { return k_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<std::size_t>& monomial(std::size_t idx) const { return monomials_[idx]; }
  /// Position of the monomial with the given bitmask, or npos.
  std::size_t index_of_mask(std::uint32_t mask) const;
  std::uint32_t mask(std::size_t idx) const { return masks_[idx]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t n_, k_;
  std::vector<std::vector<std::size_t>> monomials_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::size_t> index_;  ///< indexed by mask
};

/// Matrix of d: Λ^k → Λ^{k+1}; rows index (k+1)-monomials, columns k-monomials.
/// Throws InputError("DegreeOutOfRange") unless 0 <= k <= dim.
Matrix ce_differential(const LieAlgebra& l, std::size_t k);
/// Same matrix from raw structure constants, without validation, so that
/// d∘d can be inspected for data that fails Jacobi.
Matrix ce_differential(const AlgebraData& d, std::size_t k);

using Bidegree = std::pair<int, int>;
using GradedKey = std::tuple<std::size_t, int, int>;  ///< (j, p, q)

struct CohomologyTable {
  std::vector<std::size_t> betti;
  std::optional<std::map<GradedKey, std::size_t>> by_bidegree;
  /// degree -> representative cocycles (coordinates in ExteriorBasis(n, degree))
  std::optional<std::map<std::size_t, std::vector<Vector>>> representatives;
};

CohomologyTable betti_numbers(const LieAlgebra& l, bool with_representatives = false);

/// Refines cohomology by the bidegrees of a bracket-compatible grading.
/// Basis vectors of bidegree (p, q) have duals of bidegree (-p, -q).
/// Throws InvariantViolation("GradingNotCompatible") if d mixes bidegrees.
CohomologyTable bigraded_cohomology(const LieAlgebra& l, const Bigrading& g);

/// (s, t) = (sum -p dim L_{p,q}, sum -q dim L_{p,q}); checks that the top
/// cohomology sits there. Throws InvariantViolation("TopClassMisplaced").
Bidegree top_class_bidegree(const LieAlgebra& l, const Bigrading& g);

}  // namespace nilqp
