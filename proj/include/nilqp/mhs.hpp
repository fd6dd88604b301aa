#pragma once

// Bigradings of a complexified nilpotent Lie algebra compatible with a mixed
// Hodge structure: representation, verification, the filtration round trip
// and a bounded search for restricted-shape gradings.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilqp/cohomology.hpp"
#include "nilqp/exact.hpp"
#include "nilqp/lie.hpp"

namespace nilqp {

struct BigradingComponent {
  int p = 0;
  int q = 0;
  std::vector<Vector> generators;  ///< coordinates in the algebra's basis
};

struct Bigrading {
  std::vector<BigradingComponent> components;

  std::size_t generator_count() const;
  /// All generators as rows, component by component.
  Matrix generator_matrix(std::size_t n) const;
  std::vector<Bidegree> generator_bidegrees() const;
  const BigradingComponent* find(int p, int q) const;
  Subspace space(int p, int q, std::size_t n) const;  ///< zero when absent
};

/// Same bidegrees carrying the same subspaces (generators may differ).
bool same_splitting(const Bigrading& a, const Bigrading& b, std::size_t n);

/// Components sorted lexicographically by (p, q).
Bigrading sorted(Bigrading g);

/// Weight filtration W_k (increasing) and Hodge filtration F^p (decreasing),
/// stored at their jump points. Between stored indices a filtration is
/// constant; below the first W index it is zero, above the last F index too.
struct FiltrationPair {
  std::size_t ambient = 0;
  std::map<int, Subspace> W;
  std::map<int, Subspace> F;

  Subspace weight(int k) const;
  Subspace hodge(int p) const;
};

enum class Conjugation { Exact, ModLowerWeight, Fails };
enum class Shape { Restricted, General };
enum class VerifyMode { Strict, Lax };

std::string to_string(Conjugation c);
std::string to_string(Shape s);
std::string to_string(VerifyMode m);

struct GradingFailure {
  std::string check;         ///< spans | bidegree | bracket | conjugation | support
  std::vector<int> witness;  ///< bidegrees or (j, p, q), depending on the check
  std::string detail;
};

struct GradingReport {
  VerifyMode mode = VerifyMode::Strict;
  bool well_formed = true;  ///< bidegrees distinct, p, q <= 0, p + q <= -1
  bool spans = false;
  bool bracket_compatible = false;
  Conjugation conjugation = Conjugation::Fails;
  Shape shape = Shape::General;
  bool cohomology_support_ok = false;
  /// Highest cohomological degree whose support was checked.
  std::size_t support_checked_through = 0;
  std::vector<GradingFailure> failures;

  bool valid() const;
};

/// Never throws for a bad grading: every failed clause lands in the report.
/// The support clause covers every degree unless `support_through` caps it
/// (degree 2 is the scope of conditions on 1-minimal models).
/// Throws InputError("MissingRealStructure") for Q(i) algebras without one.
GradingReport verify_bigrading(const LieAlgebra& l, const Bigrading& g,
                               VerifyMode mode = VerifyMode::Strict,
                               std::optional<std::size_t> support_through = std::nullopt);

/// W_k = sum of components with p+q <= k, F^p = sum of components with s >= p.
FiltrationPair filtrations_from_bigrading(const Bigrading& g, std::size_t n);

/// The Deligne splitting V_{p,q} evaluated on the square [-n, 0]^2.
/// Throws InputError("NotAFiltration").
Bigrading bigrading_from_filtrations(const FiltrationPair& fp, const Matrix& real_structure);

struct SearchBounds {
  std::vector<Scalar> coefficients{-1, 0, 1};
  std::size_t depth = 2;
  std::size_t node_budget = 200000;
};

enum class SearchStatus { Obstructed, Found, NotFoundWithinBounds };
std::string to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::NotFoundWithinBounds;
  std::string reason;                       ///< "class" or "parity" when obstructed
  std::map<std::string, long> witness;      ///< nilpotency_class, k, b1_core, ...
  std::optional<Bigrading> bigrading;
  std::optional<GradingReport> report;
  SearchBounds bounds;
  std::size_t nodes_explored = 0;
};

/// Looks for a restricted-shape grading. The (-1,0) part is the -i
/// eigenspace of a complex structure J on a complement of the commutator
/// ideal of the core, with J preserving every bracket 2-form. When all
/// anticommutators in the form-preserving algebra are scalar, J is found
/// exactly as a rational point of a quadric; otherwise J is built one basis
/// vector at a time from bounded integer combinations.
/// Throws InvariantViolation("SearchUnsound") if a hit fails re-verification.
SearchOutcome search_bigrading(const LieAlgebra& l, const SearchBounds& bounds = {});

}  // namespace nilqp
