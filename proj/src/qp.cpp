#include "nilqp/qp.hpp"

#include <algorithm>

#include "nilqp/catalog.hpp"
#include "nilqp/error.hpp"

namespace nilqp {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Obstructed: return "Obstructed";
    case VerdictStatus::BigradingExhibited: return "BigradingExhibited";
    case VerdictStatus::PassesNecessaryConditions: break;
  }
  return "PassesNecessaryConditions";
}

namespace {

Bigrading weight_two_grading(const LieAlgebra& l) {
  Bigrading g;
  if (l.dim() == 0) return g;
  BigradingComponent c{-1, -1, {}};
  for (std::size_t r = 0; r < l.dim(); ++r) c.generators.push_back(Matrix::identity(l.dim()).row_vector(r));
  g.components.push_back(std::move(c));
  return g;
}

}  // namespace

Verdict check(const NilmanifoldSpec& spec, const SearchBounds& bounds) {
  const LieAlgebra& l = spec.algebra;
  if (l.field() == Field::Qi && !l.real_structure())
    throw InputError("NotLatticeAdmissible",
                     "'" + l.name() + "' is over Q(i) with no real structure, so no rational real form is known");
  Verdict v;
  v.m = spec.m;
  v.b1 = first_betti(l);
  auto lcs = lower_central_series(l);

  if (spec.m == 0) {
    VerdictReason r{"compact", is_abelian(l), {{"nilpotency_class", static_cast<long>(lcs.nilpotency_class)}},
                    "compact nilmanifolds are quasi-projective exactly when abelian"};
    v.reasons.push_back(r);
    if (r.passed) {
      v.status = VerdictStatus::BigradingExhibited;
      v.bigrading = weight_two_grading(l);
    } else {
      v.status = VerdictStatus::Obstructed;
    }
    return v;
  }

  VerdictReason cls{"class", lcs.nilpotency_class <= 2,
                    {{"nilpotency_class", static_cast<long>(lcs.nilpotency_class)}},
                    "a grading of the required kind forces nilpotency class at most two"};
  v.reasons.push_back(cls);
  if (!cls.passed) {
    v.status = VerdictStatus::Obstructed;
    return v;
  }

  SearchOutcome out = search_bigrading(l, bounds);
  v.bounds = bounds;
  if (out.status == SearchStatus::Obstructed && out.reason == "class")
    throw InvariantViolation("ClassMismatch", "search disagrees with the lower central series");

  VerdictReason parity{"parity", out.status != SearchStatus::Obstructed,
                       {{"k", out.witness["k"]},
                        {"b1_core", out.witness["b1_core"]},
                        {"core_dim", static_cast<long>(l.dim()) - out.witness["k"]}},
                       "b1 of the core left after removing the maximal abelian factor must be even"};
  v.reasons.push_back(parity);
  if (!parity.passed) {
    v.status = VerdictStatus::Obstructed;
    return v;
  }

  VerdictReason search{"search", out.status == SearchStatus::Found,
                       {{"nodes_explored", static_cast<long>(out.nodes_explored)},
                        {"depth", static_cast<long>(bounds.depth)},
                        {"node_budget", static_cast<long>(bounds.node_budget)}},
                       out.status == SearchStatus::Found ? "restricted-shape grading found and verified"
                                                         : "no grading within the search bounds; not a proof of absence"};
  v.reasons.push_back(search);
  if (out.status == SearchStatus::Found) {
    v.status = VerdictStatus::BigradingExhibited;
    v.bigrading = std::move(out.bigrading);
  } else {
    v.status = VerdictStatus::PassesNecessaryConditions;
  }
  return v;
}

ClassificationTable reproduce_classification(std::size_t dim, const SearchBounds& bounds) {
  if (dim < 1 || dim > 8)
    throw InputError("DimensionOutOfRange", "classification tables cover dimensions 1 to 8, got " + std::to_string(dim));
  ClassificationTable t;
  t.dim = dim;
  t.catalog_version = catalog::version();
  std::map<std::size_t, ClassificationRow> rows;
  for (const auto& e : catalog::entries()) {
    if (e.algebra.dim() != dim || !e.alternate_of.empty()) continue;
    Verdict v = check({e.algebra, 1}, bounds);
    auto& row = rows[v.b1];
    row.b1 = v.b1;
    switch (v.status) {
      case VerdictStatus::BigradingExhibited: row.exhibited.push_back(e.key); break;
      case VerdictStatus::PassesNecessaryConditions: row.passes.push_back(e.key); break;
      case VerdictStatus::Obstructed: row.obstructed.push_back(e.key); break;
    }
  }
  for (auto& [b1, row] : rows) t.rows.push_back(std::move(row));
  return t;
}

bool diagonal_h1_check(const LieAlgebra& l, const Bigrading& g) {
  for (const auto& c : g.components)
    if (c.p != c.q)
      throw InputError("GradingNotDiagonal", "component (" + std::to_string(c.p) + "," + std::to_string(c.q) +
                                                 ") is off the diagonal");
  if (!verify_bigrading(l, g, VerifyMode::Lax).valid())
    throw InputError("GradingNotVerified", "the grading does not pass verification");
  // The top class sits at (s, s) with s = sum i_j m_j; admissibility needs
  // s <= dim, and s >= dim always, so every component is at (-1, -1).
  long s = 0;
  for (const auto& c : g.components) s += -static_cast<long>(c.p) * static_cast<long>(c.generators.size());
  const bool counting_forces_abelian = s == static_cast<long>(l.dim());
  const bool abelian = is_abelian(l);
  if (counting_forces_abelian != abelian || !counting_forces_abelian)
    throw InvariantViolation("CountingArgument", "diagonal grading with top weight " + std::to_string(s) +
                                                     " on a dimension " + std::to_string(l.dim()) + " algebra");
  return abelian;
}

}  // namespace nilqp
