#pragma once

// Decision pipeline for whether Γ\N × R^m can be a smooth quasi-projective
// variety, as far as the Lie algebra of N can tell.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilqp/lie.hpp"
#include "nilqp/mhs.hpp"

namespace nilqp {

struct NilmanifoldSpec {
  LieAlgebra algebra;
  std::size_t m = 1;  ///< Euclidean factor; only m = 0 changes the criterion
};

enum class VerdictStatus { Obstructed, PassesNecessaryConditions, BigradingExhibited };
std::string to_string(VerdictStatus s);

struct VerdictReason {
  std::string test;  ///< compact | class | parity | search
  bool passed = true;
  std::map<std::string, long> witness;
  std::string note;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::PassesNecessaryConditions;
  std::size_t b1 = 0;
  std::size_t m = 0;
  std::vector<VerdictReason> reasons;
  std::optional<Bigrading> bigrading;
  std::optional<SearchBounds> bounds;  ///< set whenever the search ran
};

/// Runs, in order: nilpotency class, parity of b1 of the abelian-free core,
/// bounded bigrading search. m = 0 uses the compact criterion (abelian only).
/// Throws InputError("NotNilpotent") or InputError("NotLatticeAdmissible")
/// for a Q(i) algebra without a real structure (a real structure makes the
/// fixed-point real form rational, which is what a lattice needs).
Verdict check(const NilmanifoldSpec& spec, const SearchBounds& bounds = {});

struct ClassificationRow {
  std::size_t b1 = 0;
  std::vector<std::string> exhibited;
  std::vector<std::string> passes;
  std::vector<std::string> obstructed;
};

struct ClassificationTable {
  std::size_t dim = 0;
  std::string catalog_version;
  std::vector<ClassificationRow> rows;  ///< ascending b1
};

/// check(m = 1) over every primary catalog entry of the given dimension.
/// Throws InputError("DimensionOutOfRange") outside 1..8.
ClassificationTable reproduce_classification(std::size_t dim, const SearchBounds& bounds = {});

/// For a verified grading with only diagonal components (p, p): returns
/// whether l is abelian, after confirming the weight count that forces it.
/// Throws InputError("GradingNotDiagonal"), InputError("GradingNotVerified")
/// and InvariantViolation("CountingArgument").
bool diagonal_h1_check(const LieAlgebra& l, const Bigrading& g);

}  // namespace nilqp
