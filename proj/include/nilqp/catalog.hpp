#pragma once

// Built-in Lie algebras with their known gradings and isomorphisms.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilqp/lie.hpp"
#include "nilqp/mhs.hpp"

namespace nilqp::catalog {

struct Transformation {
  std::string target;  ///< catalog key
  Matrix matrix;       ///< rows: target basis in the source basis
};

struct Entry {
  std::string key;
  std::vector<std::string> aliases;
  LieAlgebra algebra;
  std::vector<Bigrading> bigradings;
  std::vector<Transformation> transformations;
  std::string description;
  /// Stored gradings are only claimed admissible in cohomological degrees
  /// up to this bound; unset means every degree.
  std::optional<std::size_t> support_through;
  /// Another presentation of an algebra already represented by a primary
  /// entry; kept out of classification tables.
  std::string alternate_of;
};

std::string version();

/// All entries, sorted by key.
const std::vector<Entry>& entries();
std::vector<std::string> keys();

/// Accepts keys and aliases. Throws InputError("UnknownKey").
const Entry& get(std::string_view key);

/// Writes <key>.algebra.json, <key>.bigrading.<n>.json (n from 1) and
/// <key>.transform.<target>.json. Returns the paths written.
/// Throws InputError("UnknownKey") or InputError("IOFailure").
std::vector<std::filesystem::path> export_entry(std::string_view key, const std::filesystem::path& dir);

}  // namespace nilqp::catalog
