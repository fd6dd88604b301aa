#pragma once

// JSON interchange for algebras, gradings, transformations and results.
// Parse errors are InputError values naming the line/column or field path.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nilqp/cohomology.hpp"
#include "nilqp/lie.hpp"
#include "nilqp/mhs.hpp"
#include "nilqp/qp.hpp"

namespace nilqp::io {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Syntax check with line:col diagnostics.
Json parse_json(std::string_view text, std::string_view source = "<input>");

/// Raw, unvalidated algebra data.
AlgebraData algebra_data_from_json(const Json& j);
/// Also validates; JacobiViolation and friends propagate.
LieAlgebra algebra_from_json(const Json& j);
LieAlgebra parse_algebra(std::string_view text, std::string_view source = "<input>");
Json to_json(const LieAlgebra& l);

Bigrading bigrading_from_json(const Json& j, std::size_t n);
Json to_json(const Bigrading& g);

Matrix matrix_from_json(const Json& j, std::string_view field);
Json to_json(const Matrix& m);
Json vector_json(const Vector& v);

Json transform_json(const std::string& source, const std::string& target, const Matrix& t);
Matrix transform_from_json(const Json& j, std::size_t n);

Json to_json(const CohomologyTable& t);
Json to_json(const GradingReport& r);
Json to_json(const SearchOutcome& o);
Json to_json(const Verdict& v);
Json to_json(const ClassificationTable& t);

/// Serialized form used for files: two-space indentation and a final newline.
std::string dump(const Json& j);

}  // namespace nilqp::io
