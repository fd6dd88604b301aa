#include "nilqp/io.hpp"

#include <fstream>
#include <sstream>

#include "nilqp/error.hpp"

namespace nilqp::io {

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw InputError("MalformedAlgebra", "field '" + path + "': " + what);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

Scalar scalar_at(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) field_error(path, "expected a scalar string such as \"-1/2+3*i\"");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError("MalformedScalar", "field '" + path + "': " + e.what());
  }
}

std::size_t index_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) field_error(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Vector vector_at(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of scalars");
  if (j.size() != n)
    field_error(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_at(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

Json witness_json(const std::map<std::string, long>& w) {
  Json out = Json::object();
  for (const auto& [k, v] : w) out[k] = v;
  return out;
}

Json bounds_json(const SearchBounds& b) {
  Json coeffs = Json::array();
  for (const auto& c : b.coefficients) coeffs.push_back(c.str());
  return Json{{"coefficients", coeffs}, {"depth", b.depth}, {"node_budget", b.node_budget}};
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("IOFailure", "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("IOFailure", "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("IOFailure", "write failed for '" + path.string() + "'");
}

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw InputError("MalformedJson", std::string(source) + ":" + std::to_string(line) + ":" +
                                          std::to_string(col) + ": " +
                                          (pos == std::string::npos ? what : what.substr(pos)));
  }
}

AlgebraData algebra_data_from_json(const Json& j) {
  AlgebraData d;
  const Json& name = member(j, "name", "");
  if (!name.is_string()) field_error("name", "expected a string");
  d.name = name.get<std::string>();

  const Json& field = member(j, "field", "");
  if (field == "Q")
    d.field = Field::Q;
  else if (field == "Qi")
    d.field = Field::Qi;
  else
    field_error("field", "expected \"Q\" or \"Qi\"");

  const Json& basis = member(j, "basis", "");
  if (!basis.is_array()) field_error("basis", "expected an array of names");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].is_string()) field_error("basis[" + std::to_string(i) + "]", "expected a string");
    d.basis.push_back(basis[i].get<std::string>());
  }
  const std::size_t n = d.basis.size();
  if (auto it = j.find("dim"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() != static_cast<long long>(n))
      field_error("dim", "does not match the number of basis names (" + std::to_string(n) + ")");
  }

  const Json& br = member(j, "brackets", "");
  if (!br.is_array()) field_error("brackets", "expected an array");
  for (std::size_t e = 0; e < br.size(); ++e) {
    const std::string path = "brackets[" + std::to_string(e) + "]";
    std::size_t i = index_at(member(br[e], "i", path), path + ".i");
    std::size_t jj = index_at(member(br[e], "j", path), path + ".j");
    if (i >= jj) field_error(path, "requires i < j, got i = " + std::to_string(i) + ", j = " + std::to_string(jj));
    if (jj >= n) field_error(path + ".j", "index " + std::to_string(jj) + " out of range for dim " + std::to_string(n));
    if (d.brackets.count({i, jj})) field_error(path, "pair listed twice");
    const Json& coeffs = member(br[e], "coeffs", path);
    if (!coeffs.is_object()) field_error(path + ".coeffs", "expected an object of index -> scalar");
    SparseVector v;
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
      const std::string cpath = path + ".coeffs." + it.key();
      std::size_t k = 0;
      try {
        std::size_t used = 0;
        k = std::stoul(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        field_error(cpath, "key must be a basis index");
      }
      if (k >= n) field_error(cpath, "index " + std::to_string(k) + " out of range for dim " + std::to_string(n));
      Scalar s = scalar_at(it.value(), cpath);
      if (!s.is_zero()) v[k] = s;
    }
    d.brackets.emplace(std::make_pair(i, jj), std::move(v));
  }

  if (auto it = j.find("real_structure"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != n)
      field_error("real_structure", "expected " + std::to_string(n) + " rows");
    Matrix s(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      Vector row = vector_at((*it)[r], n, "real_structure[" + std::to_string(r) + "]");
      for (std::size_t c = 0; c < n; ++c) s(r, c) = row[c];
    }
    d.real_structure = std::move(s);
  }
  return d;
}

LieAlgebra algebra_from_json(const Json& j) { return LieAlgebra(algebra_data_from_json(j)); }

LieAlgebra parse_algebra(std::string_view text, std::string_view source) {
  return algebra_from_json(parse_json(text, source));
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row_vector(r)));
  return out;
}

Json to_json(const LieAlgebra& l) {
  Json j;
  j["name"] = l.name();
  j["dim"] = l.dim();
  j["field"] = to_string(l.field());
  j["basis"] = l.basis_names();
  Json br = Json::array();
  for (const auto& [ij, v] : l.brackets()) {
    Json coeffs = Json::object();
    for (const auto& [k, s] : v) coeffs[std::to_string(k)] = s.str();
    br.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"coeffs", coeffs}});
  }
  j["brackets"] = br;
  j["real_structure"] = l.real_structure() ? to_json(*l.real_structure()) : Json(nullptr);
  return j;
}

Bigrading bigrading_from_json(const Json& j, std::size_t n) {
  const Json& comps = member(j, "components", "");
  if (!comps.is_array()) field_error("components", "expected an array");
  Bigrading g;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string path = "components[" + std::to_string(c) + "]";
    BigradingComponent comp;
    const Json& p = member(comps[c], "p", path);
    const Json& q = member(comps[c], "q", path);
    if (!p.is_number_integer()) field_error(path + ".p", "expected an integer");
    if (!q.is_number_integer()) field_error(path + ".q", "expected an integer");
    comp.p = p.get<int>();
    comp.q = q.get<int>();
    const Json& gens = member(comps[c], "generators", path);
    if (!gens.is_array()) field_error(path + ".generators", "expected an array of vectors");
    for (std::size_t i = 0; i < gens.size(); ++i)
      comp.generators.push_back(vector_at(gens[i], n, path + ".generators[" + std::to_string(i) + "]"));
    g.components.push_back(std::move(comp));
  }
  return g;
}

Json to_json(const Bigrading& g) {
  Json comps = Json::array();
  for (const auto& c : g.components) {
    Json gens = Json::array();
    for (const auto& v : c.generators) gens.push_back(vector_json(v));
    comps.push_back(Json{{"p", c.p}, {"q", c.q}, {"generators", gens}});
  }
  return Json{{"components", comps}};
}

Matrix matrix_from_json(const Json& j, std::string_view field) {
  if (!j.is_array()) field_error(std::string(field), "expected an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Vector v = vector_at(j[r], cols, std::string(field) + "[" + std::to_string(r) + "]");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[c];
  }
  return m;
}

Json transform_json(const std::string& source, const std::string& target, const Matrix& t) {
  return Json{{"source", source}, {"target", target}, {"matrix", to_json(t)}};
}

Matrix transform_from_json(const Json& j, std::size_t n) {
  const Json& m = j.is_object() ? member(j, "matrix", "") : j;
  Matrix t = matrix_from_json(m, "matrix");
  if (t.rows() != n || t.cols() != n)
    field_error("matrix", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  return t;
}

Json to_json(const CohomologyTable& t) {
  Json j;
  j["betti"] = t.betti;
  if (t.by_bidegree) {
    Json rows = Json::array();
    for (const auto& [key, dim] : *t.by_bidegree)
      rows.push_back(Json{{"j", std::get<0>(key)}, {"p", std::get<1>(key)}, {"q", std::get<2>(key)}, {"dim", dim}});
    j["by_bidegree"] = rows;
  } else {
    j["by_bidegree"] = nullptr;
  }
  if (t.representatives) {
    Json classes = Json::object();
    for (const auto& [deg, vs] : *t.representatives) {
      Json arr = Json::array();
      for (const auto& v : vs) arr.push_back(vector_json(v));
      classes[std::to_string(deg)] = arr;
    }
    j["representatives"] = Json{
        {"convention", "d x^m = -sum_{i<j} C_ij^m x^i ^ x^j; lexicographic monomials"},
        {"classes", classes}};
  } else {
    j["representatives"] = nullptr;
  }
  return j;
}

Json to_json(const GradingReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(Json{{"check", f.check}, {"witness", f.witness}, {"detail", f.detail}});
  return Json{{"valid", r.valid()},
              {"mode", to_string(r.mode)},
              {"well_formed", r.well_formed},
              {"spans", r.spans},
              {"bracket_compatible", r.bracket_compatible},
              {"conjugation", to_string(r.conjugation)},
              {"shape", to_string(r.shape)},
              {"cohomology_support_ok", r.cohomology_support_ok},
              {"support_checked_through", r.support_checked_through},
              {"failures", failures}};
}

Json to_json(const SearchOutcome& o) {
  Json j;
  j["status"] = to_string(o.status);
  j["reason"] = o.reason.empty() ? Json(nullptr) : Json(o.reason);
  j["witness"] = witness_json(o.witness);
  j["bigrading"] = o.bigrading ? to_json(*o.bigrading) : Json(nullptr);
  j["report"] = o.report ? to_json(*o.report) : Json(nullptr);
  j["bounds"] = bounds_json(o.bounds);
  j["nodes_explored"] = o.nodes_explored;
  return j;
}

Json to_json(const Verdict& v) {
  Json reasons = Json::array();
  for (const auto& r : v.reasons) {
    Json rj{{"test", r.test}, {"passed", r.passed}, {"witness", witness_json(r.witness)}};
    if (!r.note.empty()) rj["note"] = r.note;
    reasons.push_back(std::move(rj));
  }
  Json j;
  j["status"] = to_string(v.status);
  j["b1"] = v.b1;
  j["m"] = v.m;
  j["reasons"] = reasons;
  j["bigrading"] = v.bigrading ? to_json(*v.bigrading) : Json(nullptr);
  j["bounds"] = v.bounds ? bounds_json(*v.bounds) : Json(nullptr);
  return j;
}

Json to_json(const ClassificationTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back(Json{{"b1", r.b1},
                        {"BigradingExhibited", r.exhibited},
                        {"PassesNecessaryConditions", r.passes},
                        {"Obstructed", r.obstructed}});
  return Json{{"dim", t.dim}, {"catalog_version", t.catalog_version}, {"rows", rows}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace nilqp::io
