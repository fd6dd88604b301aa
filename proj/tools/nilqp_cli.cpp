// nilqp: command-line front end.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilqp/catalog.hpp"
#include "nilqp/cohomology.hpp"
#include "nilqp/error.hpp"
#include "nilqp/io.hpp"
#include "nilqp/mhs.hpp"
#include "nilqp/qp.hpp"

using namespace nilqp;

namespace {

struct Options {
  std::string format = "text";
  bool seedless = false;
  std::string file;
  std::string grading_file;
  std::string mode = "strict";
  std::optional<std::size_t> support_through;
  std::size_t m = 1;
  std::string coeffs = "-1,0,1";
  std::size_t depth = 2;
  bool representatives = false;
  std::string key;
  std::string dir;
  std::size_t dim = 0;
};

bool json_out(const Options& o) { return o.format == "json"; }

LieAlgebra load_algebra(const std::string& path) { return io::parse_algebra(io::read_file(path), path); }

std::string witness_text(const std::map<std::string, long>& w) {
  std::string s;
  for (const auto& [k, v] : w) s += (s.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return s;
}

std::string vector_text(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

void print_grading(std::ostream& os, const Bigrading& g) {
  for (const auto& c : g.components) {
    os << "  (" << c.p << "," << c.q << "):";
    for (const auto& v : c.generators) os << " " << vector_text(v);
    os << "\n";
  }
}

void print_report(std::ostream& os, const GradingReport& r) {
  os << "valid: " << (r.valid() ? "yes" : "no") << "\n"
     << "mode: " << to_string(r.mode) << "\n"
     << "spans: " << (r.spans ? "yes" : "no") << "\n"
     << "bracket compatible: " << (r.bracket_compatible ? "yes" : "no") << "\n"
     << "conjugation: " << to_string(r.conjugation) << "\n"
     << "shape: " << to_string(r.shape) << "\n"
     << "cohomology support: " << (r.cohomology_support_ok ? "ok" : "fails")
     << " (degrees 1.." << r.support_checked_through << ")\n";
  for (const auto& f : r.failures) {
    os << "failure " << f.check << " [";
    for (std::size_t i = 0; i < f.witness.size(); ++i) os << (i ? " " : "") << f.witness[i];
    os << "]: " << f.detail << "\n";
  }
}

SearchBounds parse_bounds(const Options& o) {
  SearchBounds b;
  b.coefficients.clear();
  std::stringstream ss(o.coeffs);
  std::string item;
  while (std::getline(ss, item, ',')) b.coefficients.push_back(Scalar::parse(item));
  if (b.coefficients.empty()) throw InputError("MalformedBounds", "--coeffs needs at least one value");
  b.depth = o.depth;
  return b;
}

int cmd_validate(const Options& o, std::ostream& os) {
  LieAlgebra l = load_algebra(o.file);
  ValidationReport r = validate(l);
  if (json_out(o)) {
    os << io::dump(io::Json{{"name", l.name()},
                            {"valid", true},
                            {"jacobi_ok", r.jacobi_ok},
                            {"real_structure_ok", r.real_structure_ok},
                            {"lattice_admissible", r.lattice_admissible},
                            {"triples_checked", r.triples_checked}});
  } else {
    os << l.name() << ": valid\n"
       << "jacobi: ok (" << r.triples_checked << " triples)\n"
       << "real structure: " << (l.real_structure() ? "ok" : "none") << "\n"
       << "lattice admissible: " << (r.lattice_admissible ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_cohomology(const Options& o, std::ostream& os) {
  LieAlgebra l = load_algebra(o.file);
  CohomologyTable t = betti_numbers(l, o.representatives);
  if (!o.grading_file.empty()) {
    Bigrading g = io::bigrading_from_json(io::parse_json(io::read_file(o.grading_file), o.grading_file), l.dim());
    GradingReport rep = verify_bigrading(l, g, VerifyMode::Lax);
    if (!rep.bracket_compatible || !rep.spans)
      throw InputError("GradingNotCompatible", "the grading is not a bracket-compatible basis splitting");
    t.by_bidegree = bigraded_cohomology(l, g).by_bidegree;
  }
  if (json_out(o)) {
    os << io::dump(io::to_json(t));
    return 0;
  }
  os << "betti:";
  for (auto b : t.betti) os << " " << b;
  os << "\n";
  if (t.by_bidegree)
    for (const auto& [key, dim] : *t.by_bidegree)
      os << "H^" << std::get<0>(key) << "_(" << std::get<1>(key) << "," << std::get<2>(key) << ") = " << dim << "\n";
  if (t.representatives)
    for (const auto& [deg, vs] : *t.representatives)
      for (const auto& v : vs) os << "class in degree " << deg << ": " << vector_text(v) << "\n";
  return 0;
}

int cmd_check(const Options& o, std::ostream& os) {
  LieAlgebra l = load_algebra(o.file);
  Verdict v = check({l, o.m});
  if (json_out(o)) {
    os << io::dump(io::to_json(v));
    return 0;
  }
  os << "status: " << to_string(v.status) << "\n"
     << "b1: " << v.b1 << "\n"
     << "m: " << v.m << "\n";
  for (const auto& r : v.reasons)
    os << "test " << r.test << ": " << (r.passed ? "passed" : "failed") << " (" << witness_text(r.witness) << ")"
       << (r.note.empty() ? "" : "; " + r.note) << "\n";
  if (v.bigrading) {
    os << "bigrading:\n";
    print_grading(os, *v.bigrading);
  }
  return 0;
}

int cmd_verify(const Options& o, std::ostream& os) {
  LieAlgebra l = load_algebra(o.file);
  Bigrading g = io::bigrading_from_json(io::parse_json(io::read_file(o.grading_file), o.grading_file), l.dim());
  GradingReport r = verify_bigrading(l, g, o.mode == "lax" ? VerifyMode::Lax : VerifyMode::Strict,
                                     o.support_through);
  if (json_out(o))
    os << io::dump(io::to_json(r));
  else
    print_report(os, r);
  return 0;
}

int cmd_search(const Options& o, std::ostream& os) {
  LieAlgebra l = load_algebra(o.file);
  SearchOutcome out = search_bigrading(l, parse_bounds(o));
  if (json_out(o)) {
    os << io::dump(io::to_json(out));
    return 0;
  }
  os << "outcome: " << to_string(out.status) << "\n";
  if (!out.reason.empty()) os << "reason: " << out.reason << "\n";
  os << "witness: " << witness_text(out.witness) << "\n"
     << "nodes explored: " << out.nodes_explored << "\n";
  if (out.bigrading) {
    os << "bigrading:\n";
    print_grading(os, *out.bigrading);
  }
  return 0;
}

int cmd_catalog_list(const Options& o, std::ostream& os) {
  if (json_out(o)) {
    io::Json arr = io::Json::array();
    for (const auto& e : catalog::entries())
      arr.push_back(io::Json{{"key", e.key},
                             {"dim", e.algebra.dim()},
                             {"field", to_string(e.algebra.field())},
                             {"aliases", e.aliases},
                             {"alternate_of", e.alternate_of.empty() ? io::Json(nullptr) : io::Json(e.alternate_of)}});
    os << io::dump(io::Json{{"version", catalog::version()}, {"entries", arr}});
    return 0;
  }
  for (const auto& e : catalog::entries()) os << e.key << "\t" << e.algebra.dim() << "\t" << e.description << "\n";
  return 0;
}

int cmd_catalog_show(const Options& o, std::ostream& os) {
  const auto& e = catalog::get(o.key);
  if (json_out(o)) {
    io::Json gradings = io::Json::array();
    for (const auto& g : e.bigradings) gradings.push_back(io::to_json(g));
    io::Json transforms = io::Json::array();
    for (const auto& t : e.transformations) transforms.push_back(io::transform_json(e.key, t.target, t.matrix));
    os << io::dump(io::Json{{"key", e.key},
                            {"aliases", e.aliases},
                            {"description", e.description},
                            {"alternate_of", e.alternate_of.empty() ? io::Json(nullptr) : io::Json(e.alternate_of)},
                            {"algebra", io::to_json(e.algebra)},
                            {"bigradings", gradings},
                            {"transformations", transforms}});
    return 0;
  }
  const auto& l = e.algebra;
  os << e.key << ": " << e.description << "\n"
     << "field: " << to_string(l.field()) << ", dim " << l.dim() << "\n";
  for (const auto& [ij, v] : l.brackets()) {
    os << "  [" << l.basis_names()[ij.first] << ", " << l.basis_names()[ij.second] << "] =";
    bool first = true;
    for (const auto& [k, c] : v) {
      os << (first ? " " : " + ") << "(" << c.str() << ")" << l.basis_names()[k];
      first = false;
    }
    os << "\n";
  }
  for (std::size_t i = 0; i < e.bigradings.size(); ++i) {
    os << "bigrading " << i + 1 << ":\n";
    print_grading(os, e.bigradings[i]);
  }
  for (const auto& t : e.transformations) os << "transformation to " << t.target << "\n";
  return 0;
}

int cmd_catalog_export(const Options& o, std::ostream& os) {
  auto paths = catalog::export_entry(o.key, o.dir);
  if (json_out(o)) {
    io::Json arr = io::Json::array();
    for (const auto& p : paths) arr.push_back(p.string());
    os << io::dump(io::Json{{"written", arr}});
  } else {
    for (const auto& p : paths) os << p.string() << "\n";
  }
  return 0;
}

int cmd_report(const Options& o, std::ostream& os) {
  ClassificationTable t = reproduce_classification(o.dim);
  if (json_out(o)) {
    os << io::dump(io::to_json(t));
    return 0;
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s.empty() ? std::string("-") : s;
  };
  os << "dimension " << t.dim << " (catalog " << t.catalog_version << ")\n";
  for (const auto& r : t.rows)
    os << "b1 = " << r.b1 << ": exhibited " << join(r.exhibited) << "; passes " << join(r.passes)
       << "; obstructed " << join(r.obstructed) << "\n";
  return 0;
}

void emit_error(const Options& o, const std::string& kind, const std::string& message) {
  if (json_out(o))
    std::cout << io::dump(io::Json{{"error", io::Json{{"kind", kind}, {"message", message}}}});
  else
    std::cerr << "error (" << kind << "): " << message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology and quasi-projectivity checks for nilpotent Lie algebras"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--seedless", o.seedless, "Deterministic output (always on)");

  auto* validate_cmd = app.add_subcommand("validate", "Check Jacobi and the real structure");
  validate_cmd->add_option("file", o.file, "Algebra JSON")->required();

  auto* coh = app.add_subcommand("cohomology", "Betti numbers, optionally by bidegree");
  coh->add_option("file", o.file, "Algebra JSON")->required();
  coh->add_option("--bigrading", o.grading_file, "Bigrading JSON");
  coh->add_flag("--representatives", o.representatives, "Print representative cocycles");

  auto* chk = app.add_subcommand("check", "Run the necessary-condition pipeline");
  chk->add_option("file", o.file, "Algebra JSON")->required();
  chk->add_option("--m", o.m, "Euclidean factor dimension");

  auto* ver = app.add_subcommand("bigrading-verify", "Verify a bigrading");
  ver->add_option("file", o.file, "Algebra JSON")->required();
  ver->add_option("grading", o.grading_file, "Bigrading JSON")->required();
  ver->add_option("--mode", o.mode, "strict or lax")->check(CLI::IsMember({"strict", "lax"}));
  ver->add_option("--support-through", o.support_through, "Check cohomology support up to this degree only");

  auto* srch = app.add_subcommand("bigrading-search", "Bounded search for a restricted-shape bigrading");
  srch->add_option("file", o.file, "Algebra JSON")->required();
  srch->add_option("--coeffs", o.coeffs, "Comma-separated coefficient set");
  srch->add_option("--depth", o.depth, "Maximum number of combined directions");

  auto* cat = app.add_subcommand("catalog", "Built-in algebras");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List catalog keys");
  auto* cat_show = cat->add_subcommand("show", "Show an entry");
  cat_show->add_option("key", o.key, "Catalog key or alias")->required();
  auto* cat_export = cat->add_subcommand("export", "Write an entry and its sidecars");
  cat_export->add_option("key", o.key, "Catalog key or alias")->required();
  cat_export->add_option("dir", o.dir, "Output directory")->required();

  auto* rep = app.add_subcommand("report", "Classification table for one dimension");
  rep->add_option("--dim", o.dim, "Dimension 1..8")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(o, "UsageError", e.what());
    return 1;
  }

  try {
    std::ostringstream out;
    int code = 0;
    if (*validate_cmd) code = cmd_validate(o, out);
    else if (*coh) code = cmd_cohomology(o, out);
    else if (*chk) code = cmd_check(o, out);
    else if (*ver) code = cmd_verify(o, out);
    else if (*srch) code = cmd_search(o, out);
    else if (*cat_list) code = cmd_catalog_list(o, out);
    else if (*cat_show) code = cmd_catalog_show(o, out);
    else if (*cat_export) code = cmd_catalog_export(o, out);
    else if (*rep) code = cmd_report(o, out);
    std::cout << out.str();
    return code;
  } catch (const InputError& e) {
    emit_error(o, e.kind(), e.what());
    return 1;
  } catch (const InvariantViolation& e) {
    emit_error(o, e.kind(), e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error(o, "InternalError", e.what());
    return 2;
  }
}
