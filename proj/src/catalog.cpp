#include "nilqp/catalog.hpp"

#include <algorithm>
#include <initializer_list>

#include "nilqp/error.hpp"
#include "nilqp/io.hpp"

namespace nilqp::catalog {

namespace {

using Coeffs = std::vector<std::pair<std::size_t, const char*>>;  // 1-based index, scalar text

struct Br {
  std::size_t i, j;  // 1-based
  Coeffs out;
};

Vector vec(std::size_t n, const Coeffs& c) {
  Vector v(n);
  for (const auto& [k, s] : c) v[k - 1] += Scalar::parse(s);
  return v;
}

Vector unit(std::size_t n, std::size_t k) { return vec(n, {{k, "1"}}); }

LieAlgebra make(std::string name, Field field, std::vector<std::string> basis, const std::vector<Br>& br,
                std::optional<Matrix> s = std::nullopt) {
  AlgebraData d;
  d.name = std::move(name);
  d.field = field;
  const std::size_t n = basis.size();
  d.basis = std::move(basis);
  for (const auto& b : br) {
    SparseVector v;
    for (const auto& [k, c] : b.out) v[k - 1] += Scalar::parse(c);
    d.brackets[{b.i - 1, b.j - 1}] = v;
  }
  if (field == Field::Qi) d.real_structure = s ? *s : Matrix::identity(n);
  return LieAlgebra(std::move(d));
}

// Real structure from the images of the basis vectors: column j is conj(e_j).
Matrix conjugation_from_columns(std::size_t n, const std::vector<Coeffs>& images) {
  Matrix s(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector c = vec(n, images[j]);
    for (std::size_t r = 0; r < n; ++r) s(r, j) = c[r];
  }
  return s;
}

BigradingComponent comp(int p, int q, std::vector<Vector> gens) { return {p, q, std::move(gens)}; }

Bigrading all_weight_two(std::size_t n) {
  std::vector<Vector> gens;
  for (std::size_t k = 1; k <= n; ++k) gens.push_back(unit(n, k));
  Bigrading g;
  if (n > 0) g.components.push_back(comp(-1, -1, std::move(gens)));
  return g;
}

Bigrading from_units(std::size_t n, std::initializer_list<std::pair<Bidegree, std::vector<std::size_t>>> parts) {
  Bigrading g;
  for (const auto& [deg, idx] : parts) {
    std::vector<Vector> gens;
    for (auto k : idx) gens.push_back(unit(n, k));
    g.components.push_back(comp(deg.first, deg.second, std::move(gens)));
  }
  return g;
}

// Direct sum of gradings: components with equal bidegree are merged.
Bigrading sum_grading(const Bigrading& a, std::size_t na, const Bigrading& b, std::size_t nb) {
  Bigrading g;
  auto place = [&](int p, int q, Vector v) {
    for (auto& c : g.components)
      if (c.p == p && c.q == q) {
        c.generators.push_back(std::move(v));
        return;
      }
    g.components.push_back(comp(p, q, {std::move(v)}));
  };
  for (const auto& c : a.components)
    for (const auto& v : c.generators) {
      Vector w(na + nb);
      std::copy(v.begin(), v.end(), w.begin());
      place(c.p, c.q, std::move(w));
    }
  for (const auto& c : b.components)
    for (const auto& v : c.generators) {
      Vector w(na + nb);
      std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(na));
      place(c.p, c.q, std::move(w));
    }
  return sorted(std::move(g));
}

struct Builder {
  std::vector<Entry> out;

  Entry& add(std::string key, LieAlgebra l, std::string description) {
    out.push_back(Entry{std::move(key), {}, std::move(l), {}, {}, std::move(description), std::nullopt, {}});
    return out.back();
  }
  const Entry& find(const std::string& key) const {
    for (const auto& e : out)
      if (e.key == key) return e;
    throw InvariantViolation("CatalogBuild", "missing entry " + key);
  }
};

LieAlgebra heisenberg(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back("X" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i) names.push_back("Y" + std::to_string(i));
  names.push_back("Z");
  std::vector<Br> br;
  for (std::size_t i = 1; i <= k; ++i) br.push_back({i, k + i, {{2 * k + 1, "1"}}});
  return make("n" + std::to_string(2 * k + 1), Field::Q, names, br);
}

// (-1,0) spanned by X_j + i Y_j, its conjugate at (0,-1), Z at (-1,-1).
Bigrading heisenberg_grading(std::size_t k) {
  const std::size_t n = 2 * k + 1;
  std::vector<Vector> hol, anti;
  for (std::size_t j = 1; j <= k; ++j) {
    hol.push_back(vec(n, {{j, "1"}, {k + j, "i"}}));
    anti.push_back(vec(n, {{j, "1"}, {k + j, "-i"}}));
  }
  Bigrading g;
  g.components = {comp(-1, 0, hol), comp(0, -1, anti), comp(-1, -1, {unit(n, n)})};
  return g;
}

LieAlgebra filiform(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  std::vector<Br> br;
  for (std::size_t i = 2; i < n; ++i) br.push_back({1, i, {{i + 1, "1"}}});
  return make("filiform_" + std::to_string(n), Field::Q, names, br);
}

std::vector<std::string> numbered(const char* stem, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

// Grading of an algebra over Q whose (-1,0) part is spanned by `hol`, with
// the complex conjugates at (0,-1) and `middle` at (-1,-1).
Bigrading hodge_split(std::vector<Vector> hol, std::vector<Vector> middle) {
  std::vector<Vector> anti;
  for (const auto& v : hol) anti.push_back(conj(v));
  Bigrading g;
  g.components = {comp(-1, 0, std::move(hol)), comp(0, -1, std::move(anti)), comp(-1, -1, std::move(middle))};
  return g;
}

void add_abelian(Builder& b) {
  for (std::size_t n = 1; n <= 8; ++n) {
    LieAlgebra a = LieAlgebra::abelian(n).renamed("abelian_" + std::to_string(n));
    auto& e = b.add("abelian_" + std::to_string(n), a, "abelian algebra of dimension " + std::to_string(n));
    e.aliases = {"R^" + std::to_string(n), "C^" + std::to_string(n)};
    e.bigradings.push_back(all_weight_two(n));
  }
}

void add_heisenberg(Builder& b) {
  for (std::size_t k = 1; k <= 3; ++k) {
    const std::string key = "n" + std::to_string(2 * k + 1);
    auto& e = b.add(key, heisenberg(k), "Heisenberg algebra of dimension " + std::to_string(2 * k + 1));
    e.aliases = {"heisenberg_" + std::to_string(2 * k + 1), "n_" + std::to_string(2 * k + 1)};
    e.bigradings.push_back(heisenberg_grading(k));
  }
}

void add_filiform(Builder& b) {
  for (std::size_t n = 3; n <= 5; ++n) {
    auto& e = b.add("filiform_" + std::to_string(n), filiform(n),
                    "filiform algebra [X1, Xi] = X(i+1) of dimension " + std::to_string(n));
    if (n == 3) {
      e.alternate_of = "n3";
      e.bigradings.push_back(hodge_split({vec(3, {{1, "1"}, {2, "i"}})}, {unit(3, 3)}));
    }
  }
  b.add("L5_parity_counterexample",
        make("L5_parity_counterexample", Field::Q, numbered("x", 5), {{1, 2, {{4, "1"}}}, {1, 3, {{5, "1"}}}}),
        "two-step algebra with center equal to the commutator ideal and odd first Betti number");
}

void add_seven(Builder& b) {
  const auto names = numbered("X", 7);
  LieAlgebra n142 = make("n7_142", Field::Q, names,
                         {{1, 3, {{2, "1"}}}, {1, 5, {{4, "1"}}}, {1, 7, {{6, "1"}}},
                          {3, 5, {{4, "1"}}}, {5, 7, {{2, "1"}}}});
  LieAlgebra n143 = make("n7_143", Field::Q, names,
                         {{1, 3, {{2, "1"}}}, {1, 5, {{4, "1"}}}, {1, 7, {{6, "1"}}},
                          {3, 5, {{6, "1"}}}, {5, 7, {{2, "1"}}}});

  // Complex bases taking each algebra to its two-step normal form.
  Vector d1 = vec(7, {{7, "-1"}, {1, "i"}, {3, "-i"}}), d2 = vec(7, {{3, "1"}, {5, "-i"}});
  Matrix t142 = Matrix::from_rows(7, {d1, d2, conj(d1), conj(d2), vec(7, {{6, "-2*i"}}), vec(7, {{2, "2*i"}}),
                                      vec(7, {{4, "2*i"}})});
  Vector b1 = vec(7, {{3, "1"}, {7, "i"}}), b2 = vec(7, {{1, "1"}, {5, "-i"}});
  Matrix t143 = Matrix::from_rows(7, {b1, b2, conj(b2), conj(b1), vec(7, {{2, "-2"}, {6, "-2*i"}}),
                                      vec(7, {{2, "2"}, {6, "-2*i"}}), vec(7, {{4, "2*i"}})});

  auto& e142 = b.add("n7_142", n142, "seven-dimensional two-step algebra with b1 = 4 (first of two)");
  e142.aliases = {"n_7^{142}"};
  e142.transformations.push_back({"37D", t142});
  e142.bigradings.push_back(Bigrading{{comp(-1, 0, {t142.row_vector(0), t142.row_vector(1)}),
                                       comp(0, -1, {t142.row_vector(2), t142.row_vector(3)}),
                                       comp(-1, -1, {t142.row_vector(4), t142.row_vector(5), t142.row_vector(6)})}});

  auto& e143 = b.add("n7_143", n143, "seven-dimensional two-step algebra with b1 = 4 (second of two)");
  e143.aliases = {"n_7^{143}"};
  e143.transformations.push_back({"37B", t143});
  e143.bigradings.push_back(Bigrading{{comp(-1, 0, {t143.row_vector(0), t143.row_vector(2)}),
                                       comp(0, -1, {t143.row_vector(1), t143.row_vector(3)}),
                                       comp(-1, -1, {t143.row_vector(4), t143.row_vector(5), t143.row_vector(6)})}});

  // The images of n7_142 and n7_143 under the maps above, with the
  // conjugation they inherit. Checked against the maps by the test suite.
  const auto enames = numbered("e", 7);
  Matrix s37d = conjugation_from_columns(
      7, {{{3, "1"}}, {{4, "1"}}, {{1, "1"}}, {{2, "1"}}, {{5, "-1"}}, {{6, "-1"}}, {{7, "-1"}}});
  LieAlgebra a37d = make("37D", Field::Qi, enames,
                         {{1, 3, {{5, "1"}}}, {1, 4, {{6, "1"}}}, {2, 3, {{6, "1"}}}, {2, 4, {{7, "1"}}}}, s37d);
  Matrix s37b = conjugation_from_columns(
      7, {{{4, "1"}}, {{3, "1"}}, {{2, "1"}}, {{1, "1"}}, {{6, "-1"}}, {{5, "-1"}}, {{7, "-1"}}});
  LieAlgebra a37b = make("37B", Field::Qi, enames,
                         {{1, 2, {{5, "1"}}}, {2, 3, {{7, "1"}}}, {3, 4, {{6, "1"}}}}, s37b);

  // Relabelings onto the standard normal forms.
  Matrix to_d = Matrix::from_rows(7, {unit(7, 1), unit(7, 4), unit(7, 3), vec(7, {{2, "-1"}}), unit(7, 6),
                                      unit(7, 5), unit(7, 7)});
  Matrix to_b = Matrix::from_rows(7, {unit(7, 1), unit(7, 2), unit(7, 3), unit(7, 4), unit(7, 5), unit(7, 7),
                                      unit(7, 6)});

  auto& d = b.add("37D", a37d, "complex normal form of n7_142");
  d.aliases = {"(37D)"};
  d.alternate_of = "n7_142";
  d.bigradings.push_back(from_units(7, {{{-1, 0}, {1, 2}}, {{0, -1}, {3, 4}}, {{-1, -1}, {5, 6, 7}}}));
  d.transformations.push_back({"37D_std", to_d});

  auto& bb = b.add("37B", a37b, "complex normal form of n7_143");
  bb.aliases = {"(37B)"};
  bb.alternate_of = "n7_143";
  bb.bigradings.push_back(from_units(7, {{{-1, 0}, {1, 3}}, {{0, -1}, {2, 4}}, {{-1, -1}, {5, 6, 7}}}));
  bb.transformations.push_back({"37B_std", to_b});

  auto& ds = b.add("37D_std",
                   make("37D_std", Field::Q, enames,
                        {{1, 2, {{5, "1"}}}, {3, 4, {{5, "1"}}}, {1, 3, {{6, "1"}}}, {2, 4, {{7, "1"}}}}),
                   "standard normal form [e1,e2]=e5=[e3,e4], [e1,e3]=e6, [e2,e4]=e7 over Q");
  ds.alternate_of = "n7_142";
  auto& bs = b.add("37B_std",
                   make("37B_std", Field::Q, enames, {{1, 2, {{5, "1"}}}, {2, 3, {{6, "1"}}}, {3, 4, {{7, "1"}}}}),
                   "standard normal form [e1,e2]=e5, [e2,e3]=e6, [e3,e4]=e7 over Q; a different real form");
  bs.alternate_of = "n7_143";
}

void add_eight(Builder& b) {
  // N_1^{8,4} over Q(i): conj swaps X_k with Xbar_k and sends Z1, Z4 to
  // their negatives, Z2 to -Z3.
  Matrix s84 = conjugation_from_columns(
      8, {{{3, "1"}}, {{4, "1"}}, {{1, "1"}}, {{2, "1"}}, {{5, "-1"}}, {{7, "-1"}}, {{6, "-1"}}, {{8, "-1"}}});
  LieAlgebra n84 = make("N1_84", Field::Qi, {"X1", "X2", "Xb1", "Xb2", "Z1", "Z2", "Z3", "Z4"},
                        {{1, 3, {{5, "1"}}}, {1, 4, {{6, "1"}}}, {2, 3, {{7, "1"}}}, {2, 4, {{8, "1"}}}}, s84);
  auto& e84 = b.add("N1_84", n84, "eight-dimensional two-step algebra with b1 = 4, complex presentation");
  e84.aliases = {"N_1^{8,4}"};
  e84.bigradings.push_back(from_units(8, {{{-1, 0}, {1, 2}}, {{0, -1}, {3, 4}}, {{-1, -1}, {5, 6, 7, 8}}}));

  struct Spec82 {
    const char* key;
    std::vector<Br> br;
    std::vector<Coeffs> hol;
  };
  const std::vector<Spec82> specs = {
      {"N1_82",
       {{1, 2, {{7, "1"}}}, {3, 4, {{8, "1"}}}, {5, 6, {{7, "1"}, {8, "1"}}}},
       {{{1, "1"}, {2, "i"}}, {{3, "1"}, {4, "i"}}, {{5, "1"}, {6, "i"}}}},
      {"N2_82",
       {{1, 2, {{7, "1"}}}, {4, 5, {{7, "1"}}}, {1, 3, {{8, "1"}}}, {4, 6, {{8, "1"}}}},
       {{{1, "1"}, {4, "i"}}, {{3, "1"}, {6, "i"}}, {{5, "-1"}, {2, "i"}}}},
      {"N3_82",
       {{1, 2, {{7, "1"}}}, {4, 5, {{7, "1"}}}, {3, 4, {{8, "1"}}}, {5, 6, {{8, "1"}}}},
       {{{1, "1"}, {2, "i"}}, {{3, "1"}, {6, "i"}}, {{5, "1"}, {4, "i"}}}},
      {"N4_82",
       {{1, 2, {{7, "1"}}}, {3, 4, {{7, "1"}}}, {5, 6, {{7, "1"}}}, {4, 5, {{8, "1"}}}},
       {{{1, "1"}, {2, "i"}}, {{3, "1"}, {6, "i"}}, {{5, "1"}, {4, "i"}}}},
      {"N5_82",
       {{1, 2, {{7, "1"}}}, {3, 4, {{7, "1"}}}, {5, 6, {{7, "1"}}}, {4, 5, {{8, "1"}}}, {2, 3, {{8, "1"}}}},
       {{{1, "1"}, {6, "i"}}, {{3, "1"}, {4, "i"}, {6, "i"}}, {{5, "1"}, {2, "i"}, {4, "i"}, {6, "i"}}}},
  };
  for (const auto& s : specs) {
    std::string key = s.key;
    auto& e = b.add(key, make(key, Field::Q, numbered("x", 8), s.br),
                    "eight-dimensional two-step algebra with b1 = 6");
    e.aliases = {"N_" + key.substr(1, 1) + "^{8,2}"};
    std::vector<Vector> hol;
    for (const auto& c : s.hol) hol.push_back(vec(8, c));
    e.bigradings.push_back(hodge_split(std::move(hol), {vec(8, {{7, "-2*i"}}), vec(8, {{8, "-2*i"}})}));
  }

  // Three-step example carrying a grading of general shape.
  LieAlgebra g = make("g_sec6", Field::Q, {"X1", "X2", "Y1", "Y2", "Z1", "Z2", "A", "B"},
                      {{1, 3, {{5, "1"}}}, {2, 4, {{5, "1"}}}, {2, 3, {{6, "1"}}}, {1, 4, {{6, "1"}}},
                       {1, 5, {{7, "1"}}}, {2, 6, {{7, "1"}}}, {3, 5, {{8, "1"}}}, {4, 6, {{8, "1"}}}});
  auto& eg = b.add("g_sec6", g, "eight-dimensional three-step algebra with a five-component grading");
  eg.aliases = {"g"};
  // Admissible in degrees 1 and 2 only; higher degrees leave the index sets.
  eg.support_through = 2;
  Vector a1 = vec(8, {{1, "1"}, {3, "i"}}), a2 = vec(8, {{2, "1"}, {4, "i"}});
  Vector c1 = vec(8, {{7, "-2*i"}, {8, "2"}});  // -2i (A + iB)
  eg.bigradings.push_back(Bigrading{{comp(-1, 0, {a1, a2}), comp(0, -1, {conj(a1), conj(a2)}),
                                     comp(-1, -1, {vec(8, {{5, "-2*i"}}), vec(8, {{6, "-2*i"}})}),
                                     comp(-2, -1, {c1}), comp(-1, -2, {conj(c1)})}});
}

void add_sums(Builder& b) {
  struct Sum {
    const char* key;
    const char* left;
    const char* right;
  };
  // Built left to right, so later sums may use earlier ones.
  const std::vector<Sum> sums = {
      {"n3+C", "n3", "abelian_1"},  {"n3+C2", "n3", "abelian_2"}, {"n3+C3", "n3", "abelian_3"},
      {"n3+C4", "n3", "abelian_4"}, {"n5+C", "n5", "abelian_1"},  {"n5+C2", "n5", "abelian_2"},
      {"n3+n3", "n3", "n3"},        {"n3+n3+C", "n3+n3", "abelian_1"},
  };
  for (const auto& s : sums) {
    const Entry& l = b.find(s.left);
    const Entry& r = b.find(s.right);
    LieAlgebra a = direct_sum(l.algebra, r.algebra, s.key);
    Bigrading g = sum_grading(l.bigradings.front(), l.algebra.dim(), r.bigradings.front(), r.algebra.dim());
    std::string desc = std::string("direct sum ") + s.left + " + " + s.right;
    auto& e = b.add(s.key, std::move(a), std::move(desc));
    e.bigradings.push_back(std::move(g));
  }
}

std::vector<Entry> build() {
  Builder b;
  add_abelian(b);
  add_heisenberg(b);
  add_filiform(b);
  add_seven(b);
  add_eight(b);
  add_sums(b);
  std::sort(b.out.begin(), b.out.end(), [](const Entry& x, const Entry& y) { return x.key < y.key; });
  return std::move(b.out);
}

}  // namespace

std::string version() { return "nilqp-catalog-1"; }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = build();
  return all;
}

std::vector<std::string> keys() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.push_back(e.key);
  return out;
}

const Entry& get(std::string_view key) {
  for (const auto& e : entries()) {
    if (e.key == key) return e;
    if (std::find(e.aliases.begin(), e.aliases.end(), key) != e.aliases.end()) return e;
  }
  throw InputError("UnknownKey", "no catalog entry named '" + std::string(key) + "'");
}

std::vector<std::filesystem::path> export_entry(std::string_view key, const std::filesystem::path& dir) {
  const Entry& e = get(key);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("IOFailure", "cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const io::Json& j) {
    auto path = dir / name;
    io::write_file(path, io::dump(j));
    written.push_back(path);
  };
  emit(e.key + ".algebra.json", io::to_json(e.algebra));
  for (std::size_t i = 0; i < e.bigradings.size(); ++i)
    emit(e.key + ".bigrading." + std::to_string(i + 1) + ".json", io::to_json(e.bigradings[i]));
  for (const auto& t : e.transformations)
    emit(e.key + ".transform." + t.target + ".json", io::transform_json(e.key, t.target, t.matrix));
  return written;
}

}  // namespace nilqp::catalog
