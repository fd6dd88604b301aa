#include "nilqp/mhs.hpp"

#include <algorithm>
#include <set>

#include "nilqp/conic.hpp"
#include "nilqp/error.hpp"

namespace nilqp {

std::size_t Bigrading::generator_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.generators.size();
  return n;
}

Matrix Bigrading::generator_matrix(std::size_t n) const {
  Matrix m(0, n);
  for (const auto& c : components)
    for (const auto& v : c.generators) m.append_row(v);
  return m;
}

std::vector<Bidegree> Bigrading::generator_bidegrees() const {
  std::vector<Bidegree> out;
  for (const auto& c : components)
    for (std::size_t i = 0; i < c.generators.size(); ++i) out.emplace_back(c.p, c.q);
  return out;
}

const BigradingComponent* Bigrading::find(int p, int q) const {
  for (const auto& c : components)
    if (c.p == p && c.q == q) return &c;
  return nullptr;
}

Subspace Bigrading::space(int p, int q, std::size_t n) const {
  const auto* c = find(p, q);
  return c ? Subspace::span(n, c->generators) : Subspace(n);
}

bool same_splitting(const Bigrading& a, const Bigrading& b, std::size_t n) {
  auto keys = [](const Bigrading& g) {
    std::set<Bidegree> s;
    for (const auto& c : g.components)
      if (!c.generators.empty()) s.emplace(c.p, c.q);
    return s;
  };
  auto ka = keys(a);
  if (ka != keys(b)) return false;
  for (const auto& [p, q] : ka)
    if (!(a.space(p, q, n) == b.space(p, q, n))) return false;
  return true;
}

Bigrading sorted(Bigrading g) {
  std::stable_sort(g.components.begin(), g.components.end(),
                   [](const auto& x, const auto& y) { return std::pair(x.p, x.q) < std::pair(y.p, y.q); });
  return g;
}

Subspace FiltrationPair::weight(int k) const {
  auto it = W.upper_bound(k);
  if (it == W.begin()) return Subspace(ambient);
  return std::prev(it)->second;
}

Subspace FiltrationPair::hodge(int p) const {
  auto it = F.lower_bound(p);
  if (it == F.end()) return Subspace(ambient);
  return it->second;
}

std::string to_string(Conjugation c) {
  switch (c) {
    case Conjugation::Exact: return "Exact";
    case Conjugation::ModLowerWeight: return "ModLowerWeight";
    case Conjugation::Fails: break;
  }
  return "Fails";
}

std::string to_string(Shape s) { return s == Shape::Restricted ? "RestrictedShape" : "GeneralShape"; }
std::string to_string(VerifyMode m) { return m == VerifyMode::Strict ? "strict" : "lax"; }

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Obstructed: return "ObstructedByNecessaryCondition";
    case SearchStatus::Found: return "Found";
    case SearchStatus::NotFoundWithinBounds: break;
  }
  return "NotFoundWithinBounds";
}

bool GradingReport::valid() const {
  bool conj_ok = mode == VerifyMode::Strict ? conjugation == Conjugation::Exact
                                            : conjugation != Conjugation::Fails;
  return well_formed && spans && bracket_compatible && conj_ok && cohomology_support_ok;
}

namespace {

bool in_admissible_set(std::size_t j, int p, int q) {
  const int jj = static_cast<int>(j);
  return p >= 0 && q >= 0 && p <= jj && q <= jj && p + q >= jj && p + q <= 2 * jj;
}

Matrix conjugation_of(const LieAlgebra& l) {
  if (l.field() == Field::Qi && !l.real_structure())
    throw InputError("MissingRealStructure", "'" + l.name() + "' is over Q(i) without a real structure");
  return l.conjugation();
}

}  // namespace

GradingReport verify_bigrading(const LieAlgebra& l, const Bigrading& g, VerifyMode mode,
                               std::optional<std::size_t> support_through) {
  const Matrix s = conjugation_of(l);
  const std::size_t n = l.dim();
  GradingReport rep;
  rep.mode = mode;
  auto fail = [&](std::string check, std::vector<int> w, std::string detail) {
    rep.failures.push_back({std::move(check), std::move(w), std::move(detail)});
  };

  std::set<Bidegree> seen;
  bool lengths_ok = true;
  for (const auto& c : g.components) {
    if (!seen.emplace(c.p, c.q).second) {
      rep.well_formed = false;
      fail("bidegree", {c.p, c.q}, "bidegree listed twice");
    }
    if (c.p > 0 || c.q > 0 || c.p + c.q > -1) {
      rep.well_formed = false;
      fail("bidegree", {c.p, c.q}, "bidegree outside p, q <= 0, p + q <= -1");
    }
    if (c.generators.empty()) {
      rep.well_formed = false;
      fail("bidegree", {c.p, c.q}, "component has no generators");
    }
    for (const auto& v : c.generators)
      if (v.size() != n) lengths_ok = false;
  }
  if (!lengths_ok) {
    rep.well_formed = false;
    fail("spans", {}, "generator length differs from algebra dimension");
    return rep;
  }

  rep.shape = Shape::Restricted;
  for (const auto& c : g.components) {
    bool restricted = (c.p == -1 && c.q == 0) || (c.p == 0 && c.q == -1) || (c.p == -1 && c.q == -1);
    if (!restricted) rep.shape = Shape::General;
  }

  rep.spans = g.generator_count() == n && rank(g.generator_matrix(n)) == n;
  if (!rep.spans) {
    fail("spans", {static_cast<int>(g.generator_count()), static_cast<int>(n)},
         "generators do not form a basis");
    return rep;
  }
  if (!rep.well_formed) return rep;

  std::map<Bidegree, Subspace> spaces;
  for (const auto& c : g.components) spaces[{c.p, c.q}] = Subspace::span(n, c.generators);
  auto space = [&](int p, int q) {
    auto it = spaces.find({p, q});
    return it == spaces.end() ? Subspace(n) : it->second;
  };

  rep.bracket_compatible = true;
  for (std::size_t a = 0; a < g.components.size(); ++a)
    for (std::size_t b = a; b < g.components.size(); ++b) {
      const auto& ca = g.components[a];
      const auto& cb = g.components[b];
      Subspace target = space(ca.p + cb.p, ca.q + cb.q);
      bool ok = true;
      for (std::size_t i = 0; i < ca.generators.size() && ok; ++i)
        for (std::size_t j = a == b ? i + 1 : 0; j < cb.generators.size() && ok; ++j)
          ok = target.contains(l.bracket(ca.generators[i], cb.generators[j]));
      if (!ok) {
        rep.bracket_compatible = false;
        fail("bracket", {ca.p, ca.q, cb.p, cb.q, ca.p + cb.p, ca.q + cb.q},
             "bracket leaves the target component");
      }
    }

  rep.conjugation = Conjugation::Exact;
  for (const auto& c : g.components) {
    Subspace image = spaces[{c.p, c.q}].conjugate(s);
    Subspace mirror = space(c.q, c.p);
    if (image == mirror) continue;
    Subspace lower = mirror;
    for (const auto& [deg, sp] : spaces)
      if (deg.first + deg.second < c.p + c.q) lower = subspace_sum(lower, sp);
    if (lower.contains(image)) {
      if (rep.conjugation == Conjugation::Exact) rep.conjugation = Conjugation::ModLowerWeight;
      if (mode == VerifyMode::Strict)
        fail("conjugation", {c.p, c.q, c.q, c.p}, "conjugate agrees only modulo lower weight");
    } else {
      rep.conjugation = Conjugation::Fails;
      fail("conjugation", {c.p, c.q, c.q, c.p}, "conjugate is not the mirrored component");
    }
  }

  if (!rep.bracket_compatible) {
    fail("support", {}, "not evaluated: grading is not bracket-compatible");
    return rep;
  }
  auto table = bigraded_cohomology(l, g);
  rep.cohomology_support_ok = true;
  rep.support_checked_through = std::min(n, support_through.value_or(n));
  for (const auto& [key, dim] : *table.by_bidegree) {
    auto [j, p, q] = key;
    if (j > rep.support_checked_through || in_admissible_set(j, p, q)) continue;
    rep.cohomology_support_ok = false;
    fail("support", {static_cast<int>(j), p, q}, "cohomology outside the admissible bidegrees");
  }
  return rep;
}

FiltrationPair filtrations_from_bigrading(const Bigrading& g, std::size_t n) {
  FiltrationPair fp;
  fp.ambient = n;
  if (g.components.empty()) return fp;
  int wmin = g.components[0].p + g.components[0].q, wmax = wmin;
  int pmin = g.components[0].p, pmax = pmin;
  for (const auto& c : g.components) {
    wmin = std::min(wmin, c.p + c.q);
    wmax = std::max(wmax, c.p + c.q);
    pmin = std::min(pmin, c.p);
    pmax = std::max(pmax, c.p);
  }
  for (int k = wmin; k <= wmax; ++k) {
    std::vector<Vector> gens;
    for (const auto& c : g.components)
      if (c.p + c.q <= k) gens.insert(gens.end(), c.generators.begin(), c.generators.end());
    fp.W[k] = Subspace::span(n, gens);
  }
  for (int p = pmin; p <= pmax; ++p) {
    std::vector<Vector> gens;
    for (const auto& c : g.components)
      if (c.p >= p) gens.insert(gens.end(), c.generators.begin(), c.generators.end());
    fp.F[p] = Subspace::span(n, gens);
  }
  return fp;
}

Bigrading bigrading_from_filtrations(const FiltrationPair& fp, const Matrix& real_structure) {
  const std::size_t n = fp.ambient;
  auto bad = [](const std::string& why) { throw InputError("NotAFiltration", why); };
  for (const auto& m : {&fp.W, &fp.F})
    for (const auto& [k, sp] : *m)
      if (sp.ambient_dim() != n) bad("filtration step has the wrong ambient dimension");
  for (auto it = fp.W.begin(); it != fp.W.end() && std::next(it) != fp.W.end(); ++it)
    if (!std::next(it)->second.contains(it->second)) bad("W is not increasing at " + std::to_string(it->first));
  for (auto it = fp.F.begin(); it != fp.F.end() && std::next(it) != fp.F.end(); ++it)
    if (!it->second.contains(std::next(it)->second)) bad("F is not decreasing at " + std::to_string(it->first));
  if (n > 0 && (fp.W.empty() || fp.W.rbegin()->second.dim() != n)) bad("W is not exhaustive");
  if (n > 0 && (fp.F.empty() || fp.F.begin()->second.dim() != n)) bad("F is not exhaustive");
  if (real_structure.rows() != n || real_structure.cols() != n || !is_antilinear_involution(real_structure))
    throw InputError("InvalidRealStructure", "real structure is not an antilinear involution");

  const int lo = -static_cast<int>(n);
  const int wfloor = fp.W.empty() ? 0 : fp.W.begin()->first;
  std::map<int, Subspace> conj_f;
  for (int q = 2 * lo; q <= 1; ++q) conj_f[q] = fp.hodge(q).conjugate(real_structure);

  Bigrading g;
  for (int p = lo; p <= 0; ++p)
    for (int q = lo; q <= 0; ++q) {
      const int w = p + q;
      Subspace inner = subspace_intersect(conj_f[q], fp.weight(w));
      for (int i = 2; w - i >= wfloor && q - i + 1 >= 2 * lo; ++i)
        inner = subspace_sum(inner, subspace_intersect(conj_f[q - i + 1], fp.weight(w - i)));
      Subspace v = subspace_intersect(subspace_intersect(fp.hodge(p), fp.weight(w)), inner);
      if (v.is_zero()) continue;
      g.components.push_back({p, q, v.basis().row_vectors()});
    }
  return g;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector e(n);
  e[i] = 1;
  return e;
}

// Solution set {c0 + sum t_m null_m} of an augmented system [E | rhs].
struct Affine {
  Vector c0;
  std::vector<Vector> null;
};

std::optional<Affine> solve_affine(const Matrix& aug, std::size_t vars) {
  auto r = rref_rank(aug);
  Affine a;
  a.c0.assign(vars, Scalar(0));
  std::vector<bool> pivot(vars, false);
  for (std::size_t row = 0; row < r.rank; ++row) {
    if (r.pivots[row] == vars) return std::nullopt;
    pivot[r.pivots[row]] = true;
    a.c0[r.pivots[row]] = r.rref(row, vars);
  }
  for (std::size_t f = 0; f < vars; ++f) {
    if (pivot[f]) continue;
    Vector v(vars);
    v[f] = 1;
    for (std::size_t row = 0; row < r.rank; ++row) v[r.pivots[row]] = -r.rref(row, f);
    a.null.push_back(std::move(v));
  }
  return a;
}

class ComplexStructureSearch {
 public:
  ComplexStructureSearch(std::vector<Matrix> gens, std::size_t dim, const SearchBounds& b)
      : gens_(std::move(gens)), dim_(dim), bounds_(b) {
    for (const auto& c : b.coefficients)
      if (!c.is_zero() && std::find(coeffs_.begin(), coeffs_.end(), c) == coeffs_.end()) coeffs_.push_back(c);
  }

  /// Pairs (x_j, y_j) with J x_j = y_j, or nullopt.
  std::optional<std::vector<std::pair<Vector, Vector>>> run() {
    Matrix eqs(0, gens_.size() + 1);
    std::vector<std::pair<Vector, Vector>> pairs;
    if (descend(eqs, pairs)) return pairs;
    return std::nullopt;
  }

  std::size_t nodes() const { return nodes_; }
  bool exhausted() const { return nodes_ >= bounds_.node_budget; }

 private:
  // Rows of sum_l c_l (G_l v) = w, appended to eqs.
  void constrain(Matrix& eqs, const Vector& v, const Vector& w) const {
    const std::size_t g = gens_.size();
    std::vector<Vector> images;
    for (const auto& m : gens_) images.push_back(m.apply(v));
    for (std::size_t i = 0; i < dim_; ++i) {
      Vector row(g + 1);
      for (std::size_t l = 0; l < g; ++l) row[l] = images[l][i];
      row[g] = w[i];
      if (!is_zero(row)) eqs.append_row(row);
    }
  }

  Vector image(const Vector& c, const Vector& v) const {
    Vector out(dim_);
    for (std::size_t l = 0; l < gens_.size(); ++l) {
      if (c[l].is_zero()) continue;
      auto gv = gens_[l].apply(v);
      for (std::size_t i = 0; i < dim_; ++i) out[i] += c[l] * gv[i];
    }
    return out;
  }

  bool descend(const Matrix& eqs, std::vector<std::pair<Vector, Vector>>& pairs) {
    std::vector<Vector> span_vecs;
    for (const auto& [x, y] : pairs) {
      span_vecs.push_back(x);
      span_vecs.push_back(y);
    }
    Subspace done = Subspace::span(dim_, span_vecs);
    if (done.dim() == dim_) return true;

    const std::size_t g = gens_.size();
    auto sol = solve_affine(eqs, g);
    if (!sol) return false;
    std::size_t a = 0;
    while (done.contains(unit(dim_, a))) ++a;
    Vector x = unit(dim_, a);

    std::vector<Vector> dirs;
    for (const auto& nv : sol->null) dirs.push_back(image(nv, x));
    Subspace dspace = Subspace::span(dim_, dirs);
    Vector base = dspace.reduce(image(sol->c0, x));
    Subspace with_x = subspace_sum(done, Subspace::span(dim_, {x}));
    const auto directions = dspace.basis().row_vectors();

    // Candidates: base plus up to `depth` directions with nonzero coefficients.
    std::vector<std::size_t> idx;
    std::vector<std::size_t> coef;
    for (std::size_t terms = 0; terms <= std::min(bounds_.depth, directions.size()); ++terms) {
      idx.resize(terms);
      for (std::size_t i = 0; i < terms; ++i) idx[i] = i;
      while (true) {
        coef.assign(terms, 0);
        while (true) {
          if (nodes_ >= bounds_.node_budget) return false;
          ++nodes_;
          Vector y = base;
          for (std::size_t t = 0; t < terms; ++t)
            for (std::size_t i = 0; i < dim_; ++i) y[i] += coeffs_[coef[t]] * directions[idx[t]][i];
          if (!with_x.contains(y)) {
            Matrix next = eqs;
            constrain(next, x, y);
            Vector minus_x = x;
            for (auto& s : minus_x) s = -s;
            constrain(next, y, minus_x);
            pairs.emplace_back(x, y);
            if (descend(next, pairs)) return true;
            pairs.pop_back();
          }
          std::size_t t = terms;
          while (t > 0 && coef[t - 1] + 1 == coeffs_.size()) coef[--t] = 0;
          if (t == 0) break;
          ++coef[t - 1];
        }
        if (terms == 0 || coeffs_.empty()) break;
        std::size_t t = terms;
        while (t > 0 && idx[t - 1] == directions.size() - terms + t - 1) --t;
        if (t == 0) break;
        ++idx[t - 1];
        for (std::size_t r = t; r < terms; ++r) idx[r] = idx[r - 1] + 1;
      }
      if (coeffs_.empty()) break;
    }
    return false;
  }

  std::vector<Matrix> gens_;
  std::size_t dim_;
  SearchBounds bounds_;
  std::vector<Scalar> coeffs_;
  std::size_t nodes_ = 0;
};

// Linear maps A of V with A^T Ω + Ω A = 0 for every form Ω.
std::vector<Matrix> form_preserving_algebra(const std::vector<Matrix>& forms, std::size_t d) {
  Matrix sys(0, d * d);
  for (const auto& om : forms)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b) {
        Vector row(d * d);
        for (std::size_t i = 0; i < d; ++i) {
          row[i * d + a] += om(i, b);
          row[i * d + b] -= om(i, a);
        }
        if (!is_zero(row)) sys.append_row(row);
      }
  Subspace ker = kernel_basis(sys);
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < ker.dim(); ++r) {
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = ker.basis()(r, i * d + j);
    out.push_back(std::move(m));
  }
  return out;
}

Matrix combine(const std::vector<Matrix>& gens, const Vector& x, std::size_t d) {
  Matrix out(d, d);
  for (std::size_t l = 0; l < gens.size(); ++l) {
    if (x[l].is_zero()) continue;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out(i, j) += x[l] * gens[l](i, j);
  }
  return out;
}

// When every anticommutator in the algebra is scalar, J(x)^2 = Q(x) I for a
// quadratic form Q, so J^2 = -1 asks for a rational point of Q = -1. The form
// is diagonalised exactly and the point comes from ternary sub-forms solved
// by descent. Unlike the bounded search this does not care which coordinates
// the algebra was given in.
std::optional<Matrix> clifford_complex_structure(const std::vector<Matrix>& gens, std::size_t d,
                                                 std::size_t& tried) {
  const std::size_t g = gens.size();
  if (g == 0 || d == 0) return std::nullopt;
  Matrix gram(g, g);
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = a; b < g; ++b) {
      Matrix ab = gens[a] * gens[b];
      Matrix ba = gens[b] * gens[a];
      const Scalar s = ab(0, 0) + ba(0, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (ab(i, j) + ba(i, j) != (i == j ? s : Scalar(0))) return std::nullopt;
      if (!s.is_real()) return std::nullopt;
      gram(a, b) = gram(b, a) = s / Scalar(2);
    }
  auto form = [&](const Vector& x, const Vector& y) {
    Scalar acc;
    for (std::size_t a = 0; a < g; ++a)
      for (std::size_t b = 0; b < g; ++b)
        if (!x[a].is_zero() && !y[b].is_zero()) acc += x[a] * gram(a, b) * y[b];
    return acc;
  };

  // Orthogonal basis of the non-degenerate part.
  std::vector<Vector> rest;
  for (std::size_t a = 0; a < g; ++a) rest.push_back(unit(g, a));
  std::vector<Vector> diag;
  std::vector<mpq_class> values;
  while (!rest.empty()) {
    std::optional<Vector> pivot;
    for (std::size_t a = 0; a < rest.size() && !pivot; ++a)
      if (!form(rest[a], rest[a]).is_zero()) pivot = rest[a];
    for (std::size_t a = 0; a < rest.size() && !pivot; ++a)
      for (std::size_t b = a + 1; b < rest.size() && !pivot; ++b) {
        Vector v = rest[a];
        for (std::size_t t = 0; t < g; ++t) v[t] += rest[b][t];
        if (!form(v, v).is_zero()) pivot = v;
      }
    if (!pivot) break;
    const Scalar pp = form(*pivot, *pivot);
    std::vector<Vector> next;
    for (auto& w : rest) {
      const Scalar f = form(w, *pivot) / pp;
      for (std::size_t t = 0; t < g; ++t) w[t] -= f * (*pivot)[t];
      if (!is_zero(w)) next.push_back(w);
    }
    next = Subspace::span(g, next).basis().row_vectors();
    diag.push_back(*pivot);
    values.push_back(pp.re());
    rest = std::move(next);
  }

  const std::size_t k = diag.size();
  auto in_v = [&](const std::vector<mpq_class>& coords) {
    Vector x(g);
    for (std::size_t a = 0; a < k; ++a)
      if (sgn(coords[a]) != 0)
        for (std::size_t t = 0; t < g; ++t) x[t] += Scalar(coords[a]) * diag[a][t];
    return x;
  };
  auto value = [&](const std::vector<mpq_class>& coords) {
    mpq_class q = 0;
    for (std::size_t a = 0; a < k; ++a) q += values[a] * coords[a] * coords[a];
    return q;
  };
  auto finish = [&](const std::vector<mpq_class>& coords) -> std::optional<Matrix> {
    if (value(coords) != -1) return std::nullopt;
    Matrix j = combine(gens, in_v(coords), d);
    Matrix sq = j * j;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (sq(r, c) != Scalar(r == c ? -1 : 0)) return std::nullopt;
    return j;
  };
  // An isotropic vector v gives Q(e_a + t v) = -1 for t solving a linear equation.
  auto from_isotropic = [&](const std::vector<mpq_class>& v) -> std::optional<Matrix> {
    for (std::size_t a = 0; a < k; ++a) {
      if (sgn(v[a]) == 0) continue;
      mpq_class t = (-1 - values[a]) / (2 * values[a] * v[a]);
      std::vector<mpq_class> x(k);
      for (std::size_t b = 0; b < k; ++b) x[b] = t * v[b];
      x[a] += 1;
      return finish(x);
    }
    return std::nullopt;
  };

  // Q = sum values_a y_a^2 with values_a = f_a s_a^2, f_a a squarefree integer.
  std::vector<mpz_class> f(k);
  std::vector<mpq_class> s(k);
  for (std::size_t a = 0; a < k; ++a) {
    auto split = conic::squarefree_split(mpz_class(values[a].get_num() * values[a].get_den()));
    if (!split) return std::nullopt;
    f[a] = split->first;
    s[a] = mpq_class(split->second, values[a].get_den());
    s[a].canonicalize();
  }
  for (std::size_t a = 0; a < k; ++a) {
    ++tried;
    if (f[a] != -1) continue;
    std::vector<mpq_class> x(k);
    x[a] = 1 / s[a];
    if (auto j = finish(x)) return j;
  }
  // f_a X^2 + f_b Y^2 + W^2 = 0: W != 0 represents -1, W = 0 is isotropic.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      ++tried;
      auto zero = conic::ternary_zero(f[a], f[b], mpz_class(1));
      if (!zero) continue;
      const auto& [X, Y, W] = *zero;
      std::vector<mpq_class> x(k);
      if (sgn(W) != 0) {
        x[a] = X / W / s[a];
        x[b] = Y / W / s[b];
        if (auto j = finish(x)) return j;
      } else {
        x[a] = X / s[a];
        x[b] = Y / s[b];
        if (auto j = from_isotropic(x)) return j;
      }
    }
  // An isotropic vector in three coordinates also suffices.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      for (std::size_t c = b + 1; c < k; ++c) {
        ++tried;
        auto zero = conic::ternary_zero(f[a], f[b], f[c]);
        if (!zero) continue;
        std::vector<mpq_class> x(k);
        x[a] = (*zero)[0] / s[a];
        x[b] = (*zero)[1] / s[b];
        x[c] = (*zero)[2] / s[c];
        if (auto j = from_isotropic(x)) return j;
      }
  return std::nullopt;
}

// A J-adapted list of pairs (x, J x) spanning V.
std::vector<std::pair<Vector, Vector>> complex_pairs(const Matrix& j, std::size_t d) {
  std::vector<std::pair<Vector, Vector>> pairs;
  Subspace done(d);
  for (std::size_t a = 0; a < d && done.dim() < d; ++a) {
    Vector x = unit(d, a);
    if (done.contains(x)) continue;
    Vector y = j.apply(x);
    done = subspace_sum(done, Subspace::span(d, {x, y}));
    pairs.emplace_back(std::move(x), std::move(y));
  }
  return pairs;
}

}  // namespace

SearchOutcome search_bigrading(const LieAlgebra& l, const SearchBounds& bounds) {
  SearchOutcome out;
  out.bounds = bounds;
  RealForm rf = real_form(l);
  const LieAlgebra& a = rf.algebra;
  const std::size_t n = a.dim();

  auto lcs = lower_central_series(a);
  if (lcs.nilpotency_class >= 3) {
    out.status = SearchStatus::Obstructed;
    out.reason = "class";
    out.witness["nilpotency_class"] = static_cast<long>(lcs.nilpotency_class);
    return out;
  }
  AbelianSplitting split = strip_abelian_factor(a);
  const LieAlgebra& core = split.core;
  const std::size_t c = split.core_basis.rows();
  Subspace c1 = commutator_ideal(core);
  const std::size_t b1 = c - c1.dim();
  out.witness["k"] = static_cast<long>(split.k);
  out.witness["b1_core"] = static_cast<long>(b1);
  if (b1 % 2 == 1) {
    out.status = SearchStatus::Obstructed;
    out.reason = "parity";
    return out;
  }

  // Complement V of C^1 in the core, spanned by standard vectors.
  std::vector<std::size_t> vidx;
  Subspace filled = c1;
  for (std::size_t j = 0; j < c && filled.dim() < c; ++j) {
    Vector e = unit(c, j);
    if (filled.contains(e)) continue;
    vidx.push_back(j);
    filled = subspace_sum(filled, Subspace::span(c, {e}));
  }
  const std::size_t d = vidx.size();

  std::vector<std::pair<Vector, Vector>> pairs;
  if (d > 0) {
    std::vector<Matrix> forms(c1.dim(), Matrix(d, d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        Vector w = core.bracket(unit(c, vidx[i]), unit(c, vidx[j]));
        Vector coeff;
        if (!solve_row_combination(c1.basis(), w, coeff))
          throw InvariantViolation("SearchUnsound", "bracket outside the commutator ideal");
        for (std::size_t k = 0; k < c1.dim(); ++k) {
          forms[k](i, j) = coeff[k];
          forms[k](j, i) = -coeff[k];
        }
      }
    auto algebra = form_preserving_algebra(forms, d);
    std::size_t tried = 0;
    if (auto j = clifford_complex_structure(algebra, d, tried)) {
      out.nodes_explored = tried;
      pairs = complex_pairs(*j, d);
    } else {
      ComplexStructureSearch search(std::move(algebra), d, bounds);
      auto found = search.run();
      out.nodes_explored = tried + search.nodes();
      if (!found) {
        out.status = SearchStatus::NotFoundWithinBounds;
        return out;
      }
      pairs = std::move(*found);
    }
  }

  // Core coordinates -> real form coordinates -> l's coordinates.
  auto lift_core = [&](const Vector& vcoords) {
    Vector v(c);
    for (std::size_t i = 0; i < d; ++i) v[vidx[i]] = vcoords[i];
    return v;
  };
  auto to_l = [&](const Vector& a_coords) { return row_times(a_coords, rf.basis); };
  auto core_to_l = [&](const Vector& v) { return to_l(row_times(v, split.core_basis)); };

  Bigrading g;
  BigradingComponent holo{-1, 0, {}}, antiholo{0, -1, {}}, middle{-1, -1, {}};
  const Scalar i = Scalar::i();
  for (const auto& [x, y] : pairs) {
    Vector u(d), ubar(d);
    for (std::size_t t = 0; t < d; ++t) {
      u[t] = x[t] - i * y[t];
      ubar[t] = x[t] + i * y[t];
    }
    holo.generators.push_back(core_to_l(lift_core(u)));
    antiholo.generators.push_back(core_to_l(lift_core(ubar)));
  }
  for (std::size_t r = 0; r < c1.dim(); ++r) middle.generators.push_back(core_to_l(c1.basis().row_vector(r)));
  for (std::size_t r = 0; r < split.abelian_basis.rows(); ++r)
    middle.generators.push_back(to_l(split.abelian_basis.row_vector(r)));
  for (auto* comp : {&holo, &antiholo, &middle})
    if (!comp->generators.empty()) g.components.push_back(std::move(*comp));
  if (n == 0) g.components.clear();

  GradingReport rep = verify_bigrading(l, g, VerifyMode::Lax);
  if (!rep.valid())
    throw InvariantViolation("SearchUnsound", "search produced a grading that fails verification");
  out.status = SearchStatus::Found;
  out.bigrading = std::move(g);
  out.report = std::move(rep);
  return out;
}

}  // namespace nilqp
