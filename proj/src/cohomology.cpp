#include "nilqp/cohomology.hpp"

#include <numeric>

#include "nilqp/error.hpp"
#include "nilqp/mhs.hpp"

namespace nilqp {

ExteriorBasis::ExteriorBasis(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (n > 24) throw InputError("DegreeOutOfRange", "exterior basis limited to 24 generators");
  index_.assign(std::size_t{1} << n, npos);
  if (k > n) return;
  // Colex on masks is not lex on tuples, so enumerate tuples directly.
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    std::uint32_t m = 0;
    for (auto i : cur) m |= 1u << i;
    index_[m] = monomials_.size();
    monomials_.push_back(cur);
    masks_.push_back(m);
    std::size_t pos = k;
    while (pos > 0 && cur[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++cur[pos - 1];
    for (std::size_t r = pos; r < k; ++r) cur[r] = cur[r - 1] + 1;
  }
}

std::size_t ExteriorBasis::index_of_mask(std::uint32_t mask) const {
  return mask < index_.size() ? index_[mask] : npos;
}

namespace {

struct Term {
  std::size_t a, b;
  Scalar c;
};

// d x^m = -sum_{a<b} C_ab^m x^a ∧ x^b, grouped by m.
std::vector<std::vector<Term>> dual_terms(const AlgebraData& d) {
  std::vector<std::vector<Term>> out(d.basis.size());
  for (const auto& [ij, v] : d.brackets)
    for (const auto& [m, c] : v) out[m].push_back({ij.first, ij.second, -c});
  return out;
}

// Sign of the permutation sorting seq (all entries distinct).
int sort_sign(const std::vector<std::size_t>& seq) {
  int s = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) s = -s;
  return s;
}

Matrix differential(const std::vector<std::vector<Term>>& terms, std::size_t n, std::size_t k) {
  ExteriorBasis src(n, k), dst(n, k + 1);
  Matrix d(dst.size(), src.size());
  std::vector<std::size_t> seq;
  for (std::size_t col = 0; col < src.size(); ++col) {
    const auto& mono = src.monomial(col);
    const std::uint32_t mask = src.mask(col);
    for (std::size_t p = 0; p < k; ++p) {
      const std::uint32_t rest = mask & ~(1u << mono[p]);
      for (const auto& t : terms[mono[p]]) {
        if ((rest >> t.a) & 1u || (rest >> t.b) & 1u) continue;
        seq.clear();
        seq.insert(seq.end(), mono.begin(), mono.begin() + p);
        seq.push_back(t.a);
        seq.push_back(t.b);
        seq.insert(seq.end(), mono.begin() + p + 1, mono.end());
        int sign = sort_sign(seq) * (p % 2 == 0 ? 1 : -1);
        std::size_t row = dst.index_of_mask(rest | (1u << t.a) | (1u << t.b));
        if (sign > 0)
          d(row, col) += t.c;
        else
          d(row, col) -= t.c;
      }
    }
  }
  return d;
}

std::vector<Matrix> all_differentials(const LieAlgebra& l) {
  auto terms = dual_terms(l.data());
  std::vector<Matrix> ds;
  for (std::size_t k = 0; k <= l.dim(); ++k) ds.push_back(differential(terms, l.dim(), k));
  return ds;
}

}  // namespace

Matrix ce_differential(const AlgebraData& d, std::size_t k) {
  const std::size_t n = d.basis.size();
  if (k > n)
    throw InputError("DegreeOutOfRange", "degree " + std::to_string(k) + " exceeds dimension " + std::to_string(n));
  return differential(dual_terms(d), n, k);
}

Matrix ce_differential(const LieAlgebra& l, std::size_t k) { return ce_differential(l.data(), k); }

CohomologyTable betti_numbers(const LieAlgebra& l, bool with_representatives) {
  const std::size_t n = l.dim();
  auto ds = all_differentials(l);
  std::vector<std::size_t> ranks;
  for (const auto& d : ds) ranks.push_back(rank(d));

  CohomologyTable t;
  for (std::size_t k = 0; k <= n; ++k) {
    std::size_t cols = ds[k].cols();
    std::size_t prev = k == 0 ? 0 : ranks[k - 1];
    t.betti.push_back(cols - ranks[k] - prev);
  }
  if (!with_representatives) return t;

  std::map<std::size_t, std::vector<Vector>> reps;
  for (std::size_t k = 0; k <= n; ++k) {
    Subspace ker = kernel_basis(ds[k]);
    Subspace image = k == 0 ? Subspace(1) : Subspace::span(ds[k - 1].transpose());
    Subspace acc = image;
    auto& out = reps[k];
    for (std::size_t r = 0; r < ker.dim(); ++r) {
      auto v = ker.basis().row(r);
      if (acc.contains(v)) continue;
      out.push_back(image.reduce(v));
      acc = subspace_sum(acc, Subspace::span(acc.ambient_dim(), {Vector(v.begin(), v.end())}));
    }
    if (out.size() != t.betti[k])
      throw InvariantViolation("RepresentativeCount", "representatives disagree with betti number");
  }
  t.representatives = std::move(reps);
  return t;
}

namespace {

struct GradedComplex {
  std::vector<Matrix> ds;
  std::vector<std::vector<Bidegree>> degrees;  ///< per degree, per monomial
};

GradedComplex graded_complex(const LieAlgebra& l, const Bigrading& g) {
  const std::size_t n = l.dim();
  if (g.generator_count() != n)
    throw InvariantViolation("GradingNotCompatible", "grading does not have dim L generators");
  Matrix t = g.generator_matrix(n);
  LieAlgebra lg = [&] {
    try {
      return apply_basis_change(l, t);
    } catch (const InputError&) {
      throw InvariantViolation("GradingNotCompatible", "grading generators are not a basis");
    }
  }();
  auto basis_deg = g.generator_bidegrees();

  GradedComplex c;
  c.ds = all_differentials(lg);
  for (std::size_t k = 0; k <= n + 1; ++k) {
    ExteriorBasis eb(n, k);
    std::vector<Bidegree> degs(eb.size());
    for (std::size_t i = 0; i < eb.size(); ++i) {
      int p = 0, q = 0;
      for (auto a : eb.monomial(i)) {
        p -= basis_deg[a].first;
        q -= basis_deg[a].second;
      }
      degs[i] = {p, q};
    }
    c.degrees.push_back(std::move(degs));
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const auto& d = c.ds[k];
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t col = 0; col < d.cols(); ++col)
        if (!d(r, col).is_zero() && c.degrees[k + 1][r] != c.degrees[k][col])
          throw InvariantViolation("GradingNotCompatible",
                                   "differential mixes bidegrees in degree " + std::to_string(k));
  }
  return c;
}

// Rank of d_k restricted to each bidegree block.
std::map<Bidegree, std::size_t> block_ranks(const GradedComplex& c, std::size_t k) {
  const auto& d = c.ds[k];
  std::map<Bidegree, std::vector<std::size_t>> cols, rows;
  for (std::size_t i = 0; i < c.degrees[k].size(); ++i) cols[c.degrees[k][i]].push_back(i);
  for (std::size_t i = 0; i < c.degrees[k + 1].size(); ++i) rows[c.degrees[k + 1][i]].push_back(i);
  std::map<Bidegree, std::size_t> out;
  for (const auto& [deg, cs] : cols) {
    auto it = rows.find(deg);
    if (it == rows.end()) {
      out[deg] = 0;
      continue;
    }
    Matrix block(it->second.size(), cs.size());
    for (std::size_t r = 0; r < it->second.size(); ++r)
      for (std::size_t j = 0; j < cs.size(); ++j) block(r, j) = d(it->second[r], cs[j]);
    out[deg] = rank(block);
  }
  return out;
}

}  // namespace

CohomologyTable bigraded_cohomology(const LieAlgebra& l, const Bigrading& g) {
  auto c = graded_complex(l, g);
  const std::size_t n = l.dim();
  std::vector<std::map<Bidegree, std::size_t>> ranks;
  for (std::size_t k = 0; k <= n; ++k) ranks.push_back(block_ranks(c, k));

  CohomologyTable t;
  std::map<GradedKey, std::size_t> table;
  t.betti.assign(n + 1, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    std::map<Bidegree, std::size_t> count;
    for (const auto& deg : c.degrees[k]) ++count[deg];
    for (const auto& [deg, m] : count) {
      std::size_t r = ranks[k][deg];
      std::size_t prev = 0;
      if (k > 0) {
        auto it = ranks[k - 1].find(deg);
        if (it != ranks[k - 1].end()) prev = it->second;
      }
      std::size_t h = m - r - prev;
      if (h == 0) continue;
      table[{k, deg.first, deg.second}] = h;
      t.betti[k] += h;
    }
  }
  t.by_bidegree = std::move(table);
  return t;
}

Bidegree top_class_bidegree(const LieAlgebra& l, const Bigrading& g) {
  int s = 0, t = 0;
  for (const auto& c : g.components) {
    s -= c.p * static_cast<int>(c.generators.size());
    t -= c.q * static_cast<int>(c.generators.size());
  }
  auto table = bigraded_cohomology(l, g);
  const std::size_t n = l.dim();
  for (const auto& [key, dim] : *table.by_bidegree) {
    if (std::get<0>(key) != n) continue;
    if (std::get<1>(key) != s || std::get<2>(key) != t || dim != 1)
      throw InvariantViolation("TopClassMisplaced", "top cohomology is not a single class at (" +
                                                        std::to_string(s) + "," +
                                                        std::to_string(t) + ")");
  }
  if (table.betti[n] != 1)
    throw InvariantViolation("TopClassMisplaced", "top cohomology is not one-dimensional");
  return {s, t};
}

}  // namespace nilqp
