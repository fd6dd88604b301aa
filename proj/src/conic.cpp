#include "nilqp/conic.hpp"

#include <algorithm>
#include <map>

namespace nilqp::conic {

namespace {

constexpr unsigned long kTrialLimit = 1000;
constexpr unsigned long kRhoIterations = 1UL << 20;

bool is_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Pollard-Brent; a proper divisor of composite n, or 0.
mpz_class rho(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; c < 20; ++c) {
    mpz_class x = 2, y = 2, d = 1, q = 1, ys;
    unsigned long r = 1, steps = 0;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    while (d == 1 && steps < kRhoIterations) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      for (unsigned long k = 0; k < r && d == 1; k += 64) {
        ys = y;
        for (unsigned long i = 0; i < std::min(64UL, r - k); ++i) {
          y = f(y);
          q = (q * abs(mpz_class(x - y))) % n;
          ++steps;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (d == n) {
      // Backtrack one step at a time from the last checkpoint.
      do {
        ys = f(ys);
        mpz_class diff = abs(mpz_class(x - ys));
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
    if (d != 1 && d != n) return d;
  }
  return 0;
}

bool split_into(const mpz_class& n, std::map<mpz_class, unsigned>& out, unsigned mult) {
  if (n == 1) return true;
  if (is_prime(n)) {
    out[n] += mult;
    return true;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return split_into(r, out, 2 * mult);
  }
  mpz_class d = rho(n);
  if (d == 0) return false;
  return split_into(d, out, mult) && split_into(mpz_class(n / d), out, mult);
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  return r;
}

std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a0, const mpz_class& p) {
  mpz_class a = mod(a0, p);
  if (a == 0 || p == 2) return a;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
  // Tonelli-Shanks.
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  mpz_class c, x, t, b, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    b = c;
    for (unsigned long k = 0; k + i + 1 < m; ++k) b = (b * b) % p;
    x = (x * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  return x;
}

struct Zero {
  mpz_class x, y, z;
};

// z^2 = a x^2 + b y^2 for squarefree nonzero a, b, by Lagrange descent.
std::optional<Zero> descend(const mpz_class& a, const mpz_class& b, int depth) {
  if (depth > 200) return std::nullopt;
  if (a == 1) return Zero{1, 0, 1};
  if (b == 1) return Zero{0, 1, 1};
  if (a < 0 && b < 0) return std::nullopt;
  if (a == -b) return Zero{1, 1, 0};
  if (abs(a) > abs(b)) {
    auto r = descend(b, a, depth + 1);
    if (!r) return std::nullopt;
    return Zero{r->y, r->x, r->z};
  }
  const mpz_class mb = abs(b);
  auto t = sqrt_mod(a, mb);
  if (!t) return std::nullopt;
  mpz_class tt = *t;
  if (2 * tt > mb) tt -= mb;
  mpz_class k = (tt * tt - a) / b;
  auto ks = squarefree_split(k);
  if (!ks) return std::nullopt;
  auto inner = descend(a, ks->first, depth + 1);
  if (!inner) return std::nullopt;
  const auto& [X, Y, Z] = *inner;
  return Zero{tt * X + Z, ks->first * ks->second * Y, tt * Z + a * X};
}

}  // namespace

std::optional<std::vector<std::pair<mpz_class, unsigned>>> factor(const mpz_class& n0) {
  mpz_class n = abs(n0);
  std::map<mpz_class, unsigned> acc;
  for (unsigned long p = 2; p <= kTrialLimit && n > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++acc[mpz_class(p)];
      n /= p;
    }
  }
  if (!split_into(n, acc, 1)) return std::nullopt;
  return std::vector<std::pair<mpz_class, unsigned>>(acc.begin(), acc.end());
}

std::optional<std::pair<mpz_class, mpz_class>> squarefree_split(const mpz_class& n) {
  auto fs = factor(n);
  if (!fs) return std::nullopt;
  mpz_class f = sgn(n) < 0 ? -1 : 1, s = 1;
  for (const auto& [p, e] : *fs) {
    if (e % 2) f *= p;
    for (unsigned i = 0; i < e / 2; ++i) s *= p;
  }
  return std::pair{f, s};
}

std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& m) {
  if (m == 1) return mpz_class(0);
  auto fs = factor(m);
  if (!fs) return std::nullopt;
  mpz_class r = 0, mod_acc = 1;
  for (const auto& [p, e] : *fs) {
    if (e != 1) return std::nullopt;
    auto rp = sqrt_mod_prime(a, p);
    if (!rp) return std::nullopt;
    // Chinese remaindering of r (mod mod_acc) with rp (mod p).
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mod_acc.get_mpz_t(), p.get_mpz_t());
    r += mod_acc * mod(mpz_class((*rp - r) * inv), p);
    mod_acc *= p;
  }
  return mod(r, mod_acc);
}

std::optional<std::array<mpq_class, 3>> ternary_zero(const mpz_class& a, const mpz_class& b,
                                                     const mpz_class& c) {
  if (a == 0 || b == 0 || c == 0) return std::nullopt;
  auto sa = squarefree_split(a), sb = squarefree_split(b), sc = squarefree_split(c);
  if (!sa || !sb || !sc) return std::nullopt;
  const mpz_class fa = sa->first, fb = sb->first, fc = sc->first;
  // (fc Z)^2 = -fa fc X^2 - fb fc Y^2.
  auto sA = squarefree_split(mpz_class(-fa * fc)), sB = squarefree_split(mpz_class(-fb * fc));
  if (!sA || !sB) return std::nullopt;
  auto zero = descend(sA->first, sB->first, 0);
  if (!zero) return std::nullopt;
  mpq_class X(zero->x, sA->second), Y(zero->y, sB->second), Z(zero->z, fc);
  X.canonicalize();
  Y.canonicalize();
  Z.canonicalize();
  std::array<mpq_class, 3> out{X / sa->second, Y / sb->second, Z / sc->second};
  for (auto& v : out) v.canonicalize();
  return out;
}

}  // namespace nilqp::conic
