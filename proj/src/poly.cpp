#include "arq/poly.hpp"

#include <algorithm>

namespace arq {

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = deg(); i >= 0; --i) {
    u32 v = c[i];
    if (!v) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || v != 1) s += std::to_string(v);
    if (i > 0 && v != 1) s += "*";
    if (i > 0) s += i == 1 ? "x" : "x^" + std::to_string(i);
  }
  return s;
}

static void check_same_p(const Poly& a, const Poly& b) {
  if (a.p != b.p) throw UsageError("polynomial prime mismatch");
}

Poly operator+(const Poly& a, const Poly& b) {
  check_same_p(a, b);
  std::vector<u32> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = fp_add(a.coeff((int)i), b.coeff((int)i), a.p);
  return Poly(a.p, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  check_same_p(a, b);
  std::vector<u32> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = fp_sub(a.coeff((int)i), b.coeff((int)i), a.p);
  return Poly(a.p, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_p(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.p);
  std::vector<u32> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = (u32)((c[i + j] + (u64)a.c[i] * b.c[j]) % a.p);
  }
  return Poly(a.p, std::move(c));
}

Poly scal(u32 s, const Poly& a) {
  Poly r = a;
  s %= a.p;
  for (auto& v : r.c) v = fp_mul(v, s, a.p);
  r.normalize();
  return r;
}

Poly monic(const Poly& a) {
  if (a.is_zero()) return a;
  return scal(fp_inv(a.lead(), a.p), a);
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  check_same_p(a, b);
  if (b.is_zero()) throw UsageError("polynomial division by zero");
  Poly r = a;
  if (a.deg() < b.deg()) return {Poly(a.p), r};
  std::vector<u32> q(a.deg() - b.deg() + 1, 0);
  u32 inv = fp_inv(b.lead(), a.p);
  for (int i = a.deg(); i >= b.deg(); --i) {
    u32 cf = fp_mul(r.coeff(i), inv, a.p);
    if (!cf) continue;
    q[i - b.deg()] = cf;
    for (int j = 0; j <= b.deg(); ++j) {
      int k = i - b.deg() + j;
      r.c[k] = fp_sub(r.c[k], fp_mul(cf, b.c[j], a.p), a.p);
    }
  }
  r.normalize();
  return {Poly(a.p, std::move(q)), r};
}

Poly pmod(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly pdiv(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = pmod(x, y);
    x = y;
    y = r;
  }
  return monic(x);
}

Poly derivative(const Poly& a) {
  if (a.deg() <= 0) return Poly(a.p);
  std::vector<u32> c(a.deg(), 0);
  for (int i = 1; i <= a.deg(); ++i)
    c[i - 1] = fp_mul(a.c[i], (u32)(i % a.p), a.p);
  return Poly(a.p, std::move(c));
}

Poly pow_mod(const Poly& base, u64 e, const Poly& mod) {
  Poly r = Poly::constant(base.p, 1), b = pmod(base, mod);
  while (e) {
    if (e & 1) r = pmod(r * b, mod);
    b = pmod(b * b, mod);
    e >>= 1;
  }
  return r;
}

Mat eval_at(const Poly& f, const Mat& m) {
  if (m.rows != m.cols) throw UsageError("poly eval on non-square matrix");
  Mat acc(m.p, m.rows, m.cols);
  // Horner from the top coefficient down.
  for (int i = f.deg(); i >= 0; --i) {
    acc = acc * m;
    for (int d = 0; d < m.rows; ++d)
      acc.at(d, d) = fp_add(acc.at(d, d), f.coeff(i), m.p);
  }
  return acc;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

Poly min_poly(const Mat& m) {
  if (m.rows != m.cols) throw UsageError("min_poly of non-square matrix");
  const u32 p = m.p;
  const int n = m.rows;
  if (n == 0) return Poly::constant(p, 1);
  // Krylov on flattened powers: reduce I, m, m^2, ... until dependent,
  // tracking the combination that produced each reduced vector.
  int N = n * n;
  std::vector<std::vector<u32>> basis;       // reduced, nonzero
  std::vector<int> lead_pos;                 // leading index of each basis row
  std::vector<std::vector<u32>> combos;      // coefficients over powers
  Mat power = Mat::identity(p, n);
  for (int k = 0;; ++k) {
    std::vector<u32> v(power.e.begin(), power.e.end());
    std::vector<u32> combo(k + 1, 0);
    combo[k] = 1;
    for (size_t b = 0; b < basis.size(); ++b) {
      u32 f = v[lead_pos[b]];
      if (!f) continue;
      for (int i = 0; i < N; ++i)
        v[i] = fp_sub(v[i], fp_mul(f, basis[b][i], p), p);
      for (size_t i = 0; i < combos[b].size(); ++i)
        combo[i] = fp_sub(combo[i], fp_mul(f, combos[b][i], p), p);
    }
    int lead = -1;
    for (int i = 0; i < N; ++i)
      if (v[i]) {
        lead = i;
        break;
      }
    if (lead < 0) {
      // m^k = -sum combo[i]/combo[k] ... combo encodes the dependency:
      // sum_i combo[i] * m^i = 0 with combo[k] = 1.
      return Poly(p, std::move(combo));
    }
    u32 inv = fp_inv(v[lead], p);
    for (int i = 0; i < N; ++i) v[i] = fp_mul(v[i], inv, p);
    for (auto& cc : combo) cc = fp_mul(cc, inv, p);
    basis.push_back(std::move(v));
    lead_pos.push_back(lead);
    combos.push_back(std::move(combo));
    power = power * m;
    if (k > n) throw InternalError("min_poly failed to terminate");
  }
}

// ---- factorization ----

// p-th root of f(x) = g(x^p); over F_p the coefficient map is identity.
static Poly pth_root(const Poly& f) {
  std::vector<u32> c;
  for (int i = 0; i * (int)f.p <= f.deg(); ++i) c.push_back(f.coeff(i * (int)f.p));
  return Poly(f.p, std::move(c));
}

// Squarefree decomposition of a monic polynomial: list of (g, mult) with g
// squarefree, pairwise coprime.
static void squarefree_split(const Poly& f, int mult_scale,
                             std::vector<std::pair<Poly, int>>& out) {
  if (f.deg() <= 0) return;
  Poly fd = derivative(f);
  if (fd.is_zero()) {
    squarefree_split(pth_root(f), mult_scale * (int)f.p, out);
    return;
  }
  Poly a = gcd(f, fd);
  Poly b = pdiv(f, a);  // product of factors with multiplicity not divisible by p
  int i = 1;
  while (b.deg() > 0) {
    Poly c = gcd(a, b);
    Poly gi = pdiv(b, c);
    if (gi.deg() > 0) out.emplace_back(monic(gi), i * mult_scale);
    b = c;
    a = pdiv(a, c);
    ++i;
  }
  if (a.deg() > 0) squarefree_split(pth_root(a), mult_scale * (int)f.p, out);
}

static Poly random_poly(u32 p, int deg_below, Rng& rng) {
  std::vector<u32> c(deg_below);
  for (auto& v : c) v = rng.below(p);
  return Poly(p, std::move(c));
}

// a^((p^d - 1)/2) mod f via the norm chain a^(1 + p + ... + p^(d-1)) then
// a single power (p - 1)/2; avoids materializing p^d.
static Poly half_norm_power(const Poly& a, int d, const Poly& f) {
  Poly t = pmod(a, f);
  Poly acc = t;
  for (int k = 1; k < d; ++k) acc = pmod(pow_mod(acc, f.p, f) * t, f);
  return pow_mod(acc, (f.p - 1) / 2, f);
}

// Split a monic squarefree product of irreducibles of equal degree d.
static void equal_degree_split(const Poly& f, int d, Rng& rng,
                               std::vector<Poly>& out) {
  if (f.deg() == d) {
    out.push_back(monic(f));
    return;
  }
  const u32 p = f.p;
  for (int attempt = 0; attempt < 256; ++attempt) {
    Poly a = random_poly(p, f.deg(), rng);
    if (a.deg() < 1) continue;
    Poly b(p);
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)) mod f.
      Poly t = pmod(a, f), acc = t;
      for (int k = 1; k < d; ++k) {
        t = pmod(t * t, f);
        acc = acc + t;
      }
      b = acc;
    } else {
      b = half_norm_power(a, d, f) - Poly::constant(p, 1);
    }
    Poly g = gcd(b, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(pdiv(f, g), d, rng, out);
      return;
    }
  }
  throw InternalError("equal-degree splitting exhausted its attempts");
}

std::vector<std::pair<Poly, int>> factor_squarefree_distinct(const Poly& f,
                                                             u64 seed) {
  if (f.is_zero()) throw UsageError("cannot factor the zero polynomial");
  std::vector<std::pair<Poly, int>> result;
  Poly g0 = monic(f);
  if (g0.deg() == 0) return result;
  Rng rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);

  std::vector<std::pair<Poly, int>> squarefree;
  squarefree_split(g0, 1, squarefree);

  for (auto& [sf, mult] : squarefree) {
    // Distinct-degree: peel off products of irreducibles of degree d.
    Poly g = sf;
    Poly h = Poly::x(g.p);
    for (int d = 1; g.deg() > 0 && 2 * d <= g.deg(); ++d) {
      h = pow_mod(h, g.p, g);
      Poly gd = gcd(h - Poly::x(g.p), g);
      if (gd.deg() > 0) {
        std::vector<Poly> irr;
        equal_degree_split(gd, d, rng, irr);
        for (auto& q : irr) result.emplace_back(q, mult);
        g = pdiv(g, gd);
        h = pmod(h, g);
      }
    }
    if (g.deg() > 0) result.emplace_back(monic(g), mult);
  }

  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return result;
}

}  // namespace arq
