#pragma once

#include "arq/field.hpp"

// Univariate polynomials over F_p, plus the two consumers the rest of the
// library needs: minimal polynomials of matrices and full factorization into
// irreducibles (squarefree split, distinct-degree, then seeded equal-degree
// splitting).

namespace arq {

struct Poly {
  u32 p = 0;
  std::vector<u32> c;  // c[i] is the coefficient of x^i; no trailing zeros

  Poly() = default;
  explicit Poly(u32 p_) : p(p_) {}
  Poly(u32 p_, std::vector<u32> coeffs) : p(p_), c(std::move(coeffs)) {
    normalize();
  }

  static Poly x(u32 p) { return Poly(p, {0, 1 % p}); }
  static Poly constant(u32 p, u32 v) { return Poly(p, {v % p}); }

  int deg() const { return (int)c.size() - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c.empty(); }
  u32 coeff(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : 0; }
  u32 lead() const { return c.empty() ? 0 : c.back(); }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool operator==(const Poly& o) const { return p == o.p && c == o.c; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Human-readable form like "x^2 + 3*x + 1".
  std::string str() const;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly scal(u32 c, const Poly& a);
Poly monic(const Poly& a);
// Quotient and remainder; b nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly pmod(const Poly& a, const Poly& b);
Poly pdiv(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic
Poly derivative(const Poly& a);
Poly pow_mod(const Poly& base, u64 e, const Poly& mod);

// Evaluate at a square matrix.
Mat eval_at(const Poly& f, const Mat& m);

// Total ordering used for canonical factor lists: degree first, then
// coefficients from the constant term up.
bool poly_less(const Poly& a, const Poly& b);

// Minimal polynomial via Krylov iteration on matrix powers. Monic; the zero
// 0x0 matrix gets minimal polynomial 1.
Poly min_poly(const Mat& m);

// Monic irreducible factors with multiplicities, sorted by poly_less.
// Randomized splitting steps are driven entirely by the seed.
std::vector<std::pair<Poly, int>> factor_squarefree_distinct(const Poly& f,
                                                             u64 seed);

}  // namespace arq
