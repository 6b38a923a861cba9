// Exact layer: arbitrary-precision rationals (GMP) and dense rational polynomials.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hpexp/prec.hpp"

namespace hpexp {

using rat = mpq_class;

real_t to_real(const rat& r);
cnum to_cnum(const rat& r);

struct RationalPoly {
  // coeffs[k] multiplies z^k; normalized so the back is nonzero (zero poly = empty)
  std::vector<rat> coeffs;

  RationalPoly() = default;
  explicit RationalPoly(std::vector<rat> c) : coeffs(std::move(c)) { normalize(); }

  void normalize();
  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 for zero poly
  rat leading() const { return is_zero() ? rat(0) : coeffs.back(); }
  rat coeff(int k) const {
    return (k >= 0 && k < (int)coeffs.size()) ? coeffs[k] : rat(0);
  }

  RationalPoly derivative() const;
  rat eval_rat(const rat& x) const;
  // substitute z -> s*z
  RationalPoly scaled_arg(const rat& s) const;
  RationalPoly operator*(const rat& s) const;
  RationalPoly operator/(const rat& s) const;
  bool operator==(const RationalPoly& o) const { return coeffs == o.coeffs; }
};

// binomial C(n, k) as exact integer rational
rat binom(unsigned long n, unsigned long k);
rat factorial(unsigned long n);
rat pow_rat(const rat& b, long e);

// Solve the square linear system A x = b over the rationals by fraction-free
// Gaussian elimination with partial (first nonzero) pivoting.
// Returns false if singular.
bool solve_linear_rat(std::vector<std::vector<rat>> A, std::vector<rat> b,
                      std::vector<rat>& x);

std::string rat_to_string(const rat& r);

}  // namespace hpexp
