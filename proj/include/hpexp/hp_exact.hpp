// Exact Hermite-Pade layer: the polynomial triples p e^{-z} + q + r e^{z} = O(z^{n1+n2+n3+2}),
// computed by two independent routes (linear system / residue expansion), the remainder
// Taylor series, and the 3x3 Y-matrix they solve.
#pragma once

#include <array>
#include <stdexcept>

#include "hpexp/rat.hpp"

namespace hpexp {

enum class Normalization { q_monic_scaled, p_monic_scaled, r_monic_scaled };

struct HPTriple {
  int n1 = 0, n2 = 0, n3 = 0;
  RationalPoly p, q, r;  // stored in the scaled variable when scale > 1
  Normalization normalization = Normalization::q_monic_scaled;
  long scale = 1;  // substitution factor: stored polys are p(scale*z) etc., renormalized

  int order() const { return n1 + n2 + n3 + 2; }  // vanishing order of the remainder at 0
};

struct RemainderSeries {
  int order0 = 0;           // index of the first stored coefficient (= n1+n2+n3+2)
  std::vector<rat> coeffs;  // Taylor coefficients of E on [order0, K]
  rat coeff(int k) const {
    int i = k - order0;
    return (i >= 0 && i < (int)coeffs.size()) ? coeffs[i] : rat(0);
  }
};

struct degenerate_normalization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unique triple with the designated scaled polynomial monic, via the linear system of
// vanishing Taylor coefficients.  scale is the substitution factor (3n for the paper's
// scaled diagonals); scale = 1 keeps the natural variable.
HPTriple solve_hp_system(int n1, int n2, int n3, Normalization norm, long scale = 1);

// Scaled diagonal P_n, Q_n, R_n (indices n,n,n, scale 3n, Q_n monic) via residue
// expansion of C e^{3nzw} / [w(w^2-1)]^{n+1} at w = -1, 0, 1.
HPTriple residue_polynomials(int n);

// Exact Taylor coefficients of E(z) = p(z)e^{-sz} + q(z) + r(z)e^{sz} on [order, K];
// coefficients below the order are computed and asserted to vanish.
RemainderSeries remainder_series(const HPTriple& t, int K);

// Horner evaluation at extended precision (guard bits on top of precision_bits).
cnum eval_poly(const RationalPoly& poly, const cnum& z, unsigned precision_bits_);

using Mat3 = std::array<std::array<cnum, 3>, 3>;

enum class YSide { inside, outside };

Mat3 build_Y(int n, const cnum& z, YSide side, unsigned precision_bits_);

cnum det3(const Mat3& m);

}  // namespace hpexp
