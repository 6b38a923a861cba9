// The asymptotic predictions: strong (one-term), multi-term near the curves,
// Airy-type near the branch point z_1, extreme-zero locations, and the
// algebraic approximant built from the exact polynomials.
#pragma once

#include "hpexp/geometry.hpp"

namespace hpexp {

struct region_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AiryValue {
  cnum argument;
  cnum ai;
  cnum ai_prime;
};

// Ai and Ai' by Maclaurin series for |z| <= 8 and by the asymptotic expansion
// (with the rotation identity for Re z < 0) beyond.
AiryValue airy(const cnum& z, unsigned bits);

// nu-th positive number iota_nu with Ai(-iota_nu) = 0.
real_t airy_zero(int nu, unsigned bits);

enum class Target { P, Q, R, E };
enum class Regime { strong, two_term, airy_local };

struct AsymptoticPrediction {
  Target target;
  Regime regime;
  cnum value;  // predicted value of P_n / Q_n / R_n / E_n itself
  RegionTag region;
  int n;
};

AsymptoticPrediction strong_asymptotic(const cnum& z, int n, Target t, const Geometry& geom);
AsymptoticPrediction two_term_asymptotic(const cnum& z, int n, Target t, const Geometry& geom);

// Airy-local prediction near z_1 (|z - z_1| < delta); targets P, Q, E.
AsymptoticPrediction airy_local(const cnum& z, int n, Target t, const Geometry& geom,
                                double delta = 0.1);

// Conformal coordinate f_1 = [(3/2) phi_P]^{2/3} near z_1 (real negative on the
// cut arc), and the amplitude pair (h_1, h_2) built from N_21, N_22, f_1^{1/4}.
cnum f1_coordinate(const cnum& z, const Geometry& geom);
std::array<cnum, 2> h12(const cnum& z, const Geometry& geom);

// Predicted nu-th zero near z_1: z_1 - rot_t * iota_nu / f_1'(z_1) * n^{-2/3}.
cnum predicted_extreme_zero(int n, int nu, Target t, unsigned bits);

// Root of P_n + Q_n X + R_n X^2 = 0 close to e^{3nz}: sign + in D_P, - in D_R,
// with sqrt(Q^2-4PR) taken close to Q.  Refuses outside D_P and D_R and near
// the imaginary axis (no convergence there).
cnum algebraic_approximant(const cnum& z, int n, const Geometry& geom, unsigned bits);

}  // namespace hpexp
