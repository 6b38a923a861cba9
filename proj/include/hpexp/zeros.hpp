// High-precision zero finding: Aberth-Ehrlich simultaneous iteration for polynomials,
// argument-principle box search for the entire remainder E_n, and empirical-vs-limit
// measure comparison.
#pragma once

#include <optional>

#include "hpexp/hp_exact.hpp"

namespace hpexp {

struct Geometry;  // defined in geometry.hpp
struct CurveTrace;

// Roots of sum a_k z^k (a.back() != 0) by Aberth-Ehrlich from a deterministically
// jittered circle start, Newton-polished; sorted by (Re, Im).
std::vector<cnum> aberth_roots(const std::vector<cnum>& a, unsigned bits);

enum class ZeroTarget { P, Q, R, E };

struct ZeroSet {
  ZeroTarget target = ZeroTarget::P;
  int n = 0;
  std::vector<cnum> zeros;
  std::vector<int> mult;
  std::vector<real_t> residual;  // certified |f(zero)| bound, relative to coefficient scale
};

ZeroSet poly_roots(const RationalPoly& poly, unsigned bits);

// E_n evaluated at extended precision. Uses the exact Taylor series (adaptive length)
// for small |z| and the three-term polynomial-exponential form otherwise.
struct EnEvaluator {
  explicit EnEvaluator(int n_, unsigned bits_);
  int n;
  unsigned bits;
  HPTriple triple;
  RationalPoly dp, dq, dr;       // derivatives of the triple
  std::vector<rat> series;       // Taylor coefficients from order 3n+2 upward
  std::vector<real_t> series_f;  // same, rounded once at series_bits
  unsigned series_bits = 0;
  cnum eval(const cnum& z) const;
  cnum deriv(const cnum& z) const;
  int winding(const cnum& center, const real_t& radius) const;  // zeros inside circle
};

struct Box {
  real_t x0, x1, y0, y1;
};

// All zeros of E_n in the box (excluding the origin's interpolatory zero through
// an exclusion disk), by adaptive argument-principle subdivision + Newton.
ZeroSet entire_zeros_in_box(int n, const Box& box, unsigned bits,
                            const real_t& origin_exclusion = real_t(1) / 5);

struct DiscrepancyReport {
  real_t max_dist;        // max distance from a zero to the carrier arc
  real_t kolmogorov;      // sup |empirical counting - mu mass| along the arc
  real_t weighted_total;  // for E_n: sum 1/|s|^2 over zeros / n, vs the mu_E integral
};

DiscrepancyReport empirical_vs_limit(const ZeroSet& zs, const Geometry& geom);

// distance from z to a polyline
real_t dist_to_polyline(const cnum& z, const std::vector<cnum>& nodes);

}  // namespace hpexp
