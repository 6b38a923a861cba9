// Numeric foundation: runtime-precision MPFR reals and a complex type on top.
// libmpc is not assumed; the handful of complex transcendentals we need are
// built from real MPFR operations.
#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>

namespace hpexp {

using real_t = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

// Global working precision, in bits.  Internally we carry guard bits on top of
// what the caller asks for.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

// RAII scope for temporarily raising/lowering the working precision.
struct PrecisionScope {
  unsigned saved;
  explicit PrecisionScope(unsigned bits) : saved(precision_bits()) { set_precision_bits(bits); }
  ~PrecisionScope() { set_precision_bits(saved); }
};

real_t pi();

struct cnum {
  real_t re, im;
  cnum() : re(0), im(0) {}
  cnum(const real_t& r) : re(r), im(0) {}
  cnum(const real_t& r, const real_t& i) : re(r), im(i) {}
  cnum(double r) : re(r), im(0) {}
  cnum(double r, double i) : re(r), im(i) {}
  cnum(int r) : re(r), im(0) {}
};

inline cnum operator+(const cnum& a, const cnum& b) { return {a.re + b.re, a.im + b.im}; }
inline cnum operator-(const cnum& a, const cnum& b) { return {a.re - b.re, a.im - b.im}; }
inline cnum operator-(const cnum& a) { return {-a.re, -a.im}; }
inline cnum operator*(const cnum& a, const cnum& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cnum operator*(const real_t& s, const cnum& a) { return {s * a.re, s * a.im}; }
inline cnum operator*(const cnum& a, const real_t& s) { return {s * a.re, s * a.im}; }
cnum operator/(const cnum& a, const cnum& b);
inline cnum operator/(const cnum& a, const real_t& s) { return {a.re / s, a.im / s}; }
inline cnum& operator+=(cnum& a, const cnum& b) { a.re += b.re; a.im += b.im; return a; }
inline cnum& operator-=(cnum& a, const cnum& b) { a.re -= b.re; a.im -= b.im; return a; }
inline cnum& operator*=(cnum& a, const cnum& b) { a = a * b; return a; }
inline bool operator==(const cnum& a, const cnum& b) { return a.re == b.re && a.im == b.im; }

inline cnum conj(const cnum& a) { return {a.re, -a.im}; }
inline real_t norm2(const cnum& a) { return a.re * a.re + a.im * a.im; }
real_t abs(const cnum& a);
real_t arg(const cnum& a);
cnum sqrt(const cnum& a);   // principal branch
cnum exp(const cnum& a);
cnum log(const cnum& a);    // principal branch
cnum pow(const cnum& a, const real_t& p);  // exp(p * Log a), principal
cnum polar(const real_t& rho, const real_t& theta);

// Deterministic ordering used everywhere results are sorted.
inline bool lex_less(const cnum& a, const cnum& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

// Decimal rendering with a fixed significant-digit count (deterministic output).
std::string to_decimal(const real_t& x, int digits = 30);
std::string to_decimal(const cnum& z, int digits = 30);

}  // namespace hpexp
