#include "hpexp/prec.hpp"

#include <cmath>
#include <sstream>

namespace hpexp {

namespace {
unsigned g_bits = 192;
}

void set_precision_bits(unsigned bits) {
  if (bits < 64) bits = 64;
  g_bits = bits;
  // digits10; +3 so we never round below the requested bit count
  unsigned digits = static_cast<unsigned>(std::ceil(bits * 0.30103)) + 3;
  real_t::default_precision(digits);
}

unsigned precision_bits() { return g_bits; }

real_t pi() {
  real_t p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

cnum operator/(const cnum& a, const cnum& b) {
  // Smith's algorithm, avoids overflow/underflow of naive norm division
  if (boost::multiprecision::abs(b.re) >= boost::multiprecision::abs(b.im)) {
    real_t r = b.im / b.re;
    real_t d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  real_t r = b.re / b.im;
  real_t d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

real_t abs(const cnum& a) { return boost::multiprecision::hypot(a.re, a.im); }

real_t arg(const cnum& a) { return boost::multiprecision::atan2(a.im, a.re); }

cnum sqrt(const cnum& a) {
  using boost::multiprecision::sqrt;
  using boost::multiprecision::abs;
  if (a.im == 0 && a.re >= 0) return {sqrt(a.re), real_t(0)};
  real_t m = hpexp::abs(a);
  real_t u = sqrt((m + a.re) / 2);
  real_t v = sqrt((m - a.re) / 2);
  if (a.im < 0) v = -v;
  if (u == 0 && a.im == 0) return {real_t(0), sqrt(-a.re)};  // negative real axis: +i sqrt
  return {u, v};
}

cnum exp(const cnum& a) {
  using boost::multiprecision::exp;
  real_t m = exp(a.re);
  real_t c = boost::multiprecision::cos(a.im), s = boost::multiprecision::sin(a.im);
  return {m * c, m * s};
}

cnum log(const cnum& a) { return {boost::multiprecision::log(abs(a)), arg(a)}; }

cnum pow(const cnum& a, const real_t& p) { return exp(cnum(p) * log(a)); }

cnum polar(const real_t& rho, const real_t& theta) {
  return {rho * boost::multiprecision::cos(theta), rho * boost::multiprecision::sin(theta)};
}

std::string to_decimal(const real_t& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

std::string to_decimal(const cnum& z, int digits) {
  return to_decimal(z.re, digits) + (z.im < 0 ? "" : "+") + to_decimal(z.im, digits) + "i";
}

}  // namespace hpexp
