#include "hpexp/rat.hpp"

#include <stdexcept>

namespace hpexp {

real_t to_real(const rat& r) {
  real_t x;
  mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
  return x;
}

cnum to_cnum(const rat& r) { return cnum(to_real(r)); }

void RationalPoly::normalize() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

RationalPoly RationalPoly::derivative() const {
  std::vector<rat> d;
  for (size_t k = 1; k < coeffs.size(); ++k) d.push_back(rat((long)k) * coeffs[k]);
  return RationalPoly(std::move(d));
}

rat RationalPoly::eval_rat(const rat& x) const {
  rat acc = 0;
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

RationalPoly RationalPoly::scaled_arg(const rat& s) const {
  std::vector<rat> c = coeffs;
  rat p = 1;
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] *= p;
    p *= s;
  }
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::operator*(const rat& s) const {
  std::vector<rat> c = coeffs;
  for (auto& q : c) q *= s;
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::operator/(const rat& s) const {
  if (s == 0) throw std::invalid_argument("division of polynomial by zero");
  std::vector<rat> c = coeffs;
  for (auto& q : c) q /= s;
  return RationalPoly(std::move(c));
}

rat binom(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return rat(b);
}

rat factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return rat(f);
}

rat pow_rat(const rat& b, long e) {
  if (e == 0) return 1;
  rat base = e > 0 ? b : rat(1) / b;
  unsigned long m = e > 0 ? e : -e;
  rat acc = 1;
  while (m) {
    if (m & 1) acc *= base;
    base *= base;
    m >>= 1;
  }
  return acc;
}

bool solve_linear_rat(std::vector<std::vector<rat>> A, std::vector<rat> b,
                      std::vector<rat>& x) {
  const size_t n = A.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = col + 1; r < n; ++r) {
      if (A[r][col] == 0) continue;
      rat f = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, rat(0));
  for (size_t r = n; r-- > 0;) {
    rat acc = b[r];
    for (size_t c = r + 1; c < n; ++c) acc -= A[r][c] * x[c];
    x[r] = acc / A[r][r];
  }
  return true;
}

std::string rat_to_string(const rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace hpexp
