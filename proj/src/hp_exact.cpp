#include "hpexp/hp_exact.hpp"

#include <cassert>

namespace hpexp {

namespace {

// index of the designated (monic) polynomial: 0 = p, 1 = q, 2 = r
int designated(Normalization n) {
  switch (n) {
    case Normalization::p_monic_scaled: return 0;
    case Normalization::q_monic_scaled: return 1;
    default: return 2;
  }
}

}  // namespace

HPTriple solve_hp_system(int n1, int n2, int n3, Normalization norm, long scale) {
  if (n1 < 0 || n2 < 0 || n3 < 0) throw std::invalid_argument("negative index");
  const int deg[3] = {n1, n2, n3};
  const int des = designated(norm);
  const int neq = n1 + n2 + n3 + 2;  // Taylor coefficients 0 .. neq-1 vanish

  // Unknowns: all coefficients except the designated leading one (fixed to 1).
  // Column layout: p_0..p_n1, q_0..q_n2, r_0..r_n3 with the designated leading skipped.
  struct Col { int poly, k; };
  std::vector<Col> cols;
  for (int poly = 0; poly < 3; ++poly)
    for (int k = 0; k <= deg[poly]; ++k)
      if (!(poly == des && k == deg[poly])) cols.push_back({poly, k});
  assert((int)cols.size() == neq);

  // Taylor coefficient of z^m in z^k e^{sign z} is sign^{m-k}/(m-k)!
  auto weight = [](int poly, int k, int m) -> rat {
    if (m < k) return 0;
    int d = m - k;
    rat w = rat(1) / factorial(d);
    if (poly == 0 && (d & 1)) w = -w;  // e^{-z}
    if (poly == 1) return k == m ? rat(1) : rat(0);
    return w;
  };

  std::vector<std::vector<rat>> A(neq, std::vector<rat>(neq, rat(0)));
  std::vector<rat> b(neq, rat(0));
  for (int m = 0; m < neq; ++m) {
    for (int j = 0; j < neq; ++j) A[m][j] = weight(cols[j].poly, cols[j].k, m);
    b[m] = -weight(des, deg[des], m);  // move the fixed monic term to the RHS
  }

  std::vector<rat> x;
  if (!solve_linear_rat(std::move(A), std::move(b), x))
    throw degenerate_normalization("hp system singular for chosen normalization");

  std::vector<rat> c[3];
  for (int poly = 0; poly < 3; ++poly) c[poly].assign(deg[poly] + 1, rat(0));
  c[des][deg[des]] = 1;
  for (int j = 0; j < neq; ++j) c[cols[j].poly][cols[j].k] = x[j];

  HPTriple t;
  t.n1 = n1; t.n2 = n2; t.n3 = n3;
  t.normalization = norm;
  t.scale = scale;
  t.p = RationalPoly(std::move(c[0]));
  t.q = RationalPoly(std::move(c[1]));
  t.r = RationalPoly(std::move(c[2]));

  RationalPoly* polys[3] = {&t.p, &t.q, &t.r};
  if (polys[des]->degree() != deg[des])
    throw degenerate_normalization("designated leading coefficient vanished");
  if (scale != 1) {
    // substitute z -> scale*z, then renormalize so the designated scaled poly is monic
    rat s(scale);
    rat lead = pow_rat(s, deg[des]);  // new leading coeff of the designated poly
    for (auto* pp : polys) *pp = pp->scaled_arg(s) / lead;
  }
  return t;
}

HPTriple residue_polynomials(int n) {
  if (n < 1) throw std::invalid_argument("residue_polynomials requires n >= 1");
  const rat C = factorial(n) * rat((n % 2 == 0) ? -1 : 1) / pow_rat(rat(3) * n, n);
  const rat three_n(3 * (long)n);

  // Q_n(z) = C (-1)^{n+1} sum_{2j<=n} C(n+j,j) (3nz)^{n-2j} / (n-2j)!
  std::vector<rat> qc(n + 1, rat(0));
  {
    rat sgn = (n % 2 == 0) ? rat(-1) : rat(1);
    for (int j = 0; 2 * j <= n; ++j) {
      int k = n - 2 * j;
      qc[k] = C * sgn * binom(n + j, j) * pow_rat(three_n, k) / factorial(k);
    }
  }

  // S_m = sum_{j1+j2=m} C(n+j1,j1) C(n+j2,j2) 2^{-j2}
  std::vector<rat> S(n + 1, rat(0));
  for (int m = 0; m <= n; ++m)
    for (int j2 = 0; j2 <= m; ++j2)
      S[m] += binom(n + m - j2, m - j2) * binom(n + j2, j2) / pow_rat(rat(2), j2);

  // P_n(z) = C 2^{-(n+1)} sum_k (3nz)^k/k! S_{n-k}
  // R_n(z) = C 2^{-(n+1)} sum_k (3nz)^k/k! (-1)^{n-k} S_{n-k}
  std::vector<rat> pc(n + 1), rc(n + 1);
  const rat half_pow = rat(1) / pow_rat(rat(2), n + 1);
  for (int k = 0; k <= n; ++k) {
    rat base = C * half_pow * pow_rat(three_n, k) / factorial(k) * S[n - k];
    pc[k] = base;
    rc[k] = ((n - k) % 2 == 0) ? base : -base;
  }

  HPTriple t;
  t.n1 = t.n2 = t.n3 = n;
  t.normalization = Normalization::q_monic_scaled;
  t.scale = 3 * (long)n;
  t.p = RationalPoly(std::move(pc));
  t.q = RationalPoly(std::move(qc));
  t.r = RationalPoly(std::move(rc));
  return t;
}

RemainderSeries remainder_series(const HPTriple& t, int K) {
  const int order = t.order();
  if (K < order) throw std::invalid_argument("K below vanishing order");
  const rat s(t.scale);

  std::vector<rat> e(K + 1, rat(0));
  // exp powers: ep[d] = s^d/d!
  std::vector<rat> ep(K + 1);
  ep[0] = 1;
  for (int d = 1; d <= K; ++d) ep[d] = ep[d - 1] * s / d;

  for (int k = 0; k <= K; ++k) {
    rat acc = t.q.coeff(k);
    for (int j = 0; j <= std::min(k, t.p.degree()); ++j) {
      rat w = t.p.coeff(j) * ep[k - j];
      acc += ((k - j) & 1) ? -w : w;  // e^{-sz}
    }
    for (int j = 0; j <= std::min(k, t.r.degree()); ++j) acc += t.r.coeff(j) * ep[k - j];
    e[k] = acc;
  }

  for (int k = 0; k < order; ++k)
    if (e[k] != 0) throw std::logic_error("remainder order condition violated");

  RemainderSeries rs;
  rs.order0 = order;
  rs.coeffs.assign(e.begin() + order, e.end());
  return rs;
}

cnum eval_poly(const RationalPoly& poly, const cnum& z, unsigned precision_bits_) {
  PrecisionScope ps(precision_bits_ + 32);
  cnum zz = z;  // re-rounded at the scoped precision on use
  cnum acc(0);
  for (size_t k = poly.coeffs.size(); k-- > 0;) acc = acc * zz + to_cnum(poly.coeffs[k]);
  return acc;
}

Mat3 build_Y(int n, const cnum& z, YSide side, unsigned bits) {
  if (n < 1) throw std::invalid_argument("build_Y requires n >= 1");
  const long s = 3 * (long)n;
  HPTriple rows[3] = {
      solve_hp_system(n + 1, n - 1, n, Normalization::p_monic_scaled, s),
      residue_polynomials(n),
      solve_hp_system(n, n - 1, n + 1, Normalization::r_monic_scaled, s),
  };

  PrecisionScope ps(bits + 64);
  Mat3 Y;
  const cnum zinv_pow = pow(z, real_t(-(3 * n + 2)));  // z^{-3n-2}, principal power
  for (int i = 0; i < 3; ++i) {
    const HPTriple& t = rows[i];
    Y[i][0] = eval_poly(t.p, z, bits + 32);
    Y[i][2] = eval_poly(t.r, z, bits + 32);
    if (side == YSide::outside) {
      Y[i][1] = zinv_pow * eval_poly(t.q, z, bits + 32);
    } else {
      // z^{-3n-2} E(z) with E evaluated from the three-term representation
      cnum es = cnum(real_t(s)) * z;
      cnum E = Y[i][0] * exp(-es) + eval_poly(t.q, z, bits + 32) + Y[i][2] * exp(es);
      Y[i][1] = zinv_pow * E;
    }
  }
  return Y;
}

cnum det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace hpexp
