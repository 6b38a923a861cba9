#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <vector>

#include "hpexp/asymptotics.hpp"
#include "hpexp/curves.hpp"
#include "hpexp/hp_exact.hpp"
#include "hpexp/zeros.hpp"

using namespace hpexp;

namespace {
double d(const real_t& x) { return x.convert_to<double>(); }

cnum exact_value(Target t, int n, const cnum& z, unsigned bits) {
  if (t == Target::E) return EnEvaluator(n, bits).eval(z);
  HPTriple tr = residue_polynomials(n);
  unsigned hb = bits + (unsigned)(4.33 * n * d(abs(z))) + 3 * n + 64;
  const RationalPoly& poly = (t == Target::P) ? tr.p : (t == Target::Q) ? tr.q : tr.r;
  return eval_poly(poly, z, hb);
}

double rel(const cnum& pred, const cnum& exact) { return d(abs(pred - exact) / abs(exact)); }
}  // namespace

TEST_CASE("Airy function against frozen references") {
  set_precision_bits(192);
  AiryValue a0 = airy(cnum(0), 160);
  CHECK(d(abs(a0.ai.re - real_t("0.35502805388781723926"))) < 1e-19);
  CHECK(d(abs(a0.ai_prime.re + real_t("0.25881940379280679840"))) < 1e-19);
  CHECK(d(abs(airy(cnum(1.0), 160).ai.re - real_t("0.13529241631288141552"))) < 1e-19);
  CHECK(d(abs(airy(cnum(-5.0), 160).ai.re - real_t("0.35076100902411431978"))) < 1e-18);
  CHECK(d(abs(airy_zero(1, 160) - real_t("2.33810741045976703849"))) < 1e-19);
  CHECK(d(abs(airy_zero(2, 160) - real_t("4.08794944413097061664"))) < 1e-19);
}

TEST_CASE("Airy rotation identity and ODE hold across the evaluation regimes") {
  set_precision_bits(192);
  cnum om = polar(real_t(1), 2 * pi() / 3);
  // Ai(z) + om Ai(om z) + om^2 Ai(om^2 z) = 0 mixes the series and asymptotic
  // branches once |z| straddles the switchover radius
  for (auto xy : std::vector<std::array<double, 2>>{{2.0, 0.0}, {1.0, 1.0}, {8.0, 4.0}, {-10.0, 1.0}}) {
    cnum z(xy[0], xy[1]);
    cnum s = airy(z, 224).ai + om * airy(om * z, 224).ai + om * om * airy(om * om * z, 224).ai;
    CHECK(d(abs(s)) < 1e-25);
  }
  // Ai'' = z Ai by high-precision second differences
  real_t h(1e-6);
  for (double x : {-1.3, 0.4, 2.2}) {
    cnum z(x);
    cnum second =
        (airy(z + cnum(h), 224).ai - real_t(2) * airy(z, 224).ai + airy(z - cnum(h), 224).ai) /
        (h * h);
    CHECK(d(abs(second - z * airy(z, 224).ai)) < 1e-10);
  }
}

TEST_CASE("strong asymptotics converge at interior probes") {
  set_precision_bits(256);
  const Geometry& g = shared_geometry();
  struct Probe {
    Target t;
    cnum z;
    double tol24;
  };
  const std::vector<Probe> probes = {{Target::P, cnum(2.0, 0.0), 5e-3},
                                     {Target::Q, cnum(2.0, 0.0), 5e-3},
                                     {Target::R, cnum(-2.0, 0.0), 5e-3},
                                     {Target::E, cnum(-0.3, 0.0), 1e-1}};
  for (const Probe& pr : probes) {
    double r16 = rel(strong_asymptotic(pr.z, 16, pr.t, g).value, exact_value(pr.t, 16, pr.z, 256));
    double r24 = rel(strong_asymptotic(pr.z, 24, pr.t, g).value, exact_value(pr.t, 24, pr.z, 256));
    CHECK(r24 < pr.tol24);
    CHECK(r24 < r16);
  }
  // on a curve the one-term formula is undefined
  CHECK_THROWS_AS(
      strong_asymptotic(g.gammaP.nodes[g.gammaP.nodes.size() / 2].z, 16, Target::P, g),
      region_mismatch);
}

TEST_CASE("two-term asymptotics at a generic interior point") {
  set_precision_bits(256);
  const Geometry& g = shared_geometry();
  cnum z(0.8, 0.9);
  int n = 24;
  for (Target t : {Target::P, Target::Q, Target::R, Target::E}) {
    double r = rel(two_term_asymptotic(z, n, t, g).value, exact_value(t, n, z, 256));
    CHECK(r < 2e-2);
  }
}

TEST_CASE("two-term boundary form on the cut itself") {
  set_precision_bits(256);
  const Geometry& g = shared_geometry();
  int n = 24;
  cnum zp = g.gammaP.nodes[g.gammaP.nodes.size() / 2].z;
  CHECK(rel(two_term_asymptotic(zp, n, Target::P, g).value, exact_value(Target::P, n, zp, 256)) <
        0.1);
  cnum zr = g.gammaR.nodes[g.gammaR.nodes.size() / 2].z;
  CHECK(rel(two_term_asymptotic(zr, n, Target::R, g).value, exact_value(Target::R, n, zr, 256)) <
        0.1);
  // no boundary form for Q on the cut
  CHECK_THROWS_AS(two_term_asymptotic(zp, n, Target::Q, g), region_mismatch);
}

TEST_CASE("Airy-local regime near the branch point") {
  set_precision_bits(256);
  const Geometry& g = shared_geometry();
  int n = 30;
  cnum z1 = g.bp.z[0];
  for (double th : {0.3, 2.0, 4.0, 5.5}) {
    cnum z = z1 + polar(real_t(0.05), real_t(th));
    for (Target t : {Target::P, Target::Q, Target::E}) {
      double r = rel(airy_local(z, n, t, g).value, exact_value(t, n, z, 256));
      CHECK(r < 0.05);
    }
    CHECK_THROWS_AS(airy_local(z, n, Target::R, g), region_mismatch);
  }
  // outside the local disk the regime refuses
  CHECK_THROWS_AS(airy_local(z1 + cnum(real_t(0.5)), n, Target::P, g), region_mismatch);
}

TEST_CASE("conformal coordinate f_1 linearizes with slope c_1") {
  set_precision_bits(192);
  const Geometry& g = shared_geometry();
  cnum z1 = g.bp.z[0];
  // frozen oracle: c_1 = 2^{1/3} 3^{5/12} e^{-7 pi i/36}
  cnum c1 = pow(real_t(2), real_t(1) / 3) * pow(real_t(3), real_t(5) / 12) *
            polar(real_t(1), -7 * pi() / 36);
  for (double th : {0.9, 2.7, 4.9}) {
    cnum dz = polar(real_t(1e-3), real_t(th));
    cnum ratio = f1_coordinate(z1 + dz, g) / (c1 * dz);
    CHECK(d(abs(ratio - cnum(1))) < 1e-2);
  }
}

TEST_CASE("extreme-zero prediction: direction and n^{-2/3} scaling") {
  set_precision_bits(192);
  const Geometry& g = shared_geometry();
  cnum z1 = g.bp.z[0];
  struct Row {
    Target t;
    double theta;  // departure angle from z_1
  };
  const std::vector<Row> rows = {{Target::P, -29 * M_PI / 36},
                                 {Target::Q, -5 * M_PI / 36},
                                 {Target::E, 19 * M_PI / 36}};
  for (const Row& r : rows) {
    cnum p24 = predicted_extreme_zero(24, 1, r.t, 192);
    cnum p48 = predicted_extreme_zero(48, 1, r.t, 192);
    cnum d24 = p24 - z1, d48 = p48 - z1;
    CHECK(d(abs(arg(d24) - real_t(r.theta))) < 1e-8);
    // displacement scales as n^{-2/3}
    CHECK(d(abs(abs(d24) / abs(d48) - pow(real_t(2), real_t(2) / 3))) < 1e-10);
    // second zero sits further out by iota_2/iota_1
    cnum p24b = predicted_extreme_zero(24, 2, r.t, 192);
    real_t want = airy_zero(2, 192) / airy_zero(1, 192);
    CHECK(d(abs(abs(p24b - z1) / abs(d24) - want)) < 1e-10);
  }
  CHECK_THROWS_AS(predicted_extreme_zero(24, 1, Target::R, 192), std::invalid_argument);
}

TEST_CASE("algebraic approximant tracks e^{3nz} in the bounded regions") {
  set_precision_bits(256);
  const Geometry& g = shared_geometry();
  for (auto xy : std::vector<std::array<double, 2>>{{-0.3, 0.0}, {0.3, 0.0}, {-0.25, 0.3}}) {
    cnum z(xy[0], xy[1]);
    for (int n : {20, 40}) {
      cnum X = algebraic_approximant(z, n, g, 256);
      cnum dev = X * exp(real_t(-3 * n) * z) - cnum(1);
      CHECK(d(abs(dev)) < 0.5 / n);
    }
  }
  // refuses outside D_P / D_R and near the imaginary axis
  CHECK_THROWS_AS(algebraic_approximant(cnum(2.0, 0.0), 20, g, 256), region_mismatch);
  CHECK_THROWS_AS(algebraic_approximant(cnum(0.01, 0.1), 20, g, 256), region_mismatch);
}
