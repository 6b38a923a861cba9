#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <vector>

#include "hpexp/curves.hpp"
#include "hpexp/surface.hpp"

using namespace hpexp;

namespace {
double d(const real_t& x) { return x.convert_to<double>(); }
}  // namespace

TEST_CASE("branch points match the closed forms") {
  set_precision_bits(192);
  BranchData bd = branch_points();
  // frozen oracle: z_1 = 3^{-1/4} e^{7 pi i / 12}
  CHECK(d(abs(bd.z[0] - cnum(real_t("-0.19665994659516431958"),
                             real_t("0.73394491250693527936")))) < 1e-18);
  // z_2 = conj z_1, z_3 = -z_1... the four form a conjugate/mirror quadruple
  CHECK(d(abs(bd.z[1] - conj(bd.z[0]))) < 1e-30);
  CHECK(d(abs(bd.z[2] + bd.z[0]))  < 1e-30);
  CHECK(d(abs(bd.z[3] + bd.z[1]))  < 1e-30);
  for (int k = 0; k < 4; ++k) {
    // w_k has modulus 3^{-1/4} and is a critical point of the degree-3 map
    CHECK(d(abs(abs(bd.w[k]) - pow(real_t(3), real_t(-0.25)))) < 1e-40);
    CHECK(d(abs(zmap_deriv(bd.w[k]))) < 1e-40);
    CHECK(d(abs(zmap(bd.w[k]) - bd.z[k])) < 1e-40);
  }
}

TEST_CASE("cubic solver: residuals, root sum identity, pole at z = 0") {
  set_precision_bits(192);
  for (auto xy : std::vector<std::array<double, 2>>{{0.7, 0.3}, {-1.2, 0.5}, {2.0, -3.0}}) {
    cnum z(xy[0], xy[1]);
    auto roots = solve_cubic(z, 192);
    cnum sum(0);
    for (const cnum& w : roots) {
      cnum resid = z * w * w * w - w * w - z * w + cnum(real_t(1) / 3);
      CHECK(d(abs(resid)) < 1e-28);
      sum = sum + w;
    }
    // w1 + w2 + w3 = 1/z from the cubic's coefficients
    CHECK(d(abs(sum - cnum(1) / z)) < 1e-28);
  }
  CHECK_THROWS_AS(solve_cubic(cnum(0), 192), std::invalid_argument);
}

TEST_CASE("sheet labels: behaviour at infinity and conjugation symmetry") {
  set_precision_bits(192);
  const Geometry& g = shared_geometry();
  cnum Z(1000.0, 0.0);
  CHECK(d(abs(psi(Z, Sheet::P, g).w + cnum(1))) < 1e-2);
  CHECK(d(abs(psi(Z, Sheet::Q, g).w)) < 1e-2);
  CHECK(d(abs(psi(Z, Sheet::R, g).w - cnum(1))) < 1e-2);
  for (Sheet s : {Sheet::P, Sheet::Q, Sheet::R}) {
    cnum z(0.8, 0.9);
    CHECK(d(abs(conj(psi(z, s, g).w) - psi(conj(z), s, g).w)) < 1e-30);
  }
}

TEST_CASE("cut square root: square identity, normalization, sign at 0") {
  set_precision_bits(192);
  const Geometry& g = shared_geometry();
  for (auto xy : std::vector<std::array<double, 2>>{{1.3, 0.0}, {0.2, 0.4}, {-0.8, -0.6}}) {
    cnum w(xy[0], xy[1]);
    cnum s = sqrt_3w4p1(w, g);
    CHECK(d(abs(s * s - (real_t(3) * w * w * w * w + cnum(1)))) < 1e-30);
  }
  CHECK(sqrt_3w4p1(cnum(10.0, 0.0), g).re > 0);
  CHECK(d(abs(sqrt_3w4p1(cnum(0), g) + cnum(1))) < 1e-30);
}

TEST_CASE("outer parametrix: N -> I at infinity and det N = 1") {
  set_precision_bits(192);
  const Geometry& g = shared_geometry();
  Mat3 N = N_matrix(cnum(1000.0, 0.0), g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cnum e = N[i][j] - (i == j ? cnum(1) : cnum(0));
      CHECK(d(abs(e)) < 5e-3);
    }
  for (auto xy : std::vector<std::array<double, 2>>{{0.8, 0.9}, {-1.5, 0.2}, {0.1, -2.0}}) {
    Mat3 M = N_matrix(cnum(xy[0], xy[1]), g);
    CHECK(d(abs(det3(M) - cnum(1))) < 1e-30);
    // entry accessor agrees with the full matrix
    CHECK(d(abs(N_entry(cnum(xy[0], xy[1]), 2, 1, g) - M[1][0])) < 1e-40);
  }
}

TEST_CASE("N boundary values on the cut: column swap jump structure") {
  set_precision_bits(192);
  const Geometry& g = shared_geometry();
  for (Arc arc : {Arc::GammaP, Arc::GammaR}) {
    const CurveTrace& tr = g.arc(arc);
    cnum zc = tr.nodes[tr.nodes.size() / 2].z;
    Mat3 Np = N_matrix_side(zc, arc, +1, g);
    Mat3 Nm = N_matrix_side(zc, arc, -1, g);
    CHECK(d(abs(det3(Np) - cnum(1))) < 1e-30);
    CHECK(d(abs(det3(Nm) - cnum(1))) < 1e-30);
    // across the cut the columns of the two colliding sheets (P,Q on GammaP;
    // Q,R on GammaR) swap with reciprocal factors lambda, -1/lambda while the
    // spectator column is continuous
    int ca = arc == Arc::GammaP ? 0 : 1, cb = ca + 1, cs = arc == Arc::GammaP ? 2 : 0;
    cnum lam = Np[0][ca] / Nm[0][cb];
    cnum mu = Np[0][cb] / Nm[0][ca];
    CHECK(d(abs(lam * mu + cnum(1))) < 1e-25);
    for (int r = 0; r < 3; ++r) {
      CHECK(d(abs(Np[r][ca] - lam * Nm[r][cb])) < 1e-25);
      CHECK(d(abs(Np[r][cb] - mu * Nm[r][ca])) < 1e-25);
      CHECK(d(abs(Np[r][cs] - Nm[r][cs])) < 1e-25);
    }
    // the cut swaps the colliding sheets: psi boundary values interchange
    Sheet own = arc == Arc::GammaP ? Sheet::P : Sheet::R;
    CHECK(d(abs(psi_side(zc, own, +1, g).w - psi_side(zc, Sheet::Q, -1, g).w)) < 1e-25);
    CHECK(d(abs(psi_side(zc, own, -1, g).w - psi_side(zc, Sheet::Q, +1, g).w)) < 1e-25);
  }
}

TEST_CASE("on-cut / continuation guards throw") {
  set_precision_bits(192);
  const Geometry& g = shared_geometry();
  cnum zc = g.gammaP.nodes[g.gammaP.nodes.size() / 2].z;
  CHECK_THROWS(N_matrix_side(zc, Arc::GammaE1, +1, g));
  CHECK_THROWS(N_matrix_side(cnum(5.0, 5.0), Arc::GammaP, +1, g));
}
