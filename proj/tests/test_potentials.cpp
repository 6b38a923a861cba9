#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <vector>

#include "hpexp/curves.hpp"
#include "hpexp/potentials.hpp"
#include "hpexp/surface.hpp"

using namespace hpexp;

namespace {
double d(const real_t& x) { return x.convert_to<double>(); }

real_t mod_lattice(const cnum& resid, const real_t& period) {
  real_t im = resid.im;
  real_t k = round(im / period);
  return abs(cnum(resid.re, im - k * period));
}
}  // namespace

TEST_CASE("the constant ell = log 2 - pi i") {
  set_precision_bits(192);
  CHECK(d(abs(ell().re - log(real_t(2)))) < 1e-40);
  CHECK(d(abs(ell().im + pi())) < 1e-40);
}

TEST_CASE("ell closes the g-sum at the branch point z_1") {
  const Geometry& geo = shared_geometry();
  // at z_1 the phi term of the g/phi relation vanishes, so
  // 2 g_P + g_R - 3 log z - 3 z = ell (mod 2 pi i); evaluate a hair off the
  // branch point (phi ~ (z - z_1)^{3/2} contributes ~1e-12 at most)
  real_t worst(0);
  int used = 0;
  for (int k = 0; k < 8; ++k) {
    cnum z = geo.bp.z[0] + polar(real_t(1e-5), pi() * k / 4);
    if (classify_point(geo, z).tag == RegionTag::OnCurve) continue;
    cnum lhs = real_t(2) * g(z, Pot::P, geo).value + g(z, Pot::R, geo).value -
               real_t(3) * log(z) - real_t(3) * z;
    worst = (std::max)(worst, mod_lattice(lhs - ell(), 2 * pi()));
    ++used;
  }
  CHECK(used >= 5);
  CHECK(d(worst) < 1e-6);
}

TEST_CASE("identity web residuals at interior points") {
  const Geometry& g = shared_geometry();
  const std::vector<std::array<double, 2>> pts = {
      {2.0, 0.0},  {-2.0, 0.0}, {0.8, 0.9},  {-0.8, 0.9}, {0.8, -0.9}, {-0.8, -0.9},
      {0.3, 0.0},  {-0.3, 0.0}, {0.0, 1.5},  {0.0, -1.5}, {3.0, 2.0},  {-3.0, -2.0}};
  for (auto p : pts) {
    IdentityResiduals r = identity_residuals(cnum(p[0], p[1]), g);
    CHECK(d(r.gphi_P) < 1e-9);
    CHECK(d(r.gphi_R) < 1e-9);
    CHECK(d(r.sum_g) < 1e-9);
    CHECK(d(r.rel_gP_gQ) < 1e-9);
    CHECK(d(r.rel_gR_gQ) < 1e-9);
    CHECK(d(r.sum_psi) < 1e-9);
    CHECK(d(r.dgP) < 1e-9);
    CHECK(d(r.dgR) < 1e-9);
    CHECK(d(r.dgQ) < 1e-9);
  }
}

TEST_CASE("measure masses and the starred-arc integral") {
  const Geometry& g = shared_geometry();
  CHECK(d(abs(mu_total_mass(Pot::P, g) - 1)) < 1e-8);
  CHECK(d(abs(mu_total_mass(Pot::Q, g) - 1)) < 1e-8);
  CHECK(d(abs(mu_total_mass(Pot::R, g) - 1)) < 1e-8);
  CHECK(d(abs(gammaPstar_integral(g) - 2)) < 1e-8);
}

TEST_CASE("independent contour oracle: (3/2 pi i) contour integral of psi_Q = 1") {
  const Geometry& g = shared_geometry();
  // trapezoid rule on |z| = 2 (exponentially convergent for periodic analytic
  // integrands); encircles the full mu_Q support
  const int M = 256;
  cnum acc(0);
  for (int k = 0; k < M; ++k) {
    real_t th = 2 * pi() * k / M;
    cnum z = polar(real_t(2), th);
    cnum dz = cnum(real_t(0), real_t(1)) * z * (2 * pi() / M);
    acc = acc + psi(z, Sheet::Q, g).w * dz;
  }
  cnum total = real_t(1.5) / (pi() * cnum(real_t(0), real_t(1))) * acc;
  CHECK(d(abs(total - cnum(1))) < 1e-10);
}

TEST_CASE("unbounded-arc measure: positivity, symmetry, weighted mass") {
  const Geometry& g = shared_geometry();
  real_t m1 = arc_mass(g.gammaE1, g);
  real_t m2 = arc_mass(g.gammaE2, g);
  real_t m3 = arc_mass(g.gammaE3, g);
  real_t m4 = arc_mass(g.gammaE4, g);
  CHECK(m1 > 0);
  CHECK(d(abs(m1 - m2)) < 1e-8);
  CHECK(d(abs(m1 - m3)) < 1e-8);
  CHECK(d(abs(m1 - m4)) < 1e-8);
  // frozen oracle for the truncated-arc weighted integral
  CHECK(d(abs(mu_E_weighted_mass(g) - real_t("2.0487010504"))) < 1e-6);
  // density is nonnegative along every stored arc orientation
  for (const CurveTrace* tr : {&g.gammaE1, &g.gammaE2, &g.gammaE3, &g.gammaE4}) {
    real_t worst(1);
    for (size_t i = 0; i + 1 < tr->nodes.size(); i += 5) {
      cnum tang = tr->nodes[i + 1].z - tr->nodes[i].z;
      real_t L = abs(tang);
      if (L == 0) continue;
      cnum dens = mu_density(tr->nodes[i].z, tr->label, g).density;
      worst = (std::min)(worst, (dens * (tang / L)).re);
    }
    CHECK(d(worst) > -1e-10);
  }
}

TEST_CASE("cumulative mass is consistent with the arc mass") {
  const Geometry& g = shared_geometry();
  for (const CurveTrace* tr : {&g.gammaP, &g.gammaQ_seg}) {
    auto cum = cumulative_mass(*tr, g);
    REQUIRE(cum.size() == tr->nodes.size());
    CHECK(d(abs(cum.front())) < 1e-25);
    CHECK(d(abs(cum.back() - arc_mass(*tr, g))) < 1e-12);
    for (size_t i = 0; i + 1 < cum.size(); ++i) CHECK(cum[i + 1] >= cum[i] - real_t(1e-20));
  }
}

TEST_CASE("g_E is continuous across the cut arcs and conjugation-symmetric") {
  const Geometry& g = shared_geometry();
  const CurveNode& nd = g.gammaP.nodes[g.gammaP.nodes.size() / 2];
  cnum tang = g.gammaP.nodes[g.gammaP.nodes.size() / 2 + 1].z - nd.z;
  cnum n = cnum(real_t(0), real_t(1)) * tang / abs(tang);
  real_t delta(1e-3);
  cnum a = g_E(nd.z + delta * n, g);
  cnum b = g_E(nd.z - delta * n, g);
  // the imaginary part is one representative mod 2 pi i; compare on the lattice
  CHECK(d(mod_lattice(a - b, 2 * pi())) < 1e-2);  // mismatch O(delta), not O(1)
  cnum z(0.8, 0.9);
  CHECK(d(mod_lattice(conj(g_E(z, g)) - g_E(conj(z), g), 2 * pi())) < 1e-20);
}

TEST_CASE("branch notes document the lattice of each value") {
  const Geometry& geo = shared_geometry();
  cnum z(0.8, 0.9);
  CHECK(g(z, Pot::P, geo).note == BranchNote::mod_2pi_i);
  CHECK(phi(z, Phi::P, geo).note == BranchNote::mod_pi_i);
}
