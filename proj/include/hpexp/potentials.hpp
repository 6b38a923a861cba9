// The g- and phi-functions (closed forms), the limit measure densities and
// masses, g_E, and the web of identities connecting them.
#pragma once

#include "hpexp/geometry.hpp"

namespace hpexp {

enum class Pot { P, Q, R };
enum class Phi { P, R };

enum class BranchNote { mod_2pi_i, mod_pi_i, single_valued_real_part };

struct PotentialValue {
  cnum value;
  BranchNote note;
};

cnum ell();  // log 2 - pi i

// g_s(z) from the closed forms; value uses principal logs, so the imaginary
// part is one representative modulo 2 pi i (the real part is exact).
PotentialValue g(const cnum& z, Pot which, const Geometry& geom);

// phi_s(z) from 2 phi_P = 3 log z + 3z + ell - 2 g_P - g_R (and the mirror
// relation); one representative modulo pi i.
PotentialValue phi(const cnum& z, Phi which, const Geometry& geom);

// Exact (single-valued) real parts.
real_t re_g(const cnum& z, Pot which, const Geometry& geom);
real_t re_phi(const cnum& z, Phi which, const Geometry& geom);

struct MeasureSample {
  cnum s;
  cnum density;  // d mu / ds, complex line density along the arc orientation
  Arc carrier;
};

// Density at a point s lying on the carrier arc (within on-curve tolerance).
MeasureSample mu_density(const cnum& s, Arc carrier, const Geometry& geom);

// Mass of one traced arc piece under its measure density.
real_t arc_mass(const CurveTrace& trace, const Geometry& geom);

// Cumulative mass at each node of a traced arc (same quadrature as arc_mass).
std::vector<real_t> cumulative_mass(const CurveTrace& trace, const Geometry& geom);

// Total mass of mu_P, mu_Q, or mu_R (should be 1).
real_t mu_total_mass(Pot which, const Geometry& geom);

// Integral of (3/2 pi i)(psi_Q - psi_P) ds over the full starred P arc (= 2).
real_t gammaPstar_integral(const Geometry& geom);

// Integral of |s|^{-2} d mu_E over the traced (truncated) unbounded arcs.
real_t mu_E_weighted_mass(const Geometry& geom);

// Region-wise limit potential of the remainder; analytic across the cut arcs.
cnum g_E(const cnum& z, const Geometry& geom);

// Residuals (modulo the appropriate 2 pi i / pi i lattice) of the identity web:
// the two g/phi relations, the three-sum, the two g_Q offsets, the branch-value
// sum 1/z, and the three derivative identities checked by central differences.
struct IdentityResiduals {
  real_t gphi_P, gphi_R;   // 2g_P+g_R = 3 log z + 3z - 2 phi_P + ell (and mirror)
  real_t sum_g;            // g_P + g_Q + g_R = 3 log z   (D_infinity)
  real_t rel_gP_gQ;        // g_P - g_Q = 3z + ell        (D_P)
  real_t rel_gR_gQ;        // g_R - g_Q = -3z + ell       (D_R)
  real_t sum_psi;          // psi_P + psi_Q + psi_R = 1/z
  real_t dgP, dgR, dgQ;    // g_P' = 3 psi_P + 3, g_R' = 3 psi_R - 3, g_Q' = 3 psi_*
};
IdentityResiduals identity_residuals(const cnum& z, const Geometry& geom);

}  // namespace hpexp
