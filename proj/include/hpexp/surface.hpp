// The three-sheeted surface behind the limit objects: labeled inverse branches
// psi_P, psi_Q, psi_R of the degree-3 map z(w) = (w^2 - 1/3)/(w(w^2 - 1)), the
// branch points, the cut square root sqrt(3w^4+1), the scalar G, the functions
// F_1..F_3, and the outer-parametrix entries N_jk.
#pragma once

#include "hpexp/geometry.hpp"
#include "hpexp/hp_exact.hpp"  // Mat3

namespace hpexp {

struct on_cut_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct continuation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed-form branch points: w_k = 3^{-1/4} e^{-(2k+1) pi i/4}, z_k = z(w_k).
BranchData branch_points();

cnum zmap(const cnum& w);        // z(w) = (w^2 - 1/3)/(w^3 - w)
cnum zmap_deriv(const cnum& w);  // dz/dw

// The three roots of z w^3 - w^2 - z w + 1/3 = 0, sorted by (Re, Im).
// Residuals below 2^{-bits/2}.  Throws std::invalid_argument at z = 0 (pole of psi_Q).
std::array<cnum, 3> solve_cubic(const cnum& z, unsigned bits);

// Newton-polish a root of the cubic at z from a nearby starting value.
cnum polish_root(const cnum& z, cnum w);

// Sheet containing w, decided by the w-plane loops stored in the geometry.
Sheet label_w(const cnum& w, const Geometry& geom);

// Labeled branch at z off the cuts (GammaP for P, GammaP+GammaR for Q, GammaR for R).
SheetPoint psi(const cnum& z, Sheet sheet, const Geometry& geom);

// Boundary value on a cut arc: z must lie within the on-curve tolerance of the
// arc carrying the cut; side = +1/-1 picks the +/- boundary value.
SheetPoint psi_side(const cnum& z, Sheet sheet, int side, const Geometry& geom);

// Single-valued branch of sqrt(3w^4+1) cut along psi_{P+}(GammaP) and
// psi_{R+}(GammaR), positive for large positive w (value -1 at w = 0).
cnum sqrt_3w4p1(const cnum& w, const Geometry& geom);

// Boundary value of the same square root at a point w ON a cut, taken as the
// limit from the side the (w-plane) direction `approach` points into.
cnum sqrt_3w4p1_dir(const cnum& w, const cnum& approach, const Geometry& geom);

enum class PsiRegion { P_image, Q_image, R_image };

// The scalar G of the outer parametrix, defined region-wise on the psi-images.
cnum G_func(const cnum& w, PsiRegion region);

// F_row(w) with the G-region inferred from the location of w (row in 1..3).
cnum F_func(int row, const cnum& w, const Geometry& geom);

// Outer parametrix N(z), entries N_jk = F_j(psi_{col k}(z)); z off both cuts.
Mat3 N_matrix(const cnum& z, const Geometry& geom);
cnum N_entry(const cnum& z, int row, int col, const Geometry& geom);

// Boundary values of N on a cut arc (z within tolerance of the arc).
Mat3 N_matrix_side(const cnum& z, Arc arc, int side, const Geometry& geom);

}  // namespace hpexp
