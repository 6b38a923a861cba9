// Labeled inverse branches, the cut square root, G, F, and the outer parametrix N.
#include "hpexp/surface.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hpexp/zeros.hpp"

namespace hpexp {

namespace {

double dbl(const real_t& x) { return x.convert_to<double>(); }

// even-odd point-in-polygon test in doubles (closed implicitly)
bool in_polygon(const cnum& w, const std::vector<cnum>& poly) {
  double px = dbl(w.re), py = dbl(w.im);
  bool inside = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    double xi = dbl(poly[i].re), yi = dbl(poly[i].im);
    double xj = dbl(poly[j].re), yj = dbl(poly[j].im);
    if ((yi > py) != (yj > py)) {
      double xc = xi + (py - yi) / (yj - yi) * (xj - xi);
      if (px < xc) inside = !inside;
    }
  }
  return inside;
}

// proper-crossing count of segment a-b with polyline (doubles; endpoints of the
// query segment are assumed well off the polyline)
int seg_polyline_crossings(const cnum& a, const cnum& b, const std::vector<cnum>& poly) {
  double ax = dbl(a.re), ay = dbl(a.im), bx = dbl(b.re), by = dbl(b.im);
  int cnt = 0;
  for (size_t i = 0; i + 1 < poly.size(); ++i) {
    double cx = dbl(poly[i].re), cy = dbl(poly[i].im);
    double dx = dbl(poly[i + 1].re), dy = dbl(poly[i + 1].im);
    double d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    double d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax);
    double d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx);
    double d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) ++cnt;
  }
  return cnt;
}

cnum cubic_val(const cnum& z, const cnum& w) {
  return ((z * w - cnum(1)) * w - z) * w + cnum(real_t(1) / 3);
}

cnum cubic_dval(const cnum& z, const cnum& w) {
  return (real_t(3) * z * w - cnum(2)) * w - z;
}

const cnum I{real_t(0), real_t(1)};

}  // namespace

BranchData branch_points() {
  BranchData bd;
  real_t r = pow(real_t(3), real_t(-0.25));
  for (int k = 1; k <= 4; ++k) bd.w[k - 1] = polar(r, -real_t(2 * k + 1) * pi() / 4);
  for (int k = 0; k < 4; ++k) bd.z[k] = zmap(bd.w[k]);
  return bd;
}

cnum zmap(const cnum& w) {
  return (w * w - cnum(real_t(1) / 3)) / ((w * w - cnum(1)) * w);
}

cnum zmap_deriv(const cnum& w) {
  cnum num = w * w - cnum(real_t(1) / 3);
  cnum den = (w * w - cnum(1)) * w;
  cnum dnum = real_t(2) * w;
  cnum dden = real_t(3) * w * w - cnum(1);
  return (dnum * den - num * dden) / (den * den);
}

std::array<cnum, 3> solve_cubic(const cnum& z, unsigned bits) {
  if (abs(z) == 0) throw std::invalid_argument("solve_cubic: z = 0 degenerates the cubic");
  std::vector<cnum> a = {cnum(real_t(1) / 3), -z, cnum(-1), z};
  std::vector<cnum> roots = aberth_roots(a, bits);
  if (roots.size() != 3) throw std::runtime_error("solve_cubic: lost a root");
  return {roots[0], roots[1], roots[2]};
}

cnum polish_root(const cnum& z, cnum w) {
  for (int it = 0; it < 40; ++it) {
    cnum d = cubic_dval(z, w);
    if (abs(d) == 0) break;
    cnum step = cubic_val(z, w) / d;
    w -= step;
    if (abs(step) < ldexp(real_t(1), -(int)precision_bits() + 8) * (1 + abs(w))) break;
  }
  return w;
}

Sheet label_w(const cnum& w, const Geometry& geom) {
  if (in_polygon(w, geom.loopP)) return Sheet::P;
  if (in_polygon(w, geom.loopR)) return Sheet::R;
  return Sheet::Q;
}

SheetPoint psi(const cnum& z, Sheet sheet, const Geometry& geom) {
  if (abs(z) == 0) {
    real_t v = 1 / sqrt(real_t(3));
    if (sheet == Sheet::P) return {z, sheet, cnum(-v)};
    if (sheet == Sheet::R) return {z, sheet, cnum(v)};
    throw std::invalid_argument("psi: psi_Q has a pole at z = 0");
  }
  // refuse within tolerance of the relevant cut
  if (sheet != Sheet::R && dist_to_polyline(z, [&] {
        std::vector<cnum> v;
        for (auto& nd : geom.gammaP.nodes) v.push_back(nd.z);
        return v;
      }()) < geom.oncurve_tol)
    throw on_cut_error("psi: z on GammaP");
  if (sheet != Sheet::P && dist_to_polyline(z, [&] {
        std::vector<cnum> v;
        for (auto& nd : geom.gammaR.nodes) v.push_back(nd.z);
        return v;
      }()) < geom.oncurve_tol)
    throw on_cut_error("psi: z on GammaR");

  auto roots = solve_cubic(z, geom.bits);
  int hit = -1;
  for (int k = 0; k < 3; ++k)
    if (label_w(roots[k], geom) == sheet) {
      if (hit >= 0) throw continuation_error("psi: ambiguous sheet label");
      hit = k;
    }
  if (hit < 0) throw continuation_error("psi: no root with the requested label");
  return {z, sheet, roots[hit]};
}

SheetPoint psi_side(const cnum& z, Sheet sheet, int side, const Geometry& geom) {
  const CurveTrace* tr = nullptr;
  bool onP = false;
  {
    TraceLocation lp = locate_on_trace(geom.gammaP, z);
    TraceLocation lr = locate_on_trace(geom.gammaR, z);
    if (lp.dist < geom.oncurve_tol) {
      tr = &geom.gammaP;
      onP = true;
    } else if (lr.dist < geom.oncurve_tol) {
      tr = &geom.gammaR;
    } else {
      throw on_cut_error("psi_side: z not on a cut arc");
    }
  }
  if (onP && sheet == Sheet::R) return psi(z, sheet, geom);  // spectator is one-sided
  if (!onP && sheet == Sheet::P) return psi(z, sheet, geom);

  TraceLocation loc = locate_on_trace(*tr, z);
  const CurveNode& a = tr->nodes[loc.seg];
  const CurveNode& b = tr->nodes[loc.seg + 1];
  cnum wa = a.wa + loc.u * (b.wa - a.wa);
  cnum wb = a.wb + loc.u * (b.wb - a.wb);
  wa = polish_root(z, wa);
  wb = polish_root(z, wb);
  // wa carries the arc's own sheet's +side boundary value; the sheets are glued
  // crosswise, so psi_{own,+} = psi_{Q,-}'s partner etc.
  bool own = (onP ? sheet == Sheet::P : sheet == Sheet::R);
  cnum w = (own == (side > 0)) ? wa : wb;
  return {z, sheet, w};
}

namespace {

// continuity-tracked sqrt(3w^4+1) along the straight segment from (w0, v0) to w1;
// ignores the cuts (this is plain analytic continuation of the square root)
cnum sqrt_cont(const cnum& w0, const cnum& v0, const cnum& w1) {
  auto q = [](const cnum& w) { return real_t(3) * w * w * w * w + cnum(1); };
  real_t t = 0;
  cnum p = w0, v = v0;
  real_t step = real_t(1) / 16;
  int guard = 0;
  while (t < 1) {
    if (++guard > 100000) throw continuation_error("sqrt continuation stalled");
    real_t tn = t + step;
    if (tn > 1) tn = 1;
    cnum pn = w0 + tn * (w1 - w0);
    cnum qn = q(pn);
    cnum vv = v * v;
    if (abs(qn - vv) > real_t(0.5) * abs(vv) || abs(qn) == 0) {
      step /= 2;
      if (step < real_t(1e-12)) throw continuation_error("sqrt continuation through a zero");
      continue;
    }
    cnum s = sqrt(qn);
    if (abs(s - v) > abs(s + v)) s = -s;
    v = s;
    p = pn;
    t = tn;
    if (step < real_t(1) / 16) step *= 2;
  }
  return v;
}

const cnum kAnchor{real_t(10), real_t(0)};

cnum anchor_value() { return cnum(sqrt(real_t(30001))); }

int cut_crossings(const cnum& a, const cnum& b, const Geometry& geom) {
  return seg_polyline_crossings(a, b, geom.cutP) + seg_polyline_crossings(a, b, geom.cutR);
}

// full evaluation along anchor -> (vias...) -> w with cut-crossing parity
cnum sqrt_via(const cnum& w, const std::vector<cnum>& vias, const Geometry& geom) {
  cnum p = kAnchor, v = anchor_value();
  int flips = 0;
  std::vector<cnum> path = vias;
  path.push_back(w);
  for (auto& q : path) {
    flips += cut_crossings(p, q, geom);
    v = sqrt_cont(p, v, q);
    p = q;
  }
  return (flips & 1) ? -v : v;
}

}  // namespace

cnum sqrt_3w4p1(const cnum& w, const Geometry& geom) {
  if (dist_to_polyline(w, geom.cutP) < real_t(1e-9) ||
      dist_to_polyline(w, geom.cutR) < real_t(1e-9))
    throw on_cut_error("sqrt_3w4p1: w on a cut");
  const std::vector<std::vector<cnum>> routes = {
      {}, {cnum(real_t(2), real_t(2.5))}, {cnum(real_t(2), real_t(-2.5))}};
  for (auto& vias : routes) {
    try {
      return sqrt_via(w, vias, geom);
    } catch (const continuation_error&) {
    }
  }
  throw continuation_error("sqrt_3w4p1: all continuation routes failed");
}

cnum sqrt_3w4p1_dir(const cnum& w, const cnum& approach, const Geometry& geom) {
  // reference point a short safe distance from the cut on the limit side
  cnum dir = approach / abs(approach);
  cnum wr = w + real_t(1e-3) * dir;
  cnum vr = sqrt_3w4p1(wr, geom);
  // the final leg approaches the cut from the correct side: no parity flip
  return sqrt_cont(wr, vr, w);
}

cnum G_func(const cnum& w, PsiRegion region) {
  switch (region) {
    case PsiRegion::P_image:
      return w * exp(-((w + cnum(1)) * (real_t(2) * w - cnum(1))) / (w * (w - cnum(1))));
    case PsiRegion::Q_image:
      return ((w * w - cnum(real_t(1) / 3)) / (w * w - cnum(1))) *
             exp(-(real_t(2) * w * w) / (w * w - cnum(1)));
    default:
      return w * exp(-((w - cnum(1)) * (real_t(2) * w + cnum(1))) / (w * (w + cnum(1))));
  }
}

namespace {

PsiRegion region_of(Sheet s) {
  return s == Sheet::P ? PsiRegion::P_image
                       : (s == Sheet::Q ? PsiRegion::Q_image : PsiRegion::R_image);
}

cnum F_pref(int row, const cnum& w) {
  switch (row) {
    case 1: return -w * (w - cnum(1));
    case 2: return real_t(3) * (w * w - cnum(1));
    default: return w * (w + cnum(1));
  }
}

}  // namespace

cnum F_func(int row, const cnum& w, const Geometry& geom) {
  PsiRegion region = region_of(label_w(w, geom));
  return F_pref(row, w) * G_func(w, region) / sqrt_3w4p1(w, geom);
}

Mat3 N_matrix(const cnum& z, const Geometry& geom) {
  const Sheet sheets[3] = {Sheet::P, Sheet::Q, Sheet::R};
  Mat3 N;
  for (int c = 0; c < 3; ++c) {
    cnum w = psi(z, sheets[c], geom).w;
    cnum G = G_func(w, region_of(sheets[c]));
    cnum s = sqrt_3w4p1(w, geom);
    for (int r = 0; r < 3; ++r) N[r][c] = F_pref(r + 1, w) * G / s;
  }
  return N;
}

cnum N_entry(const cnum& z, int row, int col, const Geometry& geom) {
  const Sheet sheets[3] = {Sheet::P, Sheet::Q, Sheet::R};
  cnum w = psi(z, sheets[col - 1], geom).w;
  return F_pref(row, w) * G_func(w, region_of(sheets[col - 1])) / sqrt_3w4p1(w, geom);
}

Mat3 N_matrix_side(const cnum& z, Arc arc, int side, const Geometry& geom) {
  if (arc != Arc::GammaP && arc != Arc::GammaR)
    throw std::invalid_argument("N_matrix_side: not a cut arc");
  const bool onP = (arc == Arc::GammaP);
  const CurveTrace& tr = geom.arc(arc);
  TraceLocation loc = locate_on_trace(tr, z);
  if (loc.dist >= geom.oncurve_tol) throw on_cut_error("N_matrix_side: z not on the arc");
  const CurveNode& a = tr.nodes[loc.seg];
  const CurveNode& b = tr.nodes[loc.seg + 1];
  cnum wa = polish_root(z, a.wa + loc.u * (b.wa - a.wa));
  cnum wb = polish_root(z, a.wb + loc.u * (b.wb - a.wb));
  cnum wc = polish_root(z, a.wc + loc.u * (b.wc - a.wc));

  // wa = +side boundary value of the arc's own sheet; crosswise gluing with Q
  cnum w_own = (side > 0) ? wa : wb;
  cnum w_q = (side > 0) ? wb : wa;

  cnum tangent = b.z - a.z;
  cnum dz_side = real_t(side) * (I * tangent);  // z-plane displacement into the side
  auto approach = [&](const cnum& w) { return dz_side / zmap_deriv(w); };

  cnum cols_w[3], cols_s[3];
  PsiRegion cols_reg[3];
  // column order P, Q, R
  cnum wP = onP ? w_own : wc;
  cnum wR = onP ? wc : w_own;
  cols_w[0] = wP;
  cols_w[1] = w_q;
  cols_w[2] = wR;
  cols_reg[0] = PsiRegion::P_image;
  cols_reg[1] = PsiRegion::Q_image;
  cols_reg[2] = PsiRegion::R_image;
  for (int c = 0; c < 3; ++c) {
    bool boundary = (onP ? c != 2 : c != 0);
    cols_s[c] = boundary ? sqrt_3w4p1_dir(cols_w[c], approach(cols_w[c]), geom)
                         : sqrt_3w4p1(cols_w[c], geom);
  }
  Mat3 N;
  for (int c = 0; c < 3; ++c) {
    cnum G = G_func(cols_w[c], cols_reg[c]);
    for (int r = 0; r < 3; ++r) N[r][c] = F_pref(r + 1, cols_w[c]) * G / cols_s[c];
  }
  return N;
}

}  // namespace hpexp
