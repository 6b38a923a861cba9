// Closed-form g/phi potentials, measure densities and masses, g_E, identities.
#include "hpexp/potentials.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hpexp/curves.hpp"
#include "hpexp/surface.hpp"
#include "hpexp/zeros.hpp"

namespace hpexp {

namespace {

const cnum I{real_t(0), real_t(1)};

// 8-point Gauss-Legendre nodes/weights on [0,1], refreshed when precision grows
struct GL8 {
  std::vector<real_t> x, w;
  unsigned bits = 0;
};

const GL8& gl8() {
  static thread_local GL8 gl;
  unsigned bits = precision_bits();
  if (gl.bits >= bits) return gl;
  const int n = 8;
  gl.x.assign(n, real_t(0));
  gl.w.assign(n, real_t(0));
  for (int i = 0; i < n; ++i) {
    // Newton on P_8 from the Chebyshev-like initial guess
    real_t t = cos(pi() * (real_t(4 * (i + 1) - 1)) / (4 * n + 2));
    for (int it = 0; it < 200; ++it) {
      real_t p0 = 1, p1 = t;
      for (int k = 2; k <= n; ++k) {
        real_t p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      real_t dp = real_t(n) * (t * p1 - p0) / (t * t - 1);
      real_t step = p1 / dp;
      t -= step;
      if (abs(step) < ldexp(real_t(1), -(int)bits - 8)) break;
    }
    real_t p0 = 1, p1 = t;
    for (int k = 2; k <= n; ++k) {
      real_t p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    real_t dp = real_t(n) * (t * p1 - p0) / (t * t - 1);
    gl.x[i] = (1 - t) / 2;  // map [-1,1] -> [0,1], reversed order is harmless
    gl.w[i] = 1 / ((1 - t * t) * dp * dp);
  }
  gl.bits = bits;
  return gl;
}

cnum g_closed(const cnum& z, const cnum& w, Pot which) {
  switch (which) {
    case Pot::P:
      return real_t(3) * z * (w + cnum(1)) - log(w * (w * w - cnum(1))) - cnum(1) +
             cnum(log(real_t(2) / 3));
    case Pot::R:
      return real_t(3) * z * (w - cnum(1)) - log(w * (w * w - cnum(1))) - cnum(1) +
             cnum(log(real_t(2) / 3));
    default:  // Q: log(-1/3) = log(1/3) + i pi
      return real_t(3) * z * w - log(w * (w * w - cnum(1))) - cnum(1) +
             cnum(-log(real_t(3)), pi());
  }
}

// branch of psi feeding g_Q, region-dependent
cnum psi_for_gQ(const cnum& z, const Classification& c, const Geometry& geom) {
  if (c.tag == RegionTag::DP) return psi(z, Sheet::P, geom).w;
  if (c.tag == RegionTag::DR) return psi(z, Sheet::R, geom).w;
  return psi(z, Sheet::Q, geom).w;
}

real_t reduce_mod(const real_t& x, const real_t& period) {
  // representative in (-period/2, period/2]
  real_t k = floor(x / period + real_t(0.5));
  return x - k * period;
}

cnum density_of(const cnum& wa, const cnum& wb) {
  // (3 / 2 pi i) (wb - wa)
  return (real_t(3) / (2 * pi())) * ((wb - wa) * cnum(real_t(0), real_t(-1)));
}

// interpolated + polished pair/spectator at a point of a segment
struct SegEval {
  cnum wa, wb;
};

SegEval seg_roots(const CurveNode& a, const CurveNode& b, const real_t& u, const cnum& z) {
  SegEval s;
  s.wa = polish_root(z, a.wa + u * (b.wa - a.wa));
  s.wb = polish_root(z, a.wb + u * (b.wb - a.wb));
  return s;
}

real_t segment_mass(const CurveNode& a, const CurveNode& b, bool weighted) {
  const GL8& gl = gl8();
  cnum dz = b.z - a.z;
  real_t acc = 0;
  for (size_t i = 0; i < gl.x.size(); ++i) {
    cnum z = a.z + gl.x[i] * dz;
    SegEval s = seg_roots(a, b, gl.x[i], z);
    cnum dm = density_of(s.wa, s.wb) * dz;
    real_t val = dm.re;
    if (weighted) val /= norm2(z);
    acc += gl.w[i] * val;
  }
  return acc;
}

}  // namespace

cnum ell() { return cnum(log(real_t(2)), -pi()); }

PotentialValue g(const cnum& z, Pot which, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  cnum w;
  if (which == Pot::P)
    w = psi(z, Sheet::P, geom).w;
  else if (which == Pot::R)
    w = psi(z, Sheet::R, geom).w;
  else
    w = psi_for_gQ(z, classify_point(geom, z), geom);
  return {g_closed(z, w, which), BranchNote::mod_2pi_i};
}

PotentialValue phi(const cnum& z, Phi which, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  cnum gp = g(z, Pot::P, geom).value;
  cnum gr = g(z, Pot::R, geom).value;
  cnum lg = log(z);
  cnum v;
  if (which == Phi::P)
    v = (real_t(3) * lg + real_t(3) * z + ell() - real_t(2) * gp - gr) / real_t(2);
  else
    v = (real_t(3) * lg - real_t(3) * z + ell() - gp - real_t(2) * gr) / real_t(2);
  return {v, BranchNote::mod_pi_i};
}

real_t re_g(const cnum& z, Pot which, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  return g(z, which, geom).value.re;
}

real_t re_phi(const cnum& z, Phi which, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  return phi(z, which, geom).value.re;
}

MeasureSample mu_density(const cnum& s, Arc carrier, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  const CurveTrace& tr = geom.arc(carrier);
  TraceLocation loc = locate_on_trace(tr, s);
  if (loc.dist >= geom.oncurve_tol)
    throw std::invalid_argument("mu_density: point not on the carrier arc");
  const CurveNode &a = tr.nodes[loc.seg], &b = tr.nodes[loc.seg + 1];
  SegEval se = seg_roots(a, b, loc.u, s);
  return {s, density_of(se.wa, se.wb), carrier};
}

real_t arc_mass(const CurveTrace& trace, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  real_t total = 0;
  for (size_t i = 0; i + 1 < trace.nodes.size(); ++i)
    total += segment_mass(trace.nodes[i], trace.nodes[i + 1], false);
  return total;
}

std::vector<real_t> cumulative_mass(const CurveTrace& trace, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  std::vector<real_t> cm(trace.nodes.size(), real_t(0));
  for (size_t i = 0; i + 1 < trace.nodes.size(); ++i)
    cm[i + 1] = cm[i] + segment_mass(trace.nodes[i], trace.nodes[i + 1], false);
  return cm;
}

real_t mu_total_mass(Pot which, const Geometry& geom) {
  switch (which) {
    case Pot::P: return arc_mass(geom.gammaP, geom);
    case Pot::R: return arc_mass(geom.gammaR, geom);
    default:
      return arc_mass(geom.gammaQ_seg, geom) + arc_mass(geom.gammaQ_lower, geom) +
             arc_mass(geom.gammaQ_upper, geom);
  }
}

real_t gammaPstar_integral(const Geometry& geom) { return arc_mass(geom.gammaPstar, geom); }

real_t mu_E_weighted_mass(const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  real_t total = 0;
  for (const CurveTrace* tr : {&geom.gammaE1, &geom.gammaE2, &geom.gammaE3, &geom.gammaE4})
    for (size_t i = 0; i + 1 < tr->nodes.size(); ++i)
      total += segment_mass(tr->nodes[i], tr->nodes[i + 1], true);
  return total;
}

cnum g_E(const cnum& z, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  Classification c = classify_point(geom, z);
  if (c.tag == RegionTag::OnCurve &&
      (c.arc == Arc::GammaE1 || c.arc == Arc::GammaE2 || c.arc == Arc::GammaE3 ||
       c.arc == Arc::GammaE4))
    throw std::invalid_argument("g_E: point on the unbounded arcs");
  if (c.tag == RegionTag::DinfR)
    return g(z, Pot::R, geom).value + real_t(3) * z - real_t(3) * log(z) - ell();
  if (c.tag == RegionTag::DinfP)
    return g(z, Pot::P, geom).value - real_t(3) * z - real_t(3) * log(z) - ell();
  return -(g(z, Pot::P, geom).value + g(z, Pot::R, geom).value);
}

namespace {

// proper-crossing count of segment a-b with a polyline, in doubles
int seg_crossings(const cnum& a, const cnum& b, const std::vector<cnum>& poly) {
  auto d = [](const real_t& x) { return x.convert_to<double>(); };
  double ax = d(a.re), ay = d(a.im), bx = d(b.re), by = d(b.im);
  int cnt = 0;
  for (size_t i = 0; i + 1 < poly.size(); ++i) {
    double cx = d(poly[i].re), cy = d(poly[i].im);
    double dx = d(poly[i + 1].re), dy = d(poly[i + 1].im);
    double d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    double d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax);
    double d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx);
    double d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) ++cnt;
  }
  return cnt;
}

// numerical phi by Gauss-Legendre quadrature of (3/2)(psi_Q - psi_sheet) along a
// cut-avoiding polygonal path from the branch point, with root continuation
cnum quad_phi(const cnum& z, Phi which, const Geometry& geom, bool allow_mirror = true) {
  const BranchData& bd = geom.bp;
  cnum z0 = (which == Phi::P) ? bd.z[0] : bd.z[2];  // z_1 / z_3
  Sheet own = (which == Phi::P) ? Sheet::P : Sheet::R;

  // candidate waypoint chains; pick the first whose legs cross neither cut
  // (crossing a cut would silently switch the tracked branch) and stay clear
  // of the other branch points (passing one scrambles the tracked pair; the
  // branch points come in pairs sharing a real part, so plain vertical
  // corridors from z0 need the sideways offsets below)
  std::vector<std::vector<cnum>> candidates = {{z}};
  for (double sgn : {1.0, -1.0})
    for (double dx : {0.0, 0.35, -0.35})
      candidates.push_back(
          {cnum(z0.re + real_t(dx), real_t(4 * sgn)), cnum(z.re, real_t(4 * sgn)), z});
  for (double sgn : {1.0, -1.0})
    candidates.push_back({cnum(real_t(4 * sgn), z0.im), cnum(real_t(4 * sgn), z.im), z});
  // middle-channel entry for targets inside the bounded lens regions: descend
  // between the origin exclusion and the branch-point clearance, stop short of
  // the origin, then cut across to the target
  for (double sgn : {1.0, -1.0})
    for (double dx : {0.35, -0.35, 0.0})
      for (double xm : {0.05, -0.05})
        candidates.push_back({cnum(z0.re + real_t(dx), real_t(4 * sgn)),
                              cnum(real_t(xm), real_t(4 * sgn)),
                              cnum(real_t(xm), real_t(0.45 * sgn)), z});
  std::vector<cnum> cutPz, cutRz;
  for (auto& nd : geom.gammaP.nodes) cutPz.push_back(nd.z);
  for (auto& nd : geom.gammaR.nodes) cutRz.push_back(nd.z);
  auto seg_dist = [](const cnum& a, const cnum& b, const cnum& p) {
    double ax = a.re.convert_to<double>(), ay = a.im.convert_to<double>();
    double bx = b.re.convert_to<double>() - ax, by = b.im.convert_to<double>() - ay;
    double px = p.re.convert_to<double>(), py = p.im.convert_to<double>();
    double L2 = bx * bx + by * by;
    double u = L2 == 0 ? 0 : ((px - ax) * bx + (py - ay) * by) / L2;
    u = std::min(1.0, std::max(0.0, u));
    return std::hypot(px - (ax + u * bx), py - (ay + u * by));
  };
  const std::vector<cnum>* path = nullptr;
  for (auto& cand : candidates) {
    bool ok = true;
    // start the first leg slightly off z0 so it does not sit on the cut endpoint
    cnum prev = z0 + real_t(1e-6) * (cand[0] - z0) / abs(cand[0] - z0);
    // the origin is an obstacle too: one tracked root behaves like 1/(3z)
    // there and moves too fast for the continuation to follow reliably; a leg
    // ending at a near-origin target is allowed to come as close as the target
    // (any straight approach to z must pass within ~0.7|z| of the origin)
    double oz_limit = std::min(0.2, abs(z).convert_to<double>() * 0.7);
    for (auto& wp : cand) {
      if (seg_crossings(prev, wp, cutPz) + seg_crossings(prev, wp, cutRz) > 0) ok = false;
      for (const cnum& zb : bd.z) {
        if (abs(zb - z0) < real_t(0.01) || abs(zb - z) < real_t(0.12)) continue;
        if (seg_dist(prev, wp, zb) < 0.12) ok = false;
      }
      if (seg_dist(prev, wp, cnum(0)) < oz_limit) ok = false;
      prev = wp;
    }
    if (ok) {
      path = &cand;
      break;
    }
  }
  if (!path) {
    // mirror fallback: under z -> -conj(z) the surface maps to itself with
    // the two outer sheets exchanged, so phi_R(z) = conj(phi_P(-conj z)) and
    // vice versa; the reflected target sits on the seed's side of the plane,
    // where a clean path exists
    if (allow_mirror)
      return conj(quad_phi(cnum(-z.re, z.im), which == Phi::P ? Phi::R : Phi::P, geom, false));
    throw std::invalid_argument("quad_phi: no cut-avoiding path");
  }

  // track the colliding pair along the path; which member is the arc's own
  // sheet is decided at the far end, where labels are reliable
  cnum wk = (which == Phi::P) ? bd.w[0] : bd.w[2];
  cnum w1, w2;
  bool have_pair = false;
  auto eval_pair = [&](const cnum& zz) {
    if (have_pair && abs(zz - z0) > real_t(0.01)) {
      w1 = polish_root(zz, w1);
      w2 = polish_root(zz, w2);
      return;
    }
    // near the collision Newton basins shrink with the pair gap: re-solve outright
    auto roots = solve_cubic(zz, geom.bits);
    std::sort(roots.begin(), roots.end(),
              [&](const cnum& x, const cnum& y) { return abs(x - wk) < abs(y - wk); });
    if (have_pair && abs(roots[0] - w2) + abs(roots[1] - w1) <
                         abs(roots[0] - w1) + abs(roots[1] - w2))
      std::swap(roots[0], roots[1]);
    w1 = roots[0];
    w2 = roots[1];
    have_pair = true;
  };

  const GL8& gl = gl8();
  cnum acc(0);
  auto add_panel = [&](const cnum& pa, const cnum& pb) {
    for (size_t i = 0; i < gl.x.size(); ++i) {
      cnum zz = pa + gl.x[i] * (pb - pa);
      eval_pair(zz);
      acc += gl.w[i] * (real_t(1.5) * (w2 - w1) * (pb - pa));
    }
  };
  cnum prev = z0;
  bool first = true;
  for (auto& wp : *path) {
    cnum a = prev, b = wp;
    if (first) {
      // substitute z = z0 + s^2 (b - z0): the square-root behaviour at z0
      // becomes analytic in s, so uniform panels in s converge fast
      const int panels = 24;
      for (int p = 0; p < panels; ++p) {
        real_t s0 = real_t(p) / panels, s1 = real_t(p + 1) / panels;
        for (size_t i = 0; i < gl.x.size(); ++i) {
          real_t s = s0 + gl.x[i] * (s1 - s0);
          cnum zz = a + (s * s) * (b - a);
          eval_pair(zz);
          acc += gl.w[i] * (real_t(1.5) * (w2 - w1) * (real_t(2) * s * (s1 - s0) * (b - a)));
        }
      }
      first = false;
    } else {
      int panels = std::max(8, (int)(abs(b - a).convert_to<double>() * 8) + 1);
      for (int p = 0; p < panels; ++p)
        add_panel(a + (real_t(p) / panels) * (b - a), a + (real_t(p + 1) / panels) * (b - a));
    }
    prev = wp;
  }
  // orient: w1 should have continued into the arc's own sheet
  Sheet s1 = label_w(w1, geom);
  Sheet s2 = label_w(w2, geom);
  if (s1 == own && s2 == Sheet::Q) return acc;
  if (s2 == own && s1 == Sheet::Q) return -acc;
  throw std::invalid_argument("quad_phi: pair labels inconsistent at the endpoint");
}

real_t lattice_norm(const cnum& resid, const real_t& period) {
  return abs(cnum(resid.re, reduce_mod(resid.im, period)));
}

}  // namespace

IdentityResiduals identity_residuals(const cnum& z, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  IdentityResiduals out;
  const real_t twopi = 2 * pi();

  cnum gp = g(z, Pot::P, geom).value;
  cnum gr = g(z, Pot::R, geom).value;
  cnum gq = g(z, Pot::Q, geom).value;
  cnum lg = log(z);
  Classification c = classify_point(geom, z);

  // the two g/phi relations, with phi from independent quadrature
  cnum php = quad_phi(z, Phi::P, geom);
  cnum phr = quad_phi(z, Phi::R, geom);
  out.gphi_P = lattice_norm(real_t(2) * gp + gr - real_t(3) * lg - real_t(3) * z +
                                real_t(2) * php - ell(),
                            pi());
  out.gphi_R = lattice_norm(gp + real_t(2) * gr - real_t(3) * lg + real_t(3) * z +
                                real_t(2) * phr - ell(),
                            pi());

  bool in_inf = c.tag == RegionTag::DinfP || c.tag == RegionTag::DinfR ||
                c.tag == RegionTag::DinfU || c.tag == RegionTag::DinfL;
  out.sum_g = in_inf ? lattice_norm(gp + gq + gr - real_t(3) * lg, twopi) : real_t(0);
  out.rel_gP_gQ =
      c.tag == RegionTag::DP ? lattice_norm(gp - gq - real_t(3) * z - ell(), twopi) : real_t(0);
  out.rel_gR_gQ =
      c.tag == RegionTag::DR ? lattice_norm(gr - gq + real_t(3) * z - ell(), twopi) : real_t(0);

  cnum wp = psi(z, Sheet::P, geom).w;
  cnum wq = psi(z, Sheet::Q, geom).w;
  cnum wr = psi(z, Sheet::R, geom).w;
  out.sum_psi = abs(wp + wq + wr - cnum(1) / z);

  // derivative identities by central differences, lattice-reduced increments
  real_t h = real_t(1e-8) * (1 + abs(z));
  auto dnum = [&](Pot which) {
    cnum zp = z + cnum(h), zm = z - cnum(h);
    cnum d = g(zp, which, geom).value - g(zm, which, geom).value;
    return cnum(d.re, reduce_mod(d.im, twopi)) / (2 * h);
  };
  out.dgP = abs(dnum(Pot::P) - (real_t(3) * wp + cnum(3)));
  out.dgR = abs(dnum(Pot::R) - (real_t(3) * wr - cnum(3)));
  cnum wgq = psi_for_gQ(z, c, geom);
  out.dgQ = abs(dnum(Pot::Q) - real_t(3) * wgq);
  return out;
}

}  // namespace hpexp
