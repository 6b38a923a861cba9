// Trajectory tracing and assembly of the full curve system.
#include "hpexp/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hpexp/surface.hpp"
#include "hpexp/zeros.hpp"

namespace hpexp {

namespace {

double dbl(const real_t& x) { return x.convert_to<double>(); }

const cnum I{real_t(0), real_t(1)};

enum class Family { P, R };

struct Roots {
  cnum a, b, c;  // colliding pair (a, b) and spectator c
};

Roots polish_all(const cnum& z, const Roots& r) {
  return {polish_root(z, r.a), polish_root(z, r.b), polish_root(z, r.c)};
}

// Re G-function contribution: pm = +1 for the P-side form, -1 for the R-side form
real_t reG(const cnum& z, const cnum& w, int pm) {
  return real_t(3) * (z * (w + cnum(pm))).re - log(abs(w * (w * w - cnum(1)))) - 1 +
         log(real_t(2) / 3);
}

// single-valued Re phi from the closed forms; swapping the pair members (a <-> the
// other colliding root) only flips the overall sign, which the projection tolerates
real_t re_phi_pair(const cnum& z, const Roots& r, Family fam) {
  if (fam == Family::P)
    return (3 * log(abs(z)) + 3 * z.re + log(real_t(2)) - 2 * reG(z, r.a, +1) -
            reG(z, r.c, -1)) /
           2;
  return (3 * log(abs(z)) - 3 * z.re + log(real_t(2)) - reG(z, r.c, +1) -
          2 * reG(z, r.a, -1)) /
         2;
}

cnum phi_prime(const Roots& r) { return real_t(1.5) * (r.b - r.a); }

cnum tangent_dir(const Roots& r, int sigma) {
  cnum dp = phi_prime(r);
  return real_t(sigma) * (I * conj(dp)) / abs(dp);
}

// pull z back onto Re phi = 0 along the normal by secant iteration
void project(cnum& z, Roots& r, Family fam, unsigned bits) {
  cnum t = tangent_dir(r, +1);
  cnum d = I * t;
  const real_t eps = ldexp(real_t(1), -(int)(2 * bits / 3));
  real_t u0 = 0, f0 = re_phi_pair(z, r, fam);
  real_t grad = abs(phi_prime(r));
  if (grad == 0) return;
  real_t u1 = -f0 / grad;
  Roots rr = polish_all(z + u1 * d, r);
  real_t f1 = re_phi_pair(z + u1 * d, rr, fam);
  for (int it = 0; it < 40 && abs(f1) > eps; ++it) {
    if (f1 == f0) break;
    real_t u2 = u1 - f1 * (u1 - u0) / (f1 - f0);
    u0 = u1;
    f0 = f1;
    u1 = u2;
    rr = polish_all(z + u1 * d, rr);
    f1 = re_phi_pair(z + u1 * d, rr, fam);
  }
  if (abs(f1) > real_t(1e-20)) throw trace_error("projection did not converge");
  z += u1 * d;
  r = rr;
}

real_t departure_angle(int k, int dir) {
  static const int tbl[4][3] = {
      {19, 43, 67}, {-19, -43, -67}, {55, 7, 31}, {17, -7, -31}};
  return real_t(tbl[k - 1][dir]) * pi() / 36;
}

Arc arc_label(int k, int dir) {
  static const Arc tbl[4][3] = {{Arc::GammaE1, Arc::GammaP, Arc::GammaPstar},
                                {Arc::GammaE2, Arc::GammaP, Arc::GammaPstar},
                                {Arc::GammaE3, Arc::GammaR, Arc::GammaRstar},
                                {Arc::GammaE4, Arc::GammaR, Arc::GammaRstar}};
  return tbl[k - 1][dir];
}

cnum spectator_at_bp(const cnum& zk, const cnum& wk) {
  // root product = -(1/3)/z and the pair members both equal w_k
  return polish_root(zk, cnum(-1) / (real_t(3) * zk * wk * wk));
}

real_t clamp_r(const real_t& x, const real_t& lo, const real_t& hi) {
  return x < lo ? lo : (x > hi ? hi : x);
}

}  // namespace

CurveTrace trace_trajectory(int start_k, int direction, const TraceParams& prm) {
  if (start_k < 1 || start_k > 4 || direction < 0 || direction > 2)
    throw std::invalid_argument("trace_trajectory: bad start/direction");
  PrecisionScope scope(prm.bits + 32);
  const Family fam = (start_k <= 2) ? Family::P : Family::R;
  const BranchData bd = branch_points();
  const cnum zk = bd.z[start_k - 1], wk = bd.w[start_k - 1];

  CurveTrace tr;
  tr.label = arc_label(start_k, direction);
  tr.nodes.push_back({zk, real_t(0), cnum(0), wk, wk, spectator_at_bp(zk, wk)});

  // seed just off the branch point in the departure sector
  const real_t theta = departure_angle(start_k, direction);
  cnum z = zk + polar(real_t(1e-5), theta);
  auto roots3 = solve_cubic(z, prm.bits);
  std::sort(roots3.begin(), roots3.end(),
            [&](const cnum& x, const cnum& y) { return abs(x - wk) < abs(y - wk); });
  Roots r{roots3[0], roots3[1], roots3[2]};
  int sigma = +1;
  {
    cnum t = tangent_dir(r, +1);
    cnum e = polar(real_t(1), theta);
    if (t.re * e.re + t.im * e.im < 0) sigma = -1;
  }
  project(z, r, fam, prm.bits);
  {
    cnum dphi = real_t(1) / 6 * ((z - zk) * (real_t(4) * phi_prime(polish_all(
                                                real_t(0.5) * (zk + z), r)) +
                                             phi_prime(r)));
    tr.nodes.push_back({z, abs(z - zk), cnum(re_phi_pair(z, r, fam), dphi.im), r.a, r.b, r.c});
  }

  const real_t hmin(prm.h_min), hmax(prm.h_max), trunc(prm.trunc_radius);
  while (true) {
    if ((int)tr.nodes.size() > prm.max_nodes) throw trace_error("node budget exhausted");
    // distance to the nearest branch point controls the step and the stop
    real_t dmin = abs(z - bd.z[0]);
    int jmin = 0;
    for (int j = 1; j < 4; ++j) {
      real_t d = abs(z - bd.z[j]);
      if (d < dmin) {
        dmin = d;
        jmin = j;
      }
    }
    if (dmin < hmin && tr.nodes.size() > 3) {
      const cnum ze = bd.z[jmin], we = bd.w[jmin];
      cnum dphi = real_t(1) / 6 * ((ze - z) * (phi_prime(r) +
                                               real_t(4) * phi_prime(polish_all(
                                                               real_t(0.5) * (z + ze), r))));
      tr.nodes.push_back({ze, tr.nodes.back().t + abs(ze - z),
                          cnum(real_t(0), tr.nodes.back().phi.im + dphi.im), we, we,
                          spectator_at_bp(ze, we)});
      break;
    }
    if (abs(z) > trunc) break;

    real_t h = clamp_r(real_t(0.25) * dmin, hmin, hmax);
    // RK4 with root continuation at each stage
    cnum k1 = tangent_dir(r, sigma);
    Roots r1 = polish_all(z + real_t(0.5) * h * k1, r);
    cnum k2 = tangent_dir(r1, sigma);
    Roots r2 = polish_all(z + real_t(0.5) * h * k2, r);
    cnum k3 = tangent_dir(r2, sigma);
    Roots r3 = polish_all(z + h * k3, r2);
    cnum k4 = tangent_dir(r3, sigma);
    cnum zn = z + h / 6 * (k1 + real_t(2) * k2 + real_t(2) * k3 + k4);
    Roots rn = polish_all(zn, r3);
    project(zn, rn, fam, prm.bits);

    cnum zm = real_t(0.5) * (z + zn);
    Roots rm = polish_all(zm, r);
    cnum dphi = (zn - z) / real_t(6) * (phi_prime(r) + real_t(4) * phi_prime(rm) + phi_prime(rn));
    tr.nodes.push_back({zn, tr.nodes.back().t + abs(zn - z),
                        cnum(re_phi_pair(zn, rn, fam), tr.nodes.back().phi.im + dphi.im),
                        rn.a, rn.b, rn.c});
    z = zn;
    r = rn;
  }
  return tr;
}

real_t compute_ystar(unsigned bits) {
  PrecisionScope scope(bits + 32);
  auto f = [&](const real_t& y) {
    cnum z(real_t(0), y);
    auto roots = solve_cubic(z, bits);  // lex order: psi_P, psi_Q, psi_R on the axis
    Roots r{roots[0], roots[1], roots[2]};
    return re_phi_pair(z, r, Family::P);
  };
  real_t lo(0.3), hi(1.0);
  real_t flo = f(lo), fhi = f(hi);
  if (!(flo < 0) == !(fhi < 0)) throw trace_error("ystar: no sign change in bracket");
  for (int it = 0; it < 8 * (int)bits / 10 && hi - lo > ldexp(real_t(1), -(int)bits + 16);
       ++it) {
    real_t mid = real_t(0.5) * (lo + hi);
    real_t fm = f(mid);
    if (!(fm < 0) == !(flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return real_t(0.5) * (lo + hi);
}

namespace {

// continue all three labeled roots along the straight segment from -> to
std::array<cnum, 3> continue_roots(std::array<cnum, 3> ws, const cnum& from, const cnum& to,
                                   int steps) {
  for (int s = 1; s <= steps; ++s) {
    cnum zs = from + (real_t(s) / steps) * (to - from);
    for (auto& w : ws) w = polish_root(zs, w);
  }
  return ws;
}

int nearest_node(const CurveTrace& tr, const cnum& z) {
  int best = 0;
  real_t bd = abs(tr.nodes[0].z - z);
  for (int i = 1; i < (int)tr.nodes.size(); ++i) {
    real_t d = abs(tr.nodes[i].z - z);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

void swap_pair(CurveTrace& tr) {
  for (auto& nd : tr.nodes) std::swap(nd.wa, nd.wb);
}

// ensure tr.wa continues to `target_root` (the arc sheet's own branch) near znear
void orient_pair(CurveTrace& tr, const cnum& znear, const cnum& target_root) {
  const CurveNode& nd = tr.nodes[nearest_node(tr, znear)];
  cnum ca = polish_root(znear, nd.wa), cb = polish_root(znear, nd.wb);
  if (abs(cb - target_root) < abs(ca - target_root)) swap_pair(tr);
  cnum c = (abs(cb - target_root) < abs(ca - target_root)) ? cb : ca;
  if (abs(c - target_root) > real_t(1e-3)) throw trace_error("pair orientation: no match");
}

// real-axis crossing abscissa of a traced arc (negative or positive half)
real_t axis_crossing(const CurveTrace& tr, bool negative) {
  for (size_t i = 0; i + 1 < tr.nodes.size(); ++i) {
    const cnum &a = tr.nodes[i].z, &b = tr.nodes[i + 1].z;
    if ((a.im > 0) == (b.im > 0)) continue;
    real_t x = a.re + (b.re - a.re) * (0 - a.im) / (b.im - a.im);
    if ((x < 0) == negative) return x;
  }
  throw trace_error("axis_crossing: none found");
}

// split a starred trace at its two imaginary-axis crossings, inserting exact
// (0, +-ystar) nodes; returns the two crossing indices (in encounter order)
std::array<int, 2> split_at_imag_axis(CurveTrace& tr, const real_t& ystar) {
  std::vector<CurveNode> out;
  std::array<int, 2> idx{-1, -1};
  int found = 0;
  for (size_t i = 0; i + 1 < tr.nodes.size(); ++i) {
    out.push_back(tr.nodes[i]);
    const CurveNode &a = tr.nodes[i], &b = tr.nodes[i + 1];
    if ((a.z.re > 0) == (b.z.re > 0)) continue;
    real_t yi = a.z.im + (b.z.im - a.z.im) * (0 - a.z.re) / (b.z.re - a.z.re);
    real_t ysn = yi > 0 ? ystar : -ystar;
    if (abs(yi - ysn) > real_t(1e-4)) throw trace_error("split: crossing far from ystar");
    cnum zc(real_t(0), ysn);
    CurveNode nc;
    nc.z = zc;
    nc.t = a.t + abs(zc - a.z);
    nc.wa = polish_root(zc, a.wa);
    nc.wb = polish_root(zc, a.wb);
    nc.wc = polish_root(zc, a.wc);
    {
      // extend the accumulated phi over the partial segment (Simpson)
      cnum zm = (a.z + zc) / real_t(2);
      cnum wam = polish_root(zm, (a.wa + nc.wa) / real_t(2));
      cnum wbm = polish_root(zm, (a.wb + nc.wb) / real_t(2));
      cnum fp0 = real_t(1.5) * (a.wb - a.wa);
      cnum fpm = real_t(1.5) * (wbm - wam);
      cnum fp1 = real_t(1.5) * (nc.wb - nc.wa);
      nc.phi = a.phi + (zc - a.z) / real_t(6) * (fp0 + real_t(4) * fpm + fp1);
    }
    if (found >= 2) throw trace_error("split: more than two crossings");
    idx[found++] = (int)out.size();
    out.push_back(nc);
  }
  out.push_back(tr.nodes.back());
  if (found != 2) throw trace_error("split: expected two crossings");
  tr.nodes = std::move(out);
  return idx;
}

std::vector<CurveNode> slice(const CurveTrace& tr, int i0, int i1) {
  return {tr.nodes.begin() + i0, tr.nodes.begin() + i1 + 1};
}

CurveTrace concat(Arc label, const std::vector<CurveNode>& a, const std::vector<CurveNode>& b) {
  CurveTrace tr;
  tr.label = label;
  tr.nodes = a;
  // keep both joint nodes: the root pair tracked on each half differs, so the
  // zero-length junction segment preserves consistent labels on either side
  for (size_t i = 0; i < b.size(); ++i) tr.nodes.push_back(b[i]);
  real_t t = 0;
  for (size_t i = 0; i < tr.nodes.size(); ++i) {
    if (i) t += abs(tr.nodes[i].z - tr.nodes[i - 1].z);
    tr.nodes[i].t = t;
  }
  return tr;
}

void append_zs(std::vector<cnum>& chain, const std::vector<CurveNode>& nodes, bool reversed) {
  if (!reversed)
    for (auto& nd : nodes) chain.push_back(nd.z);
  else
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) chain.push_back(it->z);
}

bool in_polygon_d(const cnum& w, const std::vector<cnum>& poly) {
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

}  // namespace

const CurveTrace& Geometry::arc(Arc a) const {
  switch (a) {
    case Arc::GammaP: return gammaP;
    case Arc::GammaR: return gammaR;
    case Arc::GammaPstar: return gammaPstar;
    case Arc::GammaRstar: return gammaRstar;
    case Arc::GammaE1: return gammaE1;
    case Arc::GammaE2: return gammaE2;
    case Arc::GammaE3: return gammaE3;
    case Arc::GammaE4: return gammaE4;
    case Arc::GammaQseg: return gammaQ_seg;
    case Arc::GammaQlower: return gammaQ_lower;
    default: return gammaQ_upper;
  }
}

std::vector<const CurveTrace*> Geometry::all_arcs() const {
  return {&gammaP,  &gammaR,  &gammaPstar, &gammaRstar, &gammaE1,     &gammaE2,
          &gammaE3, &gammaE4, &gammaQ_seg, &gammaQ_lower, &gammaQ_upper};
}

TraceLocation locate_on_trace(const CurveTrace& trace, const cnum& z) {
  if (trace.nodes.size() < 2) throw std::invalid_argument("locate_on_trace: trivial trace");
  // coarse scan in doubles, then exact refinement on the winning segment
  double zx = dbl(z.re), zy = dbl(z.im);
  double best = 1e300;
  int bseg = 0;
  double ax = dbl(trace.nodes[0].z.re), ay = dbl(trace.nodes[0].z.im);
  for (size_t i = 0; i + 1 < trace.nodes.size(); ++i) {
    double bx = dbl(trace.nodes[i + 1].z.re), by = dbl(trace.nodes[i + 1].z.im);
    double dx = bx - ax, dy = by - ay;
    double L2 = dx * dx + dy * dy;
    double u = L2 == 0 ? 0.0 : ((zx - ax) * dx + (zy - ay) * dy) / L2;
    u = std::min(1.0, std::max(0.0, u));
    double d = std::hypot(zx - ax - u * dx, zy - ay - u * dy);
    if (d < best) {
      best = d;
      bseg = (int)i;
    }
    ax = bx;
    ay = by;
  }
  TraceLocation loc;
  loc.seg = bseg;
  const cnum &a = trace.nodes[bseg].z, &b = trace.nodes[bseg + 1].z;
  cnum d = b - a;
  real_t L2 = norm2(d);
  real_t u = L2 == 0 ? real_t(0) : ((z - a).re * d.re + (z - a).im * d.im) / L2;
  loc.u = clamp_r(u, real_t(0), real_t(1));
  loc.dist = abs(z - (a + loc.u * d));
  return loc;
}

Geometry build_geometry(unsigned bits) {
  Geometry g;
  g.bits = bits;
  PrecisionScope scope(bits + 32);
  g.bp = branch_points();
  TraceParams prm;
  prm.bits = bits;

  g.gammaP = trace_trajectory(1, 1, prm);      // z_1 -> z_2
  g.gammaPstar = trace_trajectory(2, 2, prm);  // z_2 -> z_1
  g.gammaR = trace_trajectory(3, 1, prm);      // z_3 -> z_4
  g.gammaRstar = trace_trajectory(4, 2, prm);  // z_4 -> z_3
  g.gammaE1 = trace_trajectory(1, 0, prm);
  g.gammaE2 = trace_trajectory(2, 0, prm);
  g.gammaE3 = trace_trajectory(3, 0, prm);
  g.gammaE4 = trace_trajectory(4, 0, prm);

  // label the tracked pairs: continue the three branches (known on the imaginary
  // axis) to reference points beside each arc, and orient wa to the arc's own sheet
  const cnum base(real_t(0), real_t(0.4));
  std::array<cnum, 3> ws0 = solve_cubic(base, bits);  // lex: psi_P, psi_Q, psi_R
  {
    real_t xP = axis_crossing(g.gammaP, true);
    cnum mid(real_t(0), real_t(0.05));
    cnum zt(xP + real_t(0.01), real_t(0.05));
    auto ws = continue_roots(continue_roots(ws0, base, mid, 100), mid, zt, 300);
    orient_pair(g.gammaP, zt, ws[0]);  // wa = psi_{P+} (the +side faces the origin)
  }
  {
    real_t xR = axis_crossing(g.gammaR, false);
    cnum mid(real_t(0), real_t(0.05));
    cnum zt(xR - real_t(0.01), real_t(0.05));
    auto ws = continue_roots(continue_roots(ws0, base, mid, 100), mid, zt, 300);
    orient_pair(g.gammaR, zt, ws[2]);  // wa = psi_{R+}
  }
  {
    cnum zt = g.gammaPstar.nodes[g.gammaPstar.nodes.size() / 2].z;
    auto ws = continue_roots(ws0, base, zt, 400);
    orient_pair(g.gammaPstar, zt, ws[0]);  // wa = psi_P on the starred arc
  }
  {
    cnum zt = g.gammaRstar.nodes[g.gammaRstar.nodes.size() / 2].z;
    auto ws = continue_roots(ws0, base, zt, 400);
    orient_pair(g.gammaRstar, zt, ws[2]);  // wa = psi_R
  }
  for (CurveTrace* e : {&g.gammaE1, &g.gammaE2}) {
    const cnum far = e->nodes.back().z;
    orient_pair(*e, far, polish_root(far, cnum(-1)));  // psi_P -> -1 at infinity
  }
  for (CurveTrace* e : {&g.gammaE3, &g.gammaE4}) {
    const cnum far = e->nodes.back().z;
    orient_pair(*e, far, polish_root(far, cnum(1)));  // psi_R -> +1 at infinity
  }
  // store the lower-half unbounded arcs running from far away toward the branch
  // point, so that every stored arc carries a positive measure density
  for (CurveTrace* e : {&g.gammaE2, &g.gammaE4}) {
    std::reverse(e->nodes.begin(), e->nodes.end());
    real_t t = 0;
    for (size_t i = 0; i < e->nodes.size(); ++i) {
      if (i) t += abs(e->nodes[i].z - e->nodes[i - 1].z);
      e->nodes[i].t = t;
    }
  }

  // w-plane cuts and sheet-labeling loops
  for (auto& nd : g.gammaP.nodes) g.cutP.push_back(nd.wa);
  for (auto& nd : g.gammaR.nodes) g.cutR.push_back(nd.wa);
  g.loopP = g.cutP;
  for (auto it = g.gammaP.nodes.rbegin(); it != g.gammaP.nodes.rend(); ++it)
    g.loopP.push_back(it->wb);
  g.loopR = g.cutR;
  for (auto it = g.gammaR.nodes.rbegin(); it != g.gammaR.nodes.rend(); ++it)
    g.loopR.push_back(it->wb);

  g.ystar = compute_ystar(bits);

  // split the starred arcs at (0, +-ystar) and assemble the middle curve
  auto ip = split_at_imag_axis(g.gammaPstar, g.ystar);  // z_2 ->(-iy*)->(+iy*)-> z_1
  auto ir = split_at_imag_axis(g.gammaRstar, g.ystar);  // z_4 ->(+iy*)->(-iy*)-> z_3
  auto PA = slice(g.gammaPstar, 0, ip[0]);
  auto PC = slice(g.gammaPstar, ip[1], (int)g.gammaPstar.nodes.size() - 1);
  auto RA = slice(g.gammaRstar, 0, ir[0]);
  auto RC = slice(g.gammaRstar, ir[1], (int)g.gammaRstar.nodes.size() - 1);

  // straight middle segment -iy* -> +iy*; wa = psi_P, wb = psi_R, wc = psi_Q
  {
    CurveTrace seg;
    seg.label = Arc::GammaQseg;
    const int M = 400;
    for (int k = 0; k < M; ++k) {
      real_t y = -g.ystar + (2 * g.ystar) * real_t(k) / (M - 1);
      cnum z(real_t(0), y);
      auto roots = solve_cubic(z, bits);
      seg.nodes.push_back({z, y + g.ystar, cnum(0), roots[0], roots[2], roots[1]});
    }
    g.gammaQ_seg = std::move(seg);
  }
  g.gammaQ_lower = concat(Arc::GammaQlower, PA, RC);  // z_2 -> -iy* -> z_3
  g.gammaQ_upper = concat(Arc::GammaQupper, RA, PC);  // z_4 -> +iy* -> z_1

  // classification chains
  append_zs(g.chainDP, g.gammaP.nodes, false);
  append_zs(g.chainDP, PA, false);
  append_zs(g.chainDP, g.gammaQ_seg.nodes, false);
  append_zs(g.chainDP, PC, false);
  append_zs(g.chainDR, g.gammaR.nodes, false);
  append_zs(g.chainDR, RA, false);
  append_zs(g.chainDR, g.gammaQ_seg.nodes, true);
  append_zs(g.chainDR, RC, false);
  append_zs(g.chainDPstar, g.gammaP.nodes, false);
  append_zs(g.chainDPstar, g.gammaPstar.nodes, false);
  append_zs(g.chainDRstar, g.gammaR.nodes, false);
  append_zs(g.chainDRstar, g.gammaRstar.nodes, false);
  return g;
}

const Geometry& shared_geometry() {
  static const Geometry g = build_geometry(192);
  return g;
}

Classification classify_point(const Geometry& geom, const cnum& z) {
  Classification c;
  for (const CurveTrace* tr : geom.all_arcs()) {
    TraceLocation loc = locate_on_trace(*tr, z);
    if (loc.dist < geom.oncurve_tol) {
      c.tag = RegionTag::OnCurve;
      c.arc = tr->label;
      const cnum &a = tr->nodes[loc.seg].z, &b = tr->nodes[loc.seg + 1].z;
      cnum t = b - a, dz = z - a;
      real_t cross = t.re * dz.im - t.im * dz.re;
      c.side = cross > 0 ? +1 : -1;
      c.in_DPstar = in_polygon_d(z, geom.chainDPstar);
      c.in_DRstar = in_polygon_d(z, geom.chainDRstar);
      return c;
    }
  }
  c.in_DPstar = in_polygon_d(z, geom.chainDPstar);
  c.in_DRstar = in_polygon_d(z, geom.chainDRstar);
  if (in_polygon_d(z, geom.chainDP)) {
    c.tag = RegionTag::DP;
    return c;
  }
  if (in_polygon_d(z, geom.chainDR)) {
    c.tag = RegionTag::DR;
    return c;
  }
  // unbounded regions by the signs of Re phi_P / Re phi_R
  auto roots = solve_cubic(z, geom.bits);
  cnum wp, wq, wr;
  int got = 0;
  for (auto& w : roots) {
    Sheet s = label_w(w, geom);
    if (s == Sheet::P) wp = w, got |= 1;
    if (s == Sheet::Q) wq = w, got |= 2;
    if (s == Sheet::R) wr = w, got |= 4;
  }
  if (got != 7) throw trace_error("classify: ambiguous sheet labels");
  real_t sp = re_phi_pair(z, {wp, wq, wr}, Family::P);
  real_t sr = re_phi_pair(z, {wr, wq, wp}, Family::R);
  if (sp < 0 && sr > 0)
    c.tag = RegionTag::DinfP;
  else if (sr < 0 && sp > 0)
    c.tag = RegionTag::DinfR;
  else
    c.tag = z.im > 0 ? RegionTag::DinfU : RegionTag::DinfL;
  return c;
}

}  // namespace hpexp
