// High-precision zero finding for the exact polynomials and the entire remainder.
#include "hpexp/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hpexp/geometry.hpp"
#include "hpexp/potentials.hpp"

namespace hpexp {

namespace {

// deterministic 64-bit LCG for the angular jitter of the start circle
struct Lcg {
  unsigned long long s = 0x9e3779b97f4a7c15ull;
  double next() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return double(s >> 11) * (1.0 / 9007199254740992.0);
  }
};

cnum horner(const std::vector<cnum>& a, const cnum& z) {
  cnum v = a.back();
  for (int k = (int)a.size() - 2; k >= 0; --k) v = v * z + a[k];
  return v;
}

cnum pow_int(cnum z, int e) {
  cnum r(1);
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

real_t rmax(const real_t& a, const real_t& b) { return a < b ? b : a; }

}  // namespace

std::vector<cnum> aberth_roots(const std::vector<cnum>& a_in, unsigned bits) {
  std::vector<cnum> a = a_in;
  while (!a.empty() && a.back().re == 0 && a.back().im == 0) a.pop_back();
  if (a.size() <= 1) return {};
  PrecisionScope scope(bits + 64);
  for (auto& c : a) c = cnum(real_t(c.re), real_t(c.im));
  const int d = (int)a.size() - 1;
  std::vector<cnum> da(d);
  for (int k = 1; k <= d; ++k) da[k - 1] = real_t(k) * a[k];

  // start circle from the Fujiwara root bound: the plain coefficient-ratio
  // bound can be astronomically loose (factorial-range coefficients), and
  // Aberth stalls when started that far out
  real_t lead = abs(a[d]);
  real_t fuji = 0;
  for (int k = 0; k < d; ++k) fuji = rmax(fuji, pow(abs(a[k]) / lead, real_t(1) / (d - k)));
  real_t r0 = real_t(0.8) * (1 + 2 * fuji);

  std::vector<cnum> z(d);
  Lcg rng;
  for (int j = 0; j < d; ++j) {
    real_t th = 2 * pi() * (real_t(j) + real_t(0.26) + real_t(0.1) * real_t(rng.next())) / d;
    z[j] = polar(r0, th);
  }

  const real_t tol = ldexp(real_t(1), -(long)(bits + 16));
  for (int it = 0; it < 400; ++it) {
    real_t worst = 0;
    for (int j = 0; j < d; ++j) {
      cnum p = horner(a, z[j]);
      cnum dp = horner(da, z[j]);
      if (abs(dp) == 0) {
        z[j] += cnum(real_t(1) / 1000, real_t(1) / 997);
        worst = 1;
        continue;
      }
      cnum ratio = p / dp;
      cnum s(0);
      for (int k = 0; k < d; ++k)
        if (k != j) s += cnum(1) / (z[j] - z[k]);
      cnum denom = cnum(1) - ratio * s;
      cnum delta = (abs(denom) == 0) ? ratio : ratio / denom;
      z[j] -= delta;
      worst = rmax(worst, abs(delta) / (1 + abs(z[j])));
    }
    if (worst < tol) break;
  }
  for (int j = 0; j < d; ++j)
    for (int it = 0; it < 4; ++it) {
      cnum p = horner(a, z[j]);
      cnum dp = horner(da, z[j]);
      if (abs(dp) == 0) break;
      z[j] -= p / dp;
    }
  std::sort(z.begin(), z.end(), lex_less);
  return z;
}

ZeroSet poly_roots(const RationalPoly& poly, unsigned bits) {
  ZeroSet zs;
  zs.n = poly.degree();
  PrecisionScope scope(bits + 64);
  std::vector<cnum> a(poly.coeffs.size());
  for (size_t k = 0; k < poly.coeffs.size(); ++k) a[k] = to_cnum(poly.coeffs[k]);
  zs.zeros = aberth_roots(a, bits);
  for (auto& z : zs.zeros) {
    real_t scale = 0, zp = 1, az = abs(z);
    for (auto& c : a) {
      scale += abs(c) * zp;
      zp *= az;
    }
    zs.mult.push_back(1);
    zs.residual.push_back(abs(horner(a, z)) / scale);
  }
  return zs;
}

EnEvaluator::EnEvaluator(int n_, unsigned bits_)
    : n(n_), bits(bits_), triple(residue_polynomials(n_)) {
  dp = triple.p.derivative();
  dq = triple.q.derivative();
  dr = triple.r.derivative();
  const int K = 13 * n + (int)(0.7 * bits) + 80;
  RemainderSeries rs = remainder_series(triple, K);
  series = std::move(rs.coeffs);
  series_bits = bits + 7 * (unsigned)n + 64;
  PrecisionScope scope(series_bits);
  series_f.reserve(series.size());
  for (auto& c : series) series_f.push_back(to_real(c));
}

cnum EnEvaluator::eval(const cnum& z) const {
  if (abs(z) <= real_t(1.5)) {
    PrecisionScope scope(series_bits);
    cnum v(series_f.back());
    for (int k = (int)series_f.size() - 2; k >= 0; --k) v = v * z + cnum(series_f[k]);
    return v * pow_int(z, 3 * n + 2);
  }
  unsigned hb = (unsigned)(4.33 * n * abs(z).convert_to<double>()) + 3 * (unsigned)n + 64;
  PrecisionScope scope(bits + hb);
  cnum P = eval_poly(triple.p, z, bits + hb);
  cnum Q = eval_poly(triple.q, z, bits + hb);
  cnum R = eval_poly(triple.r, z, bits + hb);
  real_t s(3 * n);
  return P * exp(-s * z) + Q + R * exp(s * z);
}

cnum EnEvaluator::deriv(const cnum& z) const {
  if (abs(z) <= real_t(1.5)) {
    PrecisionScope scope(series_bits);
    const int m0 = 3 * n + 2;
    cnum v(real_t((int)series_f.size() - 1 + m0) * series_f.back());
    for (int k = (int)series_f.size() - 2; k >= 0; --k)
      v = v * z + cnum(real_t(k + m0) * series_f[k]);
    return v * pow_int(z, 3 * n + 1);
  }
  unsigned hb = (unsigned)(4.33 * n * abs(z).convert_to<double>()) + 3 * (unsigned)n + 64;
  PrecisionScope scope(bits + hb);
  real_t s(3 * n);
  cnum P = eval_poly(triple.p, z, bits + hb);
  cnum R = eval_poly(triple.r, z, bits + hb);
  cnum dP = eval_poly(dp, z, bits + hb);
  cnum dQ = eval_poly(dq, z, bits + hb);
  cnum dR = eval_poly(dr, z, bits + hb);
  return (dP - s * P) * exp(-s * z) + dQ + (dR + s * R) * exp(s * z);
}

int EnEvaluator::winding(const cnum& center, const real_t& radius) const {
  const real_t twopi = 2 * pi();
  for (int M = 64; M <= (1 << 18); M *= 2) {
    bool ok = true;
    real_t total = 0;
    cnum prev = eval(center + polar(radius, twopi * real_t(0.123) / M));
    if (abs(prev) == 0) continue;
    for (int k = 1; k <= M && ok; ++k) {
      cnum cur = eval(center + polar(radius, twopi * (real_t(k) + real_t(0.123)) / M));
      if (abs(cur) == 0) {
        ok = false;
        break;
      }
      real_t d = arg(cur / prev);
      if (abs(d) > pi() / 2) {
        ok = false;
        break;
      }
      total += d;
      prev = cur;
    }
    if (!ok) continue;
    double w = (total / twopi).convert_to<double>();
    long r = lround(w);
    if (fabs(w - (double)r) > 0.25) continue;
    return (int)r;
  }
  throw std::runtime_error("winding: unresolved argument variation");
}

namespace {

struct boundary_problem {};

// argument variation of z^{-k} E(z) along the segment, adaptively bisected.
// Dividing out the known order-k zero at the origin keeps the tracked phase
// slowly varying even when the contour skims the origin, where the raw phase
// of E turns k times faster than arg z and aliases any fixed sampling.  For a
// straight segment avoiding the origin the continuous variation of arg z is
// the principal arg(z1/z0), so the correction term is exact.
void arg_along(const EnEvaluator& f, int k, const cnum& z0, const cnum& E0, const cnum& z1,
               const cnum& E1, real_t& total, int depth) {
  real_t d = arg(E1 / E0) - k * arg(z1 / z0);
  real_t twopi = 2 * pi();
  d -= twopi * round(d / twopi);
  if (abs(d) < pi() / 2) {
    total += d;
    return;
  }
  if (depth > 30) throw boundary_problem{};
  cnum zm = real_t(0.5) * (z0 + z1);
  cnum Em = f.eval(zm);
  if (abs(Em) == 0) throw boundary_problem{};
  arg_along(f, k, z0, E0, zm, Em, total, depth + 1);
  arg_along(f, k, zm, Em, z1, E1, total, depth + 1);
}

// winding number of z^{-(3n+2)} E(z) around the box: the count of zeros of E
// strictly inside, excluding the origin zero whether or not the box covers it
int box_winding(const EnEvaluator& f, const Box& b) {
  const cnum c[4] = {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}};
  const int ord = 3 * f.n + 2;
  real_t total = 0;
  for (int e = 0; e < 4; ++e) {
    cnum p0 = c[e], p1 = c[(e + 1) & 3];
    real_t len = abs(p1 - p0);
    int M = std::max(8, (int)((len * real_t(3 * f.n + 8)).convert_to<double>()) + 1);
    cnum zprev = p0;
    cnum Eprev = f.eval(p0);
    if (abs(Eprev) == 0) throw boundary_problem{};
    for (int k = 1; k <= M; ++k) {
      cnum zk = p0 + (real_t(k) / M) * (p1 - p0);
      cnum Ek = f.eval(zk);
      if (abs(Ek) == 0) throw boundary_problem{};
      arg_along(f, ord, zprev, Eprev, zk, Ek, total, 0);
      zprev = zk;
      Eprev = Ek;
    }
  }
  double w = (total / (2 * pi())).convert_to<double>();
  long r = lround(w);
  if (fabs(w - (double)r) > 0.25) throw boundary_problem{};
  return (int)r;
}

// Newton hunt for `want` distinct zeros strictly inside the cell.
void hunt(const EnEvaluator& f, const Box& b, int want, unsigned bits, const real_t& excl,
          std::vector<cnum>& out) {
  std::vector<cnum> seeds;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      seeds.push_back({b.x0 + (b.x1 - b.x0) * real_t(2 * i + 1) / 6,
                       b.y0 + (b.y1 - b.y0) * real_t(2 * j + 1) / 6});
  const real_t tol = ldexp(real_t(1), -(long)bits / 2);
  std::vector<cnum> found;
  for (auto& s : seeds) {
    cnum z = s;
    bool conv = false;
    for (int it = 0; it < 80; ++it) {
      cnum dE = f.deriv(z);
      if (abs(dE) == 0) break;
      cnum step = f.eval(z) / dE;
      z -= step;
      if (abs(z) > 100) break;
      if (abs(step) < tol * (1 + abs(z))) {
        conv = true;
        break;
      }
    }
    if (!conv) continue;
    if (z.re < b.x0 || z.re > b.x1 || z.im < b.y0 || z.im > b.y1) continue;
    if (abs(z) <= excl) continue;
    bool dup = false;
    for (auto& w : found)
      if (abs(w - z) < real_t(1e-10)) dup = true;
    if (dup) continue;
    found.push_back(z);
    if ((int)found.size() == want) break;
  }
  out.insert(out.end(), found.begin(), found.end());
}

void search(const EnEvaluator& f, const Box& b, unsigned bits, const real_t& excl,
            std::vector<cnum>& out, int depth) {
  real_t mx = rmax(abs(b.x0), abs(b.x1)), my = rmax(abs(b.y0), abs(b.y1));
  if (sqrt(mx * mx + my * my) <= excl) return;  // fully inside the exclusion disk

  Box bb = b;
  int W = 0;
  for (int tries = 0;; ++tries) {
    try {
      W = box_winding(f, bb);
      break;
    } catch (boundary_problem&) {
      if (tries >= 6) throw std::runtime_error("zero search: persistent boundary problem");
      real_t ex = (bb.x1 - bb.x0) * real_t(0.015);
      real_t ey = (bb.y1 - bb.y0) * real_t(0.015);
      bb = {bb.x0 - ex, bb.x1 + ex, bb.y0 - ey, bb.y1 + ey};
    }
  }
  if (W <= 0) return;  // box_winding already discounts the origin zero

  real_t w = bb.x1 - bb.x0, h = bb.y1 - bb.y0;
  real_t diam = sqrt(w * w + h * h);
  if ((W <= 3 && diam < real_t(0.3)) || diam < real_t(1e-4) || depth >= 14) {
    size_t before = out.size();
    hunt(f, bb, W, bits, excl, out);
    if ((int)(out.size() - before) == W || diam < real_t(1e-4) || depth >= 14) return;
    out.resize(before);
  }
  real_t xm = (bb.x0 + bb.x1) / 2, ym = (bb.y0 + bb.y1) / 2;
  search(f, {bb.x0, xm, bb.y0, ym}, bits, excl, out, depth + 1);
  search(f, {xm, bb.x1, bb.y0, ym}, bits, excl, out, depth + 1);
  search(f, {bb.x0, xm, ym, bb.y1}, bits, excl, out, depth + 1);
  search(f, {xm, bb.x1, ym, bb.y1}, bits, excl, out, depth + 1);
}

}  // namespace

ZeroSet entire_zeros_in_box(int n, const Box& box, unsigned bits, const real_t& origin_exclusion) {
  EnEvaluator f(n, bits);
  std::vector<cnum> zs;
  search(f, box, bits, origin_exclusion, zs, 0);
  std::sort(zs.begin(), zs.end(), lex_less);
  std::vector<cnum> uniq;
  for (auto& z : zs) {
    if (!uniq.empty() && abs(z - uniq.back()) < real_t(1e-10)) continue;
    if (z.re < box.x0 || z.re > box.x1 || z.im < box.y0 || z.im > box.y1) continue;
    if (abs(z) <= origin_exclusion) continue;
    uniq.push_back(z);
  }
  ZeroSet out;
  out.target = ZeroTarget::E;
  out.n = n;
  out.zeros = std::move(uniq);
  real_t s(3 * n);
  for (auto& z : out.zeros) {
    unsigned hb = bits + (unsigned)(4.33 * n * abs(z).convert_to<double>()) + 3 * (unsigned)n + 64;
    PrecisionScope scope(hb);
    cnum P = eval_poly(f.triple.p, z, hb);
    cnum Q = eval_poly(f.triple.q, z, hb);
    cnum R = eval_poly(f.triple.r, z, hb);
    real_t scale = abs(P * exp(-s * z)) + abs(Q) + abs(R * exp(s * z));
    out.mult.push_back(1);
    out.residual.push_back(abs(f.eval(z)) / scale);
  }
  return out;
}

real_t dist_to_polyline(const cnum& z, const std::vector<cnum>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("dist_to_polyline: empty polyline");
  // double precision is plenty for the 1e-1-scale tolerances this feeds
  double zx = z.re.convert_to<double>(), zy = z.im.convert_to<double>();
  double best = 1e300;
  double ax = nodes[0].re.convert_to<double>(), ay = nodes[0].im.convert_to<double>();
  if (nodes.size() == 1) best = std::hypot(zx - ax, zy - ay);
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    double bx = nodes[i + 1].re.convert_to<double>(), by = nodes[i + 1].im.convert_to<double>();
    double dx = bx - ax, dy = by - ay;
    double L2 = dx * dx + dy * dy;
    double u = L2 == 0 ? 0.0 : ((zx - ax) * dx + (zy - ay) * dy) / L2;
    u = std::min(1.0, std::max(0.0, u));
    best = std::min(best, std::hypot(zx - ax - u * dx, zy - ay - u * dy));
    ax = bx;
    ay = by;
  }
  return real_t(best);
}

namespace {

std::vector<cnum> trace_zs(const CurveTrace& tr) {
  std::vector<cnum> v;
  v.reserve(tr.nodes.size());
  for (auto& nd : tr.nodes) v.push_back(nd.z);
  return v;
}

// trapezoid mass of the arc portion with |s| <= rcut, weighted by |s|^{-2} if wanted
real_t trapezoid_mass(const CurveTrace& tr, const real_t& rcut, bool weighted) {
  real_t total = 0;
  const real_t c = 3 / (2 * pi());
  for (size_t i = 0; i + 1 < tr.nodes.size(); ++i) {
    const CurveNode &a = tr.nodes[i], &b = tr.nodes[i + 1];
    if (abs(a.z) > rcut || abs(b.z) > rcut) continue;
    cnum rho0 = c * ((a.wb - a.wa) * cnum(real_t(0), real_t(-1)));
    cnum rho1 = c * ((b.wb - b.wa) * cnum(real_t(0), real_t(-1)));
    cnum dm = real_t(0.5) * ((rho0 + rho1) * (b.z - a.z));
    real_t piece = dm.re;
    if (weighted) piece /= norm2(real_t(0.5) * (a.z + b.z));
    total += piece;
  }
  return total;
}

}  // namespace

DiscrepancyReport empirical_vs_limit(const ZeroSet& zs, const Geometry& geom) {
  std::vector<const CurveTrace*> arcs;
  switch (zs.target) {
    case ZeroTarget::P: arcs = {&geom.gammaP}; break;
    case ZeroTarget::R: arcs = {&geom.gammaR}; break;
    case ZeroTarget::Q: arcs = {&geom.gammaQ_seg, &geom.gammaQ_lower, &geom.gammaQ_upper}; break;
    case ZeroTarget::E: arcs = {&geom.gammaE1, &geom.gammaE2, &geom.gammaE3, &geom.gammaE4}; break;
  }
  DiscrepancyReport rep{0, 0, 0};
  const size_t N = zs.zeros.size();
  if (N == 0) return rep;

  std::vector<std::vector<cnum>> polys;
  for (auto* a : arcs) polys.push_back(trace_zs(*a));
  std::vector<int> nearest(N, 0);
  for (size_t i = 0; i < N; ++i) {
    real_t best = -1;
    for (size_t j = 0; j < polys.size(); ++j) {
      real_t d = dist_to_polyline(zs.zeros[i], polys[j]);
      if (best < 0 || d < best) {
        best = d;
        nearest[i] = (int)j;
      }
    }
    rep.max_dist = rmax(rep.max_dist, best);
  }

  if (zs.target == ZeroTarget::P || zs.target == ZeroTarget::R) {
    const CurveTrace& tr = *arcs[0];
    std::vector<real_t> cm = cumulative_mass(tr, geom);
    real_t total = cm.back();
    std::vector<double> m(N);
    for (size_t i = 0; i < N; ++i) {
      TraceLocation loc = locate_on_trace(tr, zs.zeros[i]);
      real_t mi = cm[loc.seg] + loc.u * (cm[loc.seg + 1] - cm[loc.seg]);
      m[i] = (mi / total).convert_to<double>();
    }
    std::sort(m.begin(), m.end());
    double D = 0;
    for (size_t i = 0; i < N; ++i) {
      D = std::max(D, fabs((double)i / N - m[i]));
      D = std::max(D, fabs((double)(i + 1) / N - m[i]));
    }
    rep.kolmogorov = real_t(D);
  } else if (zs.target == ZeroTarget::Q) {
    std::vector<real_t> mass(arcs.size());
    real_t total = 0;
    std::vector<int> cnt(arcs.size(), 0);
    for (size_t j = 0; j < arcs.size(); ++j) {
      mass[j] = arc_mass(*arcs[j], geom);
      total += mass[j];
    }
    for (size_t i = 0; i < N; ++i) cnt[nearest[i]]++;
    real_t D = 0;
    for (size_t j = 0; j < arcs.size(); ++j)
      D = rmax(D, abs(cnum(real_t(cnt[j]) / (long)N - mass[j] / total)));
    rep.kolmogorov = D;
  } else {  // E: counts and the |s|^{-2}-weighted comparison, truncated at the zeros' radius
    real_t rcut = 0;
    for (auto& z : zs.zeros) rcut = rmax(rcut, abs(z));
    rcut *= real_t(1.02);
    std::vector<real_t> mass(arcs.size());
    real_t total = 0;
    std::vector<int> cnt(arcs.size(), 0);
    for (size_t j = 0; j < arcs.size(); ++j) {
      mass[j] = trapezoid_mass(*arcs[j], rcut, false);
      total += mass[j];
    }
    for (size_t i = 0; i < N; ++i) cnt[nearest[i]]++;
    real_t D = 0;
    for (size_t j = 0; j < arcs.size(); ++j)
      D = rmax(D, abs(cnum(real_t(cnt[j]) / (long)N - mass[j] / total)));
    rep.kolmogorov = D;

    real_t wsum = 0;
    for (auto& z : zs.zeros) wsum += 1 / norm2(z);
    real_t wint = 0;
    for (auto* a : arcs) wint += trapezoid_mass(*a, rcut, true);
    rep.weighted_total = abs(cnum(wsum / zs.n - wint));
  }
  return rep;
}

}  // namespace hpexp
