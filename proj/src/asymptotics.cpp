#include "hpexp/asymptotics.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "hpexp/curves.hpp"
#include "hpexp/hp_exact.hpp"
#include "hpexp/potentials.hpp"
#include "hpexp/surface.hpp"

namespace hpexp {

namespace {

const cnum I{real_t(0), real_t(1)};

cnum pow_int(cnum z, int e) {
  cnum r(1);
  for (; e > 0; e >>= 1, z = z * z)
    if (e & 1) r = r * z;
  return r;
}

// ---------------------------------------------------------------------------
// Airy function
// ---------------------------------------------------------------------------

// Maclaurin series: Ai = c1 f - c2 g with f, g the two entire solutions of
// y'' = z y; converges everywhere, cancellation absorbed by guard bits.
void airy_maclaurin(const cnum& z, cnum& ai, cnum& aip) {
  const real_t g13 = boost::math::tgamma(real_t(1) / 3);
  const real_t g23 = boost::math::tgamma(real_t(2) / 3);
  const real_t c1 = 1 / (pow(real_t(3), real_t(2) / 3) * g23);
  const real_t c2 = 1 / (pow(real_t(3), real_t(1) / 3) * g13);
  const cnum z3 = z * z * z;
  const real_t eps = ldexp(real_t(1), -(int)precision_bits());

  cnum f(1), fp(0), g = z, gp(1);
  cnum a(1);                              // term of f
  cnum b = z * z / real_t(2);             // term of f' (k = 1)
  cnum u = z;                             // term of g
  cnum v(1);                              // term of g'
  fp += b;
  for (int k = 1; k < 100000; ++k) {
    a = a * z3 / real_t((3 * k - 1) * (3 * k));
    u = u * z3 / real_t((3 * k) * (3 * k + 1));
    if (k > 1) b = b * z3 / real_t((3 * k - 3) * (3 * k - 1));
    v = v * z3 / real_t((3 * k - 2) * (3 * k));
    f += a;
    g += u;
    if (k > 1) fp += b;
    gp += v;
    real_t m = abs(a) + abs(u) + abs(b) + abs(v);
    real_t s = abs(f) + abs(g) + abs(fp) + abs(gp) + 1;
    if (m < eps * s) break;
  }
  ai = c1 * f - c2 * g;
  aip = c1 * fp - c2 * gp;
}

// Asymptotic expansion, valid away from the negative real axis.
void airy_asymptotic(const cnum& z, cnum& ai, cnum& aip) {
  cnum zeta = real_t(2) / 3 * pow(z, real_t(3) / 2);
  cnum it = cnum(1) / zeta;
  cnum sa(1), sap(1);
  real_t uk(1);
  cnum tk(1);
  real_t prev = 1e300;
  for (int k = 1; k < 400; ++k) {
    uk *= real_t((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / (real_t((2 * k - 1)) * 216 * k);
    real_t vk = uk * (6 * k + 1) / real_t(1 - 6 * k);
    tk = tk * (-it);
    real_t mag = (abs(tk) * uk);
    if (mag > prev) break;  // divergent tail reached
    prev = mag;
    sa += uk * tk;
    sap += vk * tk;
    real_t eps = ldexp(real_t(1), -(int)precision_bits());
    if (mag < eps) break;
  }
  cnum q = pow(z, real_t(1) / 4);
  cnum pref = exp(-zeta) / (2 * sqrt(pi()));
  ai = pref / q * sa;
  aip = -pref * q * sap;
}

void airy_eval(const cnum& z, cnum& ai, cnum& aip) {
  double az = abs(z).convert_to<double>();
  if (az <= 9.0) {
    airy_maclaurin(z, ai, aip);
    return;
  }
  double a = arg(z).convert_to<double>();
  if (std::fabs(a) <= 2.0 * 3.14159265358979 / 3.0) {
    airy_asymptotic(z, ai, aip);
    return;
  }
  // connection formula: Ai(z) + w Ai(w z) + w^2 Ai(w^2 z) = 0, w = e^{2 pi i/3}
  cnum w = polar(real_t(1), 2 * pi() / 3);
  cnum w2 = polar(real_t(1), -2 * pi() / 3);
  cnum a1, a1p, a2, a2p;
  airy_asymptotic(w * z, a1, a1p);
  airy_asymptotic(w2 * z, a2, a2p);
  ai = -(w * a1) - (w2 * a2);
  aip = -(w2 * a1p) - (w * a2p);
}

}  // namespace

AiryValue airy(const cnum& z, unsigned bits) {
  double az = abs(z).convert_to<double>();
  unsigned guard = (unsigned)(2.0 * az * std::sqrt(az)) + 64;
  PrecisionScope scope(bits + guard);
  AiryValue out;
  out.argument = z;
  airy_eval(z, out.ai, out.ai_prime);
  return out;
}

real_t airy_zero(int nu, unsigned bits) {
  if (nu < 1) throw std::invalid_argument("airy_zero: nu >= 1 required");
  PrecisionScope scope(bits + 32);
  real_t x = pow(3 * pi() * (4 * nu - 1) / 8, real_t(2) / 3);
  const real_t tol = ldexp(real_t(1), -(int)bits);
  for (int it = 0; it < 80; ++it) {
    AiryValue v = airy(cnum(-x), bits + 32);
    real_t dx = (v.ai / v.ai_prime).re;
    x += dx;
    if (abs(dx) < tol * x) break;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Region-wise predictions
// ---------------------------------------------------------------------------

namespace {

struct Fields {
  cnum wp, wq, wr;  // branch values
  cnum sp, sq, sr;  // sqrt(3 w^4 + 1) on the respective sheets
  cnum gP, gR, phiP, phiR;
};

Fields fields_at(const cnum& z, const Geometry& geom) {
  Fields f;
  f.wp = psi(z, Sheet::P, geom).w;
  f.wq = psi(z, Sheet::Q, geom).w;
  f.wr = psi(z, Sheet::R, geom).w;
  f.sp = sqrt_3w4p1(f.wp, geom);
  f.sq = sqrt_3w4p1(f.wq, geom);
  f.sr = sqrt_3w4p1(f.wr, geom);
  f.gP = g(z, Pot::P, geom).value;
  f.gR = g(z, Pot::R, geom).value;
  f.phiP = phi(z, Phi::P, geom).value;
  f.phiR = phi(z, Phi::R, geom).value;
  return f;
}

bool bounded_region(RegionTag t) {
  return t == RegionTag::DP || t == RegionTag::DR || t == RegionTag::DPstar ||
         t == RegionTag::DRstar;
}

// closed-form g from a branch value (same representative as the g() module)
cnum g_of_w(const cnum& z, const cnum& w, int pm) {
  return real_t(3) * z * (w + real_t(pm)) - log(w * (w * w - real_t(1))) - real_t(1) +
         log(real_t(2) / 3);
}

// the three constituents of the multi-term Q/E representations, with the
// common prefactor z^{3n} e^{-n(gP+gR)} included
std::array<cnum, 3> qe_terms(const cnum& z, int n, const Fields& f) {
  cnum A = exp(real_t(3 * n) * log(z) - real_t(n) * (f.gP + f.gR));
  cnum tP = A * exp(real_t(-2 * n) * f.phiP) / f.sp;
  cnum tQ = A / f.sq;
  cnum tR = A * exp(real_t(-2 * n) * f.phiR) / f.sr;
  return {tP, tQ, tR};
}

cnum dominant(std::initializer_list<cnum> terms) {
  cnum best;
  real_t bm = -1;
  for (const cnum& t : terms)
    if (abs(t) > bm) {
      bm = abs(t);
      best = t;
    }
  return best;
}

bool unbounded_region(RegionTag t) {
  return t == RegionTag::DinfP || t == RegionTag::DinfR || t == RegionTag::DinfU ||
         t == RegionTag::DinfL;
}

// decaying representative of the correction exponent: the correction term is
// subdominant everywhere off the cut, so keep the branch with Re <= 0
cnum decaying(const cnum& ph) { return ph.re > 0 ? -ph : ph; }

// boundary-value form of the one-term P/R asymptotics on the cut arc itself:
// the prediction is the sum of the two one-sided limits
cnum cut_prediction(const cnum& z, int n, bool onP, const Geometry& geom) {
  const CurveTrace& tr = onP ? geom.gammaP : geom.gammaR;
  TraceLocation loc = locate_on_trace(tr, z);
  cnum tangent = tr.nodes[loc.seg + 1].z - tr.nodes[loc.seg].z;
  Sheet own = onP ? Sheet::P : Sheet::R;
  int pm = onP ? 1 : -1;
  cnum total(0);
  for (int side : {+1, -1}) {
    cnum w = psi_side(z, own, side, geom).w;
    cnum dz_side = real_t(side) * (I * tangent);
    cnum s = sqrt_3w4p1_dir(w, dz_side / zmap_deriv(w), geom);
    total += real_t(2) * exp(real_t(n) * g_of_w(z, w, pm)) / s;
  }
  return pow_int(cnum(real_t(-0.5)), n + 1) * total;
}

}  // namespace

AsymptoticPrediction strong_asymptotic(const cnum& z, int n, Target t, const Geometry& geom) {
  if (n < 1) throw std::invalid_argument("strong_asymptotic: n >= 1 required");
  PrecisionScope scope(geom.bits + 64);
  Classification c = classify_point(geom, z);
  if (c.tag == RegionTag::OnCurve)
    throw region_mismatch("strong_asymptotic: point lies on the curve system");
  AsymptoticPrediction out{t, Regime::strong, cnum(0), c.tag, n};
  Fields f = fields_at(z, geom);
  cnum mhalf = pow_int(cnum(real_t(-0.5)), n + 1);
  switch (t) {
    case Target::P:
      out.value = mhalf * real_t(2) * exp(real_t(n) * f.gP) / f.sp;
      break;
    case Target::R:
      out.value = mhalf * real_t(2) * exp(real_t(n) * f.gR) / f.sr;
      break;
    case Target::Q: {
      // the side terms belong to the representation only inside the lenses
      auto tm = qe_terms(z, n, f);
      cnum best = -tm[1];
      if (c.in_DPstar && abs(tm[0]) > abs(best)) best = tm[0];
      if (c.in_DRstar && abs(tm[2]) > abs(best)) best = tm[2];
      out.value = best;
      break;
    }
    case Target::E: {
      // the side terms belong to the representation only in the outer regions
      auto tm = qe_terms(z, n, f);
      cnum best = -tm[1];
      if (unbounded_region(c.tag) && abs(tm[0]) > abs(best)) best = -tm[0];
      if (unbounded_region(c.tag) && abs(tm[2]) > abs(best)) best = -tm[2];
      out.value = best;
      break;
    }
  }
  return out;
}

AsymptoticPrediction two_term_asymptotic(const cnum& z, int n, Target t, const Geometry& geom) {
  if (n < 1) throw std::invalid_argument("two_term_asymptotic: n >= 1 required");
  PrecisionScope scope(geom.bits + 64);
  Classification c = classify_point(geom, z);
  AsymptoticPrediction out{t, Regime::two_term, cnum(0), c.tag, n};
  if (c.tag == RegionTag::OnCurve) {
    if (t == Target::P && c.arc == Arc::GammaP) {
      out.value = cut_prediction(z, n, true, geom);
      return out;
    }
    if (t == Target::R && c.arc == Arc::GammaR) {
      out.value = cut_prediction(z, n, false, geom);
      return out;
    }
    throw region_mismatch("two_term_asymptotic: unsupported on-curve combination");
  }
  Fields f = fields_at(z, geom);
  cnum mhalf = pow_int(cnum(real_t(-0.5)), n + 1);
  real_t sgn = bounded_region(c.tag) ? real_t(1) : real_t(-1);
  switch (t) {
    case Target::P:
      out.value =
          mhalf * exp(real_t(n) * f.gP) *
          (real_t(2) / f.sp + sgn * real_t(2) * exp(real_t(2 * n) * decaying(f.phiP)) / f.sq);
      break;
    case Target::R:
      out.value =
          mhalf * exp(real_t(n) * f.gR) *
          (real_t(2) / f.sr + sgn * real_t(2) * exp(real_t(2 * n) * decaying(f.phiR)) / f.sq);
      break;
    case Target::Q: {
      auto tm = qe_terms(z, n, f);
      out.value = -tm[1];
      if (c.in_DPstar) out.value += tm[0];
      if (c.in_DRstar) out.value += tm[2];
      break;
    }
    case Target::E: {
      auto tm = qe_terms(z, n, f);
      out.value = -tm[1];
      if (unbounded_region(c.tag)) out.value -= tm[0] + tm[2];
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Airy regime near z_1
// ---------------------------------------------------------------------------

namespace {

// reduce the imaginary part to the representative nearest 0 (mod pi)
cnum reduce_near_zero(cnum v) {
  real_t k = round(v.im / pi());
  v.im -= k * pi();
  return v;
}

cnum c1_exact() {
  return pow(real_t(2), real_t(1) / 3) * pow(real_t(3), real_t(5) / 12) *
         polar(real_t(1), -7 * pi() / 36);
}

}  // namespace

cnum f1_coordinate(const cnum& z, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  cnum ph = reduce_near_zero(phi(z, Phi::P, geom).value);
  cnum base = pow(real_t(1.5) * ph, real_t(2) / 3);
  cnum tgt = c1_exact() * (z - geom.bp.z[0]);
  cnum best = base;
  real_t bd = abs(base - tgt);
  for (int k = 1; k < 3; ++k) {
    cnum cand = base * polar(real_t(1), 2 * pi() * k / 3);
    if (abs(cand - tgt) < bd) {
      bd = abs(cand - tgt);
      best = cand;
    }
  }
  return best;
}

std::array<cnum, 2> h12(const cnum& z, const Geometry& geom) {
  PrecisionScope scope(geom.bits + 32);
  cnum N21 = N_entry(z, 2, 1, geom);
  cnum N22 = N_entry(z, 2, 2, geom);
  cnum f1 = f1_coordinate(z, geom);
  cnum q = pow(f1, real_t(1) / 4);
  cnum pre = I / z * exp(real_t(-3) * z) * N22;
  return {(N21 + pre) * q, (-N21 + pre) / q};
}

AsymptoticPrediction airy_local(const cnum& z, int n, Target t, const Geometry& geom,
                                double delta) {
  if (n < 1) throw std::invalid_argument("airy_local: n >= 1 required");
  if (t == Target::R) throw region_mismatch("airy_local: target R lives near the conjugate point");
  PrecisionScope scope(geom.bits + 64);
  cnum z1 = geom.bp.z[0];
  if (abs(z - z1) >= real_t(delta))
    throw region_mismatch("airy_local: point too far from the branch point");
  Classification c = classify_point(geom, z);
  AsymptoticPrediction out{t, Regime::airy_local, cnum(0), c.tag, n};

  cnum f1 = f1_coordinate(z, geom);
  auto h = h12(z, geom);
  cnum X = pow(real_t(n + 1), real_t(2) / 3) * f1;
  cnum gP = g(z, Pot::P, geom).value;
  cnum ph = reduce_near_zero(phi(z, Phi::P, geom).value);
  real_t n16 = pow(real_t(n), real_t(1) / 6);
  cnum mhalf = pow_int(cnum(real_t(-0.5)), n + 1);
  cnum w = polar(real_t(1), 2 * pi() / 3);
  cnum wb = polar(real_t(1), -2 * pi() / 3);

  auto combo = [&](const cnum& rot, const cnum& roti) {
    AiryValue av = airy(rot * X, geom.bits);
    return n16 * h[0] * rot * av.ai + (cnum(1) / n16) * h[1] * roti * av.ai_prime;
  };
  switch (t) {
    case Target::P:
      out.value = mhalf * sqrt(pi()) * exp(real_t(n + 1) * (gP + ph)) * combo(cnum(1), cnum(1));
      break;
    case Target::Q:
      out.value = mhalf * sqrt(pi()) * exp(real_t(3) * z) *
                  exp(real_t(n + 1) * (gP + ph - real_t(3) * z)) * combo(wb, w);
      break;
    case Target::E:
      out.value = -mhalf * sqrt(pi()) * exp(real_t(3) * z) *
                  exp(real_t(n + 1) * (gP + ph - real_t(3) * z)) * combo(w, wb);
      break;
    default: break;
  }
  return out;
}

cnum predicted_extreme_zero(int n, int nu, Target t, unsigned bits) {
  if (n < 1 || nu < 1) throw std::invalid_argument("predicted_extreme_zero: n, nu >= 1");
  if (t == Target::R)
    throw std::invalid_argument("predicted_extreme_zero: target R accumulates elsewhere");
  PrecisionScope scope(bits + 32);
  real_t iota = airy_zero(nu, bits);
  real_t theta = (t == Target::P)   ? -29 * pi() / 36
                 : (t == Target::Q) ? -5 * pi() / 36
                                    : 19 * pi() / 36;
  cnum z1 = branch_points().z[0];
  return z1 + pow(real_t(2), real_t(-1) / 3) * pow(real_t(3), real_t(-5) / 12) * iota *
                  pow(real_t(n), real_t(-2) / 3) * polar(real_t(1), theta);
}

cnum algebraic_approximant(const cnum& z, int n, const Geometry& geom, unsigned bits) {
  if (n < 1) throw std::invalid_argument("algebraic_approximant: n >= 1 required");
  Classification c = classify_point(geom, z);
  if (c.tag != RegionTag::DP && c.tag != RegionTag::DR)
    throw region_mismatch("algebraic_approximant: converges only inside D_P and D_R");
  if (abs(z.re) < real_t(1) / 20)
    throw region_mismatch("algebraic_approximant: too close to the imaginary axis");
  HPTriple t = residue_polynomials(n);
  unsigned hb =
      bits + (unsigned)(4.33 * n * abs(z).convert_to<double>()) + 3 * (unsigned)n + 64;
  cnum P = eval_poly(t.p, z, hb);
  cnum Q = eval_poly(t.q, z, hb);
  cnum R = eval_poly(t.r, z, hb);
  PrecisionScope scope(hb);
  cnum s = sqrt(Q * Q - real_t(4) * (P * R));
  if ((conj(Q) * s).re < 0) s = -s;
  cnum num = (c.tag == RegionTag::DP) ? (-Q + s) : (-Q - s);
  return num / (real_t(2) * R);
}

}  // namespace hpexp
