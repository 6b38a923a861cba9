// Shared geometric data: branch points, traced arcs, and the assembled curve system
// of the limiting zero distribution (produced by the curves module, consumed by the
// surface/potentials/asymptotics/zeros modules).
#pragma once

#include <array>
#include <vector>

#include "hpexp/prec.hpp"

namespace hpexp {

enum class Sheet { P, Q, R };

struct SheetPoint {
  cnum z;
  Sheet sheet;
  cnum w;  // branch value psi_sheet(z)
};

struct BranchData {
  std::array<cnum, 4> w;  // w_k = 3^{-1/4} omega_8^{-2k-1}, k = 1..4 at index k-1
  std::array<cnum, 4> z;  // z_k = z(w_k)
};

enum class Arc {
  GammaP, GammaR, GammaPstar, GammaRstar,
  GammaE1, GammaE2, GammaE3, GammaE4,
  GammaQseg,    // [-iy*, iy*]
  GammaQlower,  // from z_2 via -iy* to z_3
  GammaQupper,  // from z_4 via iy* to z_1
};

// One node of a traced arc.  wa/wb are the continuously tracked pair of cubic roots
// that collide at the arc's branch points (wa = the +side boundary value of the arc's
// own sheet on cut arcs), wc is the third (spectator) root.  phi is the accumulated
// (3/2) integral of (wb - wa) dz from the seed branch point.
struct CurveNode {
  cnum z;
  real_t t;  // arclength parameter
  cnum phi;
  cnum wa, wb, wc;
};

struct CurveTrace {
  Arc label;
  std::vector<CurveNode> nodes;
  real_t length() const { return nodes.empty() ? real_t(0) : nodes.back().t; }
};

enum class RegionTag { DP, DR, DPstar, DRstar, DinfP, DinfR, DinfU, DinfL, OnCurve };

struct Classification {
  RegionTag tag;
  Arc arc = Arc::GammaP;  // valid when tag == OnCurve
  int side = 0;           // +1 / -1 for on-curve points
  bool in_DPstar = false; // inside the lens bounded by GammaP and GammaPstar
  bool in_DRstar = false;
};

struct Geometry {
  BranchData bp;
  real_t ystar;
  CurveTrace gammaP, gammaR, gammaPstar, gammaRstar;
  CurveTrace gammaE1, gammaE2, gammaE3, gammaE4;
  CurveTrace gammaQ_seg, gammaQ_lower, gammaQ_upper;

  // w-plane images: cut arcs psi_{P+}(GammaP), psi_{R+}(GammaR) for sqrt(3w^4+1),
  // and the full closed loops (both boundary sides) used for sheet labeling
  std::vector<cnum> cutP, cutR;
  std::vector<cnum> loopP, loopR;

  // z-plane closed boundary chains for region classification
  std::vector<cnum> chainDP, chainDR, chainDPstar, chainDRstar;

  real_t trunc_radius = real_t(50);
  real_t oncurve_tol = real_t(1) / 10000000;  // 1e-7
  unsigned bits = 192;

  const CurveTrace& arc(Arc a) const;
  std::vector<const CurveTrace*> all_arcs() const;
};

// Nearest point of a traced arc: segment index, parameter along it, distance.
struct TraceLocation {
  int seg = 0;    // between nodes[seg] and nodes[seg+1]
  real_t u = 0;   // in [0,1] along that segment
  real_t dist = 0;
};
TraceLocation locate_on_trace(const CurveTrace& trace, const cnum& z);

}  // namespace hpexp
