// Numerical tracing of the trajectory arcs, assembly of the full curve system
// (including the composite middle curve and the region partition), and y*.
#pragma once

#include "hpexp/geometry.hpp"

namespace hpexp {

struct trace_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TraceParams {
  unsigned bits = 192;
  double h_max = 0.02;       // max arclength step
  double h_min = 1e-7;       // min step / endpoint snap tolerance
  double trunc_radius = 50;  // truncation for unbounded arcs
  int max_nodes = 100000;
};

// Trace the trajectory leaving branch point start_k (1..4) in departure sector
// direction (0..2).  The three sectors at z_1 are, in order: the unbounded arc,
// the cut arc, and the starred arc; the other branch points follow by the
// z -> conj(z) and z -> -conj(z) symmetries.
CurveTrace trace_trajectory(int start_k, int direction, const TraceParams& prm = {});

// Positive imaginary-axis intersection of the starred arcs: the root of
// Re phi_P(iy) = 0 in (0.3, 1.0).
real_t compute_ystar(unsigned bits = 192);

// Trace everything, label the tracked roots, assemble the composite arcs and
// the classification chains.
Geometry build_geometry(unsigned bits = 192);

// Shared immutable geometry at 192 bits, built once per process.
const Geometry& shared_geometry();

Classification classify_point(const Geometry& geom, const cnum& z);

}  // namespace hpexp
