// Deterministic CSV/JSON rendering of the library's data products.
#pragma once

#include <ostream>
#include <string>

#include "hpexp/geometry.hpp"
#include "hpexp/hp_exact.hpp"
#include "hpexp/zeros.hpp"

namespace hpexp {

std::string arc_name(Arc a);

// One arc as CSV rows: label,t,re_z,im_z,re_phi,im_phi
void write_curve_csv(std::ostream& os, const CurveTrace& trace, bool header);

// Zero set as CSV rows: target,n,re,im,residual
void write_zeros_csv(std::ostream& os, const ZeroSet& zs, bool header);

// Exact triple as JSON (coefficients as "num/den" decimal strings).
std::string triple_to_json(const HPTriple& t);

std::string target_name(ZeroTarget t);

}  // namespace hpexp
