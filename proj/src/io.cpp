#include "hpexp/io.hpp"

#include "json.hpp"

namespace hpexp {

std::string arc_name(Arc a) {
  switch (a) {
    case Arc::GammaP: return "gamma_P";
    case Arc::GammaR: return "gamma_R";
    case Arc::GammaPstar: return "gamma_P_star";
    case Arc::GammaRstar: return "gamma_R_star";
    case Arc::GammaE1: return "gamma_E1";
    case Arc::GammaE2: return "gamma_E2";
    case Arc::GammaE3: return "gamma_E3";
    case Arc::GammaE4: return "gamma_E4";
    case Arc::GammaQseg: return "gamma_Q_segment";
    case Arc::GammaQlower: return "gamma_Q_lower";
    default: return "gamma_Q_upper";
  }
}

std::string target_name(ZeroTarget t) {
  switch (t) {
    case ZeroTarget::P: return "P";
    case ZeroTarget::Q: return "Q";
    case ZeroTarget::R: return "R";
    default: return "E";
  }
}

void write_curve_csv(std::ostream& os, const CurveTrace& trace, bool header) {
  if (header) os << "label,t,re_z,im_z,re_phi,im_phi\n";
  const std::string name = arc_name(trace.label);
  for (const CurveNode& nd : trace.nodes) {
    os << name << ',' << to_decimal(nd.t, 20) << ',' << to_decimal(nd.z.re, 20) << ','
       << to_decimal(nd.z.im, 20) << ',' << to_decimal(nd.phi.re, 20) << ','
       << to_decimal(nd.phi.im, 20) << '\n';
  }
}

void write_zeros_csv(std::ostream& os, const ZeroSet& zs, bool header) {
  if (header) os << "target,n,re,im,residual\n";
  const std::string name = target_name(zs.target);
  for (size_t i = 0; i < zs.zeros.size(); ++i) {
    os << name << ',' << zs.n << ',' << to_decimal(zs.zeros[i].re, 30) << ','
       << to_decimal(zs.zeros[i].im, 30) << ','
       << (i < zs.residual.size() ? to_decimal(zs.residual[i], 6) : std::string("0")) << '\n';
  }
}

std::string triple_to_json(const HPTriple& t) {
  nlohmann::ordered_json j;
  j["n1"] = t.n1;
  j["n2"] = t.n2;
  j["n3"] = t.n3;
  j["scale"] = t.scale;
  j["order"] = t.order();
  auto poly = [](const RationalPoly& p) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const rat& c : p.coeffs) a.push_back(rat_to_string(c));
    return a;
  };
  j["p"] = poly(t.p);
  j["q"] = poly(t.q);
  j["r"] = poly(t.r);
  return j.dump(2);
}

}  // namespace hpexp
