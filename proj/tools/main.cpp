// Command-line front end: exports the exact triples, traced curves, measure
// masses, potential samples, zeros, and asymptotic error reports as CSV/JSON,
// and runs the tolerance check suites.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hpexp/asymptotics.hpp"
#include "hpexp/curves.hpp"
#include "hpexp/hp_exact.hpp"
#include "hpexp/io.hpp"
#include "hpexp/potentials.hpp"
#include "hpexp/surface.hpp"
#include "hpexp/zeros.hpp"

using namespace hpexp;
using ojson = nlohmann::ordered_json;

namespace {

double dbl(const real_t& x) { return x.convert_to<double>(); }

const Geometry& geom_for(unsigned bits) {
  if (bits == 192) return shared_geometry();
  static std::map<unsigned, std::unique_ptr<Geometry>> cache;
  auto& slot = cache[bits];
  if (!slot) slot = std::make_unique<Geometry>(build_geometry(bits));
  return *slot;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << text;
  }
}

const std::map<std::string, Arc> kArcNames = {
    {"gammaP", Arc::GammaP},         {"gammaR", Arc::GammaR},
    {"gammaPstar", Arc::GammaPstar}, {"gammaRstar", Arc::GammaRstar},
    {"gammaE1", Arc::GammaE1},       {"gammaE2", Arc::GammaE2},
    {"gammaE3", Arc::GammaE3},       {"gammaE4", Arc::GammaE4},
    {"gammaQseg", Arc::GammaQseg},   {"gammaQlower", Arc::GammaQlower},
    {"gammaQupper", Arc::GammaQupper}};

std::vector<Arc> parse_arcs(const std::vector<std::string>& names) {
  std::vector<Arc> arcs;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    for (const auto& [k, v] : kArcNames) (void)k, arcs.push_back(v);
    // deterministic declaration order, not map order
    arcs = {Arc::GammaP,  Arc::GammaR,  Arc::GammaPstar, Arc::GammaRstar,
            Arc::GammaE1, Arc::GammaE2, Arc::GammaE3,    Arc::GammaE4,
            Arc::GammaQseg, Arc::GammaQlower, Arc::GammaQupper};
    return arcs;
  }
  for (const std::string& nm : names) {
    auto it = kArcNames.find(nm);
    if (it == kArcNames.end()) throw CLI::ValidationError("--arcs", "unknown arc name: " + nm);
    arcs.push_back(it->second);
  }
  return arcs;
}

ZeroTarget parse_target(const std::string& s) {
  if (s == "p" || s == "P") return ZeroTarget::P;
  if (s == "q" || s == "Q") return ZeroTarget::Q;
  if (s == "r" || s == "R") return ZeroTarget::R;
  return ZeroTarget::E;
}

cnum exact_value(Target t, int n, const cnum& z, unsigned bits) {
  if (t == Target::E) {
    EnEvaluator ev(n, bits);
    return ev.eval(z);
  }
  HPTriple tr = residue_polynomials(n);
  unsigned hb = bits + (unsigned)(4.33 * n * dbl(abs(z))) + 3 * n + 64;
  const RationalPoly& poly = (t == Target::P) ? tr.p : (t == Target::Q) ? tr.q : tr.r;
  return eval_poly(poly, z, hb);
}

// ---------------------------------------------------------------- polys ----
std::string run_polys(int n, const std::vector<int>& indices, const std::string& format) {
  HPTriple t;
  if (!indices.empty()) {
    if (indices.size() != 3) throw CLI::ValidationError("--indices", "expected three indices");
    t = solve_hp_system(indices[0], indices[1], indices[2], Normalization::q_monic_scaled, 1);
  } else {
    t = residue_polynomials(n);
  }
  if (format == "json") return triple_to_json(t) + "\n";
  std::ostringstream os;
  os << "poly,k,coeff\n";
  auto rows = [&](const char* name, const RationalPoly& p) {
    for (size_t k = 0; k < p.coeffs.size(); ++k)
      os << name << ',' << k << ',' << rat_to_string(p.coeffs[k]) << '\n';
  };
  rows("p", t.p);
  rows("q", t.q);
  rows("r", t.r);
  return os.str();
}

// --------------------------------------------------------------- curves ----
std::string run_curves(const std::vector<Arc>& arcs, const std::string& format,
                       const Geometry& geom) {
  if (format == "json") {
    ojson j;
    j["ystar"] = to_decimal(geom.ystar, 20);
    ojson ja = ojson::array();
    for (Arc a : arcs) {
      const CurveTrace& tr = geom.arc(a);
      ojson node_list = ojson::array();
      for (const CurveNode& nd : tr.nodes)
        node_list.push_back({to_decimal(nd.t, 20), to_decimal(nd.z.re, 20),
                             to_decimal(nd.z.im, 20), to_decimal(nd.phi.re, 20),
                             to_decimal(nd.phi.im, 20)});
      ja.push_back({{"arc", arc_name(tr.label)}, {"nodes", node_list}});
    }
    j["arcs"] = ja;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  bool header = true;
  for (Arc a : arcs) {
    write_curve_csv(os, geom.arc(a), header);
    header = false;
  }
  return os.str();
}

// -------------------------------------------------------------- measures ----
std::vector<std::pair<std::string, real_t>> measure_table(const Geometry& geom) {
  std::vector<std::pair<std::string, real_t>> rows;
  rows.emplace_back("mu_P_mass", mu_total_mass(Pot::P, geom));
  rows.emplace_back("mu_Q_mass", mu_total_mass(Pot::Q, geom));
  rows.emplace_back("mu_R_mass", mu_total_mass(Pot::R, geom));
  rows.emplace_back("gamma_P_star_integral", gammaPstar_integral(geom));
  rows.emplace_back("mu_E_mass_gamma_E1", arc_mass(geom.gammaE1, geom));
  rows.emplace_back("mu_E_mass_gamma_E2", arc_mass(geom.gammaE2, geom));
  rows.emplace_back("mu_E_mass_gamma_E3", arc_mass(geom.gammaE3, geom));
  rows.emplace_back("mu_E_mass_gamma_E4", arc_mass(geom.gammaE4, geom));
  rows.emplace_back("mu_E_weighted_mass", mu_E_weighted_mass(geom));
  rows.emplace_back("ystar", geom.ystar);
  return rows;
}

std::string run_measures(const std::string& format, const Geometry& geom) {
  auto rows = measure_table(geom);
  if (format == "json") {
    ojson j;
    for (const auto& [k, v] : rows) j[k] = to_decimal(v, 20);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "name,value\n";
  for (const auto& [k, v] : rows) os << k << ',' << to_decimal(v, 20) << '\n';
  return os.str();
}

// ------------------------------------------------------------- potentials ----
double dist_to_arcs_double(const Geometry& geom, double x, double y) {
  static std::vector<std::pair<double, double>> pts;  // flattened polylines with NaN breaks
  if (pts.empty()) {
    for (const CurveTrace* tr : geom.all_arcs()) {
      for (const CurveNode& nd : tr->nodes) pts.emplace_back(dbl(nd.z.re), dbl(nd.z.im));
      pts.emplace_back(std::nan(""), std::nan(""));
    }
  }
  double best = 1e300;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (std::isnan(pts[i].first) || std::isnan(pts[i + 1].first)) continue;
    double ax = pts[i].first, ay = pts[i].second;
    double bx = pts[i + 1].first - ax, by = pts[i + 1].second - ay;
    double L2 = bx * bx + by * by;
    double u = L2 == 0 ? 0 : ((x - ax) * bx + (y - ay) * by) / L2;
    u = std::min(1.0, std::max(0.0, u));
    double dx = x - (ax + u * bx), dy = y - (ay + u * by);
    best = std::min(best, dx * dx + dy * dy);
  }
  return std::sqrt(best);
}

std::string run_potentials(const std::vector<double>& box, const std::string& format,
                           const Geometry& geom) {
  double x0 = box[0], x1 = box[1], y0 = box[2], y1 = box[3];
  const int N = 16;  // grid intervals per axis
  std::vector<std::array<std::string, 7>> rows;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      double x = x0 + (x1 - x0) * i / N, y = y0 + (y1 - y0) * j / N;
      if (std::hypot(x, y) < 0.05) continue;
      if (dist_to_arcs_double(geom, x, y) < 0.05) continue;
      cnum z(x, y);
      rows.push_back({to_decimal(real_t(z.re), 20), to_decimal(real_t(z.im), 20),
                      to_decimal(re_g(z, Pot::P, geom), 20), to_decimal(re_g(z, Pot::Q, geom), 20),
                      to_decimal(re_g(z, Pot::R, geom), 20), to_decimal(re_phi(z, Phi::P, geom), 20),
                      to_decimal(re_phi(z, Phi::R, geom), 20)});
    }
  const char* cols[] = {"re_z", "im_z", "re_gP", "re_gQ", "re_gR", "re_phiP", "re_phiR"};
  if (format == "json") {
    ojson j = ojson::array();
    for (const auto& r : rows) {
      ojson o;
      for (int k = 0; k < 7; ++k) o[cols[k]] = r[k];
      j.push_back(o);
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (int k = 0; k < 7; ++k) os << cols[k] << (k == 6 ? '\n' : ',');
  for (const auto& r : rows)
    for (int k = 0; k < 7; ++k) os << r[k] << (k == 6 ? '\n' : ',');
  return os.str();
}

// ---------------------------------------------------------------- zeros ----
std::string run_zeros(const std::string& target, int n, const std::vector<double>& box,
                      unsigned bits, const std::string& format) {
  ZeroTarget zt = parse_target(target);
  ZeroSet zs;
  if (zt == ZeroTarget::E) {
    Box b{real_t(box[0]), real_t(box[1]), real_t(box[2]), real_t(box[3])};
    zs = entire_zeros_in_box(n, b, bits);
  } else {
    HPTriple t = residue_polynomials(n);
    const RationalPoly& poly = (zt == ZeroTarget::P) ? t.p : (zt == ZeroTarget::Q) ? t.q : t.r;
    zs = poly_roots(poly, bits);
  }
  zs.target = zt;
  zs.n = n;
  if (format == "json") {
    ojson j;
    j["target"] = target_name(zs.target);
    j["n"] = zs.n;
    ojson zr = ojson::array();
    for (size_t i = 0; i < zs.zeros.size(); ++i)
      zr.push_back({{"re", to_decimal(zs.zeros[i].re, 30)},
                    {"im", to_decimal(zs.zeros[i].im, 30)},
                    {"residual", to_decimal(i < zs.residual.size() ? zs.residual[i] : real_t(0), 6)}});
    j["zeros"] = zr;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  write_zeros_csv(os, zs, true);
  return os.str();
}

// ----------------------------------------------------------------- asym ----
std::string run_asym(const std::string& target, int n, const std::string& regime,
                     std::vector<std::pair<double, double>> points, unsigned bits,
                     const Geometry& geom) {
  std::vector<Target> targets;
  if (target == "all") {
    targets = {Target::P, Target::Q, Target::R, Target::E};
  } else {
    ZeroTarget zt = parse_target(target);
    targets = {static_cast<Target>(static_cast<int>(zt))};
  }
  std::ostringstream os;
  os << "target,regime,n,re_z,im_z,rel_err\n";
  for (Target t : targets) {
    auto pts = points;
    if (pts.empty()) {
      // default interior probe for each target
      switch (t) {
        case Target::P: pts = {{2.0, 0.0}}; break;
        case Target::Q: pts = {{2.0, 0.0}}; break;
        case Target::R: pts = {{-2.0, 0.0}}; break;
        case Target::E: pts = {{-0.3, 0.0}}; break;
      }
    }
    for (auto [x, y] : pts) {
      cnum z(x, y);
      AsymptoticPrediction pred = (regime == "two_term")
                                      ? two_term_asymptotic(z, n, t, geom)
                                      : (regime == "airy") ? airy_local(z, n, t, geom)
                                                           : strong_asymptotic(z, n, t, geom);
      cnum ex = exact_value(t, n, z, bits);
      real_t rel = abs(pred.value - ex) / abs(ex);
      os << target_name(static_cast<ZeroTarget>(static_cast<int>(t))) << ',' << regime << ',' << n
         << ',' << to_decimal(real_t(z.re), 20) << ',' << to_decimal(real_t(z.im), 20) << ','
         << to_decimal(rel, 6) << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- check ----
struct CheckItem {
  std::string name;
  real_t value;
  double tol;
  bool lower_bound = false;  // pass iff value >= -tol instead of |value| <= tol
  bool pass() const { return lower_bound ? value >= real_t(-tol) : abs(value) <= real_t(tol); }
};

void check_identities(std::vector<CheckItem>& items, const Geometry& geom) {
  const std::vector<std::pair<double, double>> pts = {
      {2.0, 0.0},  {-2.0, 0.0}, {0.8, 0.9},  {-0.8, 0.9}, {0.8, -0.9}, {-0.8, -0.9},
      {0.3, 0.0},  {-0.3, 0.0}, {0.0, 1.5},  {0.0, -1.5}, {3.0, 2.0},  {-3.0, -2.0}};
  IdentityResiduals mx{};
  for (auto [x, y] : pts) {
    IdentityResiduals r = identity_residuals(cnum(x, y), geom);
    mx.gphi_P = (std::max)(mx.gphi_P, r.gphi_P);
    mx.gphi_R = (std::max)(mx.gphi_R, r.gphi_R);
    mx.sum_g = (std::max)(mx.sum_g, r.sum_g);
    mx.rel_gP_gQ = (std::max)(mx.rel_gP_gQ, r.rel_gP_gQ);
    mx.rel_gR_gQ = (std::max)(mx.rel_gR_gQ, r.rel_gR_gQ);
    mx.sum_psi = (std::max)(mx.sum_psi, r.sum_psi);
    mx.dgP = (std::max)(mx.dgP, r.dgP);
    mx.dgR = (std::max)(mx.dgR, r.dgR);
    mx.dgQ = (std::max)(mx.dgQ, r.dgQ);
  }
  items.push_back({"identities.gphi_P_max_residual", mx.gphi_P, 1e-9});
  items.push_back({"identities.gphi_R_max_residual", mx.gphi_R, 1e-9});
  items.push_back({"identities.sum_g_max_residual", mx.sum_g, 1e-9});
  items.push_back({"identities.rel_gP_gQ_max_residual", mx.rel_gP_gQ, 1e-9});
  items.push_back({"identities.rel_gR_gQ_max_residual", mx.rel_gR_gQ, 1e-9});
  items.push_back({"identities.sum_psi_max_residual", mx.sum_psi, 1e-9});
  items.push_back({"identities.dgP_max_residual", mx.dgP, 1e-9});
  items.push_back({"identities.dgR_max_residual", mx.dgR, 1e-9});
  items.push_back({"identities.dgQ_max_residual", mx.dgQ, 1e-9});
}

void check_masses(std::vector<CheckItem>& items, const Geometry& geom) {
  items.push_back({"masses.mu_P_minus_1", mu_total_mass(Pot::P, geom) - 1, 1e-8});
  items.push_back({"masses.mu_Q_minus_1", mu_total_mass(Pot::Q, geom) - 1, 1e-8});
  items.push_back({"masses.mu_R_minus_1", mu_total_mass(Pot::R, geom) - 1, 1e-8});
  items.push_back({"masses.gamma_P_star_integral_minus_2", gammaPstar_integral(geom) - 2, 1e-8});
  real_t min_dir(1);
  for (const CurveTrace* tr : {&geom.gammaE1, &geom.gammaE2, &geom.gammaE3, &geom.gammaE4}) {
    for (size_t i = 0; i + 1 < tr->nodes.size(); ++i) {
      cnum tang = tr->nodes[i + 1].z - tr->nodes[i].z;
      real_t L = abs(tang);
      if (L == 0) continue;
      tang = tang / L;
      cnum dens = mu_density(tr->nodes[i].z, tr->label, geom).density;
      min_dir = (std::min)(min_dir, (dens * tang).re);
    }
  }
  items.push_back({"masses.mu_E_min_density_dot_tangent", min_dir, 1e-10, true});
}

void check_asymptotics(std::vector<CheckItem>& items, const Geometry& geom, unsigned bits) {
  struct Probe {
    Target t;
    double x, y;
    const char* name;
  };
  const Probe probes[] = {{Target::P, 2.0, 0.0, "P_at_2"},
                          {Target::Q, 2.0, 0.0, "Q_at_2"},
                          {Target::R, -2.0, 0.0, "R_at_minus2"},
                          {Target::E, -0.3, 0.0, "E_at_minus0.3"}};
  for (const Probe& pr : probes) {
    cnum z(pr.x, pr.y);
    real_t rel16, rel24;
    for (int n : {16, 24}) {
      cnum pred = strong_asymptotic(z, n, pr.t, geom).value;
      cnum ex = exact_value(pr.t, n, z, bits);
      real_t rel = abs(pred - ex) / abs(ex);
      (n == 16 ? rel16 : rel24) = rel;
    }
    items.push_back({std::string("asymptotics.strong_rel_err_n24.") + pr.name, rel24, 0.05});
    items.push_back({std::string("asymptotics.strong_improvement.") + pr.name, rel16 - rel24,
                     1.0, true});  // rel err must not grow from n=16 to n=24
  }
}

void check_airy(std::vector<CheckItem>& items, unsigned bits) {
  unsigned b = (std::max)(bits, 160u);
  AiryValue a0 = airy(cnum(0), b);
  items.push_back({"airy.Ai0_vs_reference",
                   a0.ai.re - real_t("0.355028053887817239260063186004"), 1e-20});
  items.push_back({"airy.Aiprime0_vs_reference",
                   a0.ai_prime.re + real_t("0.258819403792806798405183560189"), 1e-20});
  items.push_back({"airy.iota1_vs_reference",
                   airy_zero(1, b) - real_t("2.338107410459767038489197252446"), 1e-20});
  // the asymptotic normalization Ai(x) ~ e^{-2/3 x^{3/2}} / (2 sqrt(pi) x^{1/4})
  // the first correction term is 5/(108 x^{3/2}), so the tolerance must sit above it
  for (double xv : {10.0, 25.0}) {
    real_t x(xv);
    AiryValue ax = airy(cnum(x), b);
    real_t norm = ax.ai.re * 2 * sqrt(pi()) * pow(x, real_t(0.25)) *
                  exp(real_t(2) / 3 * pow(x, real_t(1.5)));
    items.push_back({"airy.large_x_normalization_minus_1_at_" + std::to_string((int)xv),
                     norm - 1, xv < 20 ? 5e-3 : 1e-3});
  }
  // ODE check by second differences on a small grid
  real_t h(1e-5), worst(0);
  for (double s : {-2.0, -0.5, 0.7, 1.9}) {
    cnum zs(s);
    cnum second = (airy(zs + cnum(h), b).ai - real_t(2) * airy(zs, b).ai +
                   airy(zs - cnum(h), b).ai) / (h * h);
    worst = (std::max)(worst, abs(second - zs * airy(zs, b).ai));
  }
  items.push_back({"airy.ode_second_difference_residual", worst, 1e-8});
}

int run_check(const std::string& category, unsigned bits, const std::string& out_path) {
  std::vector<CheckItem> items;
  bool all = category == "all";
  if (all || category == "identities") check_identities(items, geom_for(bits));
  if (all || category == "masses") check_masses(items, geom_for(bits));
  if (all || category == "asymptotics") check_asymptotics(items, geom_for(bits), bits);
  if (all || category == "airy") check_airy(items, bits);
  bool passed = true;
  ojson j;
  j["category"] = category;
  j["precision_bits"] = bits;
  ojson jc = ojson::array();
  for (const CheckItem& it : items) {
    bool ok = it.pass();
    passed = passed && ok;
    jc.push_back({{"name", it.name},
                  {"value", to_decimal(it.value, 6)},
                  {"tolerance", it.tol},
                  {"bound", it.lower_bound ? "value >= -tolerance" : "abs(value) <= tolerance"},
                  {"passed", ok}});
  }
  j["checks"] = jc;
  j["passed"] = passed;
  emit(j.dump(2) + "\n", out_path);
  return passed ? 0 : 1;
}

// --------------------------------------------------------------- report ----
void run_report(const std::string& out_dir, int n_zeros, unsigned bits) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const Geometry& geom = geom_for(bits);
  auto save = [&](const std::string& name, const std::string& text) {
    emit(text, (fs::path(out_dir) / name).string());
  };
  for (int n : {1, 2, 4, 8})
    save("polys_n" + std::to_string(n) + ".json", run_polys(n, {}, "json"));
  save("curves.csv", run_curves(parse_arcs({}), "csv", geom));
  save("measures.csv", run_measures("csv", geom));
  save("potentials.csv", run_potentials({-2, 2, -2, 2}, "csv", geom));
  for (const char* t : {"p", "q", "r"})
    save(std::string("zeros_") + t + "_n" + std::to_string(n_zeros) + ".csv",
         run_zeros(t, n_zeros, {-1.5, 1.5, -1.5, 1.5}, bits, "csv"));
  ojson s;
  s["precision_bits"] = bits;
  s["ystar"] = to_decimal(geom.ystar, 20);
  ojson bpz = ojson::array();
  for (const cnum& z : geom.bp.z)
    bpz.push_back({to_decimal(z.re, 20), to_decimal(z.im, 20)});
  s["branch_points"] = bpz;
  s["ell_re"] = to_decimal(ell().re, 20);
  s["ell_im"] = to_decimal(ell().im, 20);
  save("summary.json", s.dump(2) + "\n");
}

std::vector<std::pair<double, double>> parse_points(const std::vector<std::string>& raw) {
  std::vector<std::pair<double, double>> pts;
  for (const std::string& s : raw) {
    double x, y;
    if (std::sscanf(s.c_str(), "%lf,%lf", &x, &y) != 2)
      throw CLI::ValidationError("--z", "expected re,im pair: " + s);
    pts.emplace_back(x, y);
  }
  return pts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quadratic Hermite-Pade approximants to exp, their limiting "
               "curve system, measures, potentials, zeros, and asymptotics"};
  app.require_subcommand(1);

  unsigned bits = 192;
  std::string out_path, format = "csv";
  int n = 1;
  std::vector<int> indices;
  std::vector<std::string> arc_names;
  std::string target = "all", regime = "strong", category = "all";
  std::vector<double> box = {-1.5, 1.5, -1.5, 1.5};
  std::vector<std::string> zpoints;
  int report_n = 20;

  auto add_common = [&](CLI::App* c, bool with_format = true) {
    c->add_option("--precision-bits", bits, "working precision in bits")
        ->check(CLI::Range(64u, 4096u))
        ->capture_default_str();
    c->add_option("--out", out_path, "output file (default: stdout)");
    if (with_format)
      c->add_option("--format", format, "output format")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
  };

  CLI::App* c_polys = app.add_subcommand("polys", "exact polynomial triples");
  c_polys->add_option("--n", n, "diagonal index")->required()->check(CLI::PositiveNumber);
  c_polys->add_option("--indices", indices, "three indices n1,n2,n3 (natural variable)")
      ->delimiter(',');
  add_common(c_polys);
  format = "csv";  // restored below per-command; polys defaults to json
  c_polys->parse_complete_callback([&] {
    if (!c_polys->count("--format")) format = "json";
  });

  CLI::App* c_curves = app.add_subcommand("curves", "traced curve system");
  c_curves->add_option("--arcs", arc_names, "comma list of arc names or 'all'")->delimiter(',');
  add_common(c_curves);

  CLI::App* c_meas = app.add_subcommand("measures", "limit measure masses");
  add_common(c_meas);

  CLI::App* c_pot = app.add_subcommand("potentials", "potential field samples on a grid");
  c_pot->add_option("--box", box, "grid box x0,x1,y0,y1")->delimiter(',')->expected(4);
  add_common(c_pot);

  CLI::App* c_zeros = app.add_subcommand("zeros", "zero sets with certified residuals");
  c_zeros->add_option("--target", target, "p, q, r, or e")
      ->required()
      ->check(CLI::IsMember({"p", "q", "r", "e"}));
  c_zeros->add_option("--n", n, "diagonal index")->required()->check(CLI::PositiveNumber);
  c_zeros->add_option("--box", box, "search box for target e")->delimiter(',')->expected(4);
  add_common(c_zeros);

  CLI::App* c_asym = app.add_subcommand("asym", "asymptotic-vs-exact error report");
  c_asym->add_option("--target", target, "p, q, r, e, or all")
      ->check(CLI::IsMember({"p", "q", "r", "e", "all"}));
  c_asym->add_option("--n", n, "diagonal index")->required()->check(CLI::PositiveNumber);
  c_asym->add_option("--regime", regime, "prediction regime")
      ->check(CLI::IsMember({"strong", "two_term", "airy"}));
  c_asym->add_option("--z", zpoints, "evaluation points re,im (repeatable)");
  add_common(c_asym);

  CLI::App* c_check = app.add_subcommand("check", "tolerance check suites (JSON report)");
  c_check->add_option("category", category, "identities, masses, asymptotics, airy, or all")
      ->check(CLI::IsMember({"identities", "masses", "asymptotics", "airy", "all"}));
  add_common(c_check, false);

  CLI::App* c_report = app.add_subcommand("report", "write the full data export");
  c_report->add_option("--out", out_path, "output directory")->required();
  c_report->add_option("--n", report_n, "diagonal index for the zero sets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_report->add_option("--precision-bits", bits, "working precision in bits")
      ->check(CLI::Range(64u, 4096u))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    set_precision_bits(bits);
    if (c_polys->parsed()) {
      emit(run_polys(n, indices, format), out_path);
    } else if (c_curves->parsed()) {
      emit(run_curves(parse_arcs(arc_names), format, geom_for(bits)), out_path);
    } else if (c_meas->parsed()) {
      emit(run_measures(format, geom_for(bits)), out_path);
    } else if (c_pot->parsed()) {
      emit(run_potentials(box, format, geom_for(bits)), out_path);
    } else if (c_zeros->parsed()) {
      emit(run_zeros(target, n, box, bits, format), out_path);
    } else if (c_asym->parsed()) {
      emit(run_asym(target, n, regime, parse_points(zpoints), bits, geom_for(bits)), out_path);
    } else if (c_check->parsed()) {
      return run_check(category, bits, out_path);
    } else if (c_report->parsed()) {
      run_report(out_path, report_n, bits);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
