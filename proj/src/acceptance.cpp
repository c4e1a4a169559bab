#include "casimir/acceptance.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_roots.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>

#include "casimir/constraints.hpp"
#include "casimir/expfit.hpp"
#include "casimir/geometry.hpp"
#include "casimir/ideal.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/shell.hpp"
#include "casimir/thermal.hpp"

namespace casimir::acc {

namespace {

const Constants& K() { return Constants::codata2018(); }
double hc() { return K().hbar * K().c; }
constexpr double kZeta3 = 1.2020569031595942;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

bool within(double x, double target, double rel) { return std::fabs(x - target) <= rel * std::fabs(target); }

double brent(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10) {
  gsl_function F;
  F.function = [](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); };
  F.params = const_cast<std::function<double(double)>*>(&f);
  std::unique_ptr<gsl_root_fsolver, decltype(&gsl_root_fsolver_free)> s(gsl_root_fsolver_alloc(gsl_root_fsolver_brent),
                                                                          gsl_root_fsolver_free);
  gsl_root_fsolver_set(s.get(), &F, lo, hi);
  for (int i = 0; i < 200; ++i) {
    gsl_root_fsolver_iterate(s.get());
    double a = gsl_root_fsolver_x_lower(s.get()), b = gsl_root_fsolver_x_upper(s.get());
    if (gsl_root_test_interval(a, b, tol, 0) == GSL_SUCCESS) break;
  }
  return gsl_root_fsolver_root(s.get());
}

Criterion c1() {
  double F = ideal::plates_ideal(1e-4, 1e-6).force;
  bool ok = within(F, -1.3e-7, 0.02);
  return {1, ok, fmt("ideal plates S=1 cm^2, a=1 um: F=%.4e N (target -1.3e-7 +-2%%)", F)};
}

Criterion c2() {
  double R = 100e-6, a = 1e-6;
  double F = ideal::sphere_plate_ideal(R, a);
  double ref = -std::pow(M_PI, 3) * hc() * R / (360 * a * a * a);
  double rel = std::fabs(F / ref - 1);
  // Energy U(a) = int_a^inf F; -dU/da by a five-point stencil.
  num::QuadratureSpec q;
  q.rel_tol = 1e-11;
  auto U = [&](double x) {
    return a * num::integrate_semi_infinite([&](double t) { return ideal::sphere_plate_ideal(R, a * t); }, x / a, q);
  };
  double h = 1e-3 * a;
  double dU = (-U(a + 2 * h) + 8 * U(a + h) - 8 * U(a - h) + U(a - 2 * h)) / (12 * h);
  double fd = std::fabs(-dU / F - 1);
  bool ok = rel <= 1e-10 && fd <= 1e-6;
  return {2, ok, fmt("ideal sphere-plate: closed-form rel dev %.1e (<=1e-10), -dU/da rel dev %.1e (<=1e-6)", rel, fd)};
}

Criterion c3() {
  double cube = ideal::box_energy(1, 1, 1, ideal::BoxRoute::epstein).epstein_route / hc();
  auto ap = [](double r) { return ideal::box_energy(1, 1, r, ideal::BoxRoute::abelplana).abelplana_route; };
  auto ep = [](double r) { return ideal::box_energy(1, 1, r, ideal::BoxRoute::epstein).epstein_route; };
  double z1 = brent(ap, 0.3, 0.5), z2 = brent(ap, 3.0, 4.0);
  double e1 = brent(ep, 0.3, 0.5), e2 = brent(ep, 3.0, 4.0);
  // Abel-Plana route with its exponentially small remainder restored, against the zeta route.
  double worst = 0, dropped = 0;
  for (double r : {0.2, 0.5, 1.0, 2.0, 5.0}) {
    double full = ap(r) + hc() * ideal::box_H(std::min(1.0, r), 1.0, std::max(1.0, r));
    worst = std::max(worst, std::fabs(full / ep(r) - 1));
    dropped = std::max(dropped, std::fabs(ap(r) / ep(r) - 1));
  }
  double d2 = brent([](double x) { return ideal::box2d_energy(1, x); }, 2.0, 3.5);
  bool ok = std::fabs(cube - 0.0916) <= 5e-4 && std::fabs(z1 - 0.408) <= 0.01 && std::fabs(z2 - 3.48) <= 0.01 &&
            worst <= 5e-3 && std::fabs(d2 - 2.74) <= 0.01;
  return {3, ok,
          fmt("box: cube %.6f (0.0916+-0.0005); zeros %.4f, %.4f (0.408, 3.48 +-0.01; zeta route %.4f, %.4f); "
              "route spread %.1e%% (<=0.5%%; %.1f%% with the remainder dropped); 2D boundary %.4f (2.74+-0.01)",
              cube, z1, z2, e1, e2, 100 * worst, 100 * dropped, d2)};
}

Criterion c4() {
  double a = 1e-6;
  double I = ideal::interval_energy(a, 0).total() * a / hc();
  double S1 = ideal::topology_energy(ideal::Topology::S1, a, 0) * a / hc();
  double mu = 10, m = mu * K().hbar / (K().c * a), mc2 = m * K().c * K().c;
  double S2 = ideal::topology_energy(ideal::Topology::S2, a, m) / mc2;
  double asym = ideal::s2_large_mu(mu, 1.0);
  double dI = std::fabs(I + M_PI / 24), dS = std::fabs(S1 + M_PI / 6), d2 = std::fabs(S2 - asym) / asym;
  bool ok = dI <= 1e-10 && dS <= 1e-10 && d2 <= 1e-3;
  return {4, ok,
          fmt("topologies: interval dev %.1e, S1 dev %.1e (<=1e-10); S2 at mu=10 %.6f vs %.6f, rel %.1e (<=1e-3)", dI,
              dS, S2, asym, d2)};
}

struct Frac {
  long n, d;
};
bool same(Frac a, Frac b) { return a.n * b.d == b.n * a.d; }

Criterion c5() {
  // Printed rational parts q and pi^2 parts r.
  const Frac pq[5] = {{1, 1}, {-16, 3}, {24, 1}, {-640, 7}, {2800, 9}};
  const Frac pr[5] = {{0, 1}, {0, 1}, {0, 1}, {640, 7 * 210}, {-2800 * 163, 9 * 7350}};
  const Frac sq[5] = {{1, 1}, {-4, 1}, {72, 5}, {-320, 7}, {400, 3}};
  const Frac sr[5] = {{0, 1}, {0, 1}, {0, 1}, {320, 7 * 210}, {-400 * 163, 3 * 7350}};
  const auto& P = lif::plates_series_coefficients();
  const auto& S = lif::sphere_series_coefficients();
  bool table = true, pft = true;
  for (int k = 0; k < 5; ++k) {
    table = table && same({P[k].q_num, P[k].q_den}, pq[k]) && same({P[k].r_num, P[k].r_den}, pr[k]) &&
            same({S[k].q_num, S[k].q_den}, sq[k]) && same({S[k].r_num, S[k].r_den}, sr[k]);
    // Pressure term (3+k)/3 e_k against sphere force term e_k.
    pft = pft && same({3 * P[k].q_num, (3 + k) * P[k].q_den}, {S[k].q_num, S[k].q_den}) &&
          same({3 * P[k].r_num, (3 + k) * P[k].r_den}, {S[k].r_num, S[k].r_den});
  }
  double worst = 0, at = 0;
  for (double wp : {11.5, 9.0}) {
    lif::LayerStack s{mat::plasma_ev(wp), std::nullopt};
    double d0 = mat::penetration_depth(s.substrate), lp = 2 * M_PI * d0;
    for (double a : yuk::log_grid(lp, 10 * lp, 10)) {
      double x = d0 / a;
      double dp = std::fabs(lif::force_semispaces(s, a).conductivity_factor - lif::perturbative_plates(x));
      double ds = std::fabs(lif::force_sphere_plate(s, 100e-6, a).conductivity_factor - lif::perturbative_sphere(x));
      if (std::max(dp, ds) > worst) {
        worst = std::max(dp, ds);
        at = a / lp;
      }
    }
  }
  bool ok = table && pft && worst <= 0.01;
  return {5, ok,
          fmt("conductivity series: rationals %s, proximity cross-check %s; max |series - plasma| %.4f at a=%.2f "
              "lambda_p (<=0.01 for a>=lambda_p)",
              table ? "exact" : "MISMATCH", pft ? "exact" : "MISMATCH", worst, at)};
}

Criterion c6() {
  double R = 100e-6, T = 300;
  double c1 = thermal::ideal_sphere_factor(T / teff(1e-6)) - 1;
  double f6 = thermal::ideal_sphere_plate_T(R, 6e-6, T) / ideal::sphere_plate_ideal(R, 6e-6) - 1;
  double a = 1e-6, T3 = 3 * teff(a);
  double kT = K().k_B * T3;
  double hp = thermal::ideal_plates_T(1.0, a, T3) / (-kT * kZeta3 / (4 * M_PI * a * a * a));
  double hs = thermal::ideal_sphere_plate_T(R, a, T3) / (-kT * R * kZeta3 / (4 * a * a));
  bool ok = std::fabs(c1 - 0.027) <= 0.003 && std::fabs(f6 - 1.74) <= 0.05 && std::fabs(hp - 1) <= 0.01 &&
            std::fabs(hs - 1) <= 0.01;
  return {6, ok,
          fmt("temperature: 1 um correction %.3f%% (2.7+-0.3%%); 6 um correction %.3f F0 (1.74+-0.05); high-T plates %.4f, "
              "sphere %.4f at 3 T_eff (1+-0.01)",
              100 * c1, f6, hp, hs)};
}

Criterion c7() {
  double R = 100e-6, a = 8e-6, T = 300;
  lif::LayerStack drude{mat::Drude{1.92e16, 9.6e13}, std::nullopt};
  lif::LayerStack plasma{mat::Plasma{1.92e16}, std::nullopt};
  lif::LayerStack id{mat::IdealMetal{}, std::nullopt};
  using thermal::ZeroModePolicy;
  double fd = -thermal::lifshitz_sphere_plate_T(drude, R, a, T, ZeroModePolicy::DrudeResummed).value;
  double fp = -thermal::lifshitz_sphere_plate_T(plasma, R, a, T, ZeroModePolicy::PlasmaNatural).value;
  double fi = -thermal::lifshitz_sphere_plate_T(id, R, a, T, ZeroModePolicy::SchwingerDeRaadMilton).value;
  bool ok = within(fd, 1.9303e-15, 5e-3) && within(fp, 1.9378e-15, 5e-3) && within(fi, 1.9454e-15, 5e-3);
  return {7, ok,
          fmt("T + conductivity at 8 um: Drude %.5e, plasma %.5e, ideal %.5e N (1.9303, 1.9378, 1.9454 e-15 +-0.5%%)",
              fd, fp, fi)};
}

Criterion c8() {
  const geo::Rational want[5] = {{1, 1}, {0, 1}, {10, 3}, {0, 1}, {7, 1}};
  bool rat = true;
  for (int n = 0; n < 5; ++n) {
    auto c = geo::wedge_series_coefficient(n);
    rat = rat && c.num * want[n].den == want[n].num * c.den;
  }
  // The polynomial carries exactly these coefficients.
  for (double x : {0.1, 0.2, 0.3})
    rat = rat && std::fabs(geo::tilt_factor(x) - (1 + 10.0 / 3 * x * x + 7 * std::pow(x, 4))) <= 1e-14;

  double R = 100e-6, a = 120e-9, d0 = 15.9e-9;
  geo::DiscreteLevels p{{40e-9, 20e-9, 10e-9}, {0.11, 0.25, 0.64}, true};
  auto set = geo::weighted_distance_set(p);
  double F0 = ideal::sphere_plate_ideal(R, a);
  double comb = geo::average_force(
                    [&](double x) { return ideal::sphere_plate_ideal(R, x) * lif::perturbative_sphere(d0 / x); }, a,
                    set) / F0 - 1;

  // Remainder of the fourth-order series should fall as (A/a)^5.
  double A = geo::zero_level(p).A;
  geo::ProfilePair pp{p, p};
  auto rem = [&](double x) {
    double aa = A / x;
    double w = geo::average_force([&](double y) { return ideal::sphere_plate_ideal(R, y); }, aa, set) /
               ideal::sphere_plate_ideal(R, aa);
    return std::fabs(w - geo::rough_sphere_factor(pp, aa, geo::Regime::short_scale));
  };
  double slope = std::log(rem(0.04) / rem(0.02)) / std::log(2.0);
  bool ok = rat && std::fabs(comb + 0.22) <= 0.01 && std::fabs(slope - 5) <= 0.5;
  return {8, ok,
          fmt("roughness: tilt rationals %s; combined correction at 120 nm %.1f%% (-22+-1%%); series remainder order "
              "%.2f (5)",
              rat ? "exact" : "MISMATCH", 100 * comb, slope)};
}

Criterion c9() {
  // R = 1 m; energies in units of hbar c / R.
  double whole = shell::sphere_energy(shell::Region::whole, std::nullopt).finite_part / hc();
  double w1 = shell::sphere_energy(shell::Region::whole, 1e10, 1e-6).finite_part;
  double w2 = shell::sphere_energy(shell::Region::whole, 1e20, 1e-6).finite_part;
  double dmu = std::fabs(w1 - w2) / std::fabs(w1);
  double pole = shell::sphere_energy(shell::Region::interior, 1.0).pole_coefficient / hc();
  double a2 = shell::dirichlet_sphere_coefficients(shell::Region::interior, 1.0)[4];
  double exact = 1 / (630 * M_PI), hk = -a2 / (32 * M_PI * M_PI);
  bool ok = std::fabs(whole - 0.002819) <= 5e-5 && std::fabs(pole - exact) <= 1e-12 &&
            std::fabs(hk - exact) <= 1e-15 && dmu <= 1e-10;
  return {9, ok,
          fmt("Dirichlet sphere: whole %.7f (0.002819+-0.00005); interior pole %.10f vs 1/630pi %.10f, heat kernel "
              "%.10f; mu dependence %.1e (<=1e-10)",
              whole, pole, exact, hk, dmu)};
}

Criterion c10() {
  double F = yuk::newton_sphere_disk(4e3, 1.06e3, 1e-3, 5e-3, 201.7e-6 / 2);
  auto al = yuk::preset("afm-al98"), au = yuk::preset("afm-au99");
  auto au2 = au;
  au2.dF *= 2;
  double lin = 0;
  for (double l : {1e-8, 1e-7}) {
    double r = yuk::exclusion_point(au2, l).alpha_bound / yuk::exclusion_point(au, l).alpha_bound;
    lin = std::max(lin, std::fabs(r - 2));
  }
  double best = 0, at = 0;
  for (double l : yuk::log_grid(4.3e-9, 1.5e-7, 25)) {
    double r = yuk::exclusion_point(al, l).alpha_bound / yuk::exclusion_point(au, l).alpha_bound;
    if (r > best) {
      best = r;
      at = l;
    }
  }
  bool ok = within(std::fabs(F), 6.7e-18, 0.03) && lin <= 1e-12 && best >= 10 && best <= 25;
  return {10, ok,
          fmt("constraints: Newton %.4e N (6.7e-18+-3%%); dF linearity dev %.1e; Al/Au bound ratio peak %.2f at "
              "lambda=%.3g m ([10, 25])",
              std::fabs(F), lin, best, at)};
}

Criterion c11() {
  double R = 100e-6;
  lif::LayerStack st{mat::plasma_ev(9.0), std::nullopt};
  const int n = 40;
  std::vector<double> la, lf;
  for (int i = 0; i < n; ++i) {
    double a = 20e-9 * std::pow(100.0, i / double(n - 1));
    la.push_back(std::log(a));
    lf.push_back(std::log(-lif::force_sphere_plate(st, R, a).value));
  }
  std::shared_ptr<gsl_spline> sp(gsl_spline_alloc(gsl_interp_cspline, n), gsl_spline_free);
  gsl_spline_init(sp.get(), la.data(), lf.data(), n);
  auto theory = [sp](double a) { return -std::exp(gsl_spline_eval(sp.get(), std::log(a), nullptr)); };

  std::mt19937 rng(12345);
  std::normal_distribution<double> nd;
  const double a0 = 48.9e-9, V2 = 7.9e-3, C = 2e-6, E = 5e-12, V1 = 0.31;
  double wa = 0, wv = 0;
  for (int t = 0; t < 30; ++t) {
    fit::FitModel m;
    m.theory = theory;
    m.R = R;
    m.a0 = 55e-9;
    std::vector<fit::ForceCurve> cs;
    std::vector<double> vs{V1, -V1};
    for (double v : vs) {
      fit::ForceCurve c;
      c.calibration = 1e-12;
      m.V1 = v;
      for (int i = 0; i < 100; ++i) {
        double da = 4e-9 * i;
        double F = fit::model_force(m, a0, V2, C, E, da) * (1 + 0.01 * nd(rng));
        c.displacement.push_back(da);
        c.signal.push_back(F / c.calibration);
      }
      cs.push_back(std::move(c));
    }
    auto r = fit::fit_curves(cs, vs, m);
    wa = std::max(wa, std::fabs(r.a0 - a0));
    wv = std::max(wv, std::fabs(r.V2 - V2));
  }
  bool ok = wa <= 3e-9 && wv <= 1e-3;
  return {11, ok,
          fmt("fit closure, 30 trials, 1%% noise: worst a0 error %.3f nm (<=3), worst V2 error %.3f mV (<=1)", wa * 1e9,
              wv * 1e3)};
}

Criterion c12() {
  // Plasma oracle: the full Lifshitz factor approaches the series deep in its domain.
  lif::LayerStack s{mat::plasma_ev(9.0), std::nullopt};
  double d0 = mat::penetration_depth(s.substrate);
  double dev = 0;
  for (double x : {0.02, 0.04}) {
    double a = d0 / x;
    dev = std::max(dev, std::fabs(lif::force_semispaces(s, a).conductivity_factor - lif::perturbative_plates(x)));
  }
  // Noise level recovered by the rms statistic.
  std::mt19937 rng(7);
  std::normal_distribution<double> nd(0.0, 1e-12);
  std::vector<double> a(400), F(400);
  auto th = [](double x) { return -1e-27 / (x * x * x); };
  for (int i = 0; i < 400; ++i) {
    a[i] = 80e-9 + i * 2e-9;
    F[i] = th(a[i]) + nd(rng);
  }
  double sig = fit::rms_deviation(th, a, F).sigma;
  bool ok = dev <= 1e-3 && std::fabs(sig / 1e-12 - 1) <= 0.1;
  std::string extra = "handbook tables not supplied";
  const char* dir = std::getenv("CASIMIR_DATA_DIR");
  if (dir) {
    namespace fs = std::filesystem;
    fs::path al = fs::path(dir) / "al.csv", au = fs::path(dir) / "au.csv";
    if (fs::exists(al) && fs::exists(au)) {
      auto Al = mat::ingest_optical_file(al.string(), std::get<mat::Drude>(mat::drude_ev(12.5, 0.063)));
      auto Au = mat::ingest_optical_file(au.string(), std::get<mat::Drude>(mat::drude_ev(9.0, 0.035)));
      lif::LayerStack sa{Al, std::nullopt}, su{Au, std::nullopt};
      double v[4] = {lif::force_semispaces(sa, 300e-9).conductivity_factor,
                     lif::force_semispaces(su, 300e-9).conductivity_factor,
                     lif::force_sphere_plate(sa, 100e-6, 300e-9).conductivity_factor,
                     lif::force_sphere_plate(su, 100e-6, 300e-9).conductivity_factor};
      const double tgt[4] = {0.773, 0.720, 0.817, 0.774};
      bool hb = true;
      for (int i = 0; i < 4; ++i) hb = hb && within(v[i], tgt[i], 0.02);
      ok = ok && hb;
      extra = fmt("handbook ratios %.3f/%.3f/%.3f/%.3f (0.773/0.720/0.817/0.774 +-2%%)", v[0], v[1], v[2], v[3]);
    }
  }
  return {12, ok,
          fmt("substitutes: plasma oracle dev %.1e (<=1e-3); rms of 1 pN noise %.3f pN (1+-0.1); %s; experimental "
              "sigma values not reproducible without raw data",
              dev, sig * 1e12, extra.c_str())};
}

}  // namespace

Criterion run(int id) {
  static Criterion (*const table[kCriteria])() = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  if (id < 1 || id > kCriteria) return {id, false, "no such criterion"};
  try {
    return table[id - 1]();
  } catch (const std::exception& e) {
    return {id, false, std::string("error: ") + e.what()};
  }
}

std::vector<Criterion> run_all() {
  std::vector<Criterion> out;
  for (int i = 1; i <= kCriteria; ++i) out.push_back(run(i));
  return out;
}

}  // namespace casimir::acc
