#include "casimir/casimir_c.h"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "casimir/acceptance.hpp"
#include "casimir/constraints.hpp"
#include "casimir/expfit.hpp"
#include "casimir/geometry.hpp"
#include "casimir/ideal.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"
#include "casimir/shell.hpp"
#include "casimir/thermal.hpp"

using namespace casimir;

struct casimir_context {
  std::string error;
  std::string warnings;
  double rel_tol = 1e-9;
};
struct casimir_material {
  mat::MaterialModel m;
};
struct casimir_stack {
  lif::LayerStack s;
};
struct casimir_roughness {
  geo::DiscreteLevels p;
};
struct casimir_preset {
  yuk::ExperimentPreset p;
};

namespace {

template <class F>
casimir_status guard(casimir_context* ctx, F&& f) {
  if (!ctx) return CASIMIR_E_USAGE;
  ctx->error.clear();
  ctx->warnings.clear();
  try {
    f();
    return CASIMIR_OK;
  } catch (const Error& e) {
    ctx->error = e.what();
    return static_cast<casimir_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
  } catch (const std::exception& e) {
    ctx->error = e.what();
  } catch (...) {
    ctx->error = "unknown error";
  }
  return CASIMIR_E_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::Usage, std::string("null argument: ") + what);
}

void copy_out(const std::string& s, char* buf, size_t cap) {
  need(buf, "buf");
  if (cap == 0) throw Error(ErrorCode::Usage, "zero-length buffer");
  size_t n = std::min(s.size(), cap - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

void add_warnings(casimir_context* ctx, const std::vector<std::string>& w) {
  for (const auto& s : w) {
    if (!ctx->warnings.empty()) ctx->warnings += '\n';
    ctx->warnings += s;
  }
}

num::QuadratureSpec quad(const casimir_context* ctx) {
  num::QuadratureSpec q;
  q.rel_tol = ctx->rel_tol;
  return q;
}
num::SumSpec sums(const casimir_context* ctx) {
  num::SumSpec s;
  s.rel_tail_tol = ctx->rel_tol;
  return s;
}

template <class T>
casimir_status make(casimir_context* ctx, T** out, auto&& build) {
  return guard(ctx, [&] {
    need(out, "out");
    *out = new T{build()};
  });
}

}  // namespace

extern "C" {

const char* casimir_version(void) { return "0.1.0"; }

casimir_status casimir_context_new(casimir_context** out) {
  if (!out) return CASIMIR_E_USAGE;
  try {
    *out = new casimir_context;
  } catch (...) {
    return CASIMIR_E_INTERNAL;
  }
  return CASIMIR_OK;
}
void casimir_context_free(casimir_context* ctx) { delete ctx; }
const char* casimir_last_error(const casimir_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }
const char* casimir_last_warnings(const casimir_context* ctx) { return ctx ? ctx->warnings.c_str() : ""; }

casimir_status casimir_set_tolerance(casimir_context* ctx, double rel_tol) {
  return guard(ctx, [&] {
    if (!(rel_tol > 0 && rel_tol < 1)) config_error("tolerance must lie in (0, 1)");
    ctx->rel_tol = rel_tol;
  });
}

casimir_status casimir_material_ideal(casimir_context* ctx, casimir_material** out) {
  return make(ctx, out, [] { return mat::MaterialModel{mat::IdealMetal{}}; });
}
casimir_status casimir_material_plasma(casimir_context* ctx, double wp_ev, casimir_material** out) {
  return make(ctx, out, [&] {
    if (!(wp_ev > 0)) domain_error("plasma frequency must be positive");
    return mat::plasma_ev(wp_ev);
  });
}
casimir_status casimir_material_drude(casimir_context* ctx, double wp_ev, double gamma_ev, casimir_material** out) {
  return make(ctx, out, [&] {
    if (!(wp_ev > 0) || !(gamma_ev >= 0)) domain_error("Drude parameters must be positive");
    return mat::drude_ev(wp_ev, gamma_ev);
  });
}
casimir_status casimir_material_constant(casimir_context* ctx, double eps, casimir_material** out) {
  return make(ctx, out, [&] {
    if (!(eps >= 1)) domain_error("permittivity must be at least 1");
    return mat::MaterialModel{mat::Constant{eps}};
  });
}
casimir_status casimir_material_oscillator(casimir_context* ctx, double eps0, double w0_ev, casimir_material** out) {
  return make(ctx, out, [&] {
    if (!(eps0 >= 1) || !(w0_ev > 0)) domain_error("oscillator needs eps0 >= 1 and w0 > 0");
    return mat::MaterialModel{mat::Oscillator{eps0, ev_to_rad_s(w0_ev)}};
  });
}
casimir_status casimir_material_table(casimir_context* ctx, const char* path, double wp_ev, double gamma_ev,
                                      casimir_material** out) {
  return make(ctx, out, [&] {
    need(path, "path");
    auto d = std::get<mat::Drude>(mat::drude_ev(wp_ev, gamma_ev));
    return mat::ingest_optical_file(path, d);
  });
}
void casimir_material_free(casimir_material* m) { delete m; }

casimir_status casimir_material_describe(casimir_context* ctx, const casimir_material* m, char* buf, size_t cap) {
  return guard(ctx, [&] {
    need(m, "material");
    copy_out(mat::describe(m->m), buf, cap);
  });
}
casimir_status casimir_material_penetration_depth(casimir_context* ctx, const casimir_material* m, double* out) {
  return guard(ctx, [&] {
    need(m, "material");
    need(out, "out");
    *out = mat::penetration_depth(m->m);
  });
}

casimir_status casimir_stack_new(casimir_context* ctx, const casimir_material* substrate,
                                 const casimir_material* coating, double d, casimir_stack** out) {
  return make(ctx, out, [&] {
    need(substrate, "substrate");
    lif::LayerStack s{substrate->m, std::nullopt};
    if (coating) {
      if (!(d > 0)) domain_error("coating thickness must be positive");
      s.coating = lif::Coating{coating->m, d};
    }
    add_warnings(ctx, s.check());
    return s;
  });
}
void casimir_stack_free(casimir_stack* s) { delete s; }

casimir_status casimir_plates_ideal(casimir_context* ctx, double area, double a, double* force) {
  return guard(ctx, [&] {
    need(force, "force");
    *force = ideal::plates_ideal(area, a).force;
  });
}
casimir_status casimir_sphere_plate_ideal(casimir_context* ctx, double R, double a, double* force) {
  return guard(ctx, [&] {
    need(force, "force");
    add_warnings(ctx, validate(SphereAbovePlate{R, a}));
    *force = ideal::sphere_plate_ideal(R, a);
  });
}

casimir_status casimir_lifshitz_plates(casimir_context* ctx, const casimir_stack* s, double a, double* pressure,
                                       double* factor) {
  return guard(ctx, [&] {
    need(s, "stack");
    auto r = lif::force_semispaces(s->s, a, quad(ctx));
    add_warnings(ctx, r.warnings);
    if (pressure) *pressure = r.value;
    if (factor) *factor = r.conductivity_factor;
  });
}
casimir_status casimir_lifshitz_sphere_plate(casimir_context* ctx, const casimir_stack* s, double R, double a,
                                             double* force, double* factor) {
  return guard(ctx, [&] {
    need(s, "stack");
    auto r = lif::force_sphere_plate(s->s, R, a, quad(ctx));
    add_warnings(ctx, r.warnings);
    if (force) *force = r.value;
    if (factor) *factor = r.conductivity_factor;
  });
}

casimir_status casimir_thermal_ideal(casimir_context* ctx, int geometry, double R, double a, double T,
                                     double* value) {
  return guard(ctx, [&] {
    need(value, "value");
    if (geometry == 0)
      *value = thermal::ideal_plates_T(1.0, a, T, sums(ctx));
    else if (geometry == 1)
      *value = thermal::ideal_sphere_plate_T(R, a, T, sums(ctx));
    else
      throw Error(ErrorCode::Usage, "geometry must be 0 (plates) or 1 (sphere-plate)");
  });
}

casimir_status casimir_thermal_lifshitz(casimir_context* ctx, const casimir_stack* s, int geometry, double R,
                                        double a, double T, const char* policy, int allow_unsafe, double* value,
                                        double* ideal_T) {
  return guard(ctx, [&] {
    need(s, "stack");
    auto pol = policy ? thermal::parse_policy(policy) : thermal::default_policy(s->s);
    if (thermal::is_unsafe(pol) && !allow_unsafe)
      config_error(std::string("zero-mode policy ") + thermal::policy_name(pol) +
                   " is thermodynamically inconsistent; enable it explicitly");
    thermal::ThermalResult r;
    if (geometry == 0)
      r = thermal::lifshitz_plates_T(s->s, a, T, pol, sums(ctx), quad(ctx));
    else if (geometry == 1)
      r = thermal::lifshitz_sphere_plate_T(s->s, R, a, T, pol, sums(ctx), quad(ctx));
    else
      throw Error(ErrorCode::Usage, "geometry must be 0 (plates) or 1 (sphere-plate)");
    add_warnings(ctx, r.warnings);
    if (value) *value = r.value;
    if (ideal_T) *ideal_T = r.ideal_T;
  });
}

casimir_status casimir_default_policy(casimir_context* ctx, const casimir_stack* s, char* buf, size_t cap) {
  return guard(ctx, [&] {
    need(s, "stack");
    copy_out(thermal::policy_name(thermal::default_policy(s->s)), buf, cap);
  });
}

casimir_status casimir_roughness_levels(casimir_context* ctx, const double* heights, const double* fractions,
                                        size_t n, int last_is_background, casimir_roughness** out) {
  return make(ctx, out, [&] {
    need(heights, "heights");
    need(fractions, "fractions");
    geo::DiscreteLevels p{{heights, heights + n}, {fractions, fractions + n}, last_is_background != 0};
    geo::zero_level(p);  // validates
    return p;
  });
}
casimir_status casimir_roughness_load(casimir_context* ctx, const char* path, casimir_roughness** out) {
  return make(ctx, out, [&] {
    need(path, "path");
    return geo::read_roughness_profile(path);
  });
}
void casimir_roughness_free(casimir_roughness* r) { delete r; }

casimir_status casimir_roughness_distances(casimir_context* ctx, const casimir_roughness* r, double* offsets,
                                           double* weights, size_t cap, size_t* count) {
  return guard(ctx, [&] {
    need(r, "roughness");
    need(count, "count");
    auto set = geo::weighted_distance_set(r->p);
    *count = set.size();
    if (cap < set.size()) {
      if (offsets || weights) throw Error(ErrorCode::Usage, "buffer too small");
      return;
    }
    for (size_t i = 0; i < set.size(); ++i) {
      if (offsets) offsets[i] = set[i].offset;
      if (weights) weights[i] = set[i].weight;
    }
  });
}
casimir_status casimir_roughness_zero_level(casimir_context* ctx, const casimir_roughness* r, double* H, double* A) {
  return guard(ctx, [&] {
    need(r, "roughness");
    auto z = geo::zero_level(r->p);
    if (H) *H = z.H;
    if (A) *A = z.A;
  });
}

casimir_status casimir_tilt_factor(casimir_context* ctx, double x, double* factor) {
  return guard(ctx, [&] {
    need(factor, "factor");
    *factor = geo::tilt_factor(x);
  });
}

casimir_status casimir_corrugation_average(casimir_context* ctx, casimir_force_fn f, void* user, double a, double A,
                                           double L, const char* distribution, double* out) {
  return guard(ctx, [&] {
    need(reinterpret_cast<void*>(f), "callback");
    need(out, "out");
    auto d = distribution ? geo::parse_distribution(distribution) : geo::Distribution::uniform;
    *out = geo::corrugation_average([&](double x) { return f(x, user); }, a, A, L, d);
  });
}

casimir_status casimir_box_energy(casimir_context* ctx, double a1, double a2, double a3, int route, double* energy) {
  return guard(ctx, [&] {
    need(energy, "energy");
    if (route == 0)
      *energy = ideal::box_energy(a1, a2, a3, ideal::BoxRoute::epstein).epstein_route;
    else if (route == 1)
      *energy = ideal::box_energy(a1, a2, a3, ideal::BoxRoute::abelplana).abelplana_route;
    else
      throw Error(ErrorCode::Usage, "route must be 0 (zeta) or 1 (Abel-Plana)");
  });
}

casimir_status casimir_sphere_energy(casimir_context* ctx, const char* region, double R, double mu_scale,
                                     double* finite_part, double* pole, double* log_coefficient) {
  return guard(ctx, [&] {
    need(region, "region");
    auto r = shell::parse_region(region);
    std::optional<double> mu;
    if (mu_scale > 0) mu = mu_scale;
    auto e = shell::sphere_energy(r, mu, R);
    if (finite_part) *finite_part = e.finite_part;
    if (pole) *pole = e.pole_coefficient;
    if (log_coefficient) *log_coefficient = e.log_coefficient;
  });
}

casimir_status casimir_preset_get(casimir_context* ctx, const char* name, casimir_preset** out) {
  return make(ctx, out, [&] {
    need(name, "name");
    return yuk::preset(name);
  });
}
casimir_status casimir_preset_load(casimir_context* ctx, const char* path, casimir_preset** out) {
  return make(ctx, out, [&] {
    need(path, "path");
    return yuk::load_preset(path);
  });
}
void casimir_preset_free(casimir_preset* p) { delete p; }
casimir_status casimir_preset_name(casimir_context* ctx, const casimir_preset* p, char* buf, size_t cap) {
  return guard(ctx, [&] {
    need(p, "preset");
    copy_out(p->p.name, buf, cap);
  });
}

casimir_status casimir_exclusion_point(casimir_context* ctx, const casimir_preset* p, double lambda, double* alpha,
                                       double* a_used, int* method) {
  return guard(ctx, [&] {
    need(p, "preset");
    auto e = yuk::exclusion_point(p->p, lambda);
    if (alpha) *alpha = e.unbounded ? std::numeric_limits<double>::infinity() : e.alpha_bound;
    if (a_used) *a_used = e.a_used;
    if (method) *method = e.method == yuk::BoundMethod::two_distance ? 1 : 0;
  });
}
casimir_status casimir_hypothetical_force(casimir_context* ctx, const casimir_preset* p, double a, double alpha,
                                          double lambda, double* force) {
  return guard(ctx, [&] {
    need(p, "preset");
    need(force, "force");
    *force = yuk::hypothetical_force(p->p, a, alpha, lambda);
  });
}

namespace {
fit::FitModel fit_model(const casimir_context* ctx, double R, const casimir_stack* theory, double a0) {
  fit::FitModel m;
  m.R = R;
  m.V1 = 0;
  if (a0 > 0) m.a0 = a0;
  if (theory) {
    auto s = theory->s;
    auto q = quad(ctx);
    m.theory = [s, R, q](double a) { return lif::force_sphere_plate(s, R, a, q).value; };
  }
  return m;
}
}  // namespace

casimir_status casimir_fit_curves(casimir_context* ctx, const char* const* paths, const double* V1, size_t n,
                                  double R, const casimir_stack* theory, double a0_guess, casimir_fit_result* out) {
  return guard(ctx, [&] {
    need(paths, "paths");
    need(V1, "V1");
    need(out, "out");
    if (n == 0) throw Error(ErrorCode::Usage, "no curves given");
    std::vector<fit::ForceCurve> curves;
    for (size_t i = 0; i < n; ++i) {
      need(paths[i], "path");
      curves.push_back(fit::read_force_curve(paths[i]));
    }
    auto r = fit::fit_curves(curves, {V1, V1 + n}, fit_model(ctx, R, theory, a0_guess));
    out->a0 = r.a0;
    out->V2 = r.V2;
    out->C = r.C;
    out->E = r.E;
    out->chi2 = r.chi2;
    for (int i = 0; i < 4; ++i) out->sigma[i] = r.sigma[i];
    out->iterations = r.iterations;
    out->samples = r.samples;
  });
}

casimir_status casimir_write_calibrated(casimir_context* ctx, const char* curve_path, double V1, double R,
                                        const casimir_fit_result* res, const char* out_path) {
  return guard(ctx, [&] {
    need(curve_path, "curve_path");
    need(res, "fit");
    need(out_path, "out_path");
    auto curve = fit::read_force_curve(curve_path);
    auto m = fit_model(ctx, R, nullptr, res->a0);
    m.V1 = V1;
    fit::FitResult fr{res->a0, res->V2, res->C, res->E, res->chi2, {}, res->iterations, res->samples};
    auto cal = fit::subtract_systematics(curve, m, fr);
    std::ofstream f(out_path);
    if (!f) config_error(std::string("cannot write ") + out_path);
    f << "separation_nm,force_pN\n";
    char line[96];
    for (size_t i = 0; i < cal.separation.size(); ++i) {
      std::snprintf(line, sizeof line, "%.6g,%.6g\n", cal.separation[i] * 1e9, cal.force[i] * 1e12);
      f << line;
    }
  });
}

casimir_status casimir_electrostatic(casimir_context* ctx, double V1, double V2, double a, double R, double* force) {
  return guard(ctx, [&] {
    need(force, "force");
    *force = fit::electrostatic_sphere_plate(V1, V2, a, R);
  });
}

casimir_status casimir_selftest(casimir_context* ctx, casimir_line_fn cb, void* user, int* failed) {
  return guard(ctx, [&] {
    int nfail = 0;
    for (const auto& c : acc::run_all()) {
      if (!c.pass) ++nfail;
      if (cb) cb(c.id, c.pass ? 1 : 0, c.line.c_str(), user);
    }
    if (failed) *failed = nfail;
  });
}

}  // extern "C"
