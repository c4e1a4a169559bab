#include "casimir/lifshitz.hpp"

#include <cmath>
#include <limits>

#include "casimir/ideal.hpp"

namespace casimir::lif {

std::vector<std::string> LayerStack::check() const {
  std::vector<std::string> w;
  if (coating) {
    if (!(coating->d > 0)) config_error("coating thickness must be positive");
    if (coating->d < 30e-9) w.push_back("coating thinner than 30 nm; local permittivity may not apply");
  }
  return w;
}

Reflection reflection(const LayerStack& s, double e2, double e1, double p, double zeta, double d_over_a) {
  auto single = [p](double e, double& tm, double& te) {
    if (std::isinf(e)) {
      tm = -1.0;
      te = 1.0;
      return;
    }
    double K = std::sqrt(p * p - 1 + e);
    tm = (K - e * p) / (K + e * p);
    te = (K - p) / (K + p);
  };
  if (!s.coating) {
    double tm, te;
    single(e2, tm, te);
    return {tm * tm, te * te};
  }
  double ra_tm, ra_te;
  single(e1, ra_tm, ra_te);
  if (std::isinf(e1)) return {1.0, 1.0};
  double K1 = std::sqrt(p * p - 1 + e1);
  double rb_tm, rb_te;
  if (std::isinf(e2)) {
    rb_tm = 1.0;
    rb_te = -1.0;
  } else {
    double K2 = std::sqrt(p * p - 1 + e2);
    rb_tm = (e2 * K1 - e1 * K2) / (e2 * K1 + e1 * K2);
    rb_te = (K1 - K2) / (K1 + K2);
  }
  double ex = std::exp(-zeta * K1 * d_over_a);
  double tm = (ra_tm - rb_tm * ex) / (1 - ra_tm * rb_tm * ex);
  double te = (ra_te - rb_te * ex) / (1 - ra_te * rb_te * ex);
  return {tm * tm, te * te};
}

ModeEps mode_eps(const mat::MaterialModel& mat, double zeta, double a, const Constants& k) {
  double e = mat::eps_imaginary(mat, k.c * zeta / (2 * a));
  return {e, std::isinf(e) ? e : (e - 1) * zeta * zeta};
}

ModeEps static_mode(const mat::MaterialModel& mat, double a, const Constants& k) {
  const double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& v) -> ModeEps {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mat::IdealMetal>) return {inf, inf};
        else if constexpr (std::is_same_v<T, mat::Plasma>) return {inf, std::pow(2 * a * v.wp / k.c, 2)};
        else if constexpr (std::is_same_v<T, mat::Drude>)
          return {inf, v.gamma > 0 ? 0.0 : std::pow(2 * a * v.wp / k.c, 2)};
        else if constexpr (std::is_same_v<T, mat::Constant>) return {v.eps, 0.0};
        else if constexpr (std::is_same_v<T, mat::Oscillator>) return {v.eps0, 0.0};
        else return {inf, 0.0};
      },
      mat);
}

Reflection reflection_y(const LayerStack& s, ModeEps sub, ModeEps coat, double y, double d_over_a) {
  auto kappa = [y](ModeEps e) { return std::isinf(e.m) ? e.m : std::sqrt(y * y + e.m); };
  auto single = [y](ModeEps e, double K, double& tm, double& te) {
    tm = std::isinf(e.eps) ? -1.0 : (K - e.eps * y) / (K + e.eps * y);
    te = std::isinf(K) ? 1.0 : (K - y) / (K + y);
  };
  double K2 = kappa(sub);
  double tm, te;
  if (!s.coating) {
    single(sub, K2, tm, te);
    return {tm * tm, te * te};
  }
  double K1 = kappa(coat);
  double ra_tm, ra_te;
  single(coat, K1, ra_tm, ra_te);
  if (std::isinf(K1)) return {ra_tm * ra_tm, 1.0};
  double rb_tm, rb_te;
  if (std::isinf(sub.eps)) rb_tm = 1.0;
  else if (std::isinf(coat.eps)) rb_tm = -1.0;
  else rb_tm = (sub.eps * K1 - coat.eps * K2) / (sub.eps * K1 + coat.eps * K2);
  rb_te = std::isinf(K2) ? -1.0 : (K1 - K2) / (K1 + K2);
  double ex = std::exp(-K1 * d_over_a);
  tm = (ra_tm - rb_tm * ex) / (1 - ra_tm * rb_tm * ex);
  te = (ra_te - rb_te * ex) / (1 - ra_te * rb_te * ex);
  return {tm * tm, te * te};
}

namespace {

enum class Kind { force, energy };

// Dimensionless double integral over p in [1, inf) and zeta = 2 a xi / c in (0, inf).
double lifshitz_integral(const LayerStack& s, double a, Kind kind, const num::QuadratureSpec& spec,
                         const Constants& k) {
  double d_over_a = s.coating ? s.coating->d / a : 0.0;
  auto outer = [&](double zeta) {
    if (zeta <= 0) return 0.0;
    double xi = k.c * zeta / (2 * a);
    double e2 = mat::eps_imaginary(s.substrate, xi);
    double e1 = s.coating ? mat::eps_imaginary(s.coating->material, xi) : e2;
    // y = zeta p keeps the inner integrand on a fixed scale.
    auto inner = [&](double y) {
      Reflection r = reflection(s, e2, e1, y / zeta, zeta, d_over_a);
      double x = std::exp(-y);
      if (kind == Kind::force) return y * y * (r.tm2 * x / (1 - r.tm2 * x) + r.te2 * x / (1 - r.te2 * x));
      return y * (std::log1p(-r.tm2 * x) + std::log1p(-r.te2 * x));
    };
    return num::integrate_semi_infinite(inner, zeta, spec);
  };
  return num::integrate(outer, 0.0, 1.0, spec) + num::integrate_semi_infinite(outer, 1.0, spec);
}

}  // namespace

ForceResult force_semispaces(const LayerStack& s, double a, const num::QuadratureSpec& spec, const Constants& k) {
  if (!(a > 0)) domain_error("separation must be positive");
  auto w = s.check();
  double hc = k.hbar * k.c;
  double F = -hc / (32 * M_PI * M_PI * std::pow(a, 4)) * lifshitz_integral(s, a, Kind::force, spec, k);
  double F0 = -M_PI * M_PI * hc / (240 * std::pow(a, 4));
  return {F, F0, F / F0, w};
}

ForceResult energy_semispaces(const LayerStack& s, double a, const num::QuadratureSpec& spec, const Constants& k) {
  if (!(a > 0)) domain_error("separation must be positive");
  auto w = s.check();
  double hc = k.hbar * k.c;
  double E = hc / (32 * M_PI * M_PI * std::pow(a, 3)) * lifshitz_integral(s, a, Kind::energy, spec, k);
  double E0 = ideal::plates_energy_density(a, k);
  return {E, E0, E / E0, w};
}

ForceResult force_sphere_plate(const LayerStack& s, double R, double a, const num::QuadratureSpec& spec,
                               const Constants& k) {
  if (!(R > 0)) domain_error("R must be positive");
  ForceResult e = energy_semispaces(s, a, spec, k);
  if (a / R > kPftMaxRatio) e.warnings.push_back("a/R exceeds 0.1; proximity-force result is unreliable");
  double F = 2 * M_PI * R * e.value;
  double F0 = ideal::sphere_plate_ideal(R, a, k);
  return {F, F0, F / F0, e.warnings};
}

double vdw_limit(const mat::MaterialModel& m, double a, const num::QuadratureSpec& spec, double xi_max,
                 const Constants& k) {
  if (!(a > 0)) domain_error("separation must be positive");
  return -mat::hamaker(m, spec, xi_max, k) / (6 * M_PI * a * a * a);
}

double large_separation_limit(double eps0, double a, LimitGeometry g, double R, const num::QuadratureSpec& spec,
                              const Constants& k) {
  if (!(a > 0)) domain_error("separation must be positive");
  double psi = mat::psi_factor(eps0, spec);
  double hc = k.hbar * k.c;
  switch (g) {
    case LimitGeometry::plates_force: return -hc * M_PI * psi / (10 * std::pow(a, 4));
    case LimitGeometry::plates_energy: return -hc * M_PI * psi / (30 * std::pow(a, 3));
    case LimitGeometry::sphere_plate:
      if (!(R > 0)) domain_error("R must be positive");
      return 2 * M_PI * R * (-hc * M_PI * psi / (30 * std::pow(a, 3)));
  }
  return 0.0;
}

double Coefficient::value() const {
  return double(q_num) / double(q_den) + double(r_num) / double(r_den) * M_PI * M_PI;
}

const std::array<Coefficient, 5>& plates_series_coefficients() {
  // -(640/7)(1 - pi^2/210), (2800/9)(1 - 163 pi^2/7350)
  static const std::array<Coefficient, 5> c{{{1, 1, 0, 1},
                                             {-16, 3, 0, 1},
                                             {24, 1, 0, 1},
                                             {-640, 7, 640, 1470},
                                             {2800, 9, -2800 * 163, 9 * 7350}}};
  return c;
}

const std::array<Coefficient, 5>& sphere_series_coefficients() {
  static const std::array<Coefficient, 5> c{{{1, 1, 0, 1},
                                             {-4, 1, 0, 1},
                                             {72, 5, 0, 1},
                                             {-320, 7, 320, 1470},
                                             {400, 3, -400 * 163, 3 * 7350}}};
  return c;
}

namespace {
double horner(const std::array<Coefficient, 5>& c, double x) {
  double s = 0;
  for (int i = 4; i >= 0; --i) s = s * x + c[i].value();
  return s;
}
}  // namespace

double perturbative_plates(double x) {
  if (x < 0 || x > 0.4) domain_error("perturbative series needs 0 <= delta0/a <= 0.4");
  return horner(plates_series_coefficients(), x);
}

double perturbative_sphere(double x) {
  if (x < 0 || x > 0.4) domain_error("perturbative series needs 0 <= delta0/a <= 0.4");
  return horner(sphere_series_coefficients(), x);
}

}  // namespace casimir::lif
