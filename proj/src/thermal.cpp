#include "casimir/thermal.hpp"

#include <cmath>
#include <limits>

#include "casimir/ideal.hpp"

namespace casimir::thermal {

using num::kZeta3;

namespace {

void require_pos(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) domain_error(std::string(what) + " must be strictly positive");
}

void require_T(double T) {
  if (!(T >= 0) || !std::isfinite(T)) domain_error("temperature must be finite and non-negative");
}

// int_z^inf y^m e^{-k y} dy for z >= 0.
double gamma_tail(int m, double z, double k) {
  // sum_{j=0}^m m!/j! z^j / k^{m-j+1}
  double fact = 1;
  for (int j = 2; j <= m; ++j) fact *= j;
  double s = 0, zj = 1, jf = 1;
  for (int j = 0; j <= m; ++j) {
    if (j > 0) {
      zj *= z;
      jf *= j;
    }
    s += fact / jf * zj / std::pow(k, m - j + 1);
  }
  return std::exp(-k * z) * s;
}

// Sums f(k) over k >= 1; converges geometrically for z > 0.
template <class F>
double k_series(F&& f) {
  double s = 0;
  for (int k = 1; k < 100000; ++k) {
    double t = f(double(k));
    s += t;
    if (std::fabs(t) <= 1e-17 * std::fabs(s)) break;
  }
  return s;
}

// int_z^inf y^2/(e^y - 1) dy
double tail_I(double z) {
  if (z == 0) return 2 * kZeta3;
  return k_series([z](double k) { return gamma_tail(2, z, k); });
}
// int_z^inf y ln(1 - e^{-y}) dy
double tail_J(double z) {
  if (z == 0) return -kZeta3;
  return k_series([z](double k) { return -gamma_tail(1, z, k) / k; });
}
// int_z^inf (y^3 + z^2 y) e^y/(e^y - 1)^2 dy
double tail_K(double z) {
  if (z == 0) return 6 * kZeta3;
  return k_series([z](double k) { return k * (gamma_tail(3, z, k) + z * z * gamma_tail(1, z, k)); });
}
// int_z^inf (y^2 + z^2)/(e^y - 1) dy
double tail_L(double z) {
  if (z == 0) return 2 * kZeta3;
  return k_series([z](double k) { return gamma_tail(2, z, k) + z * z * gamma_tail(0, z, k); });
}

double sum_n(const std::function<double(double)>& f, const num::SumSpec& spec) {
  num::SumSpec s = spec;
  s.zero_mode_weight = 1.0;
  return num::matsubara_sum([&](long n) { return n == 0 ? 0.0 : f(double(n)); }, s).value;
}

double sum_matsubara(const std::function<double(double)>& f, const num::SumSpec& spec) {
  num::SumSpec s = spec;
  s.zero_mode_weight = 0.5;
  return num::matsubara_sum([&](long l) { return f(double(l)); }, s).value;
}

// Hyperbolic ratios written with q = e^{-2x} so large x underflows to zero.
double cosh_over_sinh3(double x) {
  double q = std::exp(-2 * x);
  return 4 * q * (1 + q) / std::pow(-std::expm1(-2 * x), 3);
}
double inv_sinh2(double x) {
  double q = std::exp(-2 * x);
  return 4 * q / std::pow(-std::expm1(-2 * x), 2);
}
double cosh2_over_sinh4(double x) {  // (2 cosh^2 + 1)/sinh^4
  double q = std::exp(-2 * x);
  return (8 * q * (1 + q) * (1 + q) + 16 * q * q) / std::pow(-std::expm1(-2 * x), 4);
}

// Switch from the closed bracket series to the Matsubara form.
constexpr double kHighSwitch = 0.5;

}  // namespace

const char* policy_name(ZeroModePolicy p) {
  switch (p) {
    case ZeroModePolicy::SchwingerDeRaadMilton: return "sdm";
    case ZeroModePolicy::PlasmaNatural: return "plasma";
    case ZeroModePolicy::DrudeResummed: return "drude-resummed";
    case ZeroModePolicy::UnsafeTeZero: return "te-zero";
    case ZeroModePolicy::UnsafeTeOne: return "te-one";
  }
  return "?";
}

ZeroModePolicy parse_policy(const std::string& s) {
  for (auto p : {ZeroModePolicy::SchwingerDeRaadMilton, ZeroModePolicy::PlasmaNatural, ZeroModePolicy::DrudeResummed,
                 ZeroModePolicy::UnsafeTeZero, ZeroModePolicy::UnsafeTeOne})
    if (s == policy_name(p)) return p;
  config_error("unknown zero-mode policy '" + s + "' (sdm, plasma, drude-resummed, te-zero, te-one)");
}

bool is_unsafe(ZeroModePolicy p) { return p == ZeroModePolicy::UnsafeTeZero || p == ZeroModePolicy::UnsafeTeOne; }

namespace {
bool drude_like(const mat::MaterialModel& m) {
  if (auto d = std::get_if<mat::Drude>(&m)) return d->gamma > 0;
  return std::holds_alternative<mat::Tabulated>(m);
}
bool stack_drude_like(const lif::LayerStack& s) {
  return drude_like(s.substrate) || (s.coating && drude_like(s.coating->material));
}
}  // namespace

ZeroModePolicy default_policy(const lif::LayerStack& s) {
  if (stack_drude_like(s)) return ZeroModePolicy::DrudeResummed;
  if (std::holds_alternative<mat::IdealMetal>(s.substrate) && !s.coating) return ZeroModePolicy::SchwingerDeRaadMilton;
  return ZeroModePolicy::PlasmaNatural;
}

double ideal_plates_factor_low(double t) { return 1 + std::pow(t, 4) / 3; }

double ideal_sphere_factor_low(double t) { return 1 + 45 * kZeta3 * t * t * t / std::pow(M_PI, 3) - std::pow(t, 4); }

double ideal_plates_factor(double t, const num::SumSpec& spec) {
  require_T(t);
  if (t == 0) return 1.0;
  if (t <= kHighSwitch) {
    // sum 1/t_n^4 = zeta(4) t^4 taken in closed form
    double s = sum_n(
        [t](double n) {
          double x = M_PI * n / t;
          return cosh_over_sinh3(x) / (n / t);
        },
        spec);
    return 1 + std::pow(t, 4) / 3 - 30 / M_PI * s;
  }
  double S = sum_matsubara([t](double l) { return tail_I(2 * M_PI * l * t); }, spec);
  return 30 * t * S / std::pow(M_PI, 3);
}

double ideal_sphere_factor(double t, const num::SumSpec& spec) {
  require_T(t);
  if (t == 0) return 1.0;
  if (t <= kHighSwitch) {
    double s = sum_n(
        [t](double n) {
          double tn = n / t, x = M_PI * tn;
          // coth - 1 split off; its constant part sums to zeta(3) t^3.
          return 2 / std::expm1(2 * x) / (tn * tn * tn) + M_PI * inv_sinh2(x) / (tn * tn);
        },
        spec);
    return 1 + 45 / std::pow(M_PI, 3) * (kZeta3 * t * t * t + s) - std::pow(t, 4);
  }
  double S = sum_matsubara([t](double l) { return tail_J(2 * M_PI * l * t); }, spec);
  return -90 * t * S / std::pow(M_PI, 3);
}

double ideal_plates_T(double area, double a, double T, const num::SumSpec& spec, const Constants& k) {
  require_pos(area, "area");
  require_T(T);
  double F0 = ideal::plates_ideal(area, a, k).force;
  return F0 * ideal_plates_factor(T / teff(a, k), spec);
}

double ideal_sphere_plate_T(double R, double a, double T, const num::SumSpec& spec, const Constants& k) {
  require_T(T);
  double F0 = ideal::sphere_plate_ideal(R, a, k);
  return F0 * ideal_sphere_factor(T / teff(a, k), spec);
}

double ideal_plates_high(double a, double T, const Constants& k) {
  require_pos(a, "a");
  return -k.k_B * T * kZeta3 / (4 * M_PI * a * a * a);
}

double ideal_sphere_high(double R, double a, double T, const Constants& k) {
  require_pos(R, "R");
  require_pos(a, "a");
  return -k.k_B * T * R * kZeta3 / (4 * a * a);
}

namespace {

enum class Kind { plates, sphere };

struct ModeSum {
  double zero;  // l = 0 integral
  double total; // zero/2 + sum_{l>=1}
  long terms;
};

ModeSum lifshitz_modes(const lif::LayerStack& s, double a, double T, ZeroModePolicy policy, Kind kind,
                       const num::SumSpec& sum, const num::QuadratureSpec& quad, const Constants& k) {
  double d_over_a = s.coating ? s.coating->d / a : 0.0;
  const mat::MaterialModel& coat_m = s.coating ? s.coating->material : s.substrate;
  auto f = [kind](const lif::Reflection& r, double y) {
    double x = std::exp(-y);
    if (kind == Kind::plates)
      return y * y * (r.tm2 * x / (1 - r.tm2 * x) + r.te2 * x / (1 - r.te2 * x));
    return y * (std::log1p(-r.tm2 * x) + std::log1p(-r.te2 * x));
  };

  // Zero mode.
  lif::ModeEps sub0 = lif::static_mode(s.substrate, a, k);
  lif::ModeEps coat0 = lif::static_mode(coat_m, a, k);
  auto zero_integrand = [&](double y) -> double {
    if (y <= 0) return 0.0;
    lif::Reflection r{};
    switch (policy) {
      case ZeroModePolicy::SchwingerDeRaadMilton: r = {1.0, 1.0}; break;
      case ZeroModePolicy::PlasmaNatural: r = lif::reflection_y(s, sub0, coat0, y, d_over_a); break;
      case ZeroModePolicy::DrudeResummed: {
        r.tm2 = lif::reflection_y(s, sub0, coat0, y, d_over_a).tm2;
        // TE evaluated at zeta = y.
        r.te2 = lif::reflection_y(s, lif::mode_eps(s.substrate, y, a, k), lif::mode_eps(coat_m, y, a, k), y, d_over_a).te2;
        break;
      }
      case ZeroModePolicy::UnsafeTeZero: r = {lif::reflection_y(s, sub0, coat0, y, d_over_a).tm2, 0.0}; break;
      case ZeroModePolicy::UnsafeTeOne: r = {lif::reflection_y(s, sub0, coat0, y, d_over_a).tm2, 1.0}; break;
    }
    return f(r, y);
  };
  double I0 = num::integrate_semi_infinite(zero_integrand, 0.0, quad);

  double tau = 4 * M_PI * a * k.k_B * T / (k.hbar * k.c);
  auto term = [&](long l) -> double {
    if (l == 0) return I0;
    double z = tau * double(l);
    lif::ModeEps sub = lif::mode_eps(s.substrate, z, a, k);
    lif::ModeEps coat = lif::mode_eps(coat_m, z, a, k);
    return num::integrate_semi_infinite([&](double y) { return f(lif::reflection_y(s, sub, coat, y, d_over_a), y); },
                                        z, quad);
  };
  num::SumSpec ss = sum;
  ss.zero_mode_weight = 0.5;
  auto r = num::matsubara_sum(term, ss);
  return {I0, r.value, r.terms - 1};
}

void check_policy(const lif::LayerStack& s, ZeroModePolicy policy, std::vector<std::string>& w) {
  if (policy == ZeroModePolicy::PlasmaNatural && stack_drude_like(s))
    config_error(
        "zero-frequency TE reflection is ambiguous for a dissipative model; use the drude-resummed zero-mode policy");
  if (is_unsafe(policy)) w.push_back(std::string("unsafe zero-mode convention '") + policy_name(policy) + "' in use");
}

}  // namespace

ThermalResult lifshitz_plates_T(const lif::LayerStack& s, double a, double T, ZeroModePolicy policy,
                                const num::SumSpec& sum, const num::QuadratureSpec& quad, const Constants& k) {
  require_pos(a, "a");
  require_pos(T, "T");
  auto w = s.check();
  check_policy(s, policy, w);
  ModeSum m = lifshitz_modes(s, a, T, policy, Kind::plates, sum, quad, k);
  double pre = -k.k_B * T / (8 * M_PI * std::pow(a, 3));
  return {pre * m.total,      pre * 0.5 * m.zero, ideal_plates_T(1.0, a, T, {}, k), ideal::plates_ideal(1.0, a, k).force,
          m.terms,            policy,             w};
}

ThermalResult lifshitz_sphere_plate_T(const lif::LayerStack& s, double R, double a, double T, ZeroModePolicy policy,
                                      const num::SumSpec& sum, const num::QuadratureSpec& quad, const Constants& k) {
  require_pos(R, "R");
  require_pos(a, "a");
  require_pos(T, "T");
  auto w = s.check();
  check_policy(s, policy, w);
  if (a / R > kPftMaxRatio) w.push_back("a/R exceeds 0.1; proximity-force result is unreliable");
  ModeSum m = lifshitz_modes(s, a, T, policy, Kind::sphere, sum, quad, k);
  double pre = k.k_B * T * R / (4 * a * a);
  return {pre * m.total, pre * 0.5 * m.zero, ideal_sphere_plate_T(R, a, T, {}, k), ideal::sphere_plate_ideal(R, a, k),
          m.terms,       policy,             w};
}

double combined_perturbation(CombinedGeometry g, double d, double t, const num::SumSpec& spec) {
  if (!(d >= 0) || d > 0.2) domain_error("combined series needs 0 <= delta0/a <= 0.2");
  require_T(t);
  if (g == CombinedGeometry::plates) {
    double base = ideal_plates_factor(t, spec);
    if (t == 0) return base - 16.0 / 3 * d;
    if (t <= kHighSwitch) {
      // coth/(2 pi^3 t_n^3) split as in the sphere bracket.
      double s = sum_n(
          [t](double n) {
            double tn = n / t, x = M_PI * tn;
            return cosh2_over_sinh4(x) - 2 * cosh_over_sinh3(x) / (M_PI * tn) -
                   inv_sinh2(x) / (2 * M_PI * M_PI * tn * tn) - 2 / std::expm1(2 * x) / (2 * std::pow(M_PI * tn, 3));
          },
          spec);
      s -= kZeta3 * t * t * t / (2 * std::pow(M_PI, 3));
      return base - 16.0 / 3 * d - 60 * d * s;
    }
    double S = sum_matsubara([t](double l) { return tail_K(2 * M_PI * l * t); }, spec);
    return base - 30 * t / std::pow(M_PI, 3) * S * d;
  }
  double base = ideal_sphere_factor(t, spec);
  if (t == 0) return base - 4 * d;
  if (t <= kHighSwitch) {
    // pi coth/(2 t_n^3) - 2/t_n^4 taken in closed form.
    double s = sum_n(
        [t](double n) {
          double tn = n / t, x = M_PI * tn;
          return M_PI / std::expm1(2 * x) / (tn * tn * tn) + std::pow(M_PI, 3) * cosh_over_sinh3(x) / tn +
                 M_PI * M_PI * inv_sinh2(x) / (2 * tn * tn);
        },
        spec);
    double closed = M_PI / 2 * kZeta3 * t * t * t - 2 * std::pow(M_PI, 4) / 90 * std::pow(t, 4);
    return base - 4 * d + 180 / std::pow(M_PI, 4) * d * (closed + s);
  }
  double S = sum_matsubara([t](double l) { return tail_L(2 * M_PI * l * t); }, spec);
  return base - 90 * t / std::pow(M_PI, 3) * S * d;
}

double combined_low_T(CombinedGeometry g, double d, double t) {
  double t3 = t * t * t, t4 = t3 * t, p3 = std::pow(M_PI, 3);
  if (g == CombinedGeometry::plates) return 1 + t4 / 3 - 16.0 / 3 * d * (1 - 45 * kZeta3 / (8 * p3) * t3);
  return 1 + 45 * kZeta3 / p3 * t3 - t4 - 4 * d * (1 - 45 * kZeta3 / (2 * p3) * t3 + t4);
}

double combined_high_T(CombinedGeometry g, double d) { return g == CombinedGeometry::plates ? 1 - 3 * d : 1 - 2 * d; }

BlackbodySubtraction free_energy_blackbody_subtraction(double a, double T, const Constants& k) {
  require_pos(a, "a");
  require_T(T);
  if (T == 0) return {0, 0, 0, 0};
  double kT = k.k_B * T, hc = k.hbar * k.c;
  double pre = kT * kT * kT / (2 * M_PI * hc * hc);
  // Modes k_z = pi n / a over n in Z; u_n = pi n hbar c/(a k_B T).
  double u1 = M_PI * hc / (a * kT);
  num::SumSpec spec;
  spec.zero_mode_weight = 0.5;
  double S = num::matsubara_sum([u1](long n) { return tail_J(u1 * double(n)); }, spec).value;
  double F = pre * 2 * S;
  double mehra = -kZeta3 * pre;
  double fext = -M_PI * M_PI * std::pow(kT, 4) / (90 * std::pow(hc, 3));
  return {F, mehra, fext, F - 2 * a * fext};
}

}  // namespace casimir::thermal
