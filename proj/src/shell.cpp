#include "casimir/shell.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/numerics.hpp"

namespace casimir::shell {

const char* region_name(Region r) {
  switch (r) {
    case Region::interior: return "interior";
    case Region::exterior: return "exterior";
    case Region::whole: return "whole";
  }
  return "?";
}

Region parse_region(const std::string& s) {
  if (s == "interior") return Region::interior;
  if (s == "exterior") return Region::exterior;
  if (s == "whole") return Region::whole;
  config_error("unknown region '" + s + "' (interior, exterior, whole)");
}

double ln_jost(Region r, int l, double z) {
  if (l < 0 || !(z > 0)) domain_error("ln_jost: need l >= 0 and kR > 0");
  switch (r) {
    case Region::interior: return num::ln_s(l, z) - (l + 1) * std::log(z);
    case Region::exterior: return num::ln_e(l, z) + l * std::log(z);
    case Region::whole: return ln_jost(Region::interior, l, z) + ln_jost(Region::exterior, l, z);
  }
  config_error("invalid region");
}

std::array<double, 5> asymptotic_x(double z) {
  double w = std::sqrt(1 + z * z);
  double t = 1 / w;
  double t2 = t * t;
  // eta - ln z = w + ln(1/(1 + w))
  double xm1 = w - std::log1p(w);
  double x0 = 0.5 * std::log(t);
  double x1 = t / 8 - 5 * t * t2 / 24;
  double x2 = t2 / 16 - 3 * t2 * t2 / 8 + 5 * t2 * t2 * t2 / 16;
  double t3 = t * t2;
  double x3 = t3 * (25.0 / 384 - 531.0 / 640 * t2 + 221.0 / 128 * t2 * t2 - 1105.0 / 1152 * t2 * t2 * t2);
  return {xm1, x0, x1, x2, x3};
}

namespace {

double region_asymptotic(bool interior, int l, double z) {
  double nu = l + 0.5;
  auto X = asymptotic_x(z / nu);
  double ln_nu = std::log(nu);
  double s = interior ? 1.0 : -1.0;
  double c = interior ? -nu * ln_nu - 0.5 * ln_nu - M_LN2 : nu * ln_nu - 0.5 * ln_nu;
  return c + s * nu * X[0] + X[1] + s * X[2] / nu + X[3] / (nu * nu) + s * X[4] / (nu * nu * nu);
}

}  // namespace

double ln_jost_asymptotic(Region r, int l, double z) {
  if (l < 0 || !(z > 0)) domain_error("ln_jost_asymptotic: need l >= 0 and kR > 0");
  switch (r) {
    case Region::interior: return region_asymptotic(true, l, z);
    case Region::exterior: return region_asymptotic(false, l, z);
    case Region::whole: return region_asymptotic(true, l, z) + region_asymptotic(false, l, z);
  }
  config_error("invalid region");
}

namespace {

using Poly = std::vector<double>;  // coefficients of t^a

// Debye polynomials u_0..u_n of the uniform expansion of I_nu(nu z).
std::vector<Poly> debye(int n) {
  std::vector<Poly> u{{1.0}};
  for (int k = 0; k < n; ++k) {
    const Poly& p = u.back();
    Poly q(p.size() + 3, 0.0);
    for (size_t a = 1; a < p.size(); ++a) {
      q[a + 1] += 0.5 * a * p[a];
      q[a + 3] -= 0.5 * a * p[a];
    }
    for (size_t a = 0; a < p.size(); ++a) {
      q[a + 1] += p[a] / (8.0 * (a + 1));
      q[a + 3] -= 5 * p[a] / (8.0 * (a + 3));
    }
    u.push_back(q);
  }
  return u;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// X_k of ln(1 + sum u_k / nu^k); k X_k = k u_k - sum_j j X_j u_{k-j}.
std::vector<Poly> log_coefficients(int n) {
  auto u = debye(n);
  std::vector<Poly> X(n + 1);
  for (int k = 1; k <= n; ++k) {
    Poly x = u[k];
    for (int j = 1; j < k; ++j) {
      Poly p = mul(X[j], u[k - j]);
      if (p.size() > x.size()) x.resize(p.size(), 0.0);
      for (size_t a = 0; a < p.size(); ++a) x[a] -= double(j) / k * p[a];
    }
    X[k] = x;
  }
  return X;
}

constexpr int kOrders = 14;
constexpr int kSwitch = 8;

// c_k = int_0^inf X_k(1/sqrt(1+u^2)) du, interior signs.
const std::vector<double>& tail_coefficients() {
  static const std::vector<double> c = [] {
    auto X = log_coefficients(kOrders);
    std::vector<double> out(kOrders + 1, 0.0);
    for (int k = 4; k <= kOrders; ++k)
      for (size_t a = 2; a < X[k].size(); ++a)
        out[k] += X[k][a] * std::sqrt(M_PI) * std::tgamma((a - 1) / 2.0) / (2 * std::tgamma(a / 2.0));
    return out;
  }();
  return c;
}

int sign_k(Region r, int k) {
  if (r == Region::interior) return 1;
  if (r == Region::exterior) return (k % 2) ? -1 : 1;
  return (k % 2) ? 0 : 2;
}

// (2l+1) int_0^inf [ln f - ln f^as] dz, the k-derivative removed by parts.
double l_term(Region r, int l) {
  if (r == Region::whole) return l_term(Region::interior, l) + l_term(Region::exterior, l);
  double nu = l + 0.5;
  auto d = [&](double u) {
    double z = nu * u;
    return ln_jost(r, l, z) - ln_jost_asymptotic(r, l, z);
  };
  num::QuadratureSpec q;
  q.rel_tol = 1e-7;
  q.abs_tol = 1e-13;
  // d falls like u^-4 beyond the turning region; the far tail is added in closed form
  const double U = 40.0;
  double v = num::integrate(d, 0.0, 1.0, q) + num::integrate(d, 1.0, U, q) + d(U) * U / 3;
  return (2 * l + 1) * nu * v;
}

// Same term from the uniform expansion beyond third order.
double l_term_asymptotic(Region r, int l) {
  const auto& c = tail_coefficients();
  double nu = l + 0.5, s = 0;
  for (int k = 4; k <= kOrders; ++k) s += sign_k(r, k) * c[k] * std::pow(nu, 2 - k);
  return 2 * s;
}

}  // namespace

double l_contribution(Region r, int l, bool asymptotic) {
  if (l < 0) domain_error("l must be non-negative");
  return (asymptotic ? l_term_asymptotic(r, l) : l_term(r, l)) / (2 * M_PI);
}

FinitePart energy_finite_part(Region r, const FiniteSpec& spec) {
  FinitePart out{0.0, 0, 0.0, {}};
  double sum = 0;
  int sw = std::min(kSwitch, spec.l_max + 1);
  for (int l = 0; l < sw; ++l) {
    sum += l_term(r, l);
    out.partial.push_back(sum / (2 * M_PI));
  }
  // l >= sw summed in closed form: sum_l nu^(2-k) = zeta_H(k-2, sw + 1/2)
  const auto& c = tail_coefficients();
  double tail = 0;
  for (int k = 4; k <= kOrders; ++k) tail += 2 * sign_k(r, k) * c[k] * num::hurwitz_zeta(k - 2, sw + 0.5);
  double run = sum;
  for (int l = sw; l <= spec.l_max; ++l) {
    run += l_term_asymptotic(r, l);
    out.partial.push_back(run / (2 * M_PI));
  }
  out.value = (sum + tail) / (2 * M_PI);
  out.tail = tail / (2 * M_PI);
  out.l_used = sw;
  // the last retained order bounds the truncation of the expansion
  double last = std::fabs(2 * c[kOrders] * num::hurwitz_zeta(kOrders - 2, sw + 0.5)) / (2 * M_PI);
  if (last > spec.rel_tol * std::fabs(out.value))
    throw ConvergenceError("energy_finite_part: uniform expansion not converged", out.value, last);
  return out;
}

AsymptoticPart energy_asymptotic_part(Region r) {
  const double g = num::kEulerGamma;
  const double l2 = M_LN2;
  std::array<double, 5> fin{7.0 / 1920 + l2 / 160 + 7.0 / 8 * num::zeta_derivative(-3), 0.0,
                            -1.0 / 36 - num::zeta_derivative(-1) / 8, 0.0,
                            269.0 / 7560 - 229.0 / 20160 * g - 229.0 / 6720 * l2};
  std::array<double, 5> pol{7.0 / 1920, 0.0, 1.0 / 192, 0.0, -229.0 / 40320};
  double norm = 1 / (2 * M_PI);
  AsymptoticPart a{};
  for (int i = 0; i < 5; ++i) {
    // exterior flips X_i by (-1)^i; only odd i are nonzero here
    double s = r == Region::interior ? 1.0 : (r == Region::exterior ? -1.0 : 0.0);
    a.finite[i] = s * norm * fin[i];
    a.pole[i] = s * norm * pol[i];
    a.finite_sum += a.finite[i];
    a.pole_sum += a.pole[i];
  }
  return a;
}

ShellResult sphere_energy(Region r, std::optional<double> mu_scale, double R, const FiniteSpec& spec,
                          const Constants& k) {
  if (!(R > 0)) domain_error("sphere radius must be positive");
  if (r != Region::whole && !mu_scale)
    config_error(std::string(region_name(r)) +
                 " energy needs mu_scale: the logarithmic term has no unique normalization");
  if (mu_scale && !(*mu_scale > 0)) domain_error("mu_scale must be positive");
  FinitePart f = energy_finite_part(r, spec);
  AsymptoticPart a = energy_asymptotic_part(r);
  double scale = k.hbar * k.c / R;
  double lg = (r == Region::whole) ? 0.0 : 2 * std::log(*mu_scale * R / k.c);
  ShellResult out;
  out.region = r;
  out.pole_coefficient = a.pole_sum * scale;
  out.log_coefficient = a.pole_sum * scale;
  out.finite_part = (f.value + a.finite_sum + a.pole_sum * lg) * scale;
  return out;
}

HeatKernel dirichlet_sphere_coefficients(Region r, double R) {
  double p = std::pow(M_PI, 1.5);
  switch (r) {
    case Region::interior:
      return {4 * M_PI * R * R * R / 3, -2 * p * R * R, 8 * M_PI * R / 3, -p / 6, -16 * M_PI / (315 * R)};
    case Region::exterior:
      return {0.0, -2 * p * R * R, -8 * M_PI * R / 3, -p / 6, 16 * M_PI / (315 * R)};
    case Region::whole: return {4 * M_PI * R * R * R / 3, -4 * p * R * R, 0.0, -p / 3, 0.0};
  }
  config_error("invalid region");
}

HeatKernel neumann_sphere_coefficients(Region r, double R) {
  double p = std::pow(M_PI, 1.5);
  switch (r) {
    case Region::interior:
      return {4 * M_PI * R * R * R / 3, 2 * p * R * R, 16 * M_PI * R / 9, 7 * p / 6, 16 * M_PI / (9 * R)};
    case Region::exterior:
      return {0.0, 2 * p * R * R, -16 * M_PI * R / 9, 7 * p / 6, -16 * M_PI / (9 * R)};
    case Region::whole: return {4 * M_PI * R * R * R / 3, 4 * p * R * R, 0.0, 7 * p / 3, 0.0};
  }
  config_error("invalid region");
}

Divergence heat_kernel_divergence(const HeatKernel& a, double m, Scheme scheme, double mu_or_delta) {
  if (m < 0) domain_error("mass must be non-negative");
  if (!(mu_or_delta > 0)) domain_error("mu (zeta) or delta (cutoff) must be positive");
  Divergence d{scheme, {}, {}, 0.0, 0.0};
  const double pi2 = M_PI * M_PI, sp = std::pow(M_PI, 1.5);
  if (scheme == Scheme::zeta) {
    // Without a mass the logarithms carry no scale; they are left to the caller's mu.
    double L = m > 0 ? std::log(4 * mu_or_delta * mu_or_delta / (m * m)) : 0.0;
    double m2 = m * m, m4 = m2 * m2;
    d.pole = {-m4 / (64 * pi2) * a[0], 0.0, m2 / (32 * pi2) * a[2], 0.0, -a[4] / (32 * pi2)};
    d.finite = {-m4 / (64 * pi2) * (L - 0.5) * a[0], -m2 * m / (24 * sp) * a[1], m2 / (32 * pi2) * (L - 1) * a[2],
                m / (16 * sp) * a[3], -(L - 2) / (32 * pi2) * a[4]};
    if (m == 0) d.finite[4] = 0.0;
  } else {
    double dl = mu_or_delta, ld = std::log(dl), m2 = m * m;
    double c = 1 / (16 * pi2);
    d.finite = {c * (24 / std::pow(dl, 4) - 2 * m2 / (dl * dl) + m2 * m2 / 2 * ld) * a[0],
                c * 4 * std::sqrt(M_PI) / std::pow(dl, 3) * a[1], c * (2 / (dl * dl) - m2 * ld) * a[2], 0.0,
                c * ld * a[4]};
  }
  for (int i = 0; i < 5; ++i) {
    d.pole_total += d.pole[i];
    d.total += d.finite[i];
  }
  return d;
}

}  // namespace casimir::shell
