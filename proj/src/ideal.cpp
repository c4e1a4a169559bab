#include "casimir/ideal.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace casimir::ideal {

using num::kZeta3;

namespace {

void require_pos(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) domain_error(std::string(what) + " must be strictly positive");
}

double mu_of(double a, double m, const Constants& k) { return m * k.c * a / k.hbar; }

}  // namespace

double plates_energy_density(double a, const Constants& k) {
  require_pos(a, "a");
  return -M_PI * M_PI * k.hbar * k.c / (720.0 * a * a * a);
}

EnergyForce plates_ideal(double area, double a, const Constants& k) {
  require_pos(area, "area");
  require_pos(a, "a");
  double hc = k.hbar * k.c;
  return {-M_PI * M_PI * hc * area / (720.0 * std::pow(a, 3)), -M_PI * M_PI * hc * area / (240.0 * std::pow(a, 4))};
}

IntervalEnergy interval_energy(double a, double m, const Constants& k, const num::QuadratureSpec& spec) {
  require_pos(a, "a");
  if (m < 0) domain_error("field mass must be non-negative");
  double mc2 = m * k.c * k.c;
  // Modes k_n = pi n / a, n >= 1; in units of pi hbar c/(2a) with A = mu/pi.
  double A = mu_of(a, m, k) / M_PI;
  auto g = [A](double t) { return t <= A ? 0.0 : 2.0 * std::sqrt((t - A) * (t + A)); };
  double sum_minus_int = num::abel_plana(A, g, false, spec, A) - A;
  double scale = M_PI * k.hbar * k.c / (2.0 * a);
  double wall = -mc2 / 4.0;
  return {scale * sum_minus_int - wall, wall};
}

double interval_small_mu_printed(double a, double m, const Constants& k) {
  double mu = mu_of(a, m, k), hc = k.hbar * k.c;
  double log_term = mu > 0 ? hc / (23.0 * M_PI * a) * mu * mu * std::log(mu) : 0.0;
  return -m * k.c * k.c / 4.0 - M_PI * hc / (24.0 * a) + log_term;
}

double interval_small_mu(double a, double m, const Constants& k) {
  double mu = mu_of(a, m, k), hc = k.hbar * k.c;
  double log_term = mu > 0 ? hc / (4.0 * M_PI * a) * mu * mu * (std::log(mu / (2 * M_PI)) + num::kEulerGamma - 0.5) : 0.0;
  return -M_PI * hc / (24.0 * a) + log_term;
}

double interval_large_mu(double a, double m, const Constants& k) {
  double mu = mu_of(a, m, k), hc = k.hbar * k.c;
  return -m * k.c * k.c / 4.0 - std::sqrt(mu) * hc * std::exp(-2 * mu) / (4.0 * std::sqrt(M_PI) * a);
}

double topology_energy(Topology t, double a, double m, double L, const Constants& k,
                       const num::QuadratureSpec& spec) {
  require_pos(a, "a");
  if (m < 0) domain_error("field mass must be non-negative");
  double hc = k.hbar * k.c, mu = mu_of(a, m, k), mc2 = m * k.c * k.c;
  switch (t) {
    case Topology::S1: {
      // Modes k_n = 2 pi n / a over n in Z; A = mu/(2 pi).
      double A = mu / (2 * M_PI);
      auto g = [A](double x) { return x <= A ? 0.0 : 2.0 * std::sqrt((x - A) * (x + A)); };
      return 2 * M_PI * hc / a * num::abel_plana(A, g, false, spec, A) - mc2 / 2.0;
    }
    case Topology::CylinderPlane: {
      require_pos(L, "L");
      if (mu == 0) return -hc * kZeta3 * L / (2 * M_PI * a * a);
      auto f = [mu](double x) { return (x - mu) * (x + mu) / std::expm1(x); };
      return -hc * L / (4 * M_PI * a * a) * num::integrate_semi_infinite(f, mu, spec);
    }
    case Topology::S2: {
      if (mu == 0) return 0.0;
      auto f = [mu](double x) { return x * std::sqrt(1 - x * x) / (std::exp(2 * M_PI * mu * x) + 1.0); };
      return 2 * mc2 * mu * mu * num::integrate(f, 0.0, 1.0, spec);
    }
  }
  return 0.0;
}

double s2_large_mu(double mu, double mc2, double c2) { return mc2 / 24.0 * (1.0 - c2 / (mu * mu)); }

double epstein_z3_4(double a1, double a2, double a3) {
  require_pos(a1, "a1");
  require_pos(a2, "a2");
  require_pos(a3, "a3");
  // Theta splitting at t0: sum' Q^-2 = int_0^inf t (Theta(t) - 1) dt.
  const std::array<double, 3> a{a1, a2, a3};
  double g = std::cbrt(a1 * a2 * a3);
  double t0 = M_PI / (g * g);
  const double cut = 46.0;
  std::array<int, 3> N{}, M{};
  for (int i = 0; i < 3; ++i) {
    N[i] = int(std::ceil(std::sqrt(cut / (t0 * a[i] * a[i])))) + 1;
    M[i] = int(std::ceil(std::sqrt(cut * t0 * a[i] * a[i]) / M_PI)) + 1;
  }
  double direct = 0;
  for (int i = -N[0]; i <= N[0]; ++i)
    for (int j = -N[1]; j <= N[1]; ++j)
      for (int l = -N[2]; l <= N[2]; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        double Q = a1 * a1 * i * i + a2 * a2 * j * j + a3 * a3 * l * l;
        double x = t0 * Q;
        if (x > cut + 20) continue;
        direct += std::exp(-x) * (1 + x) / (Q * Q);
      }
  double V = std::pow(M_PI, 1.5) / (a1 * a2 * a3);
  double recip = 0;
  for (int i = -M[0]; i <= M[0]; ++i)
    for (int j = -M[1]; j <= M[1]; ++j)
      for (int l = -M[2]; l <= M[2]; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        double Mq = double(i * i) / (a1 * a1) + double(j * j) / (a2 * a2) + double(l * l) / (a3 * a3);
        double b = M_PI * M_PI * Mq;
        double x = b / t0;
        if (x > cut + 20) continue;
        // int_0^t0 t^-1/2 e^{-b/t} dt = sqrt(b) Gamma(-1/2, b/t0)
        double sx = std::sqrt(x);
        double gamma_m_half = 2.0 * (std::exp(-x) / sx - std::sqrt(M_PI) * std::erfc(sx));
        recip += std::sqrt(b) * gamma_m_half;
      }
  return direct + V * (2.0 * std::sqrt(t0) + recip) - 0.5 * t0 * t0;
}

double box_H(double a1, double a2, double a3) {
  // Bessel and exponential remainders of the Chowla-Selberg split of Z_3.
  const double tol = 1e-16;
  double h1 = 0;
  for (int n = 1;; ++n) {
    double row = 0;
    for (int m = 1;; ++m) {
      double t = double(m) / n * std::cyl_bessel_k(1.0, 2 * M_PI * m * n * a3 / a2);
      row += t;
      if (t < tol * std::fabs(row) || t == 0) break;
    }
    h1 += row;
    if (row < tol * std::fabs(h1) || row == 0) break;
  }
  h1 *= -1.0 / (2.0 * a2);

  double h2 = 0;
  int R = 1 + int(std::ceil(40.0 * a1 / (2 * M_PI * std::min(a2, a3))));
  for (int i = -R; i <= R; ++i)
    for (int j = -R; j <= R; ++j) {
      if (i == 0 && j == 0) continue;
      double q = a2 * a2 * i * i + a3 * a3 * j * j;
      double sq = std::sqrt(q);
      for (int m = 1;; ++m) {
        double x = 2 * M_PI * m * sq / a1;
        if (x > 60) break;
        h2 += (1 + x) * std::exp(-x) / (q * sq);
      }
    }
  h2 *= -a2 * a3 / (16 * M_PI);
  return h1 + h2;
}

BoxEnergyBreakdown box_energy(double a1, double a2, double a3, BoxRoute route, const Constants& k) {
  require_pos(a1, "a1");
  require_pos(a2, "a2");
  require_pos(a3, "a3");
  double hc = k.hbar * k.c;
  BoxEnergyBreakdown r{};
  double nan = std::nan("");
  r.epstein_route = r.abelplana_route = r.neglected_H_bound = nan;
  if (route != BoxRoute::abelplana) {
    r.epstein_route = -hc * a1 * a2 * a3 / (16 * M_PI * M_PI) * epstein_z3_4(a1, a2, a3) +
                      hc * M_PI / 48.0 * (1 / a1 + 1 / a2 + 1 / a3);
  }
  if (route != BoxRoute::epstein) {
    std::array<double, 3> s{a1, a2, a3};
    std::sort(s.begin(), s.end());
    r.abelplana_route = hc * (-M_PI * M_PI * s[1] * s[2] / (720 * std::pow(s[0], 3)) -
                              kZeta3 / (16 * M_PI) * s[2] / (s[1] * s[1]) + M_PI / 48.0 * (1 / s[0] + 1 / s[1]));
    r.neglected_H_bound = hc * std::fabs(box_H(s[0], s[1], s[2]));
  }
  r.total = route == BoxRoute::abelplana ? r.abelplana_route : r.epstein_route;
  return r;
}

double box2d_G(double x) {
  require_pos(x, "x");
  // int_1^inf sqrt(s^2-1) e^{-b s} ds = K_1(b)/b
  double G = 0;
  for (int n = 1;; ++n) {
    double row = 0;
    for (int m = 1;; ++m) {
      double b = 2 * M_PI * x * n * m;
      double t = double(n) * n * std::cyl_bessel_k(1.0, b) / b;
      row += t;
      if (t < 1e-17 * row || t == 0) break;
    }
    G += row;
    if (row < 1e-17 * G || row == 0) break;
  }
  return -G;
}

double box2d_energy(double a1, double a2, bool sort, const Constants& k) {
  require_pos(a1, "a1");
  require_pos(a2, "a2");
  if (sort && a1 > a2) std::swap(a1, a2);
  double x = a2 / a1;
  return k.hbar * k.c *
         (M_PI / (48 * a1) - kZeta3 * a2 / (16 * M_PI * a1 * a1) + M_PI * a2 / (a1 * a1) * box2d_G(x));
}

double pft_force(const std::function<double(double)>& energy_per_area, double R, double a) {
  require_pos(R, "R");
  require_pos(a, "a");
  return 2 * M_PI * R * energy_per_area(a);
}

double sphere_plate_ideal(double R, double a, const Constants& k) {
  require_pos(R, "R");
  require_pos(a, "a");
  return -std::pow(M_PI, 3) * k.hbar * k.c * R / (360.0 * a * a * a);
}

double dilute_ball_energy(DiluteKind kind, double p, double R, const Constants& k) {
  require_pos(R, "R");
  double hc = k.hbar * k.c;
  if (kind == DiluteKind::equal_speeds) {
    if (std::fabs(p) > 1) domain_error("|xi| must not exceed 1");
    return 5 * hc * p * p / (32 * M_PI * R);
  }
  if (p < 1) domain_error("epsilon must be at least 1");
  return 23 * (p - 1) * (p - 1) * hc / (1536 * M_PI * R);
}

}  // namespace casimir::ideal
