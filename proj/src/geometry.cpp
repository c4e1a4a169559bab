#include "casimir/geometry.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "casimir/ideal.hpp"
#include "casimir/numerics.hpp"

namespace casimir::geo {

namespace {

using Moments = std::array<double, 5>;             // <h^k>, k = 0..4
using Joint = std::array<std::array<double, 5>, 5>;  // <h1^i h2^j>

void check_levels(const DiscreteLevels& p) {
  if (p.heights.empty() || p.heights.size() != p.fractions.size())
    config_error("roughness levels need matching, non-empty heights and fractions");
  double s = 0;
  for (size_t i = 0; i < p.fractions.size(); ++i) {
    if (!(p.fractions[i] >= 0)) config_error("roughness fractions must be non-negative");
    if (!std::isfinite(p.heights[i])) config_error("roughness heights must be finite");
    s += p.fractions[i];
  }
  if (std::fabs(s - 1) > 1e-12) config_error("roughness fractions must sum to 1");
}

std::vector<double> effective_heights(const DiscreteLevels& p) {
  std::vector<double> h = p.heights;
  if (p.last_is_background) h.back() *= 0.5;
  return h;
}

Moments moments(const RoughnessProfile& prof, bool upper) {
  Moments m{1, 0, 0, 0, 0};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DiscreteLevels>) {
          ZeroLevel z = zero_level(v);
          auto e = effective_heights(v);
          double sign = upper ? -1.0 : 1.0;
          for (int k = 1; k <= 4; ++k) {
            double s = 0;
            for (size_t i = 0; i < e.size(); ++i) s += v.fractions[i] * std::pow(sign * (e[i] - z.H), k);
            m[k] = s;
          }
        } else if constexpr (std::is_same_v<T, Stochastic>) {
          if (!(v.delta >= 0)) config_error("stochastic roughness dispersion must be non-negative");
          m[2] = v.delta * v.delta;
          m[4] = 3 * m[2] * m[2];
        } else if constexpr (std::is_same_v<T, Tilt>) {
          m[2] = v.alpha_L * v.alpha_L / 3;
          m[4] = std::pow(v.alpha_L, 4) / 5;
        } else {
          if (!(v.period > 0)) config_error("sinusoid period must be positive");
          m[2] = v.A * v.A / 2;
          m[4] = 3 * std::pow(v.A, 4) / 8;
        }
      },
      prof);
  return m;
}

Joint joint(const ProfilePair& p, Regime regime) {
  Moments m1 = p.s1 ? moments(*p.s1, false) : Moments{1, 0, 0, 0, 0};
  Moments m2 = p.s2 ? moments(*p.s2, true) : Moments{1, 0, 0, 0, 0};
  Joint J{};
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) J[i][j] = m1[i] * m2[j];
  if (!p.s1 || !p.s2) return J;

  const auto* t1 = std::get_if<Tilt>(&*p.s1);
  const auto* t2 = std::get_if<Tilt>(&*p.s2);
  const auto* w1 = std::get_if<Sinusoid>(&*p.s1);
  const auto* w2 = std::get_if<Sinusoid>(&*p.s2);
  bool same_period = w1 && w2 && std::fabs(w1->period - w2->period) <= 1e-12 * w1->period;

  Joint C = J;  // correlated moments where the profiles share a coordinate
  if (t1 && t2) {
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; i + j <= 4; ++j)
        C[i][j] = (i + j) % 2 ? 0.0 : std::pow(t1->alpha_L, i) * std::pow(t2->alpha_L, j) / (i + j + 1);
  } else if (same_period) {
    // Trapezoid over one period is exact for these trigonometric polynomials.
    const int N = 64;
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; i + j <= 4; ++j) {
        double s = 0;
        for (int q = 0; q < N; ++q) {
          double th = 2 * M_PI * q / N;
          s += std::pow(w1->A * std::sin(th + w1->phase), i) * std::pow(w2->A * std::sin(th + w2->phase), j);
        }
        C[i][j] = s / N;
      }
  }
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; i + j <= 4; ++j) {
      switch (regime) {
        case Regime::large_scale: J[i][j] = C[i][j]; break;
        case Regime::short_scale: J[i][j] = (i == 2 && j == 2) ? C[2][2] : 0.0; break;
        case Regime::extreme_short: J[i][j] = (i == 2 && j == 2) ? m1[2] * m2[2] : 0.0; break;
      }
    }
  return J;
}

void check_regime(const ProfilePair& p, Regime regime) {
  for (const auto* s : {&p.s1, &p.s2})
    if (*s && std::holds_alternative<Tilt>(**s) && regime != Regime::large_scale)
      config_error("tilt is a large-scale distortion; use the large_scale regime");
}

// <(h1 - h2)^n>
double gap_moment(const Joint& J, int n) {
  double s = 0, binom = 1;
  for (int i = n; i >= 0; --i) {
    int j = n - i;
    s += binom * ((j % 2) ? -1.0 : 1.0) * J[i][j];
    binom = binom * i / (j + 1);
  }
  return s;
}

double series(const ProfilePair& p, double a, Regime regime, const std::array<double, 5>& c, int order) {
  if (!(a > 0)) domain_error("separation must be positive");
  check_regime(p, regime);
  Joint J = joint(p, regime);
  double f = 0;
  for (int n = 0; n <= order; ++n) f += c[n] * gap_moment(J, n) / std::pow(a, n);
  return f;
}

void check_amplitude(const ProfilePair& p, double a) {
  for (const auto* s : {&p.s1, &p.s2}) {
    if (!*s) continue;
    double amp = std::visit(
        [](const auto& v) -> double {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DiscreteLevels>) return zero_level(v).A;
          else if constexpr (std::is_same_v<T, Stochastic>) return v.delta;
          else if constexpr (std::is_same_v<T, Tilt>) return std::fabs(v.alpha_L);
          else return std::fabs(v.A);
        },
        **s);
    if (amp / a > 0.3) domain_error("roughness amplitude exceeds 0.3 a; series not applicable");
  }
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::large_scale: return "large-scale";
    case Regime::short_scale: return "short-scale";
    case Regime::extreme_short: return "extreme-short";
  }
  return "?";
}

Regime parse_regime(const std::string& s) {
  for (auto r : {Regime::large_scale, Regime::short_scale, Regime::extreme_short})
    if (s == regime_name(r)) return r;
  config_error("unknown roughness regime '" + s + "'");
}

double ZeroLevel::beta1() const { return levels.size() > 1 ? levels[1] : std::nan(""); }
double ZeroLevel::beta2() const { return levels.size() > 2 ? -levels[2] : std::nan(""); }

ZeroLevel zero_level(const DiscreteLevels& p) {
  check_levels(p);
  auto e = effective_heights(p);
  double H = 0, top = e[0];
  for (size_t i = 0; i < e.size(); ++i) {
    H += p.fractions[i] * e[i];
    top = std::max(top, e[i]);
  }
  ZeroLevel z{H, top - H, {}, false};
  z.beta_defined = z.A > 1e-15 * std::max(1.0, std::fabs(top));
  if (!z.beta_defined) z.A = 0;
  for (double h : e) z.levels.push_back(z.beta_defined ? (h - H) / z.A : 0.0);
  return z;
}

WeightedDistanceSet weighted_distance_set(const DiscreteLevels& p) {
  ZeroLevel z = zero_level(p);
  auto e = effective_heights(p);
  WeightedDistanceSet set;
  double wsum = 0;
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i; j < e.size(); ++j) {
      double w = p.fractions[i] * p.fractions[j] * (i == j ? 1.0 : 2.0);
      set.push_back({-(e[i] - z.H) - (e[j] - z.H), w});
      wsum += w;
    }
  if (std::fabs(wsum - 1) > 1e-12) throw Error(ErrorCode::Internal, "distance weights do not sum to 1");
  return set;
}

double average_force(const std::function<double(double)>& base, double a0, const WeightedDistanceSet& set) {
  double s = 0;
  for (const auto& d : set) {
    double ai = a0 + d.offset;
    if (!(ai > 0)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "shifted separation %.6g m is not positive (offset %.6g m)", ai, d.offset);
      domain_error(buf);
    }
    s += d.weight * base(ai);
  }
  return s;
}

double rough_plates_factor(const ProfilePair& p, double a, Regime regime) {
  check_amplitude(p, a);
  return series(p, a, regime, {1, 4, 10, 20, 35}, 4);
}

double rough_sphere_factor(const ProfilePair& p, double a, Regime regime) {
  check_amplitude(p, a);
  if (regime == Regime::extreme_short) return series(p, a, regime, {1, 3, 6, 10, 15}, 2);
  const auto* w1 = p.s1 ? std::get_if<Sinusoid>(&*p.s1) : nullptr;
  const auto* w2 = p.s2 ? std::get_if<Sinusoid>(&*p.s2) : nullptr;
  if (regime == Regime::large_scale && (w1 || w2) && (!p.s1 || w1) && (!p.s2 || w2)) {
    // Plate corrugation cos(2 pi x/T + d1) under a lens with concentric cos(2 pi rho/T + d2).
    double x1 = w1 ? w1->A / a : 0, x2 = w2 ? w2->A / a : 0;
    double c1 = w1 ? std::cos(w1->phase) : 0, c2 = w2 ? std::cos(w2->phase) : 0;
    return 1 + 3 * c1 * x1 - 3 * c2 * x2 + 3 * x1 * x1 + 3 * x2 * x2 - 12 * c1 * x1 * x2;
  }
  return series(p, a, regime, {1, 3, 6, 10, 15}, 4);
}

double tilt_factor(double x) {
  if (std::fabs(x) > 0.3) domain_error("alpha L / a must not exceed 0.3");
  return 1 + 10.0 / 3 * x * x + 7 * std::pow(x, 4);
}

double tilt_exact(double x) {
  if (!(std::fabs(x) < 1)) domain_error("alpha L / a must be below 1");
  if (x == 0) return 1.0;
  return (std::pow(1 - x, -3) - std::pow(1 + x, -3)) / (6 * x);
}

Rational wedge_series_coefficient(int n) {
  if (n < 0) domain_error("series order must be non-negative");
  if (n % 2) return {0, 1};
  long num = long(n + 2) * (n + 3), den = 6;
  long g = std::gcd(num, den);
  return {num / g, den / g};
}

const char* distribution_name(Distribution d) {
  switch (d) {
    case Distribution::uniform: return "uniform";
    case Distribution::convex_half: return "convex";
    case Distribution::tent: return "tent";
    case Distribution::delta_at_max: return "max";
  }
  return "?";
}

Distribution parse_distribution(const std::string& s) {
  for (auto d : {Distribution::uniform, Distribution::convex_half, Distribution::tent, Distribution::delta_at_max})
    if (s == distribution_name(d)) return d;
  config_error("unknown corrugation distribution '" + s + "' (uniform, convex, tent, max)");
}

double corrugation_average(const std::function<double(double)>& base, double a, double A, double L,
                           Distribution rho, double offset) {
  if (!(L > 0)) domain_error("corrugation period must be positive");
  if (!(A >= 0)) domain_error("corrugation amplitude must be non-negative");
  auto d = [&](double x) { return a - offset - A * std::sin(2 * M_PI * x / L); };
  double dmin = a - offset - A;
  if (!(dmin > 0)) domain_error("corrugation reaches the sphere: a - offset - A must be positive");
  if (A == 0 || rho == Distribution::delta_at_max) return base(d(L / 4));
  num::QuadratureSpec q;
  q.rel_tol = 1e-10;
  auto f = [&](double x) { return base(d(x)); };
  switch (rho) {
    case Distribution::uniform:
      return (num::integrate(f, 0, L / 2, q) + num::integrate(f, L / 2, L, q)) / L;
    case Distribution::convex_half: return 2 / L * num::integrate(f, 0, L / 2, q);
    case Distribution::tent: {
      double c = 16 / (L * L);
      return c * (num::integrate([&](double x) { return x * f(x); }, 0, L / 4, q) +
                  num::integrate([&](double x) { return (L / 2 - x) * f(x); }, L / 4, L / 2, q));
    }
    case Distribution::delta_at_max: break;
  }
  return base(d(L / 4));
}

double lateral_force(double a, double A, double L, double x0, double R, const Constants& k) {
  if (!(a > 0) || !(L > 0) || !(R > 0)) domain_error("lateral force needs positive a, L and R");
  if (!(A >= 0) || A / a > 0.3) domain_error("lateral force needs 0 <= A/a <= 0.3");
  double F0 = ideal::sphere_plate_ideal(R, a, k);
  double x = A / a;
  return 3 * F0 * x *
         (std::cos(2 * M_PI * x0 / L) * std::cyl_bessel_j(1.0, 2 * M_PI * R / L) +
          x * std::sin(4 * M_PI * x0 / L) * std::cyl_bessel_j(1.0, 4 * M_PI * R / L));
}

DiscreteLevels parse_roughness_profile(std::istream& in) {
  DiscreteLevels p;
  std::string line;
  int lineno = 0;
  bool background = false;
  double bh = 0, bv = 0;
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::Ingestion, "roughness profile line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    auto num = [&](const std::string& s) {
      try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (s.find_first_not_of(" \t\r", used) != std::string::npos) bad("trailing characters in '" + s + "'");
        return v;
      } catch (const std::invalid_argument&) {
        bad("not a number: '" + s + "'");
      } catch (const std::out_of_range&) {
        bad("number out of range: '" + s + "'");
      }
      return 0.0;
    };
    std::string key = f.empty() ? "" : f[0];
    key.erase(0, key.find_first_not_of(" \t"));
    if (key.rfind("height", 0) == 0) continue;  // header
    if (key.rfind("background_nm", 0) == 0) {
      if (f.size() != 3) bad("expected background_nm,height,fraction");
      background = true;
      bh = num(f[1]);
      bv = num(f[2]);
      continue;
    }
    if (f.size() != 2) bad("expected height_nm,fraction");
    p.heights.push_back(num(f[0]) * 1e-9);
    p.fractions.push_back(num(f[1]));
  }
  if (background) {
    p.heights.push_back(bh * 1e-9);
    p.fractions.push_back(bv);
    p.last_is_background = true;
  }
  if (p.heights.empty()) throw Error(ErrorCode::Ingestion, "roughness profile has no levels");
  try {
    zero_level(p);
  } catch (const Error& e) {
    throw Error(ErrorCode::Ingestion, std::string("roughness profile: ") + e.what());
  }
  return p;
}

DiscreteLevels read_roughness_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Ingestion, "cannot open roughness profile '" + path + "'");
  return parse_roughness_profile(in);
}

}  // namespace casimir::geo
