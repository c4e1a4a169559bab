#include "casimir/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "casimir/numerics.hpp"

namespace casimir::yuk {

void BodyComposition::check() const {
  if (!(core_density >= 0)) config_error("core density must be non-negative");
  for (const auto& l : layers) {
    if (!(l.density > 0)) config_error("layer density must be positive");
    if (!(l.thickness > 0)) config_error("layer thickness must be positive");
  }
}

double BodyComposition::coating_thickness() const {
  double t = 0;
  for (const auto& l : layers) t += l.thickness;
  return t;
}

double newton_sphere_disk(double rho, double rho_p, double D, double L, double R, const Constants& k) {
  if (!(D > 0 && L > 0 && R > 0)) domain_error("newton_sphere_disk: dimensions must be positive");
  return -8.0 / 3 * M_PI * M_PI * k.G * rho * rho_p * D * R * R * R * (1 - D / (2 * L) - R / L);
}

double yukawa_lens_plate(double alpha, double lambda, double rho, double R, double a, double D, double H,
                         const Constants& k) {
  if (!(lambda > 0 && a > 0)) domain_error("yukawa: lambda and a must be positive");
  double l = lambda;
  double bracket = 1 - l / R + std::exp(-H / l) * (H / R - 1 + l / R + H * H / (2 * R * l) - H / l);
  return -4 * M_PI * M_PI * k.G * rho * rho * l * l * l * R * alpha * (-std::expm1(-D / l)) * std::exp(-a / l) *
         bracket;
}

double yukawa_lens_plate_simple(double alpha, double lambda, double rho, double R, double a, const Constants& k) {
  if (!(lambda > 0 && a > 0)) domain_error("yukawa: lambda and a must be positive");
  return -4 * M_PI * M_PI * k.G * rho * rho * std::pow(lambda, 3) * R * alpha * std::exp(-a / lambda);
}

double effective_density(const BodyComposition& b, double lambda, double core_thickness) {
  b.check();
  // walk inward from the surface
  double depth = 0, s = 0;
  for (auto it = b.layers.rbegin(); it != b.layers.rend(); ++it) {
    s += it->density * (std::exp(-depth / lambda) - std::exp(-(depth + it->thickness) / lambda));
    depth += it->thickness;
  }
  double far = std::isinf(core_thickness) ? 0.0 : std::exp(-(depth + core_thickness) / lambda);
  return s + b.core_density * (std::exp(-depth / lambda) - far);
}

double yukawa_layered_closed(const BodyComposition& sphere, const BodyComposition& plate, double R, double a,
                             double alpha, double lambda, const Constants& k) {
  if (!(lambda > 0 && a > 0 && R > 0)) domain_error("yukawa: lambda, a and R must be positive");
  return -4 * M_PI * M_PI * k.G * alpha * std::pow(lambda, 3) * std::exp(-a / lambda) * R *
         effective_density(sphere, lambda) * effective_density(plate, lambda);
}

double yukawa_layered_numeric(const SphereBody& s, const PlateBody& p, double a, double alpha, double lambda,
                              const Constants& k) {
  if (!(lambda > 0 && a > 0)) domain_error("yukawa: lambda and a must be positive");
  if (!(s.R > 0 && s.H > 0 && s.H <= 2 * s.R)) domain_error("yukawa: need 0 < H <= 2R");
  if (!(p.D > 0)) domain_error("yukawa: plate thickness must be positive");
  s.comp.check();
  double S = effective_density(p.comp, lambda, p.D);
  // radii of the material boundaries, outermost first, sharing one centre
  std::vector<double> radii{s.R};
  std::vector<double> rho;
  for (auto it = s.comp.layers.rbegin(); it != s.comp.layers.rend(); ++it) {
    rho.push_back(it->density);
    radii.push_back(std::max(radii.back() - it->thickness, 0.0));
  }
  rho.push_back(s.comp.core_density);
  radii.push_back(0.0);
  auto disc = [&](double r, double z) {
    double h = s.R - z;
    return std::max(r * r - h * h, 0.0);
  };
  auto sigma = [&](double z) {
    double v = 0;
    for (size_t j = 0; j < rho.size(); ++j) v += rho[j] * (disc(radii[j], z) - disc(radii[j + 1], z));
    return M_PI * v;
  };
  double top = std::min(s.H, 60 * lambda);
  std::vector<double> br{0.0};
  for (size_t j = 1; j + 1 < radii.size(); ++j)
    if (s.R - radii[j] < top) br.push_back(s.R - radii[j]);
  br.push_back(top);
  std::sort(br.begin(), br.end());
  num::QuadratureSpec q;
  q.rel_tol = 1e-11;
  double I = 0;
  for (size_t i = 0; i + 1 < br.size(); ++i)
    if (br[i + 1] > br[i])
      I += num::integrate([&](double z) { return sigma(z) * std::exp(-z / lambda); }, br[i], br[i + 1], q);
  return -2 * M_PI * k.G * alpha * lambda * S * I * std::exp(-a / lambda);
}

double yukawa_layered(const SphereBody& s, const PlateBody& p, double a, double alpha, double lambda,
                      const Constants& k) {
  double scale = std::min({s.R, s.H, p.D});
  if (lambda <= 1e-3 * scale) return yukawa_layered_closed(s.comp, p.comp, s.R, a, alpha, lambda, k);
  return yukawa_layered_numeric(s, p, a, alpha, lambda, k);
}

double yukawa_rough(const std::function<double(double)>& base, double a, const geo::WeightedDistanceSet& set) {
  return geo::average_force(base, a, set);
}

const char* method_name(BoundMethod m) {
  return m == BoundMethod::single_distance ? "single-distance" : "two-distance";
}

ExclusionPoint alpha_bound_single(double lambda, double dF, const std::function<double(double)>& K, double a_min,
                                  double a_max) {
  if (!(dF > 0)) domain_error("force accuracy must be positive");
  if (!(a_min > 0 && a_max >= a_min)) domain_error("separation range must satisfy 0 < a_min <= a_max");
  ExclusionPoint best{lambda, std::numeric_limits<double>::infinity(), BoundMethod::single_distance, a_min, 0.0,
                      true};
  auto consider = [&](double a) {
    double v = std::fabs(K(a));
    if (v > 0 && dF / v < best.alpha_bound) {
      best.alpha_bound = dF / v;
      best.a_used = a;
      best.unbounded = false;
    }
  };
  const int n = a_max > a_min ? 33 : 1;
  double r = n > 1 ? std::log(a_max / a_min) / (n - 1) : 0.0;
  for (int i = 0; i < n; ++i) consider(a_min * std::exp(r * i));
  if (n > 1 && !best.unbounded) {
    // golden-section refinement in ln a around the best grid point
    double lo = std::max(std::log(best.a_used) - r, std::log(a_min));
    double hi = std::min(std::log(best.a_used) + r, std::log(a_max));
    const double g = 0.5 * (std::sqrt(5.0) - 1);
    auto f = [&](double la) { return -std::fabs(K(std::exp(la))); };
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = f(x2);
      }
    }
    consider(std::exp(0.5 * (lo + hi)));
  }
  return best;
}

TwoSidedBound alpha_bound_two_distance(double K1, double K2, double dF, double dS1, double dS2, double a1,
                                       double a2) {
  if (!(dF > 0)) domain_error("force accuracy must be positive");
  if (!(a2 > a1 && a1 > 0)) domain_error("two-distance bound needs a2 > a1 > 0");
  double k21 = std::pow(a2 / a1, 4);
  double D = K1 - k21 * K2;
  if (D == 0 || !std::isfinite(D)) domain_error("degenerate separation pair: K(a1) - k21 K(a2) = 0");
  double c = -dS1 + k21 * dS2;
  double r = (k21 + 1) * dF;
  double lo = (c - r) / D, hi = (c + r) / D;
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

namespace {

ExperimentPreset lamoreaux97() {
  ExperimentPreset p;
  p.name = "lamoreaux97";
  BodyComposition coat_lens{2.23e3, {{8.96e3, 0.5e-6}, {19.32e3, 0.5e-6}}};
  BodyComposition coat_disk{2.4e3, {{8.96e3, 0.5e-6}, {19.32e3, 0.5e-6}}};
  p.sphere = {12.5e-2, 0.18e-2, coat_lens};
  p.plate = {0.5e-2, coat_disk};
  p.dF = 1e-11;
  p.a_min = 1e-6;
  p.a_max = 6e-6;
  p.method = BoundMethod::two_distance;
  p.a1 = 1e-6;
  p.a2_min = 1.5e-6;
  p.a2_max = 3e-6;
  return p;
}

ExperimentPreset afm_al98() {
  ExperimentPreset p;
  p.name = "afm-al98";
  // polystyrene sphere and sapphire disk, Al then Au/Pd
  p.sphere = {201.7e-6 / 2, 201.7e-6, {1.06e3, {{2.7e3, 250e-9}, {16.2e3, 7.9e-9}}}};
  p.plate = {1e-3, {4.0e3, {{2.7e3, 250e-9}, {16.2e3, 7.9e-9}}}};
  p.dF = 1e-12;
  p.a_min = 100e-9 - 2 * 7.9e-9;
  p.a_max = 500e-9 - 2 * 7.9e-9;
  p.method = BoundMethod::single_distance;
  p.roughness = geo::DiscreteLevels{{14e-9, 7e-9, 2e-9}, {0.05, 0.11, 0.84}, true};
  return p;
}

ExperimentPreset afm_au99() {
  ExperimentPreset p;
  p.name = "afm-au99";
  p.sphere = {191.3e-6 / 2, 191.3e-6, {1.06e3, {{19.32e3, 86.6e-9}}}};
  p.plate = {1e-3, {4.0e3, {{19.32e3, 86.6e-9}}}};
  p.dF = 3.8e-12;
  p.a_min = 65e-9;
  p.a_max = 350e-9;
  p.method = BoundMethod::single_distance;
  return p;
}

}  // namespace

std::vector<std::string> preset_names() { return {"lamoreaux97", "afm-al98", "afm-au99"}; }

ExperimentPreset preset(const std::string& name) {
  if (name == "lamoreaux97") return lamoreaux97();
  if (name == "afm-al98") return afm_al98();
  if (name == "afm-au99") return afm_au99();
  config_error("unknown preset '" + name + "' (lamoreaux97, afm-al98, afm-au99)");
}

namespace {

BodyComposition read_body(const nlohmann::json& j) {
  BodyComposition b;
  b.core_density = j.at("core_density").get<double>();
  if (j.contains("layers"))
    for (const auto& l : j.at("layers")) b.layers.push_back({l.at("density").get<double>(), l.at("thickness").get<double>()});
  b.check();
  return b;
}

}  // namespace

ExperimentPreset load_preset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Ingestion, "cannot open preset '" + path + "'");
  try {
    auto j = nlohmann::json::parse(in);
    ExperimentPreset p;
    p.name = j.value("name", path);
    const auto& s = j.at("sphere");
    double R = s.at("R").get<double>();
    p.sphere = {R, s.value("H", 2 * R), read_body(s)};
    const auto& pl = j.at("plate");
    p.plate = {pl.at("D").get<double>(), read_body(pl)};
    p.dF = j.at("dF").get<double>();
    p.a_min = j.at("a_min").get<double>();
    p.a_max = j.value("a_max", p.a_min);
    std::string m = j.value("method", "single-distance");
    if (m == "single-distance") p.method = BoundMethod::single_distance;
    else if (m == "two-distance") p.method = BoundMethod::two_distance;
    else config_error("preset method must be single-distance or two-distance");
    if (p.method == BoundMethod::two_distance) {
      p.a1 = j.at("a1").get<double>();
      p.a2_min = j.at("a2_min").get<double>();
      p.a2_max = j.at("a2_max").get<double>();
      p.dS1 = j.value("dS1", 0.0);
      p.dS2 = j.value("dS2", 0.0);
    }
    if (j.contains("roughness")) {
      geo::DiscreteLevels d;
      for (const auto& l : j.at("roughness").at("levels")) {
        d.heights.push_back(l.at("height").get<double>());
        d.fractions.push_back(l.at("fraction").get<double>());
      }
      d.last_is_background = j.at("roughness").value("last_is_background", false);
      p.roughness = d;
    }
    if (!(p.dF > 0)) config_error("preset dF must be positive");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Ingestion, "preset '" + path + "': " + e.what());
  }
}

double hypothetical_force(const ExperimentPreset& p, double a, double alpha, double lambda, const Constants& k) {
  auto base = [&](double d) { return yukawa_layered(p.sphere, p.plate, d, alpha, lambda, k); };
  if (p.roughness) return yukawa_rough(base, a, geo::weighted_distance_set(*p.roughness));
  return base(a);
}

double newton_force(const ExperimentPreset& p, double L, const Constants& k) {
  return newton_sphere_disk(p.plate.comp.core_density, p.sphere.comp.core_density, p.plate.D, L, p.sphere.R, k);
}

ExclusionPoint exclusion_point(const ExperimentPreset& p, double lambda, const Constants& k) {
  if (!(lambda > 0)) domain_error("lambda must be positive");
  auto K = [&](double a) { return hypothetical_force(p, a, 1.0, lambda, k); };
  if (p.method == BoundMethod::single_distance) return alpha_bound_single(lambda, p.dF, K, p.a_min, p.a_max);
  ExclusionPoint best{lambda, std::numeric_limits<double>::infinity(), BoundMethod::two_distance, p.a1, 0.0, true};
  double K1 = K(p.a1);
  const int n = 16;
  for (int i = 0; i < n; ++i) {
    double a2 = p.a2_min + (p.a2_max - p.a2_min) * i / (n - 1);
    double K2 = K(a2);
    double D = K1 - std::pow(a2 / p.a1, 4) * K2;
    if (D == 0 || !std::isfinite(D)) continue;
    TwoSidedBound b = alpha_bound_two_distance(K1, K2, p.dF, p.dS1, p.dS2, p.a1, a2);
    // alpha_G > 0 branch
    double v = b.upper > 0 ? b.upper : std::fabs(b.lower);
    if (v < best.alpha_bound) {
      best.alpha_bound = v;
      best.a2_used = a2;
      best.unbounded = false;
    }
  }
  return best;
}

std::vector<ExclusionPoint> exclusion_curve(const ExperimentPreset& p, const std::vector<double>& lambdas,
                                            const Constants& k) {
  std::vector<ExclusionPoint> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) out.push_back(exclusion_point(p, l, k));
  return out;
}

std::vector<double> log_grid(double start, double stop, int count) {
  if (!(start > 0 && stop > 0) || count < 1) domain_error("log grid needs positive bounds and count >= 1");
  if (count == 1) return {start};
  std::vector<double> g(count);
  double r = std::log(stop / start) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = start * std::exp(r * i);
  g.back() = stop;
  return g;
}

}  // namespace casimir::yuk
