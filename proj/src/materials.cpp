#include "casimir/materials.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace casimir::mat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double drude_im(const Drude& d, double w) { return d.wp * d.wp * d.gamma / (w * (w * w + d.gamma * d.gamma)); }

// Fixed Gauss-Legendre table shared by all tabulated models.
const gsl_integration_glfixed_table* gl_table() {
  static const gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(24);
  return t;
}

double gl(const std::function<double(double)>& f, double a, double b) {
  const auto* t = gl_table();
  double s = 0;
  for (size_t i = 0; i < t->n; ++i) {
    double xi, wi;
    gsl_integration_glfixed_point(a, b, i, &xi, &wi, t);
    s += wi * f(xi);
  }
  return s;
}

}  // namespace

TabulatedData::TabulatedData(std::vector<OpticalSample> samples, Drude low, double high_cut, const Constants& k)
    : samples_(std::move(samples)), low_(low), cut_(high_cut) {
  if (samples_.empty()) config_error("optical table is empty");
  for (size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!(s.energy > 0) || !(s.n > 0) || !(s.k >= 0))
      config_error("optical sample " + std::to_string(i) + " has non-positive energy or n, or negative k");
    if (i > 0 && !(s.energy > samples_[i - 1].energy))
      config_error("optical samples must be strictly increasing in frequency (sample " + std::to_string(i) + ")");
  }
  if (!(low.wp > 0) || !(low.gamma > 0)) config_error("Drude extension needs wp > 0 and gamma > 0");
  if (!(high_cut > samples_.back().energy)) config_error("high-frequency cut must exceed the last sample");
  w_lo_ = samples_.front().energy;
  w_hi_ = samples_.back().energy;
  for (const auto& s : samples_) {
    ln_w_.push_back(std::log(s.energy));
    double im = s.im_eps();
    ln_im_.push_back(im > 0 ? std::log(im) : -kInf);
  }
  // Cache ln(eps-1) on a log grid spanning the integration window.
  double lo = std::log(ev_to_rad_s(1e-6, k)), hi = std::log(ev_to_rad_s(1e4, k));
  const int n = 241;
  for (int i = 0; i < n; ++i) {
    double lx = lo + (hi - lo) * i / (n - 1);
    grid_ln_xi_.push_back(lx);
    grid_ln_epsm1_.push_back(std::log(eps_direct(std::exp(lx)) - 1.0));
  }
  // Read-only after construction; evaluation passes no accelerator.
  gsl_spline* sp = gsl_spline_alloc(gsl_interp_cspline, grid_ln_xi_.size());
  gsl_spline_init(sp, grid_ln_xi_.data(), grid_ln_epsm1_.data(), grid_ln_xi_.size());
  spline_ = std::shared_ptr<void>(sp, [](void* q) { gsl_spline_free(static_cast<gsl_spline*>(q)); });
}

double TabulatedData::im_eps(double w) const {
  if (w <= 0) return 0.0;
  if (w < w_lo_) return drude_im(low_, w);
  if (w > cut_) return 0.0;
  if (w > w_hi_) return samples_.back().im_eps() * std::pow(w_hi_ / w, 3);
  double lw = std::log(w);
  auto it = std::upper_bound(ln_w_.begin(), ln_w_.end(), lw);
  size_t j = size_t(it - ln_w_.begin());
  if (j == 0) return samples_.front().im_eps();
  if (j >= ln_w_.size()) return samples_.back().im_eps();
  size_t i = j - 1;
  double t = (lw - ln_w_[i]) / (ln_w_[j] - ln_w_[i]);
  if (std::isinf(ln_im_[i]) || std::isinf(ln_im_[j]))
    return (1 - t) * samples_[i].im_eps() + t * samples_[j].im_eps();
  return std::exp((1 - t) * ln_im_[i] + t * ln_im_[j]);
}

double TabulatedData::eps_direct(double xi) const {
  // In u = ln w the integrand is w^2 Im eps(w)/(w^2 + xi^2).
  auto h = [&](double u) {
    double w = std::exp(u);
    return w * w * im_eps(w) / (w * w + xi * xi);
  };
  const Constants& k = Constants::codata2018();
  double u0 = std::log(ev_to_rad_s(1e-6, k));
  double u1 = std::log(std::min(cut_, ev_to_rad_s(1e4, k)));
  std::vector<double> knots{u0};
  auto add = [&](double u) {
    if (u > knots.back() && u < u1) knots.push_back(u);
  };
  // Split the Drude region and the tail into unit-width panels in ln w.
  for (double u = std::ceil(u0); u < ln_w_.front(); u += 1.0) add(u);
  for (double u : ln_w_) add(u);
  for (double u = std::ceil(ln_w_.back()); u < u1; u += 1.0) add(u);
  add(std::log(xi));
  std::sort(knots.begin(), knots.end());
  knots.push_back(u1);
  double s = 0;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    double a = knots[i], b = knots[i + 1];
    int pieces = std::max(1, int(std::ceil((b - a) / 0.5)));
    for (int p = 0; p < pieces; ++p) s += gl(h, a + (b - a) * p / pieces, a + (b - a) * (p + 1) / pieces);
  }
  // Drude part below the window, in closed form.
  double w0 = std::exp(u0), g = low_.gamma;
  double low;
  if (std::fabs(xi - g) < 1e-6 * g) {
    double t = w0 / g;
    low = (std::atan(t) + t / (1 + t * t)) / (2 * g * g * g);
  } else {
    low = (std::atan(w0 / g) / g - std::atan(w0 / xi) / xi) / (xi * xi - g * g);
  }
  s += low_.wp * low_.wp * g * low;
  return 1.0 + 2.0 / M_PI * s;
}

double TabulatedData::eps(double xi) const {
  double lx = std::log(xi);
  if (lx <= grid_ln_xi_.front() || lx >= grid_ln_xi_.back()) return eps_direct(xi);
  return 1.0 + std::exp(gsl_spline_eval(static_cast<gsl_spline*>(spline_.get()), lx, nullptr));
}

MaterialModel plasma_ev(double wp_ev, const Constants& k) {
  if (!(wp_ev > 0)) config_error("plasma frequency must be positive");
  return Plasma{ev_to_rad_s(wp_ev, k)};
}

MaterialModel drude_ev(double wp_ev, double gamma_ev, const Constants& k) {
  if (!(wp_ev > 0) || !(gamma_ev >= 0)) config_error("Drude parameters need wp > 0 and gamma >= 0");
  return Drude{ev_to_rad_s(wp_ev, k), ev_to_rad_s(gamma_ev, k)};
}

double eps_imaginary(const MaterialModel& m, double xi) {
  if (!(xi > 0)) domain_error("eps_imaginary needs xi > 0");
  return std::visit(
      [xi](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IdealMetal>) return kInf;
        else if constexpr (std::is_same_v<T, Plasma>) return 1.0 + v.wp * v.wp / (xi * xi);
        else if constexpr (std::is_same_v<T, Drude>) return 1.0 + v.wp * v.wp / (xi * (xi + v.gamma));
        else if constexpr (std::is_same_v<T, Constant>) return v.eps;
        else if constexpr (std::is_same_v<T, Oscillator>) return 1.0 + (v.eps0 - 1.0) / (1.0 + xi * xi / (v.w0 * v.w0));
        else {
          if (!v.data) config_error("tabulated material has no data");
          return v.data->eps(xi);
        }
      },
      m);
}

double eps_static(const MaterialModel& m) {
  if (auto* c = std::get_if<Constant>(&m)) return c->eps;
  if (auto* o = std::get_if<Oscillator>(&m)) return o->eps0;
  return kInf;
}

bool is_metal(const MaterialModel& m) { return std::isinf(eps_static(m)); }

double penetration_depth(const MaterialModel& m, const Constants& k) {
  if (auto* p = std::get_if<Plasma>(&m)) return k.c / p->wp;
  if (auto* d = std::get_if<Drude>(&m)) return k.c / d->wp;
  if (auto* t = std::get_if<Tabulated>(&m)) return k.c / t->data->low_freq().wp;
  config_error("penetration depth is defined for plasma and Drude models only");
}

std::string describe(const MaterialModel& m) {
  const Constants& k = Constants::codata2018();
  char buf[160];
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IdealMetal>) std::snprintf(buf, sizeof buf, "ideal");
        else if constexpr (std::is_same_v<T, Plasma>) std::snprintf(buf, sizeof buf, "plasma:%g", rad_s_to_ev(v.wp, k));
        else if constexpr (std::is_same_v<T, Drude>)
          std::snprintf(buf, sizeof buf, "drude:%g,%g", rad_s_to_ev(v.wp, k), rad_s_to_ev(v.gamma, k));
        else if constexpr (std::is_same_v<T, Constant>) std::snprintf(buf, sizeof buf, "constant:%g", v.eps);
        else if constexpr (std::is_same_v<T, Oscillator>)
          std::snprintf(buf, sizeof buf, "oscillator:%g,%g", v.eps0, rad_s_to_ev(v.w0, k));
        else std::snprintf(buf, sizeof buf, "tabulated:%zu", v.data ? v.data->samples().size() : size_t(0));
      },
      m);
  return buf;
}

MaterialModel from_samples(std::vector<OpticalSample> samples, Drude low, double high_cut, const Constants& k) {
  return Tabulated{std::make_shared<const TabulatedData>(std::move(samples), low, high_cut, k)};
}

MaterialModel ingest_optical_table(std::istream& in, Drude low, double high_cut_ev, const Constants& k) {
  std::vector<OpticalSample> rows;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::stringstream ss(line);
    std::string f[3];
    int nf = 0;
    while (nf < 3 && std::getline(ss, f[nf], ',')) ++nf;
    double v[3];
    bool numeric = nf == 3;
    for (int i = 0; numeric && i < 3; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(f[i].c_str(), &end);
      while (end && (*end == ' ' || *end == '\r' || *end == '\t')) ++end;
      numeric = end && end != f[i].c_str() && *end == '\0';
    }
    if (!numeric) {
      if (!header_seen && rows.empty() && line.find("energy") != std::string::npos) {
        header_seen = true;
        continue;
      }
      throw Error(ErrorCode::Ingestion, "optical table line " + std::to_string(lineno) + ": expected energy_eV,n,k");
    }
    if (!(v[0] > 0) || !(v[1] > 0) || !(v[2] >= 0))
      throw Error(ErrorCode::Ingestion,
                  "optical table line " + std::to_string(lineno) + ": need energy > 0, n > 0, k >= 0");
    double w = ev_to_rad_s(v[0], k);
    if (!rows.empty() && !(w > rows.back().energy))
      throw Error(ErrorCode::Ingestion, "optical table line " + std::to_string(lineno) + ": energies not increasing");
    rows.push_back({w, v[1], v[2]});
  }
  if (rows.size() < 10)
    throw Error(ErrorCode::Ingestion, "optical table needs at least 10 rows, got " + std::to_string(rows.size()));
  MaterialModel m = from_samples(std::move(rows), low, ev_to_rad_s(high_cut_ev, k), k);
  double prev = kInf;
  for (int i = 0; i < 50; ++i) {
    double xi = ev_to_rad_s(std::pow(10.0, -3.0 + 5.0 * i / 49.0), k);
    double e = eps_imaginary(m, xi);
    if (!(e >= 1.0) || e > prev * (1 + 1e-9))
      throw Error(ErrorCode::Ingestion, "ingested table gives non-monotone eps(i xi) near sample point " + std::to_string(i));
    prev = e;
  }
  return m;
}

MaterialModel ingest_optical_file(const std::string& path, Drude low, double high_cut_ev, const Constants& k) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Ingestion, "cannot open optical table " + path);
  return ingest_optical_table(f, low, high_cut_ev, k);
}

namespace {

double char_freq(const MaterialModel& m) {
  if (auto* p = std::get_if<Plasma>(&m)) return p->wp;
  if (auto* d = std::get_if<Drude>(&m)) return d->wp;
  if (auto* o = std::get_if<Oscillator>(&m)) return o->w0;
  if (auto* t = std::get_if<Tabulated>(&m)) return t->data->low_freq().wp;
  return 1e16;
}

}  // namespace

double hamaker(const MaterialModel& m, const num::QuadratureSpec& spec, double xi_max, const Constants& k) {
  if (std::holds_alternative<IdealMetal>(m)) domain_error("Hamaker constant diverges for an ideal metal");
  bool bounded = xi_max > 0;
  if (!bounded && std::holds_alternative<Constant>(m))
    domain_error("constant permittivity needs a finite frequency cap for the Hamaker integral");
  num::QuadratureSpec inner = spec;
  inner.rel_tol = std::max(spec.rel_tol, 1e-11);
  auto outer = [&](double xi) {
    if (xi <= 0) xi = 1e-300;
    double e = eps_imaginary(m, xi);
    double r = std::isinf(e) ? 1.0 : (e - 1) / (e + 1);
    double r2 = r * r;
    if (r2 == 0) return 0.0;
    auto f = [r2](double x) {
      double q = r2 * std::exp(-x);
      return x * x * q / (1 - q);
    };
    return num::integrate_semi_infinite(f, 0.0, inner);
  };
  double val;
  if (bounded) {
    val = num::integrate(outer, 0.0, xi_max, spec);
  } else {
    double W = char_freq(m);
    val = W * num::integrate_semi_infinite([&](double s) { return outer(W * s); }, 0.0, spec);
  }
  return 3 * k.hbar / (8 * M_PI) * val;
}

double psi_factor(double eps0, const num::QuadratureSpec& spec) {
  if (!(eps0 >= 1)) domain_error("psi_factor needs eps0 >= 1");
  if (eps0 == 1) return 0.0;
  bool ideal = std::isinf(eps0);
  auto outer = [&](double p) {
    double r_te, r_tm;
    if (ideal) {
      r_te = r_tm = 1.0;
    } else {
      double K = std::sqrt(p * p - 1 + eps0);
      r_te = (K - p) / (K + p);
      r_tm = (K - eps0 * p) / (K + eps0 * p);
    }
    double a = r_te * r_te, b = r_tm * r_tm;
    auto f = [a, b](double x) {
      double e = std::exp(-x);
      return x * x * x * (a * e / (1 - a * e) + b * e / (1 - b * e));
    };
    return num::integrate_semi_infinite(f, 0.0, spec) / (p * p);
  };
  return 5.0 / (16 * std::pow(M_PI, 3)) * num::integrate_semi_infinite(outer, 1.0, spec);
}

}  // namespace casimir::mat
