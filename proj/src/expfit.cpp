#include "casimir/expfit.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <gsl/gsl_blas.h>
#include <gsl/gsl_multifit_nlinear.h>
#include <json.hpp>

namespace casimir::fit {

double electrostatic_sphere_plate(double V1, double V2, double a, double R, double tol) {
  if (!(a > 0 && R > 0)) domain_error("electrostatic: a and R must be positive");
  if (a / R < 1e-7) domain_error("electrostatic: a/R below 1e-7, series does not converge in practice");
  double dv = V1 - V2;
  if (dv == 0) return 0.0;
  double al = std::acosh(1 + a / R);
  double cth = 1 / std::tanh(al);
  double s = 0;
  long n = 1;
  for (; n * al <= 18.0; ++n) {
    double x = n * al;
    double term = (cth - n / std::tanh(x)) / std::sinh(x);
    s += term;
    if (n > 3 && std::fabs(term) < tol * std::fabs(s) && n * al > 1) break;
  }
  if (n * al > 18.0) {
    // csch(n al) = 2 q^n, coth(n al) = 1 to double precision; sum n >= N in closed form
    double q = std::exp(-al), N = double(n);
    double g0 = std::pow(q, N) / (1 - q);
    double g1 = std::pow(q, N) * (N - (N - 1) * q) / ((1 - q) * (1 - q));
    s += 2 * (cth * g0 - g1);
  }
  return 2 * M_PI * kEpsilon0 * dv * dv * s;
}

double electrostatic_corrugated(double V1, double V2, double a, double R, double A) {
  if (!(a > 0 && R > 0)) domain_error("electrostatic: a and R must be positive");
  if (!(A >= 0 && A < a)) domain_error("electrostatic: corrugation amplitude must satisfy 0 <= A < a");
  double x2 = (A / a) * (A / a), s = 0, p = 1;
  for (double d : kCorrugationD) {
    s += d * p;
    p *= x2;
  }
  double dv = V1 - V2;
  return -M_PI * kEpsilon0 * dv * dv * R / a * s;
}

void ForceCurve::check() const {
  if (displacement.size() != signal.size()) throw Error(ErrorCode::Ingestion, "force curve column lengths differ");
  if (displacement.size() < 2) throw Error(ErrorCode::Ingestion, "force curve needs at least two samples");
  bool up = displacement[1] > displacement[0];
  for (size_t i = 1; i < displacement.size(); ++i)
    if ((displacement[i] > displacement[i - 1]) != up || displacement[i] == displacement[i - 1])
      throw Error(ErrorCode::Ingestion, "displacements are not strictly monotone at sample " + std::to_string(i));
  if (window_end > size() || window_begin > (window_end ? window_end : size()))
    throw Error(ErrorCode::Ingestion, "fit window outside the curve");
}

ForceCurve parse_force_curve(std::istream& in) {
  ForceCurve c;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t#"));
        s.erase(s.find_last_not_of(" \t") + 1);
        return s;
      };
      std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
      try {
        if (key == "scan_id") c.scan_id = val;
        else if (key == "calibration_N_per_unit") c.calibration = std::stod(val);
        else if (key == "deflection_nm_per_unit") c.deflection = std::stod(val) * 1e-9;
        else if (key == "window_begin") c.window_begin = std::stoul(val);
        else if (key == "window_end") c.window_end = std::stoul(val);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Ingestion, "force curve line " + std::to_string(lineno) + ": bad value for " + key);
      }
      continue;
    }
    if (!header) {
      if (line.rfind("displacement_nm,signal", 0) != 0)
        throw Error(ErrorCode::Ingestion, "force curve line " + std::to_string(lineno) +
                                              ": expected header displacement_nm,signal");
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string x, y;
    if (!std::getline(ss, x, ',') || !std::getline(ss, y, ','))
      throw Error(ErrorCode::Ingestion, "force curve line " + std::to_string(lineno) + ": expected two columns");
    try {
      c.displacement.push_back(std::stod(x) * 1e-9);
      c.signal.push_back(std::stod(y));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Ingestion, "force curve line " + std::to_string(lineno) + ": not a number");
    }
  }
  if (!header) throw Error(ErrorCode::Ingestion, "force curve has no header");
  c.check();
  return c;
}

ForceCurve read_force_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Ingestion, "cannot open force curve '" + path + "'");
  ForceCurve c = parse_force_curve(in);
  std::ifstream side(path + ".json");
  if (side) {
    try {
      auto j = nlohmann::json::parse(side);
      c.scan_id = j.value("scan_id", c.scan_id);
      c.calibration = j.value("calibration_N_per_unit", c.calibration);
      c.deflection = j.value("deflection_nm_per_unit", c.deflection * 1e9) * 1e-9;
      c.window_begin = j.value("window_begin", c.window_begin);
      c.window_end = j.value("window_end", c.window_end);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Ingestion, "force curve metadata '" + path + ".json': " + e.what());
    }
    c.check();
  }
  return c;
}

double model_force(const FitModel& m, double a0, double V2, double C, double E, double da) {
  double a = da + a0;
  if (!(a > 0)) domain_error("model separation is not positive");
  double f = m.theory ? m.theory(a) : 0.0;
  return f + electrostatic_sphere_plate(m.V1, V2, a, m.R) + C * a + E;
}

namespace {

// Internal units: nm, mV, pN/nm, pN; residuals in pN.
constexpr double kScale[4] = {1e-9, 1e-3, 1e-3, 1e-12};
const char* kNames[4] = {"a0", "V2", "C", "E"};

struct Problem {
  std::vector<const ForceCurve*> curves;
  std::vector<double> V1;
  const FitModel* model;
  std::vector<int> free;
  double fixed[4];
  void unpack(const gsl_vector* x, double p[4]) const {
    for (int i = 0; i < 4; ++i) p[i] = fixed[i];
    for (size_t k = 0; k < free.size(); ++k) p[free[k]] = gsl_vector_get(x, k) * kScale[free[k]];
  }
  static double da(const ForceCurve& c, size_t i) { return c.displacement[i] - c.signal[i] * c.deflection; }
  static size_t begin(const ForceCurve& c) { return c.window_begin; }
  static size_t end(const ForceCurve& c) { return c.window_end ? c.window_end : c.size(); }
  // Model minus measurement for every windowed sample, in N.
  bool residual_all(const double p[4], std::vector<double>& r) const {
    r.clear();
    FitModel m = *model;
    for (size_t k = 0; k < curves.size(); ++k) {
      const ForceCurve& c = *curves[k];
      m.V1 = V1[k];
      for (size_t i = begin(c); i < end(c); ++i) {
        if (!(da(c, i) + p[0] > 0)) return false;
        try {
          r.push_back(model_force(m, p[0], p[1], p[2], p[3], da(c, i)) - c.signal[i] * c.calibration);
        } catch (const Error&) {
          return false;
        }
      }
    }
    return true;
  }
};

int residuals(const gsl_vector* x, void* data, gsl_vector* f) {
  auto* pr = static_cast<Problem*>(data);
  double p[4];
  pr->unpack(x, p);
  std::vector<double> r;
  if (!pr->residual_all(p, r)) return GSL_EDOM;
  for (size_t i = 0; i < r.size(); ++i) gsl_vector_set(f, i, r[i] / 1e-12);
  return GSL_SUCCESS;
}

}  // namespace

FitResult fit_contact_and_systematics(const ForceCurve& curve, const FitModel& model) {
  return fit_curves({curve}, {model.V1}, model);
}

FitResult fit_curves(const std::vector<ForceCurve>& curves, const std::vector<double>& V1, const FitModel& model) {
  if (curves.empty() || curves.size() != V1.size()) config_error("fit needs one applied voltage per curve");
  Problem pr{{}, V1, &model, {}, {model.a0, model.V2, model.C, model.E}};
  size_t n = 0;
  for (const auto& c : curves) {
    c.check();
    pr.curves.push_back(&c);
    n += Problem::end(c) - Problem::begin(c);
  }
  if (n < 30) config_error("fit window needs at least 30 samples");
  bool flags[4] = {model.free_a0, model.free_V2, model.free_C, model.free_E};
  for (int i = 0; i < 4; ++i)
    if (flags[i]) pr.free.push_back(i);
  FitResult out{model.a0, model.V2, model.C, model.E, 0.0, {0, 0, 0, 0}, 0, n};
  size_t np = pr.free.size();
  if (np == 0) {
    std::vector<double> r;
    if (!pr.residual_all(pr.fixed, r)) domain_error("model separation is not positive");
    for (double v : r) out.chi2 += v * v;
    return out;
  }

  gsl_multifit_nlinear_fdf fdf;
  fdf.f = residuals;
  fdf.df = nullptr;  // forward-difference Jacobian
  fdf.fvv = nullptr;
  fdf.n = n;
  fdf.p = np;
  fdf.params = &pr;
  gsl_multifit_nlinear_parameters par = gsl_multifit_nlinear_default_parameters();
  par.trs = gsl_multifit_nlinear_trs_lm;
  gsl_multifit_nlinear_workspace* w = gsl_multifit_nlinear_alloc(gsl_multifit_nlinear_trust, &par, n, np);
  gsl_vector* x = gsl_vector_alloc(np);
  for (size_t k = 0; k < np; ++k) gsl_vector_set(x, k, pr.fixed[pr.free[k]] / kScale[pr.free[k]]);
  gsl_multifit_nlinear_init(x, &fdf, w);
  int info = 0;
  int status = gsl_multifit_nlinear_driver(200, 1e-10, 1e-10, 1e-12, nullptr, nullptr, &info, w);
  double p[4];
  pr.unpack(w->x, p);
  out.iterations = int(gsl_multifit_nlinear_niter(w));

  gsl_matrix* J = gsl_multifit_nlinear_jac(w);
  gsl_matrix* cov = gsl_matrix_alloc(np, np);
  gsl_multifit_nlinear_covar(J, 0.0, cov);
  std::string degenerate;
  for (size_t i = 0; i < np && degenerate.empty(); ++i)
    for (size_t j = i + 1; j < np; ++j) {
      double cii = gsl_matrix_get(cov, i, i), cjj = gsl_matrix_get(cov, j, j);
      double r = gsl_matrix_get(cov, i, j) / std::sqrt(cii * cjj);
      if (!std::isfinite(r) || std::fabs(r) > 1 - 1e-9) {
        degenerate = std::string(kNames[pr.free[i]]) + " and " + kNames[pr.free[j]];
        break;
      }
    }
  double chi2_internal;
  gsl_blas_ddot(w->f, w->f, &chi2_internal);
  double red = n > np ? chi2_internal / double(n - np) : 0.0;
  for (size_t k = 0; k < np; ++k)
    out.sigma[pr.free[k]] = std::sqrt(gsl_matrix_get(cov, k, k) * red) * kScale[pr.free[k]];
  gsl_matrix_free(cov);
  gsl_vector_free(x);
  gsl_multifit_nlinear_free(w);
  if (!degenerate.empty()) throw Error(ErrorCode::Convergence, "degenerate fit: " + degenerate + " are fully correlated");
  if (status != GSL_SUCCESS && status != GSL_EMAXITER)
    throw ConvergenceError(std::string("fit failed: ") + gsl_strerror(status), p[0], 0.0);
  out.a0 = p[0];
  out.V2 = p[1];
  out.C = p[2];
  out.E = p[3];
  out.chi2 = chi2_internal * 1e-24;
  return out;
}

double residual_potential(const std::vector<double>& a, const std::vector<double>& F_plus,
                          const std::vector<double>& F_minus, double V1, double R) {
  if (a.size() != F_plus.size() || a.size() != F_minus.size() || a.empty())
    throw Error(ErrorCode::Ingestion, "residual_potential: separation and force grids are not aligned");
  if (V1 == 0) domain_error("residual_potential: V1 must be non-zero");
  // F(+V1) - F(-V1) = -4 V1 V2 g(a), g the unit-voltage force; least squares for V2
  double num = 0, den = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double g = electrostatic_sphere_plate(1.0, 0.0, a[i], R);
    double x = -4 * V1 * g;
    num += x * (F_plus[i] - F_minus[i]);
    den += x * x;
  }
  return num / den;
}

CalibratedCurve subtract_systematics(const ForceCurve& curve, const FitModel& model, const FitResult& fit) {
  curve.check();
  CalibratedCurve out;
  for (size_t i = 0; i < curve.size(); ++i) {
    double a = fit.a0 + curve.displacement[i] - curve.signal[i] * curve.deflection;
    if (!(a > 0)) domain_error("calibrated separation is not positive");
    double F = curve.signal[i] * curve.calibration;
    F -= electrostatic_sphere_plate(model.V1, fit.V2, a, model.R) + fit.C * a + fit.E;
    out.separation.push_back(a);
    out.force.push_back(F);
  }
  return out;
}

std::vector<double> add_systematics(const CalibratedCurve& c, const FitModel& model, const FitResult& fit) {
  std::vector<double> F;
  for (size_t i = 0; i < c.separation.size(); ++i) {
    double a = c.separation[i];
    F.push_back(c.force[i] + (electrostatic_sphere_plate(model.V1, fit.V2, a, model.R) + fit.C * a + fit.E));
  }
  return F;
}

RmsResult rms_deviation(const std::function<double(double)>& theory, const std::vector<double>& a,
                        const std::vector<double>& F, double a_min, double a_max) {
  if (a.size() != F.size()) throw Error(ErrorCode::Ingestion, "rms_deviation: grids differ in length");
  RmsResult r{0.0, 0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < a_min || a[i] > a_max) continue;
    double d = F[i] - theory(a[i]);
    s += d * d;
    ++r.count;
    r.a_min = std::min(r.a_min, a[i]);
    r.a_max = std::max(r.a_max, a[i]);
  }
  if (r.count == 0) domain_error("rms_deviation: no samples in the window");
  r.sigma = std::sqrt(s / double(r.count));
  return r;
}

}  // namespace casimir::fit
