#include "casimir/numerics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_zeta.h>

#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>

namespace casimir::num {

namespace {

struct GslInit {
  GslInit() { gsl_set_error_handler_off(); }
};
const GslInit gsl_init;

struct Trampoline {
  const Fn* f;
  std::exception_ptr err;
};

double call(double x, void* p) {
  auto* t = static_cast<Trampoline*>(p);
  if (t->err) return std::numeric_limits<double>::quiet_NaN();
  try {
    return (*t->f)(x);
  } catch (...) {
    t->err = std::current_exception();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

struct Workspace {
  explicit Workspace(int n) : w(gsl_integration_workspace_alloc(std::size_t(n))) {}
  ~Workspace() { gsl_integration_workspace_free(w); }
  gsl_integration_workspace* w;
};

double finish(int status, double result, double abserr, const QuadratureSpec& spec, Trampoline& t,
              const char* what) {
  if (t.err) std::rethrow_exception(t.err);
  if (!std::isfinite(result)) throw ConvergenceError(std::string(what) + ": non-finite integral", result, abserr);
  if (status == GSL_SUCCESS) return result;
  // Roundoff-limited results are still usable when the error estimate is small.
  double loose = std::max(1e3 * spec.rel_tol * std::fabs(result), spec.abs_tol);
  if (abserr <= loose) return result;
  char buf[96];
  std::snprintf(buf, sizeof buf, " (estimate %.6g, error %.3g)", result, abserr);
  throw ConvergenceError(std::string(what) + ": " + gsl_strerror(status) + buf, result, abserr);
}

}  // namespace

void QuadratureSpec::check() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) config_error("quadrature tolerances must be positive");
  if (max_subdivisions < 16) config_error("max_subdivisions must be at least 16");
}

void SumSpec::check() const {
  if (!(rel_tail_tol > 0)) config_error("rel_tail_tol must be positive");
  if (zero_mode_weight != 0.5 && zero_mode_weight != 1.0) config_error("zero_mode_weight must be 0.5 or 1");
}

double integrate_semi_infinite(const Fn& f, double lower, const QuadratureSpec& spec) {
  spec.check();
  Trampoline t{&f, nullptr};
  gsl_function F{&call, &t};
  Workspace ws(spec.max_subdivisions);
  double result = 0, abserr = 0;
  int status = gsl_integration_qagiu(&F, lower, spec.abs_tol, spec.rel_tol, std::size_t(spec.max_subdivisions),
                                     ws.w, &result, &abserr);
  return finish(status, result, abserr, spec, t, "integrate_semi_infinite");
}

double integrate(const Fn& f, double a, double b, const QuadratureSpec& spec) {
  spec.check();
  if (a == b) return 0.0;
  Trampoline t{&f, nullptr};
  gsl_function F{&call, &t};
  Workspace ws(spec.max_subdivisions);
  double result = 0, abserr = 0;
  int status = gsl_integration_qags(&F, a, b, spec.abs_tol, spec.rel_tol, std::size_t(spec.max_subdivisions), ws.w,
                                    &result, &abserr);
  return finish(status, result, abserr, spec, t, "integrate");
}

double abel_plana(double F0, const Fn& g, bool half_integer, const QuadratureSpec& spec, double branch_point) {
  if (half_integer) {
    auto k = [&](double t) { return g(t) / (std::exp(2 * M_PI * t) + 1.0); };
    return integrate_semi_infinite(k, branch_point, spec);
  }
  auto k = [&](double t) {
    double d = std::expm1(2 * M_PI * t);
    return d == 0.0 ? 0.0 : g(t) / d;
  };
  return 0.5 * F0 - integrate_semi_infinite(k, branch_point, spec);
}

SumResult matsubara_sum(const std::function<double(long)>& term, const SumSpec& spec) {
  spec.check();
  double sum = spec.zero_mode_weight * term(0);
  int quiet = 0;
  for (long l = 1; l < spec.max_terms; ++l) {
    double t = term(l);
    sum += t;
    if (std::fabs(t) <= spec.rel_tail_tol * std::fabs(sum)) {
      if (++quiet >= 3) return {sum, l + 1};
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("matsubara_sum: max_terms exceeded", sum, std::fabs(term(spec.max_terms - 1)));
}

namespace {

double ln_sinh(double x) {
  if (x > 20.0) return x - M_LN2 + std::log1p(-std::exp(-2 * x));
  return std::log(std::sinh(x));
}

// I_{l+1/2}(x)/I_{l-1/2}(x) by modified Lentz on 1/(b_l + 1/(b_{l+1} + ...)), b_k = (2k+1)/x.
double ratio_s(int l, double x) {
  const double tiny = 1e-300;
  double f = (2 * l + 1) / x;
  if (f == 0) f = tiny;
  double C = f, D = 0;
  for (int k = l + 1; k < l + 10000000; ++k) {
    double b = (2 * k + 1) / x;
    D = b + D;
    if (D == 0) D = tiny;
    C = b + 1.0 / C;
    if (C == 0) C = tiny;
    D = 1.0 / D;
    double delta = C * D;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

bool use_closed_sum(int l, double x) { return x > double(l) * (l + 1) + 8.0; }

// s_l = e^x/2 [P(-) - (-1)^l e^{-2x} P(+)], with P(+-) = sum_k (+-1)^k (l+k)!/(k!(l-k)!) (2x)^-k.
double ln_s_closed(int l, double x) {
  double pm = 0, pp = 0, a = 1;
  for (int k = 0; k <= l; ++k) {
    if (k > 0) a *= double(l + k) * double(l - k + 1) / (double(k) * 2.0 * x);
    pp += a;
    pm += (k % 2 ? -a : a);
  }
  double sgn = (l % 2) ? -1.0 : 1.0;
  return x - M_LN2 + std::log(pm - sgn * std::exp(-2 * x) * pp);
}

}  // namespace

double ln_s(int l, double x) {
  if (l < 0 || !(x > 0)) domain_error("ln_s: need l >= 0 and x > 0");
  if (l == 0) return ln_sinh(x);
  if (use_closed_sum(l, x)) return ln_s_closed(l, x);
  double rho = ratio_s(l, x);
  double acc = std::log(rho);
  for (int j = l - 1; j >= 1; --j) {
    rho = 1.0 / ((2 * j + 1) / x + rho);
    acc += std::log(rho);
  }
  return ln_sinh(x) + acc;
}

double ln_e(int l, double x) {
  if (l < 0 || !(x > 0)) domain_error("ln_e: need l >= 0 and x > 0");
  double acc = -x, r = 1.0;
  for (int j = 0; j < l; ++j) {
    r = 1.0 / r + (2 * j + 1) / x;
    acc += std::log(r);
  }
  return acc;
}

double dln_s(int l, double x) {
  if (l < 0 || !(x > 0)) domain_error("dln_s: need l >= 0 and x > 0");
  if (l == 0) return 1.0 / std::tanh(x);
  if (use_closed_sum(l, x)) return 1.0 / std::exp(ln_s(l, x) - ln_s(l - 1, x)) - l / x;
  return 1.0 / ratio_s(l, x) - l / x;
}

double dln_e(int l, double x) {
  if (l < 0 || !(x > 0)) domain_error("dln_e: need l >= 0 and x > 0");
  if (l == 0) return -1.0;
  double r = 1.0;
  for (int j = 0; j < l; ++j) r = 1.0 / r + (2 * j + 1) / x;
  return -(1.0 / r + l / x);
}

BesselValue bessel_half(BesselKind kind, double order, double x) {
  if (!(x > 0)) domain_error("bessel_half: x must be positive");
  if (order < 0) domain_error("bessel_half: order must be non-negative");
  auto pack = [](double ln_abs, int sign) {
    if (std::fabs(ln_abs) < 700.0) return BesselValue{sign * std::exp(ln_abs), ln_abs, sign, false};
    return BesselValue{std::numeric_limits<double>::quiet_NaN(), ln_abs, sign, true};
  };
  int l = int(order);
  bool half_family = kind == BesselKind::s || kind == BesselKind::e || kind == BesselKind::ds || kind == BesselKind::de;
  if (half_family && double(l) != order) domain_error("bessel_half: s/e family takes integer l");
  switch (kind) {
    case BesselKind::s: return pack(ln_s(l, x), 1);
    case BesselKind::e: return pack(ln_e(l, x), 1);
    case BesselKind::ds: {
      double d = dln_s(l, x);
      return pack(ln_s(l, x) + std::log(std::fabs(d)), d < 0 ? -1 : 1);
    }
    case BesselKind::de: {
      double d = dln_e(l, x);
      return pack(ln_e(l, x) + std::log(std::fabs(d)), d < 0 ? -1 : 1);
    }
    case BesselKind::J: {
      double v = std::cyl_bessel_j(order, x);
      return {v, std::log(std::fabs(v)), v < 0 ? -1 : 1, false};
    }
    case BesselKind::I: {
      if (x < 600.0) {
        double v = std::cyl_bessel_i(order, x);
        return {v, std::log(v), 1, false};
      }
      double mu = 4 * order * order;
      double ln = x - 0.5 * std::log(2 * M_PI * x) + std::log1p(-(mu - 1) / (8 * x) + (mu - 1) * (mu - 9) / (128 * x * x));
      return pack(ln, 1);
    }
    case BesselKind::K: {
      if (x < 600.0) {
        double v = std::cyl_bessel_k(order, x);
        return {v, std::log(v), 1, false};
      }
      double mu = 4 * order * order;
      double ln = -x + 0.5 * std::log(M_PI / (2 * x)) + std::log1p((mu - 1) / (8 * x) + (mu - 1) * (mu - 9) / (128 * x * x));
      return pack(ln, 1);
    }
  }
  return {};
}

double zeta(double s) {
  if (s == 1.0) domain_error("zeta: pole at s = 1");
  gsl_sf_result r;
  int status = gsl_sf_zeta_e(s, &r);
  if (status != GSL_SUCCESS) throw ConvergenceError(std::string("zeta: ") + gsl_strerror(status), r.val, r.err);
  return r.val;
}

double hurwitz_zeta(double s, double a) {
  if (s == 1.0) domain_error("hurwitz_zeta: pole at s = 1");
  if (!(a > 0)) domain_error("hurwitz_zeta: a must be positive");
  if (s > 1.0) {
    gsl_sf_result r;
    int status = gsl_sf_hzeta_e(s, a, &r);
    if (status != GSL_SUCCESS) throw ConvergenceError(std::string("hurwitz_zeta: ") + gsl_strerror(status), r.val, r.err);
    return r.val;
  }
  // Euler-Maclaurin continuation; terminates exactly at non-positive integers.
  static const double B2k[] = {1.0 / 6,         -1.0 / 30,         1.0 / 42,          -1.0 / 30,
                               5.0 / 66,        -691.0 / 2730,     7.0 / 6,           -3617.0 / 510,
                               43867.0 / 798,   -174611.0 / 330,   854513.0 / 138,    -236364091.0 / 2730,
                               8553103.0 / 6,   -23749461029.0 / 870, 8615841276005.0 / 14322};
  const int N = 40 + int(std::fabs(s));
  double sum = 0;
  for (int n = 0; n < N; ++n) sum += std::pow(n + a, -s);
  double x = N + a;
  sum += std::pow(x, 1 - s) / (s - 1) + 0.5 * std::pow(x, -s);
  double poch = s;  // s (s+1) ... (s+2k-2)
  double fact = 2;  // (2k)!
  for (int k = 1; k <= 15; ++k) {
    double term = B2k[k - 1] / fact * poch * std::pow(x, -s - 2 * k + 1);
    sum += term;
    if (poch == 0.0) break;
    poch *= (s + 2 * k - 1) * (s + 2 * k);
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return sum;
}

double zeta_derivative(double s) {
  if (s == 1.0) domain_error("zeta_derivative: pole at s = 1");
  double h = std::min(0.02, std::fabs(s - 1.0) / 4);
  double T[3];
  for (int i = 0; i < 3; ++i) {
    T[i] = (zeta(s + h) - zeta(s - h)) / (2 * h);
    h /= 2;
  }
  double R1a = (4 * T[1] - T[0]) / 3, R1b = (4 * T[2] - T[1]) / 3;
  return (16 * R1b - R1a) / 15;
}

}  // namespace casimir::num
