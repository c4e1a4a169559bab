#pragma once

#include <functional>

#include "casimir/model.hpp"

namespace casimir::num {

using Fn = std::function<double(double)>;

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  int max_subdivisions = 2000;
  void check() const;
};

struct SumSpec {
  double rel_tail_tol = 1e-9;
  long max_terms = 100000;
  double zero_mode_weight = 0.5;
  void check() const;
};

// Integral over [lower, inf) via x = lower + t/(1-t).
double integrate_semi_infinite(const Fn& f, double lower, const QuadratureSpec& spec = {});
// Integral over [a, b]; tolerates integrable endpoint singularities.
double integrate(const Fn& f, double a, double b, const QuadratureSpec& spec = {});

// Sum minus integral, sum_{n>=0} F(n) - int_0^inf F (or over n+1/2).
// g(t) is the branch-resolved -i [F(it) - F(-it)], which is real.
double abel_plana(double F0, const Fn& g, bool half_integer, const QuadratureSpec& spec = {},
                  double branch_point = 0.0);

struct SumResult {
  double value;
  long terms;
};

// Primed sum over l >= 0 with term(0) weighted by zero_mode_weight.
SumResult matsubara_sum(const std::function<double(long)>& term, const SumSpec& spec = {});

enum class BesselKind { s, e, ds, de, J, I, K };

// Overflow-safe: when |ln value| is too large, value is left NaN and scaled is set.
struct BesselValue {
  double value;
  double ln_abs;
  int sign;
  bool scaled;
};

BesselValue bessel_half(BesselKind kind, double order, double x);

// Logarithms of the Riccati-Bessel pair s_l = sqrt(pi x/2) I_{l+1/2}, e_l = sqrt(2x/pi) K_{l+1/2}.
double ln_s(int l, double x);
double ln_e(int l, double x);
// Logarithmic derivatives s_l'/s_l and e_l'/e_l.
double dln_s(int l, double x);
double dln_e(int l, double x);

double zeta(double s);
double hurwitz_zeta(double s, double a);
double zeta_derivative(double s);

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kZeta3 = 1.2020569031595942854;

}  // namespace casimir::num
