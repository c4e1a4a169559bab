#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "casimir/model.hpp"

namespace casimir::shell {

// Massless scalar field with Dirichlet conditions on a sphere of radius R.
enum class Region { interior, exterior, whole };
const char* region_name(Region r);
Region parse_region(const std::string& s);

// Energies in units of hbar c / R unless stated otherwise.
struct ShellResult {
  double finite_part;
  double pole_coefficient;  // coefficient of 1/s
  double log_coefficient;   // coefficient of ln (mu R / c)^2
  Region region;
};

// ln f_l(ik) for the region at z = kR.
double ln_jost(Region r, int l, double z);

// X_i(t), i = -1..3, with z = kR/nu and t = 1/sqrt(1 + z^2); interior signs.
std::array<double, 5> asymptotic_x(double z);
// Uniform expansion of ln f_l through nu^-3, including the k-independent normalization.
double ln_jost_asymptotic(Region r, int l, double z);

struct FiniteSpec {
  double rel_tol = 1e-8;
  int l_max = 100;  // length of the reported partial sums
};
struct FinitePart {
  double value;
  int l_used;                   // l below this integrated numerically
  double tail;                  // closed-form sum over the remaining l
  std::vector<double> partial;  // partial sums after each l
};
// Contribution of one l to the finite part, numerically or from the uniform expansion.
double l_contribution(Region r, int l, bool asymptotic);
FinitePart energy_finite_part(Region r, const FiniteSpec& spec = {});

struct AsymptoticPart {
  std::array<double, 5> finite;  // A_{-1}..A_3 at s = 0, mu R / c = 1
  std::array<double, 5> pole;
  double finite_sum;
  double pole_sum;  // also the log coefficient
};
AsymptoticPart energy_asymptotic_part(Region r);

// mu_scale in rad/s; required for interior and exterior.
ShellResult sphere_energy(Region r, std::optional<double> mu_scale, double R = 1.0,
                          const FiniteSpec& spec = {}, const Constants& k = Constants::codata2018());

// Heat-kernel coefficients a_0, a_1/2, a_1, a_3/2, a_2.
using HeatKernel = std::array<double, 5>;
HeatKernel dirichlet_sphere_coefficients(Region r, double R);
HeatKernel neumann_sphere_coefficients(Region r, double R);

enum class Scheme { zeta, cutoff };
// Each term of the divergent energy; mass m in inverse length (mc/hbar).
struct Divergence {
  Scheme scheme;
  std::array<double, 5> pole;    // zeta: coefficients of 1/s
  std::array<double, 5> finite;  // zeta: rest at s = 0; cutoff: term values at delta
  double pole_total;
  double total;                  // finite sum; cutoff includes every term
};
Divergence heat_kernel_divergence(const HeatKernel& a, double m, Scheme scheme, double mu_or_delta);

}  // namespace casimir::shell
