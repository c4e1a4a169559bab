#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir::lif {

struct Coating {
  mat::MaterialModel material;
  double d;  // m
};

struct LayerStack {
  mat::MaterialModel substrate;
  std::optional<Coating> coating;
  // Advisory notes, e.g. thin-film validity.
  std::vector<std::string> check() const;
};

struct ForceResult {
  double value;                // N/m^2 for plates, N for sphere-plate, J/m^2 for energies
  double ideal_part;           // same units, perfect-metal value
  double conductivity_factor;  // value / ideal_part
  std::vector<std::string> warnings;
};

// Squared reflection coefficients at p and dimensionless frequency zeta = 2 a xi / c.
struct Reflection {
  double tm2;
  double te2;
};
Reflection reflection(const LayerStack& s, double eps_sub, double eps_coat, double p, double zeta, double d_over_a);

// Permittivity of one layer at a Matsubara mode: eps and m = (eps - 1) zeta^2.
// m stays finite in the static limit of the plasma model.
struct ModeEps {
  double eps;
  double m;
};
ModeEps mode_eps(const mat::MaterialModel& mat, double zeta, double a, const Constants& k = Constants::codata2018());
// Limit zeta -> 0 taken within the model.
ModeEps static_mode(const mat::MaterialModel& mat, double a, const Constants& k = Constants::codata2018());
// Same coefficients in terms of y = zeta p; valid at zeta = 0.
Reflection reflection_y(const LayerStack& s, ModeEps sub, ModeEps coat, double y, double d_over_a);

ForceResult force_semispaces(const LayerStack& s, double a, const num::QuadratureSpec& spec = {},
                             const Constants& k = Constants::codata2018());
ForceResult energy_semispaces(const LayerStack& s, double a, const num::QuadratureSpec& spec = {},
                              const Constants& k = Constants::codata2018());
ForceResult force_sphere_plate(const LayerStack& s, double R, double a, const num::QuadratureSpec& spec = {},
                               const Constants& k = Constants::codata2018());

// Non-retarded limit -H/(6 pi a^3).
double vdw_limit(const mat::MaterialModel& m, double a, const num::QuadratureSpec& spec = {}, double xi_max = 0.0,
                 const Constants& k = Constants::codata2018());

enum class LimitGeometry { plates_force, plates_energy, sphere_plate };
// Static-permittivity regime; R is used for sphere_plate only.
double large_separation_limit(double eps0, double a, LimitGeometry g, double R = 0.0,
                              const num::QuadratureSpec& spec = {}, const Constants& k = Constants::codata2018());

// Coefficient q + r pi^2 with rational q and r.
struct Coefficient {
  long q_num, q_den;
  long r_num, r_den;
  double value() const;
};

const std::array<Coefficient, 5>& plates_series_coefficients();
const std::array<Coefficient, 5>& sphere_series_coefficients();

double perturbative_plates(double delta0_over_a);
double perturbative_sphere(double delta0_over_a);

}  // namespace casimir::lif
