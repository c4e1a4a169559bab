#pragma once

#include <string>
#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir::thermal {

// Treatment of the l = 0 Matsubara term.
enum class ZeroModePolicy {
  SchwingerDeRaadMilton,  // ideal-metal limit taken before l = 0
  PlasmaNatural,          // static limit of the model itself
  DrudeResummed,          // TE zero mode replaced by its value on the light cone
  UnsafeTeZero,           // r_TE^2(0, y) = 0
  UnsafeTeOne,            // r_TE^2(0, y) = 1
};

const char* policy_name(ZeroModePolicy p);
// Accepts sdm, plasma, drude-resummed, te-zero, te-one.
ZeroModePolicy parse_policy(const std::string& s);
bool is_unsafe(ZeroModePolicy p);
ZeroModePolicy default_policy(const lif::LayerStack& s);

struct ThermalResult {
  double value;        // N/m^2 for plates, N for sphere-plate
  double zero_mode;    // l = 0 contribution, same units
  double ideal_T;      // perfect metal at the same T
  double ideal_zero_T;
  long terms;          // Matsubara terms with l >= 1
  ZeroModePolicy policy;
  std::vector<std::string> warnings;
};

// Force on area (N); pass area = 1 for pressure.
double ideal_plates_T(double area, double a, double T, const num::SumSpec& spec = {},
                      const Constants& k = Constants::codata2018());
double ideal_sphere_plate_T(double R, double a, double T, const num::SumSpec& spec = {},
                            const Constants& k = Constants::codata2018());
// Bracket factors multiplying the T = 0 results, as functions of T/T_eff.
double ideal_plates_factor(double t, const num::SumSpec& spec = {});
double ideal_sphere_factor(double t, const num::SumSpec& spec = {});
double ideal_plates_factor_low(double t);
double ideal_sphere_factor_low(double t);
double ideal_plates_high(double a, double T, const Constants& k = Constants::codata2018());
double ideal_sphere_high(double R, double a, double T, const Constants& k = Constants::codata2018());

ThermalResult lifshitz_plates_T(const lif::LayerStack& s, double a, double T, ZeroModePolicy policy,
                                const num::SumSpec& sum = {}, const num::QuadratureSpec& quad = {},
                                const Constants& k = Constants::codata2018());
ThermalResult lifshitz_sphere_plate_T(const lif::LayerStack& s, double R, double a, double T, ZeroModePolicy policy,
                                      const num::SumSpec& sum = {}, const num::QuadratureSpec& quad = {},
                                      const Constants& k = Constants::codata2018());

enum class CombinedGeometry { plates, sphere_plate };
// First order in delta0/a, all orders in T/T_eff.
double combined_perturbation(CombinedGeometry g, double delta0_over_a, double t, const num::SumSpec& spec = {});
double combined_low_T(CombinedGeometry g, double delta0_over_a, double t);
// Factor on the ideal high-temperature force.
double combined_high_T(CombinedGeometry g, double delta0_over_a);

struct BlackbodySubtraction {
  double free_energy;    // J/m^2, modes between the plates
  double mehra_term;     // leading a-independent piece of free_energy
  double f_ext;          // J/m^3, free-space density, one polarization
  double renormalized;   // free_energy - 2 a f_ext
};
BlackbodySubtraction free_energy_blackbody_subtraction(double a, double T,
                                                       const Constants& k = Constants::codata2018());

}  // namespace casimir::thermal
