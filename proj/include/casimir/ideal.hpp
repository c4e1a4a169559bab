#pragma once

#include <functional>

#include "casimir/model.hpp"
#include "casimir/numerics.hpp"

namespace casimir::ideal {

struct EnergyForce {
  double energy;  // J
  double force;   // N
};

EnergyForce plates_ideal(double area, double a, const Constants& k = Constants::codata2018());
// Energy per unit area, J/m^2.
double plates_energy_density(double a, const Constants& k = Constants::codata2018());

struct IntervalEnergy {
  double distance_part;  // J, a-dependent
  double wall_term;      // J, constant -m c^2/4
  double total() const { return distance_part + wall_term; }
};

IntervalEnergy interval_energy(double a, double m_field, const Constants& k = Constants::codata2018(),
                               const num::QuadratureSpec& spec = {});
// Small- and large-mu asymptotics of the interval energy, J (wall term included).
double interval_small_mu_printed(double a, double m_field, const Constants& k = Constants::codata2018());
double interval_small_mu(double a, double m_field, const Constants& k = Constants::codata2018());
double interval_large_mu(double a, double m_field, const Constants& k = Constants::codata2018());

enum class Topology { S1, S2, CylinderPlane };

// For CylinderPlane, L is the normalization length along the flat direction.
double topology_energy(Topology t, double a, double m_field, double L = 1.0,
                       const Constants& k = Constants::codata2018(), const num::QuadratureSpec& spec = {});
// S^2 large-mu asymptote m c^2/24 (1 - c2/mu^2); the printed coefficient is 7/40.
double s2_large_mu(double mu, double mc2, double c2 = 7.0 / 40.0);

struct BoxEnergyBreakdown {
  double total;              // J, equals the Epstein route
  double epstein_route;      // J
  double abelplana_route;    // J, H dropped
  double neglected_H_bound;  // J
};

enum class BoxRoute { epstein, abelplana, both };

BoxEnergyBreakdown box_energy(double a1, double a2, double a3, BoxRoute route = BoxRoute::both,
                              const Constants& k = Constants::codata2018());
// Z_3(a1,a2,a3;4) = sum' (a1^2 n1^2 + a2^2 n2^2 + a3^2 n3^2)^-2, m^-4.
double epstein_z3_4(double a1, double a2, double a3);
// Exponentially small remainder of the Abel-Plana box form for sorted sides, in units of hbar c / m.
double box_H(double a1, double a2, double a3);

// Sorted sides by default; pass sort=false to evaluate in the given order.
double box2d_energy(double a1, double a2, bool sort = true, const Constants& k = Constants::codata2018());
double box2d_G(double x);

// 2 pi R E_S(a).
double pft_force(const std::function<double(double)>& energy_per_area, double R, double a);
double sphere_plate_ideal(double R, double a, const Constants& k = Constants::codata2018());

enum class DiluteKind { equal_speeds, dilute };
// xi for equal_speeds, epsilon for dilute.
double dilute_ball_energy(DiluteKind kind, double param, double R, const Constants& k = Constants::codata2018());

}  // namespace casimir::ideal
