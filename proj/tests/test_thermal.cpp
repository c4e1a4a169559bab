#include "doctest.h"

#include <cmath>

#include "casimir/ideal.hpp"
#include "casimir/thermal.hpp"

using namespace casimir;
using namespace casimir::thermal;
using doctest::Approx;

// Matsubara sums evaluated with mpmath at 15 digits.
TEST_CASE("ideal plates factor") {
  CHECK(ideal_plates_factor(0.3) == Approx(1.0026999908101).epsilon(1e-10));
  CHECK(ideal_plates_factor(1.0) == Approx(1.2614005151103).epsilon(1e-10));
  CHECK(ideal_plates_factor(0.0) == Approx(1.0));
}

TEST_CASE("low and high temperature asymptotics") {
  for (double t : {0.05, 0.1, 0.15}) {
    CAPTURE(t);
    CHECK(ideal_plates_factor(t) == Approx(ideal_plates_factor_low(t)).epsilon(1e-8));
    CHECK(ideal_sphere_factor(t) == Approx(ideal_sphere_factor_low(t)).epsilon(1e-8));
  }
  double a = 5e-6, T = 8 * teff(a);
  CHECK(ideal_plates_T(1, a, T) == Approx(ideal_plates_high(a, T)).epsilon(1e-6));
  CHECK(ideal_sphere_plate_T(1e-4, a, T) == Approx(ideal_sphere_high(1e-4, a, T)).epsilon(1e-6));
}

TEST_CASE("factors scale the zero temperature results") {
  double a = 1e-6, T = 300;
  double t = T / teff(a);
  CHECK(ideal_plates_T(2.0, a, T) == Approx(ideal::plates_ideal(2.0, a).force * ideal_plates_factor(t)));
  CHECK(ideal_sphere_plate_T(1e-4, a, T) == Approx(ideal::sphere_plate_ideal(1e-4, a) * ideal_sphere_factor(t)));
}

TEST_CASE("thermal correction grows with temperature") {
  double prev = 1.0;
  for (double t = 0.1; t < 3; t += 0.2) {
    double f = ideal_plates_factor(t);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("policy names round trip") {
  for (auto p : {ZeroModePolicy::SchwingerDeRaadMilton, ZeroModePolicy::PlasmaNatural, ZeroModePolicy::DrudeResummed,
                 ZeroModePolicy::UnsafeTeZero, ZeroModePolicy::UnsafeTeOne})
    CHECK(parse_policy(policy_name(p)) == p);
  CHECK(is_unsafe(ZeroModePolicy::UnsafeTeZero));
  CHECK_FALSE(is_unsafe(ZeroModePolicy::DrudeResummed));
  CHECK_THROWS_AS(parse_policy("nonsense"), Error);
}

TEST_CASE("lifshitz at finite temperature") {
  lif::LayerStack ideal{mat::IdealMetal{}, std::nullopt};
  double a = 1e-6, T = 300;
  auto r = lifshitz_plates_T(ideal, a, T, ZeroModePolicy::SchwingerDeRaadMilton);
  CHECK(r.value == Approx(r.ideal_T).epsilon(1e-6));
  CHECK(r.ideal_T == Approx(ideal_plates_T(1, a, T)).epsilon(1e-9));

  lif::LayerStack au{mat::plasma_ev(9.0), std::nullopt};
  auto p = lifshitz_plates_T(au, a, T, ZeroModePolicy::PlasmaNatural);
  auto s = lifshitz_plates_T(au, a, T, ZeroModePolicy::SchwingerDeRaadMilton);
  // the plasma TE zero mode is below one, the sdm one equals one
  CHECK(std::abs(p.value) < std::abs(s.value));
  CHECK(p.value < 0);
  // zero mode is half of the l = 0 term of the ideal sum for a perfect reflector
  CHECK(s.zero_mode < 0);

  // low temperature tends to the T = 0 result
  auto cold = lifshitz_plates_T(au, a, 1.0, ZeroModePolicy::PlasmaNatural);
  CHECK(cold.value == Approx(lif::force_semispaces(au, a).value).epsilon(1e-4));

  auto sp = lifshitz_sphere_plate_T(au, 1e-4, a, T, ZeroModePolicy::PlasmaNatural);
  CHECK(sp.value < 0);
  CHECK(sp.ideal_T == Approx(ideal_sphere_plate_T(1e-4, a, T)).epsilon(1e-9));
}

TEST_CASE("drude policies") {
  lif::LayerStack au{mat::drude_ev(9.0, 0.035), std::nullopt};
  CHECK(default_policy(au) == ZeroModePolicy::DrudeResummed);
  double a = 1e-6, T = 300;
  auto zero = lifshitz_plates_T(au, a, T, ZeroModePolicy::UnsafeTeZero);
  auto one = lifshitz_plates_T(au, a, T, ZeroModePolicy::UnsafeTeOne);
  CHECK(std::abs(zero.value) < std::abs(one.value));
  CHECK_FALSE(zero.warnings.empty());
}

TEST_CASE("combined corrections") {
  for (auto g : {CombinedGeometry::plates, CombinedGeometry::sphere_plate}) {
    CHECK(combined_perturbation(g, 0.0, 0.0) == Approx(1.0));
    CHECK(combined_perturbation(g, 0.02, 0.1) == Approx(combined_low_T(g, 0.02, 0.1)).epsilon(1e-6));
  }
  // no temperature: first order term of the conductivity series
  CHECK(combined_perturbation(CombinedGeometry::plates, 0.01, 0.0) == Approx(1 - 16.0 / 3 * 0.01));
  CHECK(combined_perturbation(CombinedGeometry::sphere_plate, 0.01, 0.0) == Approx(1 - 4 * 0.01));
}

TEST_CASE("blackbody subtraction") {
  auto b = free_energy_blackbody_subtraction(1e-6, 300);
  CHECK(b.renormalized == Approx(b.free_energy - 2e-6 * b.f_ext));
  CHECK(std::isfinite(b.mehra_term));
  CHECK(b.f_ext < 0);
}

TEST_CASE("temperature domain") {
  CHECK_THROWS_AS(ideal_plates_T(1, 1e-6, -1), Error);
}
