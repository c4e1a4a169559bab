#include "doctest.h"

#include <cmath>

#include "casimir/ideal.hpp"
#include "casimir/lifshitz.hpp"

using namespace casimir;
using namespace casimir::lif;
using doctest::Approx;

namespace {
LayerStack bulk(const mat::MaterialModel& m) { return LayerStack{m, std::nullopt}; }
}  // namespace

TEST_CASE("ideal metal gives the ideal results") {
  auto s = bulk(mat::IdealMetal{});
  CHECK(force_semispaces(s, 1e-6).conductivity_factor == Approx(1.0).epsilon(1e-9));
  CHECK(energy_semispaces(s, 1e-6).conductivity_factor == Approx(1.0).epsilon(1e-9));
  auto f = force_sphere_plate(s, 100e-6, 1e-6);
  CHECK(f.value == Approx(ideal::sphere_plate_ideal(100e-6, 1e-6)).epsilon(1e-9));
  CHECK(f.warnings.empty());
}

// Double integrals evaluated with mpmath at 15 digits; a = lambda_p and 4 lambda_p.
TEST_CASE("plasma metal against an independent double integral") {
  for (double wp : {9.0, 12.5}) {
    auto s = bulk(mat::plasma_ev(wp));
    double lp = 2 * M_PI * mat::penetration_depth(s.substrate);
    CAPTURE(wp);
    CHECK(force_semispaces(s, lp).conductivity_factor == Approx(0.52384478421).epsilon(1e-7));
    CHECK(force_sphere_plate(s, 1e-4, lp).conductivity_factor == Approx(0.604079541589).epsilon(1e-7));
    CHECK(force_semispaces(s, 4 * lp).conductivity_factor == Approx(0.820866068663).epsilon(1e-7));
    CHECK(force_sphere_plate(s, 1e-4, 4 * lp).conductivity_factor == Approx(0.861142800679).epsilon(1e-7));
  }
}

TEST_CASE("conductivity factor grows with separation") {
  auto s = bulk(mat::drude_ev(9.0, 0.035));
  double prev = 0;
  for (double a = 50e-9; a < 5e-6; a *= 2) {
    double f = force_semispaces(s, a).conductivity_factor;
    CHECK(f > prev);
    CHECK(f < 1);
    prev = f;
  }
}

TEST_CASE("energy and pressure are consistent") {
  auto s = bulk(mat::plasma_ev(9.0));
  double a = 200e-9, h = 1e-4 * a;
  double dE = (energy_semispaces(s, a + h).value - energy_semispaces(s, a - h).value) / (2 * h);
  CHECK(-dE == Approx(force_semispaces(s, a).value).epsilon(1e-6));
  CHECK(force_sphere_plate(s, 1e-4, a).value == Approx(2 * M_PI * 1e-4 * energy_semispaces(s, a).value));
}

TEST_CASE("perturbative series") {
  CHECK(perturbative_plates(0) == 1.0);
  const double x = 0.01, pi2 = M_PI * M_PI;
  double pl = 1 - 16.0 / 3 * x + 24 * x * x - 640.0 / 7 * (1 - pi2 / 210) * std::pow(x, 3) +
              2800.0 / 9 * (1 - 163 * pi2 / 7350) * std::pow(x, 4);
  double sp = 1 - 4 * x + 72.0 / 5 * x * x - 320.0 / 7 * (1 - pi2 / 210) * std::pow(x, 3) +
              400.0 / 3 * (1 - 163 * pi2 / 7350) * std::pow(x, 4);
  CHECK(perturbative_plates(x) == Approx(pl).epsilon(1e-12));
  CHECK(perturbative_sphere(x) == Approx(sp).epsilon(1e-12));
  CHECK_THROWS_AS(perturbative_plates(0.5), Error);
  CHECK(plates_series_coefficients()[3].value() == Approx(-640.0 / 7 * (1 - M_PI * M_PI / 210)));
  // the series approaches the plasma result deep in its domain
  auto s = bulk(mat::plasma_ev(9.0));
  double d0 = mat::penetration_depth(s.substrate);
  CHECK(force_semispaces(s, 40 * d0).conductivity_factor == Approx(perturbative_plates(1.0 / 40)).epsilon(1e-4));
  CHECK(force_sphere_plate(s, 1e-4, 40 * d0).conductivity_factor ==
        Approx(perturbative_sphere(1.0 / 40)).epsilon(1e-4));
}

TEST_CASE("coatings") {
  auto au = mat::drude_ev(9.0, 0.035), al = mat::drude_ev(12.5, 0.063);
  double a = 300e-9;
  LayerStack same{au, Coating{au, 50e-9}};
  CHECK(force_semispaces(same, a).value == Approx(force_semispaces(bulk(au), a).value).epsilon(1e-8));
  LayerStack thick{al, Coating{au, 2e-6}};
  CHECK(force_semispaces(thick, a).value == Approx(force_semispaces(bulk(au), a).value).epsilon(1e-6));
  LayerStack thin{al, Coating{au, 10e-9}};
  CHECK(thin.check().size() == 1);
  double fa = force_semispaces(bulk(al), a).value, fu = force_semispaces(bulk(au), a).value,
         ft = force_semispaces(thin, a).value;
  CHECK(ft < std::max(fa, fu) + 1e-30);
  CHECK(ft > std::min(fa, fu) - 1e-30);
  LayerStack bad{al, Coating{au, 0}};
  CHECK_THROWS_AS(bad.check(), Error);
}

TEST_CASE("reflection coefficients are bounded") {
  auto s = bulk(mat::drude_ev(9.0, 0.035));
  for (double p : {1.0, 1.5, 10.0})
    for (double e : {1.5, 40.0, 1e6}) {
      auto r = reflection(s, e, e, p, 0.3, 0.0);
      CHECK(r.tm2 <= 1.0);
      CHECK(r.te2 <= 1.0);
      CHECK(r.tm2 >= 0.0);
    }
}

TEST_CASE("dielectric limits") {
  mat::MaterialModel osc = mat::Oscillator{3.0, 1e16};
  auto s = bulk(osc);
  // non-retarded regime
  double a = 0.5e-9;
  CHECK(force_semispaces(s, a).value == Approx(vdw_limit(osc, a)).epsilon(0.02));
  // static regime
  double b = 20e-6;
  CHECK(force_semispaces(s, b).value == Approx(large_separation_limit(3.0, b, LimitGeometry::plates_force)).epsilon(0.01));
  CHECK(energy_semispaces(bulk(mat::Constant{3.0}), 1e-6).value ==
        Approx(large_separation_limit(3.0, 1e-6, LimitGeometry::plates_energy)).epsilon(1e-7));
}

TEST_CASE("warnings and domain checks") {
  auto s = bulk(mat::plasma_ev(9.0));
  CHECK(force_sphere_plate(s, 1e-6, 2e-7).warnings.size() == 1);
  CHECK_THROWS_AS(force_semispaces(s, -1e-9), Error);
}
