#include "doctest.h"

#include <cmath>

#include "casimir/ideal.hpp"

using namespace casimir;
using namespace casimir::ideal;
using doctest::Approx;

namespace {
double hc() { return Constants::codata2018().hbar * Constants::codata2018().c; }
}  // namespace

TEST_CASE("parallel plates") {
  auto r = plates_ideal(1e-4, 1e-6);
  CHECK(r.force == Approx(-M_PI * M_PI * hc() * 1e-4 / (240 * 1e-24)).epsilon(1e-14));
  CHECK(r.energy == Approx(-M_PI * M_PI * hc() * 1e-4 / (720 * 1e-18)).epsilon(1e-14));
  CHECK(plates_energy_density(2e-6) == Approx(plates_energy_density(1e-6) / 8));
  CHECK_THROWS_AS(plates_ideal(1, 0), Error);
}

TEST_CASE("force is minus the derivative of the energy") {
  auto E = [](double a) { return plates_ideal(1.0, a).energy; };
  for (double a : {1e-7, 1e-6, 1e-5}) {
    double h = 1e-4 * a;
    CHECK(-(E(a + h) - E(a - h)) / (2 * h) == Approx(plates_ideal(1.0, a).force).epsilon(1e-7));
  }
}

TEST_CASE("sphere-plate from the proximity theorem") {
  double R = 50e-6, a = 300e-9;
  CHECK(sphere_plate_ideal(R, a) == Approx(pft_force([](double x) { return plates_energy_density(x); }, R, a)));
  CHECK(sphere_plate_ideal(R, a) == Approx(-std::pow(M_PI, 3) * hc() * R / (360 * a * a * a)).epsilon(1e-14));
}

// mpmath: distance part -pi int_A^inf sqrt(t^2-A^2)/(e^{2 pi t}-1) dt, A = mu/pi, in hbar c/a.
TEST_CASE("massive interval against an independent quadrature") {
  double a = 1e-6;
  auto m_of = [&](double mu) { return mu * Constants::codata2018().hbar / (Constants::codata2018().c * a); };
  CHECK(interval_energy(a, m_of(1)).distance_part * a / hc() == Approx(-0.02333189251981102317).epsilon(1e-9));
  CHECK(interval_energy(a, m_of(3)).distance_part * a / hc() == Approx(-0.0006422220085424978960).epsilon(1e-8));
  double m = m_of(3), c = Constants::codata2018().c;
  CHECK(interval_energy(a, m).wall_term == Approx(-m * c * c / 4));
  CHECK(interval_energy(a, 0).total() * a / hc() == Approx(-M_PI / 24).epsilon(1e-12));
}

TEST_CASE("interval asymptotics bracket the exact energy") {
  double a = 1e-6, hbar = Constants::codata2018().hbar, c = Constants::codata2018().c;
  double m_small = 0.05 * hbar / (c * a), m_large = 8 * hbar / (c * a);
  double ex = interval_energy(a, m_small).total();
  CHECK(std::fabs(interval_small_mu(a, m_small) - ex) < std::fabs(interval_small_mu_printed(a, m_small) - ex) + 1e-40);
  CHECK(interval_small_mu(a, m_small) == Approx(ex).epsilon(1e-4));
  CHECK(interval_large_mu(a, m_large) == Approx(interval_energy(a, m_large).total()).epsilon(1e-6));
}

TEST_CASE("topologies") {
  double a = 2e-6;
  CHECK(topology_energy(Topology::S1, a, 0) * a / hc() == Approx(-M_PI / 6).epsilon(1e-12));
  double hbar = Constants::codata2018().hbar, c = Constants::codata2018().c;
  // mpmath: -4 pi int_A^inf sqrt(t^2-A^2)/(e^{2 pi t}-1), A = mu/(2 pi), mu = 1
  CHECK(topology_energy(Topology::S1, a, hbar / (c * a)) * a / hc() == Approx(-0.21946589311013496433).epsilon(1e-9));
  double L = 1e-3;
  CHECK(topology_energy(Topology::CylinderPlane, a, 0, L) ==
        Approx(-hc() * num::kZeta3 * L / (2 * M_PI * a * a)).epsilon(1e-12));
  CHECK(topology_energy(Topology::S2, a, 0) == 0.0);
  CHECK(s2_large_mu(10, 24) == Approx(1 - 7.0 / 4000));
}

TEST_CASE("box energies") {
  CHECK(box_energy(1, 1, 1).epstein_route / hc() == Approx(0.0916574).epsilon(1e-6));
  // ordering of sides does not matter
  CHECK(box_energy(1, 2, 3).epstein_route == Approx(box_energy(3, 1, 2).epstein_route).epsilon(1e-14));
  CHECK(box_energy(1, 2, 3).abelplana_route == Approx(box_energy(2, 3, 1).abelplana_route).epsilon(1e-14));
  // the dropped remainder closes the gap between the two routes
  for (double r : {0.3, 1.0, 2.5}) {
    auto b = box_energy(1, 1, r);
    double H = box_H(std::min(1.0, r), 1.0, std::max(1.0, r));
    CHECK(b.abelplana_route + hc() * H == Approx(b.epstein_route).epsilon(1e-10));
    CHECK(b.neglected_H_bound == Approx(hc() * std::fabs(H)));
  }
  // scaling E(l a) = E(a)/l
  CHECK(box_energy(2, 4, 6).epstein_route == Approx(box_energy(1, 2, 3).epstein_route / 2).epsilon(1e-13));
  CHECK(box_energy(1, 1, 1, BoxRoute::epstein).total == box_energy(1, 1, 1).epstein_route);
  CHECK(std::isnan(box_energy(1, 1, 1, BoxRoute::epstein).abelplana_route));
}

TEST_CASE("2D box sign change") {
  CHECK(box2d_energy(1, 1) > 0);
  CHECK(box2d_energy(1, 4) < 0);
  CHECK(box2d_energy(1, 2.7) > 0);
  CHECK(box2d_energy(1, 2.78) < 0);
  CHECK(box2d_energy(3, 1) == Approx(box2d_energy(1, 3)));
}

TEST_CASE("Epstein zeta of the cube") {
  // Z_3(1,1,1;4) = sum' (n1^2+n2^2+n3^2)^-2, brute-force partial sum plus an integral tail.
  double s = 0;
  const int N = 40;
  for (int i = -N; i <= N; ++i)
    for (int j = -N; j <= N; ++j)
      for (int k = -N; k <= N; ++k) {
        int r2 = i * i + j * j + k * k;
        if (r2 == 0 || r2 > N * N) continue;
        s += 1.0 / (double(r2) * r2);
      }
  s += 4 * M_PI / N;  // int_N^inf 4 pi r^2 r^-4 dr
  CHECK(epstein_z3_4(1, 1, 1) == Approx(s).epsilon(2e-3));
}

TEST_CASE("dilute ball") {
  double R = 1e-6;
  CHECK(dilute_ball_energy(DiluteKind::equal_speeds, 0.5, R) == Approx(5 * hc() * 0.25 / (32 * M_PI * R)));
  CHECK(dilute_ball_energy(DiluteKind::dilute, 1.0, R) == 0.0);
  CHECK_THROWS_AS(dilute_ball_energy(DiluteKind::equal_speeds, 2, R), Error);
}
