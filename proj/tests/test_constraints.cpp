#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "casimir/constraints.hpp"

using namespace casimir;
using namespace casimir::yuk;
using doctest::Approx;

TEST_CASE("homogeneous lens above a plate") {
  double rho = 2.7e3, R = 100e-6, a = 100e-9, l = 50e-9;
  double big = yukawa_lens_plate(1.0, l, rho, R, a, 1e-3, 2 * R);
  CHECK(big == Approx(yukawa_lens_plate_simple(1.0, l, rho, R, a)).epsilon(1e-3));
  CHECK(big < 0);
  CHECK(yukawa_lens_plate(2.0, l, rho, R, a, 1e-3, 2 * R) == Approx(2 * big));
  // the one-dimensional cap integral is exact for a homogeneous lens
  for (double lam : {20e-9, 2e-6, 40e-6}) {
    SphereBody s{R, 30e-6, {rho, {}}};
    PlateBody p{5e-6, {rho, {}}};
    CAPTURE(lam);
    CHECK(yukawa_layered_numeric(s, p, a, 1.0, lam) ==
          Approx(yukawa_lens_plate(1.0, lam, rho, R, a, 5e-6, 30e-6)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(yukawa_lens_plate(1.0, -1.0, rho, R, a, 1e-3, R), Error);
}

TEST_CASE("effective density of layered bodies") {
  BodyComposition bare{2.33e3, {}};
  CHECK(effective_density(bare, 1e-8) == Approx(2.33e3));
  BodyComposition same{2.33e3, {{2.33e3, 50e-9}}};
  CHECK(effective_density(same, 1e-8) == Approx(2.33e3));
  BodyComposition gold{2.33e3, {{19.3e3, 1e-6}}};
  CHECK(effective_density(gold, 1e-9) == Approx(19.3e3));
  CHECK(effective_density(gold, 1e-3) == Approx(19.3e3 * -std::expm1(-1e-3) + 2.33e3 * std::exp(-1e-3)));
  double l = 100e-9;
  CHECK(effective_density(gold, l) == Approx(19.3e3 * -std::expm1(-10.0) + 2.33e3 * std::exp(-10.0)));
  CHECK(effective_density(bare, l, l) == Approx(2.33e3 * (1 - std::exp(-1.0))));
  BodyComposition bad{2.33e3, {{-1, 1e-9}}};
  CHECK_THROWS_AS(effective_density(bad, l), Error);
}

TEST_CASE("closed form and numeric integral agree for small lambda") {
  SphereBody s{100e-6, 200e-6, {2.5e3, {{7.14e3, 8e-9}, {19.3e3, 50e-9}}}};
  PlateBody p{1e-3, {2.33e3, {{19.3e3, 86e-9}}}};
  for (double l : {5e-9, 30e-9}) {
    CAPTURE(l);
    double c = yukawa_layered_closed(s.comp, p.comp, s.R, 100e-9, 1.0, l);
    CHECK(yukawa_layered_numeric(s, p, 100e-9, 1.0, l) == Approx(c).epsilon(1e-3));
    CHECK(yukawa_layered(s, p, 100e-9, 1.0, l) == Approx(c).epsilon(1e-3));
  }
}

TEST_CASE("single distance bound") {
  double l = 1e-8, dF = 1e-12;
  auto K = [&](double a) { return -1e-20 * std::exp(-a / l); };
  auto b = alpha_bound_single(l, dF, K, 100e-9, 500e-9);
  CHECK_FALSE(b.unbounded);
  CHECK(b.a_used == Approx(100e-9));
  CHECK(b.alpha_bound == Approx(dF / 1e-20 * std::exp(10.0)));
  auto zero = alpha_bound_single(l, dF, [](double) { return 0.0; }, 100e-9, 500e-9);
  CHECK(zero.unbounded);
  CHECK(std::isinf(zero.alpha_bound));
  // a bump in K is located by the refinement
  auto peak = alpha_bound_single(l, dF, [](double a) { return std::exp(-std::pow(std::log(a / 213e-9), 2)); },
                                 100e-9, 500e-9);
  CHECK(peak.a_used == Approx(213e-9).epsilon(1e-6));
  CHECK_THROWS_AS(alpha_bound_single(l, 0, K, 1e-7, 2e-7), Error);
}

TEST_CASE("two distance bound") {
  auto b = alpha_bound_two_distance(-3e-15, -1e-15, 1e-13, 0, 0, 100e-9, 150e-9);
  double k21 = std::pow(1.5, 4), D = -3e-15 + k21 * 1e-15;
  CHECK(b.upper == Approx((k21 + 1) * 1e-13 / std::fabs(D)));
  CHECK(b.lower == Approx(-b.upper));
  // a K that falls like a^-4 cannot separate alpha from roughness
  double K1 = std::pow(100e-9, -4), K2 = std::pow(150e-9, -4);
  CHECK_THROWS_AS(alpha_bound_two_distance(K1, K2, 1e-13, 0, 0, 100e-9, 150e-9), Error);
}

TEST_CASE("presets and exclusion curves") {
  auto names = preset_names();
  CHECK(names.size() == 3);
  for (const auto& n : names) CHECK(preset(n).name == n);
  CHECK_THROWS_AS(preset("nope"), Error);

  auto au = preset("afm-au99");
  double prev = std::numeric_limits<double>::infinity();
  for (double l : log_grid(2e-9, 1e-7, 6)) {
    auto e = exclusion_point(au, l);
    CHECK(e.alpha_bound < prev);
    prev = e.alpha_bound;
  }
  auto au2 = au;
  au2.dF *= 3;
  CHECK(exclusion_point(au2, 1e-8).alpha_bound == Approx(3 * exclusion_point(au, 1e-8).alpha_bound));
  CHECK(hypothetical_force(au, 200e-9, 1.0, 1e-8) < 0);
  CHECK(newton_force(au, 5e-3) < 0);
  CHECK_THROWS_AS(exclusion_point(au, 0), Error);

  auto g = log_grid(1e-9, 1e-6, 4);
  CHECK(g.front() == 1e-9);
  CHECK(g.back() == 1e-6);
  CHECK(g[1] == Approx(1e-8));
}

TEST_CASE("preset files") {
  const char* path = "test_preset.json";
  {
    std::ofstream f(path);
    f << R"({"name": "mine", "sphere": {"R": 1e-4, "core_density": 2500,
             "layers": [{"density": 19300, "thickness": 5e-8}]},
             "plate": {"D": 1e-3, "core_density": 2330}, "dF": 2e-12, "a_min": 1e-7, "a_max": 5e-7,
             "roughness": {"levels": [{"height": 1e-8, "fraction": 0.5}, {"height": 0, "fraction": 0.5}]}})";
  }
  auto p = load_preset(path);
  CHECK(p.name == "mine");
  CHECK(p.sphere.H == Approx(2e-4));
  CHECK(p.sphere.comp.layers.size() == 1);
  CHECK(p.roughness.has_value());
  CHECK(exclusion_point(p, 1e-8).method == BoundMethod::single_distance);
  {
    std::ofstream f(path);
    f << R"({"sphere": {"R": 1e-4}})";
  }
  try {
    load_preset(path);
    FAIL("expected an ingestion error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Ingestion);
  }
  {
    std::ofstream f(path);
    f << R"({"sphere": {"R": 1e-4, "core_density": 1}, "plate": {"D": 1, "core_density": 1},
             "dF": 1e-12, "a_min": 1e-7, "method": "three-distance"})";
  }
  try {
    load_preset(path);
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
  }
  std::remove(path);
  CHECK_THROWS_AS(load_preset("/nonexistent/preset.json"), Error);
}

TEST_CASE("newtonian sphere and disk") {
  double F = newton_sphere_disk(2e3, 2e3, 1e-3, 5e-3, 1e-4);
  CHECK(F < 0);
  CHECK(newton_sphere_disk(2e3, 2e3, 1e-3, 1e3, 1e-4) ==
        Approx(-8.0 / 3 * M_PI * M_PI * Constants::codata2018().G * 4e6 * 1e-3 * 1e-12).epsilon(1e-5));
}
