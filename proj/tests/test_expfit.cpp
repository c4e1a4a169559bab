#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "casimir/expfit.hpp"

using namespace casimir;
using namespace casimir::fit;
using doctest::Approx;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

ForceCurve synthetic(const FitModel& m, double a0, double V2, double C, double E, int n = 80) {
  ForceCurve c;
  c.calibration = 1e-12;
  for (int i = 0; i < n; ++i) {
    double da = 5e-9 * i;
    c.displacement.push_back(da);
    c.signal.push_back(model_force(m, a0, V2, C, E, da) / c.calibration);
  }
  return c;
}
}  // namespace

// Bispherical sums evaluated with mpmath at 20 digits.
TEST_CASE("sphere-plate electrostatics") {
  CHECK(electrostatic_sphere_plate(0.1, 0.0, 1e-6, 1e-4) == Approx(-2.7249390093439805591e-11).epsilon(1e-12));
  CHECK(electrostatic_sphere_plate(1.0, 0.0, 1e-3, 1e-4) == Approx(-2.5239896740623710453e-13).epsilon(1e-12));
  CHECK(electrostatic_sphere_plate(0.3, 0.1, 1e-7, 1e-4) == electrostatic_sphere_plate(-0.1, -0.3, 1e-7, 1e-4));
  CHECK(electrostatic_sphere_plate(0.2, 0.2, 1e-7, 1e-4) == 0.0);
  // proximity limit
  double a = 1e-9, R = 1e-4;
  CHECK(electrostatic_sphere_plate(1.0, 0.0, a, R) == Approx(-M_PI * kEpsilon0 * R / a).epsilon(1e-4));
  CHECK(electrostatic_corrugated(1.0, 0.0, a, R, 0) == Approx(-M_PI * kEpsilon0 * R / a));
  double x = 0.4;
  CHECK(electrostatic_corrugated(1.0, 0.0, a, R, x * a) / electrostatic_corrugated(1.0, 0.0, a, R, 0) ==
        Approx(1 + 0.5 * x * x + 0.375 * std::pow(x, 4) + 0.3125 * std::pow(x, 6)));
  CHECK(code_of([] { electrostatic_sphere_plate(1, 0, -1e-9, 1e-4); }) == ErrorCode::Domain);
  CHECK(code_of([] { electrostatic_corrugated(1, 0, 1e-9, 1e-4, 2e-9); }) == ErrorCode::Domain);
}

TEST_CASE("noiseless single curve is recovered") {
  FitModel m;
  m.R = 100e-6;
  m.V1 = 0.3;
  m.theory = [](double a) { return -1e-30 / std::pow(a, 3); };
  const double a0 = 62e-9, V2 = 20e-3, C = 1e-6, E = 3e-12;
  auto c = synthetic(m, a0, V2, C, E);
  m.a0 = 70e-9;
  m.V2 = 0;
  auto r = fit_contact_and_systematics(c, m);
  CHECK(r.a0 == Approx(a0).epsilon(1e-6));
  CHECK(r.V2 == Approx(V2).epsilon(1e-5));
  CHECK(r.C == Approx(C).epsilon(1e-5));
  CHECK(r.E == Approx(E).epsilon(1e-5));
  CHECK(r.samples == c.size());
  CHECK(r.chi2 < 1e-40);
}

TEST_CASE("shared parameters over two voltages") {
  FitModel m;
  m.R = 100e-6;
  const double a0 = 40e-9, V2 = -15e-3, C = 0, E = 0;
  std::vector<ForceCurve> cs;
  std::vector<double> vs{0.25, -0.25};
  for (double v : vs) {
    m.V1 = v;
    cs.push_back(synthetic(m, a0, V2, C, E));
  }
  m.free_C = m.free_E = false;
  m.a0 = 45e-9;
  auto r = fit_curves(cs, vs, m);
  CHECK(r.a0 == Approx(a0).epsilon(1e-7));
  CHECK(r.V2 == Approx(V2).epsilon(1e-6));
  CHECK(r.C == 0.0);
  CHECK(r.samples == 160);
}

TEST_CASE("residual potential from opposite voltages") {
  double R = 50e-6, V1 = 0.4, V2 = 12e-3;
  std::vector<double> a, fp, fm;
  for (double x = 100e-9; x < 1e-6; x += 50e-9) {
    a.push_back(x);
    fp.push_back(electrostatic_sphere_plate(V1, V2, x, R) + 1e-12);
    fm.push_back(electrostatic_sphere_plate(-V1, V2, x, R) + 1e-12);
  }
  CHECK(residual_potential(a, fp, fm, V1, R) == Approx(V2).epsilon(1e-9));
  CHECK(code_of([&] { residual_potential(a, fp, {}, V1, R); }) == ErrorCode::Ingestion);
}

TEST_CASE("systematics round trip") {
  FitModel m;
  m.R = 100e-6;
  m.V1 = 0.2;
  auto c = synthetic(m, 50e-9, 5e-3, 2e-6, 1e-12, 20);
  FitResult f{50e-9, 5e-3, 2e-6, 1e-12, 0, {}, 0, 20};
  auto cal = subtract_systematics(c, m, f);
  for (double F : cal.force) CHECK(F == Approx(0.0).scale(1e-12));
  auto back = add_systematics(cal, m, f);
  for (size_t i = 0; i < back.size(); ++i) CHECK(back[i] == Approx(c.signal[i] * c.calibration));
}

TEST_CASE("rms deviation") {
  auto th = [](double a) { return -1e-28 / std::pow(a, 4); };
  std::vector<double> a{100e-9, 200e-9, 300e-9, 400e-9}, F;
  for (double x : a) F.push_back(th(x));
  F[3] += 2e-12;
  auto all = rms_deviation(th, a, F);
  CHECK(all.sigma == Approx(1e-12));
  CHECK(all.count == 4);
  auto w = rms_deviation(th, a, F, 150e-9, 350e-9);
  CHECK(w.sigma == 0.0);
  CHECK(w.a_min == 200e-9);
  CHECK(code_of([&] { rms_deviation(th, a, F, 1.0, 2.0); }) == ErrorCode::Domain);
}

TEST_CASE("force curve ingestion") {
  std::istringstream in(
      "# scan_id = s17\n# calibration_N_per_unit = 2e-12\n# deflection_nm_per_unit = 0.5\n"
      "displacement_nm,signal\n0,-10\n5,-8\n10,-6.5\n");
  auto c = parse_force_curve(in);
  CHECK(c.scan_id == "s17");
  CHECK(c.calibration == 2e-12);
  CHECK(c.deflection == Approx(0.5e-9));
  CHECK(c.size() == 3);
  CHECK(c.displacement[2] == Approx(10e-9));

  for (const char* bad : {"0,1\n1,2\n", "displacement_nm,signal\n0,1\n0,2\n", "displacement_nm,signal\n0,1\nx,2\n",
                          "displacement_nm,signal\n0,1\n", "# calibration_N_per_unit = abc\ndisplacement_nm,signal\n"}) {
    std::istringstream s(bad);
    CAPTURE(bad);
    CHECK(code_of([&] { parse_force_curve(s); }) == ErrorCode::Ingestion);
  }

  const char* path = "test_curve.csv";
  {
    std::ofstream f(path);
    f << "displacement_nm,signal\n0,1\n1,2\n2,3\n";
    std::ofstream j(std::string(path) + ".json");
    j << R"({"scan_id": "side", "calibration_N_per_unit": 3e-12, "window_end": 2})";
  }
  auto d = read_force_curve(path);
  CHECK(d.scan_id == "side");
  CHECK(d.calibration == 3e-12);
  CHECK(d.window_end == 2);
  std::remove(path);
  std::remove((std::string(path) + ".json").c_str());
  CHECK(code_of([] { read_force_curve("/nonexistent/curve.csv"); }) == ErrorCode::Ingestion);
}
