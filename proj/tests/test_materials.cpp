#include "doctest.h"

#include <cmath>
#include <complex>
#include <sstream>

#include "casimir/materials.hpp"

using namespace casimir;
using namespace casimir::mat;
using doctest::Approx;

TEST_CASE("analytic models on the imaginary axis") {
  double wp = ev_to_rad_s(9.0), g = ev_to_rad_s(0.035), xi = 1e15;
  CHECK(eps_imaginary(plasma_ev(9.0), xi) == Approx(1 + wp * wp / (xi * xi)));
  CHECK(eps_imaginary(drude_ev(9.0, 0.035), xi) == Approx(1 + wp * wp / (xi * (xi + g))));
  CHECK(std::isinf(eps_imaginary(IdealMetal{}, xi)));
  CHECK(eps_imaginary(Constant{3.5}, xi) == 3.5);
  CHECK(eps_imaginary(Oscillator{4, 1e16}, 1e16) == Approx(2.5));
  CHECK(std::isinf(eps_static(drude_ev(9, 0.035))));
  CHECK(eps_static(Oscillator{4, 1e16}) == Approx(4));
  CHECK(is_metal(plasma_ev(9)));
  CHECK_FALSE(is_metal(Constant{2}));
}

TEST_CASE("permittivity decreases along the imaginary axis") {
  for (const MaterialModel& m : {plasma_ev(12.5), drude_ev(12.5, 0.063), MaterialModel{Oscillator{11.7, 6e15}}}) {
    double prev = INFINITY;
    for (double xi = 1e12; xi < 1e18; xi *= 3) {
      double e = eps_imaginary(m, xi);
      CHECK(e > 1);
      CHECK(e < prev);
      prev = e;
    }
  }
}

TEST_CASE("penetration depth") {
  double d = penetration_depth(plasma_ev(12.5));
  CHECK(2 * M_PI * d == Approx(99.19e-9).epsilon(1e-4));
  CHECK(penetration_depth(drude_ev(9, 0.035)) == Approx(21.92e-9).epsilon(1e-3));
  CHECK_THROWS_AS(penetration_depth(Constant{2}), Error);
}

TEST_CASE("describe") {
  CHECK(describe(IdealMetal{}) == "ideal");
  CHECK(describe(drude_ev(9, 0.035)) == "drude:9,0.035");
  CHECK(describe(Constant{2.5}) == "constant:2.5");
}

// Samples generated from a Drude metal must give back that metal through the dispersion relation.
TEST_CASE("dispersion relation reproduces a Drude metal") {
  auto d = std::get<Drude>(drude_ev(9.0, 0.035));
  std::vector<OpticalSample> s;
  for (double ev = 0.1; ev < 2000; ev *= 1.05) {
    double w = ev_to_rad_s(ev);
    double im = d.wp * d.wp * d.gamma / (w * (w * w + d.gamma * d.gamma));
    double re = 1 - d.wp * d.wp / (w * w + d.gamma * d.gamma);
    std::complex<double> n = std::sqrt(std::complex<double>(re, im));
    s.push_back({w, n.real(), n.imag()});
  }
  auto m = from_samples(s, d, ev_to_rad_s(1e4));
  for (double xi : {1e13, 1e14, 1e15, 1e16}) {
    CAPTURE(xi);
    CHECK(eps_imaginary(m, xi) == Approx(eps_imaginary(d, xi)).epsilon(2e-3));
  }
  const auto& t = *std::get<Tabulated>(m).data;
  CHECK(t.eps(3e15) == Approx(t.eps_direct(3e15)).epsilon(1e-4));
}

TEST_CASE("optical table ingestion") {
  std::string text = "# comment\nenergy_eV,n,k\n";
  for (int i = 1; i <= 12; ++i) text += std::to_string(i) + ".0,0.2," + std::to_string(5.0 / i) + "\n";
  std::istringstream ok(text);
  auto m = ingest_optical_table(ok, std::get<Drude>(drude_ev(9, 0.035)));
  CHECK(std::get<Tabulated>(m).data->samples().size() == 12);
  CHECK(std::get<Tabulated>(m).data->samples()[0].im_eps() == Approx(2.0));
  std::istringstream bad("energy_eV,n,k\n1.0,0.2\n");
  try {
    ingest_optical_table(bad, std::get<Drude>(drude_ev(9, 0.035)));
    FAIL("expected an ingestion error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Ingestion);
  }
  CHECK_THROWS_AS(ingest_optical_file("/nonexistent/table.csv", std::get<Drude>(drude_ev(9, 0.035))), Error);
}

// mpmath: (3 hbar w0 / 4 pi) int Li3(r^2) ds for eps0 = 3.
TEST_CASE("Hamaker constant of an oscillator") {
  CHECK(hamaker(Oscillator{3, 1e16}) == Approx(7.1362037602651344162e-20).epsilon(1e-7));
  CHECK_THROWS_AS(hamaker(IdealMetal{}), Error);
  CHECK_THROWS_AS(hamaker(Constant{2}), Error);
}

TEST_CASE("static-limit factor") {
  CHECK(psi_factor(INFINITY) == Approx(0.13089969389957471827).epsilon(1e-9));
  CHECK(psi_factor(10) == Approx(0.036368909993097612157).epsilon(1e-8));
  CHECK(psi_factor(1) == 0.0);
  CHECK(psi_factor(3) < psi_factor(10));
}
