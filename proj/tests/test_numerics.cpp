#include "doctest.h"

#include <cmath>

#include "casimir/numerics.hpp"

using namespace casimir;
using namespace casimir::num;
using doctest::Approx;

TEST_CASE("quadrature") {
  CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0) == Approx(1.0).epsilon(1e-12));
  CHECK(integrate_semi_infinite([](double x) { return 1 / (x * x); }, 2.0) == Approx(0.5).epsilon(1e-10));
  // integrable endpoint singularity
  CHECK(integrate([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0) == Approx(2.0).epsilon(1e-9));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) == Approx(2.0).epsilon(1e-12));
  QuadratureSpec bad;
  bad.rel_tol = -1;
  CHECK_THROWS_AS(bad.check(), Error);
}

TEST_CASE("Abel-Plana sum minus integral") {
  // F(n) = exp(-n): -i[F(it) - F(-it)] = -2 sin t
  auto g = [](double t) { return -2 * std::sin(t); };
  double e = std::exp(-1.0);
  CHECK(abel_plana(1.0, g, false) == Approx(1 / (1 - e) - 1).epsilon(1e-9));
  CHECK(abel_plana(1.0, g, true) == Approx(std::sqrt(e) / (1 - e) - 1).epsilon(1e-9));
}

TEST_CASE("primed Matsubara sum") {
  auto r = matsubara_sum([](long l) { return std::ldexp(1.0, -int(l)); });
  CHECK(r.value == Approx(1.5).epsilon(1e-9));
  CHECK(r.terms > 10);
  SumSpec s;
  s.zero_mode_weight = 1.0;
  CHECK(matsubara_sum([](long l) { return std::ldexp(1.0, -int(l)); }, s).value == Approx(2.0).epsilon(1e-9));
}

// Frozen from mpmath at 30 digits: log of sqrt(pi x/2) I_{l+1/2}(x) and sqrt(2x/pi) K_{l+1/2}(x).
TEST_CASE("Riccati-Bessel logarithms against mpmath") {
  struct Row {
    int l;
    double x, ls, le;
  };
  const Row rows[] = {{5, 0.3, -16.469456286169316507, 12.866052511083408768},
                      {20, 10, -8.346799330411616252, 6.8289422999924480529},
                      {3, 100, 99.246555956404841741, -99.94030286699189372},
                      {50, 2, -149.84944999745411221, 145.926692732649294}};
  for (const auto& r : rows) {
    CAPTURE(r.l);
    CAPTURE(r.x);
    CHECK(ln_s(r.l, r.x) == Approx(r.ls).epsilon(1e-12));
    CHECK(ln_e(r.l, r.x) == Approx(r.le).epsilon(1e-12));
  }
  CHECK(dln_s(2, 1.5) == Approx(2.2070528357224469814).epsilon(1e-12));
  CHECK(dln_e(2, 1.5) == Approx(-1.7179487179487179487).epsilon(1e-12));
  CHECK(dln_s(10, 3) == Approx(3.7951170815386359854).epsilon(1e-12));
  CHECK(dln_e(10, 3) == Approx(-3.4870841361924626442).epsilon(1e-12));
  CHECK(ln_s(0, 2) == Approx(std::log(std::sinh(2.0))));
  CHECK(ln_e(0, 2) == Approx(-2.0));
  CHECK_THROWS_AS(ln_s(-1, 1), Error);
}

TEST_CASE("Wronskian s_l' e_l - s_l e_l' = -1") {
  for (int l : {0, 1, 7, 30})
    for (double x : {0.1, 1.0, 12.0, 80.0}) {
      double w = std::exp(ln_s(l, x) + ln_e(l, x)) * (dln_e(l, x) - dln_s(l, x));
      CHECK(w == Approx(-1.0).epsilon(1e-9));
    }
}

TEST_CASE("Bessel values with overflow guard") {
  auto v = bessel_half(BesselKind::I, 0.5, 1.0);
  CHECK(v.value == Approx(std::sqrt(2 / M_PI) * std::sinh(1.0)));
  auto big = bessel_half(BesselKind::I, 0.5, 1000.0);
  CHECK(big.scaled);
  CHECK(big.ln_abs == Approx(1000 - 0.5 * std::log(2 * M_PI * 1000)).epsilon(1e-12));
}

TEST_CASE("zeta functions against mpmath") {
  CHECK(zeta(3) == Approx(kZeta3).epsilon(1e-14));
  CHECK(zeta(-1) == Approx(-1.0 / 12).epsilon(1e-13));
  CHECK(zeta(-3) == Approx(1.0 / 120).epsilon(1e-13));
  CHECK(zeta_derivative(-1) == Approx(-0.16542114370045092921).epsilon(1e-12));
  CHECK(zeta_derivative(-3) == Approx(0.0053785763577743011444).epsilon(1e-11));
  CHECK(hurwitz_zeta(3, 2.5) == Approx(0.1181020258208637015).epsilon(1e-13));
  CHECK(hurwitz_zeta(-2, 8.5) == Approx(-170.0).epsilon(1e-12));
  CHECK(hurwitz_zeta(1.5, 0.3) == Approx(8.2377616714597234206).epsilon(1e-12));
  CHECK(hurwitz_zeta(2, 1) == Approx(M_PI * M_PI / 6).epsilon(1e-14));
}
