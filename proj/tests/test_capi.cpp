#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "casimir/casimir_c.h"
#include "casimir/expfit.hpp"
#include "casimir/ideal.hpp"

using doctest::Approx;

namespace {
struct Ctx {
  casimir_context* c = nullptr;
  Ctx() { REQUIRE(casimir_context_new(&c) == CASIMIR_OK); }
  ~Ctx() { casimir_context_free(c); }
};

double inv4(double a, void*) { return std::pow(a, -4); }
}  // namespace

TEST_CASE("context lifecycle and null handling") {
  CHECK(std::strlen(casimir_version()) > 0);
  CHECK(casimir_context_new(nullptr) == CASIMIR_E_USAGE);
  casimir_material* m = nullptr;
  CHECK(casimir_material_ideal(nullptr, &m) == CASIMIR_E_USAGE);
  CHECK(std::string(casimir_last_error(nullptr)) == "null context");
  casimir_context_free(nullptr);
  casimir_material_free(nullptr);
  casimir_stack_free(nullptr);
  casimir_roughness_free(nullptr);
  casimir_preset_free(nullptr);

  Ctx x;
  CHECK(casimir_material_ideal(x.c, nullptr) == CASIMIR_E_USAGE);
  CHECK(std::string(casimir_last_error(x.c)).find("null") != std::string::npos);
  double f;
  CHECK(casimir_plates_ideal(x.c, 1e-4, 1e-6, &f) == CASIMIR_OK);
  CHECK(std::string(casimir_last_error(x.c)).empty());
  CHECK(casimir_set_tolerance(x.c, 2.0) == CASIMIR_E_CONFIG);
  CHECK(casimir_set_tolerance(x.c, 1e-7) == CASIMIR_OK);
}

TEST_CASE("error codes") {
  Ctx x;
  casimir_material* m = nullptr;
  CHECK(casimir_material_plasma(x.c, -1, &m) == CASIMIR_E_DOMAIN);
  CHECK(m == nullptr);
  CHECK(casimir_material_table(x.c, "/nonexistent/table.csv", 9, 0.035, &m) == CASIMIR_E_INGESTION);
  double v;
  CHECK(casimir_box_energy(x.c, 1, 1, 1, 7, &v) == CASIMIR_E_USAGE);
  CHECK(casimir_thermal_ideal(x.c, 3, 1e-4, 1e-6, 300, &v) == CASIMIR_E_USAGE);
  casimir_preset* p = nullptr;
  CHECK(casimir_preset_get(x.c, "none", &p) != CASIMIR_OK);
  CHECK(std::strlen(casimir_last_error(x.c)) > 0);
}

TEST_CASE("materials and forces") {
  Ctx x;
  casimir_material *au = nullptr, *al = nullptr;
  REQUIRE(casimir_material_drude(x.c, 9.0, 0.035, &au) == CASIMIR_OK);
  REQUIRE(casimir_material_plasma(x.c, 12.5, &al) == CASIMIR_OK);
  char buf[256];
  CHECK(casimir_material_describe(x.c, au, buf, sizeof buf) == CASIMIR_OK);
  CHECK(std::strlen(buf) > 0);
  char tiny[4];
  CHECK(casimir_material_describe(x.c, au, tiny, sizeof tiny) == CASIMIR_OK);
  CHECK(std::strlen(tiny) == 3);
  CHECK(casimir_material_describe(x.c, au, buf, 0) == CASIMIR_E_USAGE);
  double d0;
  CHECK(casimir_material_penetration_depth(x.c, al, &d0) == CASIMIR_OK);
  CHECK(2 * M_PI * d0 == Approx(99.19e-9).epsilon(1e-3));

  casimir_stack* s = nullptr;
  REQUIRE(casimir_stack_new(x.c, au, nullptr, 0, &s) == CASIMIR_OK);
  double P, fac, F, fs;
  CHECK(casimir_lifshitz_plates(x.c, s, 1e-6, &P, &fac) == CASIMIR_OK);
  CHECK(fac > 0.8);
  CHECK(fac < 1.0);
  CHECK(casimir_lifshitz_sphere_plate(x.c, s, 1e-4, 1e-6, &F, &fs) == CASIMIR_OK);
  double F0;
  CHECK(casimir_sphere_plate_ideal(x.c, 1e-4, 1e-6, &F0) == CASIMIR_OK);
  CHECK(F0 == Approx(casimir::ideal::sphere_plate_ideal(1e-4, 1e-6)));
  CHECK(F == Approx(F0 * fs));
  CHECK(casimir_lifshitz_sphere_plate(x.c, s, 1e-6, 5e-7, &F, &fs) == CASIMIR_OK);
  CHECK(std::strlen(casimir_last_warnings(x.c)) > 0);

  casimir_stack* coated = nullptr;
  CHECK(casimir_stack_new(x.c, al, au, -1e-9, &coated) == CASIMIR_E_DOMAIN);
  REQUIRE(casimir_stack_new(x.c, al, au, 10e-9, &coated) == CASIMIR_OK);
  CHECK(casimir_lifshitz_plates(x.c, coated, 1e-6, &P, &fac) == CASIMIR_OK);
  CHECK(std::strlen(casimir_last_warnings(x.c)) > 0);

  CHECK(casimir_default_policy(x.c, s, buf, sizeof buf) == CASIMIR_OK);
  CHECK(std::string(buf) == "drude-resummed");
  double T, idealT;
  CHECK(casimir_thermal_lifshitz(x.c, s, 0, 0, 1e-6, 300, "te-zero", 0, &T, &idealT) == CASIMIR_E_CONFIG);
  CHECK(casimir_thermal_lifshitz(x.c, s, 0, 0, 1e-6, 300, "te-zero", 1, &T, &idealT) == CASIMIR_OK);
  CHECK(casimir_thermal_lifshitz(x.c, s, 1, 1e-4, 1e-6, 300, nullptr, 0, &T, &idealT) == CASIMIR_OK);
  double ti;
  CHECK(casimir_thermal_ideal(x.c, 1, 1e-4, 1e-6, 300, &ti) == CASIMIR_OK);
  CHECK(ti == Approx(idealT));

  casimir_stack_free(coated);
  casimir_stack_free(s);
  casimir_material_free(al);
  casimir_material_free(au);
}

TEST_CASE("roughness and geometry") {
  Ctx x;
  const double h[] = {20e-9, 10e-9, 0.0}, w[] = {0.3, 0.4, 0.3};
  casimir_roughness* r = nullptr;
  REQUIRE(casimir_roughness_levels(x.c, h, w, 3, 0, &r) == CASIMIR_OK);
  size_t n = 0;
  CHECK(casimir_roughness_distances(x.c, r, nullptr, nullptr, 0, &n) == CASIMIR_OK);
  CHECK(n == 6);
  double off[6], wt[6], small[2];
  CHECK(casimir_roughness_distances(x.c, r, small, nullptr, 2, &n) == CASIMIR_E_USAGE);
  CHECK(casimir_roughness_distances(x.c, r, off, wt, 6, &n) == CASIMIR_OK);
  double sum = 0;
  for (double v : wt) sum += v;
  CHECK(sum == Approx(1.0));
  double H, A;
  CHECK(casimir_roughness_zero_level(x.c, r, &H, &A) == CASIMIR_OK);
  CHECK(H == Approx(10e-9));
  casimir_roughness_free(r);
  CHECK(casimir_roughness_load(x.c, "/nonexistent/r.csv", &r) == CASIMIR_E_INGESTION);

  double t;
  CHECK(casimir_tilt_factor(x.c, 0.1, &t) == CASIMIR_OK);
  CHECK(t == Approx(1 + 10.0 / 3 * 0.01 + 7e-4));
  double avg;
  CHECK(casimir_corrugation_average(x.c, inv4, nullptr, 1e-6, 0.3e-6, 2e-6, "uniform", &avg) == CASIMIR_OK);
  CHECK(avg / inv4(1e-6, nullptr) == Approx(1.5788867799840721919).epsilon(1e-8));
  CHECK(casimir_corrugation_average(x.c, inv4, nullptr, 1e-6, 0.3e-6, 2e-6, "gauss", &avg) == CASIMIR_E_CONFIG);
}

TEST_CASE("energies") {
  Ctx x;
  double e0, e1;
  CHECK(casimir_box_energy(x.c, 1e-6, 2e-6, 3e-6, 0, &e0) == CASIMIR_OK);
  CHECK(casimir_box_energy(x.c, 3e-6, 1e-6, 2e-6, 0, &e1) == CASIMIR_OK);
  CHECK(e0 == Approx(e1));
  double fin, pole, lg;
  CHECK(casimir_sphere_energy(x.c, "whole", 1.0, 0, &fin, &pole, &lg) == CASIMIR_OK);
  CHECK(fin > 0);
  CHECK(casimir_sphere_energy(x.c, "interior", 1.0, 0, &fin, &pole, &lg) != CASIMIR_OK);
  CHECK(casimir_sphere_energy(x.c, "inside", 1.0, 1e9, &fin, &pole, &lg) == CASIMIR_E_CONFIG);
}

TEST_CASE("constraints") {
  Ctx x;
  casimir_preset* p = nullptr;
  REQUIRE(casimir_preset_get(x.c, "afm-au99", &p) == CASIMIR_OK);
  char name[32];
  CHECK(casimir_preset_name(x.c, p, name, sizeof name) == CASIMIR_OK);
  CHECK(std::string(name) == "afm-au99");
  double alpha, a;
  int method = -1;
  CHECK(casimir_exclusion_point(x.c, p, 1e-8, &alpha, &a, &method) == CASIMIR_OK);
  CHECK(std::isfinite(alpha));
  CHECK(method == 0);
  double F;
  CHECK(casimir_hypothetical_force(x.c, p, 200e-9, 1.0, 1e-8, &F) == CASIMIR_OK);
  CHECK(F < 0);
  casimir_preset_free(p);
  CHECK(casimir_preset_load(x.c, "/nonexistent/p.json", &p) == CASIMIR_E_INGESTION);
}

TEST_CASE("fitting through files") {
  Ctx x;
  casimir::fit::FitModel m;
  m.R = 100e-6;
  const double V[] = {0.3, -0.3};
  const char* paths[] = {"capi_curve_p.csv", "capi_curve_m.csv"};
  for (int k = 0; k < 2; ++k) {
    m.V1 = V[k];
    std::ofstream f(paths[k]);
    f << "# calibration_N_per_unit = 1e-12\ndisplacement_nm,signal\n";
    char line[64];
    for (int i = 0; i < 60; ++i) {
      double da = 5e-9 * i;
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", da * 1e9,
                    casimir::fit::model_force(m, 45e-9, 10e-3, 1e-6, 2e-12, da) / 1e-12);
      f << line;
    }
  }
  casimir_fit_result r{};
  REQUIRE(casimir_fit_curves(x.c, paths, V, 2, 100e-6, nullptr, 50e-9, &r) == CASIMIR_OK);
  CHECK(r.a0 == Approx(45e-9).epsilon(1e-6));
  CHECK(r.V2 == Approx(10e-3).epsilon(1e-5));
  CHECK(r.samples == 120);
  CHECK(casimir_write_calibrated(x.c, paths[0], V[0], 100e-6, &r, "capi_cal.csv") == CASIMIR_OK);
  std::ifstream in("capi_cal.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "separation_nm,force_pN");
  CHECK(casimir_fit_curves(x.c, paths, V, 0, 100e-6, nullptr, 50e-9, &r) == CASIMIR_E_USAGE);
  for (const char* p : {paths[0], paths[1], "capi_cal.csv"}) std::remove(p);

  double F;
  CHECK(casimir_electrostatic(x.c, 0.1, 0.0, 1e-6, 1e-4, &F) == CASIMIR_OK);
  CHECK(F == Approx(-2.7249390093439805591e-11).epsilon(1e-12));
}
