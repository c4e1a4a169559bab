/* C interface to the casimir library. All lengths in m, forces in N, energies in J,
 * temperatures in K, unless a name says otherwise. Every function returns a casimir_status;
 * on failure the message is available from casimir_last_error(ctx). */
#ifndef CASIMIR_C_H
#define CASIMIR_C_H

#include <stddef.h>

#if defined(CASIMIR_BUILDING_LIBRARY)
#define CASIMIR_API __attribute__((visibility("default")))
#else
#define CASIMIR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CASIMIR_OK = 0,
  CASIMIR_E_USAGE = 1,
  CASIMIR_E_CONFIG = 2,
  CASIMIR_E_CONVERGENCE = 3,
  CASIMIR_E_INGESTION = 4,
  CASIMIR_E_DOMAIN = 5,
  CASIMIR_E_INTERNAL = 6
} casimir_status;

typedef struct casimir_context casimir_context;
typedef struct casimir_material casimir_material;
typedef struct casimir_stack casimir_stack;
typedef struct casimir_roughness casimir_roughness;
typedef struct casimir_preset casimir_preset;

CASIMIR_API const char* casimir_version(void);

CASIMIR_API casimir_status casimir_context_new(casimir_context** out);
CASIMIR_API void casimir_context_free(casimir_context* ctx);
CASIMIR_API const char* casimir_last_error(const casimir_context* ctx);
/* Warnings collected by the last call, joined by newlines; empty when none. */
CASIMIR_API const char* casimir_last_warnings(const casimir_context* ctx);
/* Relative tolerance for quadratures and Matsubara sums. */
CASIMIR_API casimir_status casimir_set_tolerance(casimir_context* ctx, double rel_tol);

/* Materials. Frequencies in eV. */
CASIMIR_API casimir_status casimir_material_ideal(casimir_context* ctx, casimir_material** out);
CASIMIR_API casimir_status casimir_material_plasma(casimir_context* ctx, double wp_ev, casimir_material** out);
CASIMIR_API casimir_status casimir_material_drude(casimir_context* ctx, double wp_ev, double gamma_ev,
                                                  casimir_material** out);
CASIMIR_API casimir_status casimir_material_constant(casimir_context* ctx, double eps, casimir_material** out);
CASIMIR_API casimir_status casimir_material_oscillator(casimir_context* ctx, double eps0, double w0_ev,
                                                       casimir_material** out);
/* energy_eV,n,k table with a Drude extension below the first sample. */
CASIMIR_API casimir_status casimir_material_table(casimir_context* ctx, const char* path, double wp_ev,
                                                  double gamma_ev, casimir_material** out);
CASIMIR_API void casimir_material_free(casimir_material* m);
/* Writes at most cap bytes including the terminator. */
CASIMIR_API casimir_status casimir_material_describe(casimir_context* ctx, const casimir_material* m, char* buf,
                                                     size_t cap);
CASIMIR_API casimir_status casimir_material_penetration_depth(casimir_context* ctx, const casimir_material* m,
                                                              double* out);

/* Substrate with an optional coating of thickness d (coating may be NULL). */
CASIMIR_API casimir_status casimir_stack_new(casimir_context* ctx, const casimir_material* substrate,
                                             const casimir_material* coating, double d, casimir_stack** out);
CASIMIR_API void casimir_stack_free(casimir_stack* s);

/* Perfect conductors at T = 0. */
CASIMIR_API casimir_status casimir_plates_ideal(casimir_context* ctx, double area, double a, double* force);
CASIMIR_API casimir_status casimir_sphere_plate_ideal(casimir_context* ctx, double R, double a, double* force);

/* Lifshitz theory at T = 0. factor is the ratio to the perfect-conductor value. */
CASIMIR_API casimir_status casimir_lifshitz_plates(casimir_context* ctx, const casimir_stack* s, double a,
                                                   double* pressure, double* factor);
CASIMIR_API casimir_status casimir_lifshitz_sphere_plate(casimir_context* ctx, const casimir_stack* s, double R,
                                                         double a, double* force, double* factor);

/* Finite temperature. geometry 0 = plates (pressure), 1 = sphere-plate (force, R used).
 * policy: "sdm", "plasma", "drude-resummed", "te-zero", "te-one" or NULL for the stack default.
 * The last two are refused unless allow_unsafe is non-zero. */
CASIMIR_API casimir_status casimir_thermal_ideal(casimir_context* ctx, int geometry, double R, double a, double T,
                                                 double* value);
CASIMIR_API casimir_status casimir_thermal_lifshitz(casimir_context* ctx, const casimir_stack* s, int geometry,
                                                    double R, double a, double T, const char* policy,
                                                    int allow_unsafe, double* value, double* ideal_T);
CASIMIR_API casimir_status casimir_default_policy(casimir_context* ctx, const casimir_stack* s, char* buf,
                                                  size_t cap);

/* Roughness: discrete levels (heights in m, background counted at half height when flagged). */
CASIMIR_API casimir_status casimir_roughness_levels(casimir_context* ctx, const double* heights,
                                                    const double* fractions, size_t n, int last_is_background,
                                                    casimir_roughness** out);
CASIMIR_API casimir_status casimir_roughness_load(casimir_context* ctx, const char* path, casimir_roughness** out);
CASIMIR_API void casimir_roughness_free(casimir_roughness* r);
/* Offsets added to the mean separation and their weights; count receives the number needed. */
CASIMIR_API casimir_status casimir_roughness_distances(casimir_context* ctx, const casimir_roughness* r,
                                                       double* offsets, double* weights, size_t cap, size_t* count);
CASIMIR_API casimir_status casimir_roughness_zero_level(casimir_context* ctx, const casimir_roughness* r, double* H,
                                                        double* A);

/* Tilted plates: alpha L over a. */
CASIMIR_API casimir_status casimir_tilt_factor(casimir_context* ctx, double x, double* factor);

typedef double (*casimir_force_fn)(double a, void* user);
/* Average of f over one corrugation period. distribution: "uniform", "convex", "tent", "max". */
CASIMIR_API casimir_status casimir_corrugation_average(casimir_context* ctx, casimir_force_fn f, void* user,
                                                       double a, double A, double L, const char* distribution,
                                                       double* out);

/* Rectangular box, energy in J. route 0 = zeta (Epstein), 1 = Abel-Plana as printed. */
CASIMIR_API casimir_status casimir_box_energy(casimir_context* ctx, double a1, double a2, double a3, int route,
                                              double* energy);

/* Dirichlet scalar sphere. region: "interior", "exterior", "whole"; mu_scale in rad/s, <= 0 for none. */
CASIMIR_API casimir_status casimir_sphere_energy(casimir_context* ctx, const char* region, double R,
                                                 double mu_scale, double* finite_part, double* pole,
                                                 double* log_coefficient);

/* Yukawa constraints. */
CASIMIR_API casimir_status casimir_preset_get(casimir_context* ctx, const char* name, casimir_preset** out);
CASIMIR_API casimir_status casimir_preset_load(casimir_context* ctx, const char* path, casimir_preset** out);
CASIMIR_API void casimir_preset_free(casimir_preset* p);
CASIMIR_API casimir_status casimir_preset_name(casimir_context* ctx, const casimir_preset* p, char* buf, size_t cap);
/* method: 0 single distance, 1 two distance. alpha is +inf when unbounded. */
CASIMIR_API casimir_status casimir_exclusion_point(casimir_context* ctx, const casimir_preset* p, double lambda,
                                                   double* alpha, double* a_used, int* method);
CASIMIR_API casimir_status casimir_hypothetical_force(casimir_context* ctx, const casimir_preset* p, double a,
                                                      double alpha, double lambda, double* force);

/* Force-curve fitting. */
typedef struct {
  double a0, V2, C, E;
  double chi2;
  double sigma[4];
  int iterations;
  size_t samples;
} casimir_fit_result;

/* Curves measured at voltages V1[i] share a0, V2, C and E. theory may be NULL (no Casimir term). */
CASIMIR_API casimir_status casimir_fit_curves(casimir_context* ctx, const char* const* paths, const double* V1,
                                              size_t n, double R, const casimir_stack* theory, double a0_guess,
                                              casimir_fit_result* out);
/* Writes separation_nm,force_pN for the first curve after removing the fitted systematics. */
CASIMIR_API casimir_status casimir_write_calibrated(casimir_context* ctx, const char* curve_path, double V1,
                                                    double R, const casimir_fit_result* fit, const char* out_path);
CASIMIR_API casimir_status casimir_electrostatic(casimir_context* ctx, double V1, double V2, double a, double R,
                                                 double* force);

/* Acceptance table; the callback receives one line per criterion. */
typedef void (*casimir_line_fn)(int id, int pass, const char* line, void* user);
CASIMIR_API casimir_status casimir_selftest(casimir_context* ctx, casimir_line_fn cb, void* user, int* failed);

#ifdef __cplusplus
}
#endif

#endif
