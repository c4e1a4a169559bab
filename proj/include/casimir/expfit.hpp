#pragma once

#include <functional>
#include <istream>
#include <limits>
#include <string>
#include <vector>

#include "casimir/model.hpp"

namespace casimir::fit {

inline constexpr double kEpsilon0 = 8.8541878128e-12;  // F/m

// Sphere of radius R at distance a above a plate, voltages in V, SI units.
// Direct sum until n alpha > 18, geometric tail beyond.
double electrostatic_sphere_plate(double V1, double V2, double a, double R, double tol = 1e-12);
// Plate with corrugation amplitude A, averaged to sixth order in A/a.
double electrostatic_corrugated(double V1, double V2, double a, double R, double A);
inline constexpr double kCorrugationD[4] = {1.0, 0.5, 0.375, 0.3125};  // D_0, D_2, D_4, D_6

struct ForceCurve {
  std::vector<double> displacement;  // m, piezo travel from contact
  std::vector<double> signal;        // raw units
  double calibration = 1.0;          // N per unit signal
  double deflection = 0.0;           // m per unit signal
  std::string scan_id;
  size_t window_begin = 0;
  size_t window_end = 0;  // exclusive; 0 means all samples
  void check() const;
  size_t size() const { return displacement.size(); }
};

// CSV with header displacement_nm,signal; metadata as "# key = value" lines.
ForceCurve parse_force_curve(std::istream& in);
ForceCurve read_force_curve(const std::string& path);

struct FitModel {
  std::function<double(double)> theory;  // N at separation a; may be empty
  double R;                              // m
  double V1;                             // V, applied to the plate
  // starting values
  double a0 = 50e-9, V2 = 0.0, C = 0.0, E = 0.0;
  bool free_a0 = true, free_V2 = true, free_C = true, free_E = true;
};

struct FitResult {
  double a0, V2, C, E;
  double chi2;      // sum of squared residuals in N^2
  double sigma[4];  // a0, V2, C, E; scaled by the reduced chi^2
  int iterations;
  size_t samples;
};

// F(da) = theory(da + a0) + electrostatic(V1, V2, da + a0) + C (da + a0) + E.
double model_force(const FitModel& m, double a0, double V2, double C, double E, double da);
FitResult fit_contact_and_systematics(const ForceCurve& curve, const FitModel& model);
// Shared parameters over curves taken at different applied voltages.
FitResult fit_curves(const std::vector<ForceCurve>& curves, const std::vector<double>& V1, const FitModel& model);

// Residual potential from curves measured at +V1 and -V1 on the same separations.
double residual_potential(const std::vector<double>& a, const std::vector<double>& F_plus,
                          const std::vector<double>& F_minus, double V1, double R);

struct CalibratedCurve {
  std::vector<double> separation;  // m
  std::vector<double> force;       // N, systematics removed
};
// Separation a0 + displacement - signal * deflection; force minus electrostatic, C a and E.
CalibratedCurve subtract_systematics(const ForceCurve& curve, const FitModel& model, const FitResult& fit);
// Inverse of subtract_systematics on the force values.
std::vector<double> add_systematics(const CalibratedCurve& c, const FitModel& model, const FitResult& fit);

struct RmsResult {
  double sigma;  // N
  size_t count;
  double a_min, a_max;  // window actually used
};
RmsResult rms_deviation(const std::function<double(double)>& theory, const std::vector<double>& a,
                        const std::vector<double>& F, double a_min = 0.0,
                        double a_max = std::numeric_limits<double>::infinity());

}  // namespace casimir::fit
