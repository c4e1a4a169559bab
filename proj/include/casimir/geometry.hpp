#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "casimir/model.hpp"

namespace casimir::geo {

// Levels of protrusions toward the gap, heights in m measured from the body.
// With last_is_background the last level is a stochastic layer counted at half height.
struct DiscreteLevels {
  std::vector<double> heights;
  std::vector<double> fractions;
  bool last_is_background = false;
};
// Gaussian stochastic roughness with dispersion delta (m).
struct Stochastic {
  double delta;
};
// Linear slope across the plate, amplitude alpha L (m, signed).
struct Tilt {
  double alpha_L;
};
// Height A sin(2 pi x / period + phase).
struct Sinusoid {
  double A;
  double period;
  double phase;
};
using RoughnessProfile = std::variant<DiscreteLevels, Stochastic, Tilt, Sinusoid>;

// Surface 1 is the lower body, surface 2 the upper one. Sinusoid and Tilt heights follow the
// common z axis; DiscreteLevels and Stochastic describe each body's own outward protrusions.
struct ProfilePair {
  std::optional<RoughnessProfile> s1;
  std::optional<RoughnessProfile> s2;
};

enum class Regime { large_scale, short_scale, extreme_short };
const char* regime_name(Regime r);
Regime parse_regime(const std::string& s);

struct ZeroLevel {
  double H;                    // m
  double A;                    // m, highest level minus H
  std::vector<double> levels;  // (h_i - H)/A
  bool beta_defined;           // false when all levels coincide
  double beta1() const;        // levels[1]
  double beta2() const;        // -levels[2]
};
ZeroLevel zero_level(const DiscreteLevels& p);

struct WeightedDistance {
  double offset;  // m, added to the mean separation
  double weight;
};
using WeightedDistanceSet = std::vector<WeightedDistance>;

// Both bodies carry the profile; every pair of levels gives one distance.
WeightedDistanceSet weighted_distance_set(const DiscreteLevels& p);
double average_force(const std::function<double(double)>& base, double a0, const WeightedDistanceSet& set);

double rough_plates_factor(const ProfilePair& p, double a, Regime regime);
double rough_sphere_factor(const ProfilePair& p, double a, Regime regime);

double tilt_factor(double alphaL_over_a);
// Force between tilted plates from the wedge energy, normalized to the parallel result.
double tilt_exact(double alphaL_over_a);
struct Rational {
  long num;
  long den;
};
// Coefficient of x^n in the expansion of tilt_exact.
Rational wedge_series_coefficient(int n);

enum class Distribution { uniform, convex_half, tent, delta_at_max };
const char* distribution_name(Distribution d);
Distribution parse_distribution(const std::string& s);
// Average of base(d) over one corrugation period, d = a - offset - A sin(2 pi x/L).
double corrugation_average(const std::function<double(double)>& base, double a, double A, double L,
                           Distribution rho, double offset = 0.0);

double lateral_force(double a, double A, double L, double x0, double R, const Constants& k = Constants::codata2018());

// Rows height_nm,fraction; a row background_nm,h0,v0 adds a half-height background level.
DiscreteLevels parse_roughness_profile(std::istream& in);
DiscreteLevels read_roughness_profile(const std::string& path);

}  // namespace casimir::geo
