#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/model.hpp"

namespace casimir::yuk {

struct Layer {
  double density;    // kg/m^3
  double thickness;  // m
};

// Core material plus coatings, outermost layer last.
struct BodyComposition {
  double core_density;
  std::vector<Layer> layers;
  void check() const;
  double coating_thickness() const;
};

// Sphere or lens: outer radius R, cap height H (2R for a full sphere).
struct SphereBody {
  double R;
  double H;
  BodyComposition comp;
};
// Plate of core thickness D below its coatings; lateral size taken as infinite.
struct PlateBody {
  double D;
  BodyComposition comp;
};

// Newtonian force between a sphere above the centre of a disk of radius L and thickness D.
double newton_sphere_disk(double rho, double rho_p, double D, double L, double R,
                          const Constants& k = Constants::codata2018());

// Homogeneous lens of height H above a plate of thickness D.
double yukawa_lens_plate(double alpha, double lambda, double rho, double R, double a, double D, double H,
                         const Constants& k = Constants::codata2018());
// The D, H, R >> lambda limit.
double yukawa_lens_plate_simple(double alpha, double lambda, double rho, double R, double a,
                                const Constants& k = Constants::codata2018());

// rho_out - sum of density steps weighted by exp(-depth/lambda); core of thickness D.
double effective_density(const BodyComposition& b, double lambda,
                         double core_thickness = std::numeric_limits<double>::infinity());

// a, lambda << R with both bodies thick compared to lambda.
double yukawa_layered_closed(const BodyComposition& sphere, const BodyComposition& plate, double R, double a,
                             double alpha, double lambda, const Constants& k = Constants::codata2018());
// Volume integral reduced to one dimension over the height of the cap.
double yukawa_layered_numeric(const SphereBody& s, const PlateBody& p, double a, double alpha, double lambda,
                              const Constants& k = Constants::codata2018());
// Closed form when lambda <= 1e-3 min(R, H, D), otherwise the numeric integral.
double yukawa_layered(const SphereBody& s, const PlateBody& p, double a, double alpha, double lambda,
                      const Constants& k = Constants::codata2018());

// Average of base over the distances of a roughness profile.
double yukawa_rough(const std::function<double(double)>& base, double a, const geo::WeightedDistanceSet& set);

enum class BoundMethod { single_distance, two_distance };
const char* method_name(BoundMethod m);

struct ExclusionPoint {
  double lambda;
  double alpha_bound;  // +inf when unbounded
  BoundMethod method;
  double a_used;       // m; a1 for the two-distance method
  double a2_used;      // m; 0 for the single-distance method
  bool unbounded;
};

// K(a) = F_hyp / alpha_G. Scans [a_min, a_max] for the strongest bound.
ExclusionPoint alpha_bound_single(double lambda, double dF, const std::function<double(double)>& K, double a_min,
                                  double a_max);

struct TwoSidedBound {
  double lower;
  double upper;
};
// The unknown large-scale roughness term falls as a^-4 and is eliminated between a1 and a2.
TwoSidedBound alpha_bound_two_distance(double K1, double K2, double dF, double dS1, double dS2, double a1, double a2);

struct ExperimentPreset {
  std::string name;
  SphereBody sphere;
  PlateBody plate;
  double dF;     // N
  double a_min;  // m
  double a_max;  // m
  BoundMethod method;
  std::optional<geo::DiscreteLevels> roughness;
  double a1 = 0, a2_min = 0, a2_max = 0;  // two-distance scan
  double dS1 = 0, dS2 = 0;                // known corrections at a1, a2
};

std::vector<std::string> preset_names();
ExperimentPreset preset(const std::string& name);
// JSON document with the same fields; see README.
ExperimentPreset load_preset(const std::string& path);

double hypothetical_force(const ExperimentPreset& p, double a, double alpha, double lambda,
                          const Constants& k = Constants::codata2018());
double newton_force(const ExperimentPreset& p, double L, const Constants& k = Constants::codata2018());

ExclusionPoint exclusion_point(const ExperimentPreset& p, double lambda, const Constants& k = Constants::codata2018());
std::vector<ExclusionPoint> exclusion_curve(const ExperimentPreset& p, const std::vector<double>& lambdas,
                                            const Constants& k = Constants::codata2018());

// count points from start to stop inclusive, log-spaced.
std::vector<double> log_grid(double start, double stop, int count);

}  // namespace casimir::yuk
