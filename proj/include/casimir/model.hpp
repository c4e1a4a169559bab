#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

enum class ErrorCode { Usage = 1, Config = 2, Convergence = 3, Ingestion = 4, Domain = 5, Internal = 6 };

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// Carries the best estimate when an iterative procedure gives up.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : Error(ErrorCode::Convergence, what), estimate(estimate), error_bound(error_bound) {}
  double estimate;
  double error_bound;
};

[[noreturn]] inline void domain_error(const std::string& msg) { throw Error(ErrorCode::Domain, msg); }
[[noreturn]] inline void config_error(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

struct Constants {
  double hbar;  // J s
  double c;     // m/s
  double k_B;   // J/K
  double G;     // m^3/(kg s^2)
  double e;     // C, only for eV conversions

  static const Constants& codata2018();
  Constants with_hbar_scaled(double factor) const;
};

// Dimension exponents over (m, kg, s, K).
struct Dim {
  std::array<std::int8_t, 4> p{0, 0, 0, 0};
  bool operator==(const Dim&) const = default;
};

enum class Unit { m, s, kg, K, J, N, rad_per_s, dimensionless };

Dim dim_of(Unit u);
std::string to_string(const Dim& d);

class Quantity {
public:
  Quantity() = default;
  Quantity(double value, Unit unit) : value_(value), dim_(dim_of(unit)) {}
  Quantity(double value, Dim dim) : value_(value), dim_(dim) {}

  double value() const { return value_; }
  const Dim& dim() const { return dim_; }
  bool is(Unit u) const { return dim_ == dim_of(u); }
  double in(Unit u) const;

  Quantity operator+(const Quantity& o) const;
  Quantity operator-(const Quantity& o) const;
  Quantity operator*(const Quantity& o) const;
  Quantity operator/(const Quantity& o) const;
  Quantity operator*(double s) const { return {value_ * s, dim_}; }

private:
  double value_ = 0.0;
  Dim dim_{};
};

double nm_to_m(double nm);
double m_to_nm(double m);
double um_to_m(double um);
double ev_to_rad_s(double ev, const Constants& k = Constants::codata2018());
double rad_s_to_ev(double w, const Constants& k = Constants::codata2018());

struct ParallelPlates { double area; double a; };
struct SphereAbovePlate { double R; double a; };
struct Interval { double a; };
struct CircleS1 { double a; };
struct SphereS2 { double radius; double mass; };
struct CylinderPlane { double a; double L; };
struct Box { double a1, a2, a3; };
struct CorrugatedSpherePlate { double R; double a; double A; double L; };

using Configuration = std::variant<ParallelPlates, SphereAbovePlate, Interval, CircleS1, SphereS2,
                                   CylinderPlane, Box, CorrugatedSpherePlate>;

// Throws on non-positive lengths; returns advisory warnings.
std::vector<std::string> validate(const Configuration& cfg);

// Proximity-force validity bound on a/R.
inline constexpr double kPftMaxRatio = 0.1;

double teff(double a, const Constants& k = Constants::codata2018());

struct ThermalState {
  double T = 0.0;
  ThermalState() = default;
  explicit ThermalState(double T);
  double t_eff(double a, const Constants& k = Constants::codata2018()) const { return teff(a, k); }
};

}  // namespace casimir
