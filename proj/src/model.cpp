#include "casimir/model.hpp"

#include <cmath>
#include <sstream>

namespace casimir {

const Constants& Constants::codata2018() {
  static const Constants k{1.054571817e-34, 299792458.0, 1.380649e-23, 6.67430e-11, 1.602176634e-19};
  return k;
}

Constants Constants::with_hbar_scaled(double factor) const {
  Constants k = *this;
  k.hbar *= factor;
  return k;
}

Dim dim_of(Unit u) {
  switch (u) {
    case Unit::m: return Dim{{1, 0, 0, 0}};
    case Unit::s: return Dim{{0, 0, 1, 0}};
    case Unit::kg: return Dim{{0, 1, 0, 0}};
    case Unit::K: return Dim{{0, 0, 0, 1}};
    case Unit::J: return Dim{{2, 1, -2, 0}};
    case Unit::N: return Dim{{1, 1, -2, 0}};
    case Unit::rad_per_s: return Dim{{0, 0, -1, 0}};
    case Unit::dimensionless: return Dim{};
  }
  return Dim{};
}

std::string to_string(const Dim& d) {
  static const char* names[] = {"m", "kg", "s", "K"};
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (d.p[i] == 0) continue;
    if (!first) os << "*";
    os << names[i];
    if (d.p[i] != 1) os << "^" << int(d.p[i]);
    first = false;
  }
  return first ? "1" : os.str();
}

double Quantity::in(Unit u) const {
  if (!(dim_ == dim_of(u)))
    domain_error("unit mismatch: have " + to_string(dim_) + ", asked for " + to_string(dim_of(u)));
  return value_;
}

Quantity Quantity::operator+(const Quantity& o) const {
  if (!(dim_ == o.dim_)) domain_error("cannot add " + to_string(dim_) + " and " + to_string(o.dim_));
  return {value_ + o.value_, dim_};
}

Quantity Quantity::operator-(const Quantity& o) const {
  if (!(dim_ == o.dim_)) domain_error("cannot subtract " + to_string(o.dim_) + " from " + to_string(dim_));
  return {value_ - o.value_, dim_};
}

Quantity Quantity::operator*(const Quantity& o) const {
  Dim d;
  for (int i = 0; i < 4; ++i) d.p[i] = std::int8_t(dim_.p[i] + o.dim_.p[i]);
  return {value_ * o.value_, d};
}

Quantity Quantity::operator/(const Quantity& o) const {
  Dim d;
  for (int i = 0; i < 4; ++i) d.p[i] = std::int8_t(dim_.p[i] - o.dim_.p[i]);
  return {value_ / o.value_, d};
}

double nm_to_m(double nm) { return nm * 1e-9; }
double m_to_nm(double m) { return m / 1e-9; }
double um_to_m(double um) { return um * 1e-6; }

double ev_to_rad_s(double ev, const Constants& k) { return ev * k.e / k.hbar; }
double rad_s_to_ev(double w, const Constants& k) { return w * k.hbar / k.e; }

namespace {
void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) domain_error(std::string(what) + " must be strictly positive");
}
}  // namespace

std::vector<std::string> validate(const Configuration& cfg) {
  std::vector<std::string> warnings;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ParallelPlates>) {
          require_positive(g.area, "area");
          require_positive(g.a, "gap a");
        } else if constexpr (std::is_same_v<T, SphereAbovePlate>) {
          require_positive(g.R, "R");
          require_positive(g.a, "a");
          if (g.a / g.R > kPftMaxRatio) warnings.push_back("a/R exceeds 0.1; proximity-force result is unreliable");
        } else if constexpr (std::is_same_v<T, Interval> || std::is_same_v<T, CircleS1>) {
          require_positive(g.a, "a");
        } else if constexpr (std::is_same_v<T, SphereS2>) {
          require_positive(g.radius, "radius");
          if (g.mass < 0) domain_error("mass must be non-negative");
        } else if constexpr (std::is_same_v<T, CylinderPlane>) {
          require_positive(g.a, "a");
          require_positive(g.L, "L");
        } else if constexpr (std::is_same_v<T, Box>) {
          require_positive(g.a1, "a1");
          require_positive(g.a2, "a2");
          require_positive(g.a3, "a3");
        } else if constexpr (std::is_same_v<T, CorrugatedSpherePlate>) {
          require_positive(g.R, "R");
          require_positive(g.a, "a");
          require_positive(g.A, "A");
          require_positive(g.L, "L");
          if (g.a / g.R > kPftMaxRatio) warnings.push_back("a/R exceeds 0.1; proximity-force result is unreliable");
        }
      },
      cfg);
  return warnings;
}

double teff(double a, const Constants& k) {
  if (!(a > 0.0)) domain_error("teff: separation must be positive");
  return k.hbar * k.c / (2.0 * a * k.k_B);
}

ThermalState::ThermalState(double T_) : T(T_) {
  if (!(T_ >= 0.0)) domain_error("temperature must be non-negative");
}

}  // namespace casimir
