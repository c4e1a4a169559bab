#pragma once

#include <istream>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "casimir/model.hpp"
#include "casimir/numerics.hpp"

namespace casimir::mat {

struct IdealMetal {};
struct Plasma {
  double wp;  // rad/s
};
struct Drude {
  double wp;     // rad/s
  double gamma;  // rad/s
};
// Frequency-independent permittivity; a toy for limits and tests.
struct Constant {
  double eps;
};
// Single Lorentz oscillator, eps = 1 + (eps0 - 1)/(1 + xi^2/w0^2).
struct Oscillator {
  double eps0;
  double w0;  // rad/s
};

struct OpticalSample {
  double energy;  // rad/s
  double n;
  double k;
  double im_eps() const { return 2 * n * k; }
};

class TabulatedData;

struct Tabulated {
  std::shared_ptr<const TabulatedData> data;
};

using MaterialModel = std::variant<IdealMetal, Plasma, Drude, Constant, Oscillator, Tabulated>;

// Sorted (omega, Im eps) table with Drude extension below and omega^-3 tail above the last sample.
class TabulatedData {
public:
  TabulatedData(std::vector<OpticalSample> samples, Drude low_freq, double high_freq_cut,
                const Constants& k = Constants::codata2018());
  double eps(double xi) const;
  double im_eps(double omega) const;
  const std::vector<OpticalSample>& samples() const { return samples_; }
  const Drude& low_freq() const { return low_; }
  double high_freq_cut() const { return cut_; }
  // Direct evaluation of the dispersion integral, bypassing the cache.
  double eps_direct(double xi) const;

private:
  std::vector<OpticalSample> samples_;
  std::vector<double> ln_w_, ln_im_;
  Drude low_;
  double cut_;
  double w_lo_, w_hi_;
  std::vector<double> grid_ln_xi_, grid_ln_epsm1_;
  std::shared_ptr<void> spline_;
};

MaterialModel plasma_ev(double wp_ev, const Constants& k = Constants::codata2018());
MaterialModel drude_ev(double wp_ev, double gamma_ev, const Constants& k = Constants::codata2018());

// eps(i xi) for xi > 0; +inf for IdealMetal.
double eps_imaginary(const MaterialModel& m, double xi);
// Static permittivity; +inf for metals.
double eps_static(const MaterialModel& m);
bool is_metal(const MaterialModel& m);
// Penetration depth c/wp for Plasma and Drude.
double penetration_depth(const MaterialModel& m, const Constants& k = Constants::codata2018());
std::string describe(const MaterialModel& m);

// Rows of energy_eV,n,k; '#' comments and a header line are skipped.
MaterialModel ingest_optical_table(std::istream& in, Drude low_freq, double high_freq_cut_ev = 1e4,
                                   const Constants& k = Constants::codata2018());
MaterialModel ingest_optical_file(const std::string& path, Drude low_freq, double high_freq_cut_ev = 1e4,
                                  const Constants& k = Constants::codata2018());
MaterialModel from_samples(std::vector<OpticalSample> samples, Drude low_freq, double high_freq_cut,
                           const Constants& k = Constants::codata2018());

// Hamaker constant in J; xi_max caps the frequency integral for models that do not decay.
double hamaker(const MaterialModel& m, const num::QuadratureSpec& spec = {}, double xi_max = 0.0,
               const Constants& k = Constants::codata2018());
double psi_factor(double eps0, const num::QuadratureSpec& spec = {});

}  // namespace casimir::mat
