#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "photonpair/crystal_optics.hpp"
#include "photonpair/errors.hpp"
#include "photonpair/units.hpp"

namespace photonpair::state_builder {

using crystal_optics::CrystalSpec;
using crystal_optics::SellmeierTable;
using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;

// sigma = (2*pi*c*fwhm/lambda_p^2) / (2*sqrt(ln2/2)); the bandwidth is
// the intensity FWHM of |alpha|^2 in wavelength.  This convention is
// what makes (415 nm, 5 nm) come out as tau_p = 30.4 fs, and every
// downstream number depends on it.
double sigma_from_fwhm(double lambda_p_nm, double fwhm_nm);

struct PumpSpec {
  double lambda_p_nm = 0;   // pump center, = lambda_c / 2
  double fwhm_nm = 0;       // intensity FWHM of the pump spectrum
  double sigma = 0;         // amplitude 1/e half-width, rad/fs
  double tau_p_fs = 0;      // sqrt(2)/sigma, exactly

  static PumpSpec from_fwhm(double lambda_p_nm, double fwhm_nm);
  double omega_p() const { return omega_from_lambda(lambda_p_nm); }
};

// Gaussian filter widths; nullopt means unfiltered (the exponential
// term drops out exactly instead of relying on a large float).
struct FilterSpec {
  std::optional<double> sigma_F;   // two-photon filter width, rad/fs
  std::optional<double> sigma_g;   // trigger filter width, rad/fs
  double omega_g0 = 0;             // trigger filter center, rad/fs

  static FilterSpec unfiltered() { return {}; }
  void validate() const;
};

struct FrequencyGrid {
  double omega_c = 0;  // rad/fs
  double spacing = 0;  // rad/fs
  int size = 0;        // power of two, >= 64

  double value(int j) const { return omega_c + (j - size / 2) * spacing; }
  std::vector<double> axis() const;
  double span() const { return spacing * size; }

  void validate() const;
};

struct JointSpectralAmplitude {
  FrequencyGrid grid;
  MatrixXcd values;  // values(j, k) = f(w_s_j, w_i_k)

  // sum |f|^2 * spacing^2
  double norm_squared() const;
};

// alpha(ws + wi) = exp(-(ws + wi - 2wc)^2 / sigma^2); equals 1 on the
// degenerate line.
Complex pump_envelope(double omega_s, double omega_i, double omega_c,
                      const PumpSpec& pump);

enum class PmfShape {
  // sinc(L dk/2) exp(i L dk/2) with the full phasemismatch.
  Sinc,
  // exp(-gamma x^2), x = (tau_s(ws - wc) + tau_i(wi - wc))/2: the
  // Gaussian approximation applied to the first-order mismatch, the
  // domain where the closed-form moments are exact.
  GaussianLinearized,
};

// Phasematching function at one grid point (Sinc shape, full delta_k).
Complex phasematching_function(const SellmeierTable& table,
                               const CrystalSpec& crystal, double omega_s,
                               double omega_i);

struct BuildOptions {
  PmfShape pmf = PmfShape::Sinc;
  double boundary_mass_limit = 1e-4;
  bool check_boundary = true;
};

// f = Phi * alpha * F, pointwise on the grid, rescaled to unit L2 norm
// (sum |f|^2 spacing^2 = 1).  The trigger efficiency g is not folded in
// here; it belongs to the heralding measurement.
JointSpectralAmplitude build_jsa(const SellmeierTable& table,
                                 const CrystalSpec& crystal,
                                 const PumpSpec& pump,
                                 const FilterSpec& filters,
                                 const FrequencyGrid& grid,
                                 const BuildOptions& options = {});

struct GridOptions {
  int min_size = 256;
  int max_size = 4096;
  int samples_per_feature = 8;
};

// Sizes a grid from the pump, filter, walkoff and (when the Gaussian
// model is degenerate) GVD scales, then adds a sinc-tail margin so the
// boundary-mass check passes.
FrequencyGrid auto_grid(const SellmeierTable& table,
                        const CrystalSpec& crystal, const PumpSpec& pump,
                        const FilterSpec& filters,
                        const GridOptions& options = {});

}  // namespace photonpair::state_builder
