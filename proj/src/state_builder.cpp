#include "photonpair/state_builder.hpp"

#include <algorithm>
#include <cmath>

#include "photonpair/gaussian_model.hpp"

namespace photonpair::state_builder {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

int next_power_of_two(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

double sigma_from_fwhm(double lambda_p_nm, double fwhm_nm) {
  if (!(lambda_p_nm > 0) || !(fwhm_nm > 0))
    throw Error("pump wavelength and bandwidth must be positive");
  const double domega_fwhm =
      2.0 * kPi * kSpeedOfLightNmPerFs * fwhm_nm / (lambda_p_nm * lambda_p_nm);
  // |alpha|^2 = exp(-2 x^2/sigma^2) has intensity FWHM 2*sqrt(ln2/2)*sigma.
  return domega_fwhm / (2.0 * std::sqrt(std::log(2.0) / 2.0));
}

PumpSpec PumpSpec::from_fwhm(double lambda_p_nm, double fwhm_nm) {
  PumpSpec p;
  p.lambda_p_nm = lambda_p_nm;
  p.fwhm_nm = fwhm_nm;
  p.sigma = sigma_from_fwhm(lambda_p_nm, fwhm_nm);
  p.tau_p_fs = std::sqrt(2.0) / p.sigma;
  return p;
}

void FilterSpec::validate() const {
  if (sigma_F && !(*sigma_F > 0))
    throw Error("two-photon filter width must be positive");
  if (sigma_g) {
    if (!(*sigma_g > 0)) throw Error("trigger filter width must be positive");
    if (!(omega_g0 > 0)) throw Error("trigger filter center must be positive");
  }
}

std::vector<double> FrequencyGrid::axis() const {
  std::vector<double> ax(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) ax[static_cast<std::size_t>(j)] = value(j);
  return ax;
}

void FrequencyGrid::validate() const {
  if (size < 64 || (size & (size - 1)) != 0)
    throw Error("grid size must be a power of two >= 64");
  if (!(spacing > 0)) throw Error("grid spacing must be positive");
  if (!(omega_c > 0)) throw Error("grid center must be positive");
}

double JointSpectralAmplitude::norm_squared() const {
  return values.squaredNorm() * grid.spacing * grid.spacing;
}

Complex pump_envelope(double omega_s, double omega_i, double omega_c,
                      const PumpSpec& pump) {
  const double detuning = omega_s + omega_i - 2.0 * omega_c;
  return std::exp(-detuning * detuning / (pump.sigma * pump.sigma));
}

Complex phasematching_function(const SellmeierTable& table,
                               const CrystalSpec& crystal, double omega_s,
                               double omega_i) {
  const double dk = crystal_optics::delta_k(table, crystal, omega_s, omega_i);
  // L in um so L*dk is in radians.
  const double x = crystal.length_mm * 1e3 * dk / 2.0;
  return sinc(x) * std::exp(Complex(0.0, x));
}

JointSpectralAmplitude build_jsa(const SellmeierTable& table,
                                 const CrystalSpec& crystal,
                                 const PumpSpec& pump,
                                 const FilterSpec& filters,
                                 const FrequencyGrid& grid,
                                 const BuildOptions& options) {
  crystal.validate();
  filters.validate();
  grid.validate();

  JointSpectralAmplitude jsa;
  jsa.grid = grid;
  const int n = grid.size;
  jsa.values.resize(n, n);
  const double wc = grid.omega_c;

  // Per-axis refractive indices are reused across the grid; only the
  // pump index depends on the sum frequency.
  const std::vector<double> ax = grid.axis();

  crystal_optics::WalkoffTerms walk{};
  if (options.pmf == PmfShape::GaussianLinearized)
    walk = crystal_optics::walkoff_terms(table, crystal,
                                         lambda_from_omega(wc));

  std::vector<double> ns(ax.size()), ni(ax.size());
  if (options.pmf == PmfShape::Sinc) {
    for (std::size_t j = 0; j < ax.size(); ++j) {
      ns[j] = crystal_optics::refractive_index(
          table, crystal.material, crystal.signal_polarization,
          crystal.cut_angle_deg, lambda_from_omega(ax[j]));
      ni[j] = crystal_optics::refractive_index(
          table, crystal.material, crystal.idler_polarization(),
          crystal.cut_angle_deg, lambda_from_omega(ax[j]));
    }
  }

  const double inv_sigmaF2 =
      filters.sigma_F ? 1.0 / (*filters.sigma_F * *filters.sigma_F) : 0.0;

  for (int j = 0; j < n; ++j) {
    const double ws = ax[static_cast<std::size_t>(j)];
    for (int k = 0; k < n; ++k) {
      const double wi = ax[static_cast<std::size_t>(k)];
      Complex pmf;
      if (options.pmf == PmfShape::Sinc) {
        const double wp = ws + wi;
        const double np = crystal_optics::refractive_index(
            table, crystal.material,
            crystal_optics::Polarization::Extraordinary,
            crystal.cut_angle_deg, lambda_from_omega(wp));
        const double dk = (np * wp - ns[static_cast<std::size_t>(j)] * ws -
                           ni[static_cast<std::size_t>(k)] * wi) /
                          kSpeedOfLightNmPerFs * 1e3;
        const double x = crystal.length_mm * 1e3 * dk / 2.0;
        pmf = sinc(x) * std::exp(Complex(0.0, x));
      } else {
        const double x =
            (walk.tau_s_fs * (ws - wc) + walk.tau_i_fs * (wi - wc)) / 2.0;
        pmf = std::exp(-kSincGaussGamma * x * x);
      }
      const Complex alpha = pump_envelope(ws, wi, wc, pump);
      double filter = 1.0;
      if (inv_sigmaF2 > 0) {
        const double ds = ws - wc, di = wi - wc;
        filter = std::exp(-(ds * ds + di * di) * inv_sigmaF2);
      }
      jsa.values(j, k) = pmf * alpha * filter;
    }
  }

  const double norm2 = jsa.norm_squared();
  if (!(norm2 > 0) || !std::isfinite(norm2))
    throw Error("joint spectral amplitude vanished or is not finite on the "
                "grid");
  jsa.values /= std::sqrt(norm2);

  if (options.check_boundary) {
    const double d2 = grid.spacing * grid.spacing;
    const double boundary =
        (jsa.values.row(0).squaredNorm() + jsa.values.row(n - 1).squaredNorm() +
         jsa.values.col(0).squaredNorm() +
         jsa.values.col(n - 1).squaredNorm()) *
        d2;
    if (boundary > options.boundary_mass_limit)
      throw SupportClippedError(
          "JSA support clipped: boundary mass " + std::to_string(boundary) +
          " exceeds " + std::to_string(options.boundary_mass_limit) +
          "; enlarge the grid span");
  }
  return jsa;
}

FrequencyGrid auto_grid(const SellmeierTable& table,
                        const CrystalSpec& crystal, const PumpSpec& pump,
                        const FilterSpec& filters,
                        const GridOptions& options) {
  crystal.validate();
  filters.validate();
  const double wc = omega_from_lambda(pump.lambda_p_nm * 2.0);
  const auto walk =
      crystal_optics::walkoff_terms(table, crystal, pump.lambda_p_nm * 2.0);

  double span = 6.0 / pump.tau_p_fs;

  // 6x the Gaussian-model spectral width, when the model is not
  // degenerate for this geometry.
  gaussian_model::ModelInputs gin;
  gin.sigma = pump.sigma;
  gin.sigma_F = filters.sigma_F;
  gin.sigma_g = filters.sigma_g;
  gin.omega_g0 = filters.sigma_g ? filters.omega_g0 : wc;
  gin.omega_c = wc;
  gin.tau_s_fs = walk.tau_s_fs;
  gin.tau_i_fs = walk.tau_i_fs;
  bool degenerate_model = false;
  try {
    const auto w = gaussian_model::widths(gaussian_model::second_moments(gin));
    span = std::max(span, 6.0 * w.delta_omega);
  } catch (const PhysicalityError&) {
    degenerate_model = true;
  }

  // 4x the sinc main-lobe width (zero-to-zero, 4pi/|tau|) per axis.
  const double tau_floor = 1e-6;
  for (double tau : {walk.tau_s_fs, walk.tau_i_fs})
    if (std::abs(tau) > tau_floor)
      span = std::max(span, 16.0 * kPi / std::abs(tau));

  if (degenerate_model) {
    // Near TypeI the support runs along the phasematched ridge until the
    // pump can no longer compensate the daughters' GVD; e^-1 intensity
    // half-width sqrt(sigma*tau/(sqrt(2) L k''_s)).
    const double kpp = std::abs(crystal_optics::group_velocity_dispersion(
        table, crystal.material, crystal.signal_polarization,
        crystal.cut_angle_deg, pump.lambda_p_nm * 2.0));
    const double tau_bar =
        0.5 * (std::abs(walk.tau_s_fs) + std::abs(walk.tau_i_fs));
    if (kpp * crystal.length_mm > 0 && tau_bar > 0) {
      const double ridge = std::sqrt(pump.sigma * tau_bar /
                                     (std::sqrt(2.0) * crystal.length_mm *
                                      kpp));
      span = std::max(span, 4.0 * ridge);
    }
  }

  // Narrowest per-axis feature sets the sample spacing.
  double feature = 2.0 * pump.sigma;
  if (filters.sigma_F) feature = std::min(feature, 2.0 * *filters.sigma_F);
  for (double tau : {walk.tau_s_fs, walk.tau_i_fs})
    if (std::abs(tau) > tau_floor)
      feature = std::min(feature, 4.0 * kPi / std::abs(tau));
  double spacing_max = feature / options.samples_per_feature;

  int size = std::max(options.min_size,
                      next_power_of_two(static_cast<int>(
                          std::ceil(span / spacing_max))));

  // Sinc tails decay slowly; pad the span so the boundary-mass check
  // passes (edge mass fraction ~ spacing/(pi |tau| S^2) per axis).
  for (int pass = 0; pass < 2; ++pass) {
    const double spacing = span / size;
    for (double tau : {walk.tau_s_fs, walk.tau_i_fs}) {
      if (std::abs(tau) > tau_floor) {
        const double s_tail =
            std::sqrt(spacing * 1e4 / (kPi * std::abs(tau)));
        span = std::max(span, 2.0 * s_tail);
      }
    }
    size = std::max(size, next_power_of_two(static_cast<int>(
                              std::ceil(span / spacing_max))));
  }
  size = std::min(size, options.max_size);

  FrequencyGrid grid;
  grid.omega_c = wc;
  grid.size = size;
  grid.spacing = span / size;
  return grid;
}

}  // namespace photonpair::state_builder
