#pragma once

#include <cmath>

// Unit conventions used throughout:
//   wavelength         nm
//   angular frequency  rad/fs
//   crystal length     mm
//   wavenumber         rad/um
//   inverse group velocity  fs/mm
//   time               fs
// Keeping these fixed puts all working magnitudes near unity.

namespace photonpair {

inline constexpr double kSpeedOfLightNmPerFs = 299.792458;
inline constexpr double kPi = 3.14159265358979323846;

// Gaussian approximation of sinc: sinc(x) ~ exp(-gamma*x^2).
inline constexpr double kSincGaussGamma = 0.193;

// Reported "THz" is angular frequency in units of 1e12 rad/s,
// i.e. (rad/fs) * 1e3.  This convention keeps the width-product
// numbers dimensionally consistent (fs * rad/fs).
inline constexpr double kThzPerRadFs = 1.0e3;

inline double omega_from_lambda(double lambda_nm) {
  return 2.0 * kPi * kSpeedOfLightNmPerFs / lambda_nm;
}

inline double lambda_from_omega(double omega_rad_fs) {
  return 2.0 * kPi * kSpeedOfLightNmPerFs / omega_rad_fs;
}

}  // namespace photonpair
