#pragma once

#include <optional>
#include <vector>

#include "photonpair/chronocyclic.hpp"
#include "photonpair/errors.hpp"
#include "photonpair/units.hpp"

namespace photonpair::gaussian_model {

// Inputs to the closed forms.  Filter widths of nullopt mean
// unfiltered: the corresponding 2/sigma_F^2 and 1/sigma_g^2 terms are
// exactly zero.
struct ModelInputs {
  double sigma = 0;                    // pump amplitude 1/e half-width, rad/fs
  std::optional<double> sigma_F;       // two-photon filter width
  std::optional<double> sigma_g;       // trigger filter width
  double omega_g0 = 0;                 // trigger filter center, rad/fs
  double omega_c = 0;                  // degenerate PDC frequency, rad/fs
  double tau_s_fs = 0;
  double tau_i_fs = 0;
  double gamma = kSincGaussGamma;
};

// T_si^2 can be negative (tau_s*tau_i < 0); it is carried signed and
// only even powers enter the widths.
struct SecondMoments {
  double tss2 = 0;  // fs^2
  double tii2 = 0;
  double tsi2 = 0;  // signed
};

SecondMoments second_moments(const ModelInputs& in);

struct Widths {
  double delta_t_fs = 0;
  double delta_omega = 0;  // rad/fs
};

// delta_t = T_ss, delta_omega = T_ii / sqrt(T_ss^2 T_ii^2 - T_si^4).
// Throws PhysicalityError when T_ss^2 T_ii^2 <= T_si^4.
Widths widths(const SecondMoments& m);

struct Shifts {
  double t_shift_fs = 0;      // T = tau_s / 2
  double omega_shift = 0;     // Omega, rad/fs
};

Shifts shifts(const ModelInputs& in, const SecondMoments& m);

// TB = (1 - T_si^4/(T_ss^2 T_ii^2))^(-1/2) >= 1.
double time_bandwidth(const SecondMoments& m);

// tau_c = sqrt(8 + gamma sigma_F^2 (tau_i - tau_s)^2) / (sqrt(2) sigma_F);
// unfiltered limit sqrt(gamma/2) |tau_s - tau_i|.
double correlation_time(std::optional<double> sigma_F, double tau_s_fs,
                        double tau_i_fs, double gamma = kSincGaussGamma);

// delta_t = tau_p sqrt(1 + 2/(sigma_F^2 tau_p^2) + (gamma/2) tau_s^2/tau_p^2);
// identical to widths() with an unfiltered trigger.
double heralded_duration_vs_pump(double tau_p_fs,
                                 std::optional<double> sigma_F,
                                 double tau_s_fs,
                                 double gamma = kSincGaussGamma);

// Everything the closed forms produce for one configuration.
struct GaussianReport {
  SecondMoments moments;
  double delta_t_fs = 0;
  double delta_omega = 0;       // rad/fs
  double tb = 0;
  double t_shift_fs = 0;
  double omega_shift = 0;       // rad/fs
  double tau_c_fs = 0;
  double tau_p_fs = 0;
  double omega_c = 0;
  double gamma = kSincGaussGamma;
};

// Assembles the full report; PhysicalityError propagates from widths().
GaussianReport make_report(const ModelInputs& in);

// W = 1/(pi dw dt) exp(-(w - wc + Omega)^2/dw^2) exp(-(t - T)^2/dt^2)
// sampled on the given axes; integrates to 1.
ChronocyclicWigner analytic_cwf(const GaussianReport& report,
                                const std::vector<double>& omega_axis,
                                const std::vector<double>& time_axis);

}  // namespace photonpair::gaussian_model
