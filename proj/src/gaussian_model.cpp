#include "photonpair/gaussian_model.hpp"

#include <cmath>

namespace photonpair::gaussian_model {

namespace {

double inv_sq(const std::optional<double>& width) {
  return width ? 1.0 / (*width * *width) : 0.0;
}

double discriminant(const SecondMoments& m) {
  return m.tss2 * m.tii2 - m.tsi2 * m.tsi2;
}

void require_physical(const SecondMoments& m) {
  if (!(discriminant(m) > 0))
    throw PhysicalityError(
        "T_ss^2 T_ii^2 <= T_si^4: the Gaussian model is degenerate for "
        "these parameters");
}

}  // namespace

SecondMoments second_moments(const ModelInputs& in) {
  SecondMoments m;
  const double two_over_sigma2 = 2.0 / (in.sigma * in.sigma);
  const double two_over_sigmaF2 = 2.0 * inv_sq(in.sigma_F);
  m.tss2 = two_over_sigmaF2 + two_over_sigma2 +
           in.gamma * in.tau_s_fs * in.tau_s_fs / 2.0;
  m.tii2 = inv_sq(in.sigma_g) + two_over_sigmaF2 + two_over_sigma2 +
           in.gamma * in.tau_i_fs * in.tau_i_fs / 2.0;
  m.tsi2 = two_over_sigma2 + in.gamma * in.tau_s_fs * in.tau_i_fs / 2.0;
  return m;
}

Widths widths(const SecondMoments& m) {
  require_physical(m);
  Widths w;
  w.delta_t_fs = std::sqrt(m.tss2);
  w.delta_omega = std::sqrt(m.tii2 / discriminant(m));
  return w;
}

Shifts shifts(const ModelInputs& in, const SecondMoments& m) {
  Shifts s;
  s.t_shift_fs = in.tau_s_fs / 2.0;
  if (in.sigma_g) {
    require_physical(m);
    s.omega_shift = inv_sq(in.sigma_g) * m.tsi2 / discriminant(m) *
                    (in.omega_g0 - in.omega_c);
  }
  return s;
}

double time_bandwidth(const SecondMoments& m) {
  require_physical(m);
  const double r = (m.tsi2 * m.tsi2) / (m.tss2 * m.tii2);
  return 1.0 / std::sqrt(1.0 - r);
}

double correlation_time(std::optional<double> sigma_F, double tau_s_fs,
                        double tau_i_fs, double gamma) {
  const double dtau = tau_i_fs - tau_s_fs;
  if (!sigma_F) return std::sqrt(gamma / 2.0) * std::abs(dtau);
  const double sF = *sigma_F;
  return std::sqrt(8.0 + gamma * sF * sF * dtau * dtau) /
         (std::sqrt(2.0) * sF);
}

double heralded_duration_vs_pump(double tau_p_fs,
                                 std::optional<double> sigma_F,
                                 double tau_s_fs, double gamma) {
  const double tp2 = tau_p_fs * tau_p_fs;
  const double filter_term = sigma_F ? 2.0 / (*sigma_F * *sigma_F * tp2) : 0.0;
  return tau_p_fs *
         std::sqrt(1.0 + filter_term +
                   gamma / 2.0 * tau_s_fs * tau_s_fs / tp2);
}

GaussianReport make_report(const ModelInputs& in) {
  GaussianReport r;
  r.moments = second_moments(in);
  const Widths w = widths(r.moments);
  r.delta_t_fs = w.delta_t_fs;
  r.delta_omega = w.delta_omega;
  r.tb = time_bandwidth(r.moments);
  const Shifts s = shifts(in, r.moments);
  r.t_shift_fs = s.t_shift_fs;
  r.omega_shift = s.omega_shift;
  r.tau_c_fs = correlation_time(in.sigma_F, in.tau_s_fs, in.tau_i_fs,
                                in.gamma);
  r.tau_p_fs = std::sqrt(2.0) / in.sigma;
  r.omega_c = in.omega_c;
  r.gamma = in.gamma;
  return r;
}

ChronocyclicWigner analytic_cwf(const GaussianReport& report,
                                const std::vector<double>& omega_axis,
                                const std::vector<double>& time_axis) {
  ChronocyclicWigner w;
  w.omega_axis = omega_axis;
  w.time_axis = time_axis;
  const auto n = static_cast<Eigen::Index>(omega_axis.size());
  const auto m = static_cast<Eigen::Index>(time_axis.size());
  w.values.resize(n, m);
  const double norm = 1.0 / (kPi * report.delta_omega * report.delta_t_fs);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double dw = (omega_axis[j] - report.omega_c + report.omega_shift) /
                      report.delta_omega;
    const double fw = std::exp(-dw * dw);
    for (Eigen::Index l = 0; l < m; ++l) {
      const double dt = (time_axis[l] - report.t_shift_fs) / report.delta_t_fs;
      w.values(j, l) = norm * fw * std::exp(-dt * dt);
    }
  }
  return w;
}

}  // namespace photonpair::gaussian_model
