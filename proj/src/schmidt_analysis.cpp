#include "photonpair/schmidt_analysis.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "photonpair/gaussian_model.hpp"

namespace photonpair::schmidt_analysis {

double SchmidtDecomposition::sum() const {
  double s = 0;
  for (double l : eigenvalues) s += l;
  return s;
}

double SchmidtDecomposition::schmidt_number() const {
  double s2 = 0;
  for (double l : eigenvalues) s2 += l * l;
  return 1.0 / s2;
}

SchmidtDecomposition decompose(const JointSpectralAmplitude& jsa) {
  const double spacing = jsa.grid.spacing;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(jsa.values * spacing,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw Error("Schmidt decomposition failed: SVD did not converge");

  SchmidtDecomposition d;
  d.grid = jsa.grid;
  const auto& s = svd.singularValues();
  d.eigenvalues.resize(static_cast<std::size_t>(s.size()));
  for (Eigen::Index m = 0; m < s.size(); ++m)
    d.eigenvalues[static_cast<std::size_t>(m)] = s(m) * s(m);

  // Grid functions with spacing-weighted unit norm; f(j,k) =
  // sum sqrt(lambda) u(j) v(k) then holds exactly.
  const double scale = 1.0 / std::sqrt(spacing);
  d.modes_u = svd.matrixU() * scale;
  d.modes_v = svd.matrixV().conjugate() * scale;

  for (Eigen::Index m = 0; m < d.modes_u.cols(); ++m) {
    Eigen::Index imax = 0;
    d.modes_u.col(m).cwiseAbs().maxCoeff(&imax);
    const std::complex<double> ref = d.modes_u(imax, m);
    if (std::abs(ref) > 0) {
      const std::complex<double> phase = std::abs(ref) / ref;
      d.modes_u.col(m) *= phase;
      d.modes_v.col(m) *= std::conj(phase);
    }
  }
  return d;
}

double schmidt_number(const SchmidtDecomposition& d) {
  return d.schmidt_number();
}

EntanglementReport purity_report(const SchmidtDecomposition& d,
                                 const HeraldedDensityMatrix& rho) {
  if (rho.trigger_filtered)
    throw ContractViolationError(
        "p = 1/K requires a frequency-independent trigger; the density "
        "matrix was built with a trigger filter");
  EntanglementReport r;
  r.schmidt_number = d.schmidt_number();
  r.purity = 1.0 / r.schmidt_number;
  r.purity_trace = rho.purity();
  r.purity_discrepancy = std::abs(r.purity - r.purity_trace);
  r.visibility = r.purity;
  r.effective_rank = 0;
  for (double l : d.eigenvalues)
    if (l > 1e-6) ++r.effective_rank;
  return r;
}

KTbCheck gaussian_k_equals_tb_check(
    const crystal_optics::SellmeierTable& table,
    const crystal_optics::CrystalSpec& crystal,
    const state_builder::PumpSpec& pump,
    const state_builder::FilterSpec& filters,
    const state_builder::FrequencyGrid& grid) {
  if (filters.sigma_g)
    throw ContractViolationError(
        "K = TB is stated for an unfiltered trigger (sigma_g = inf)");

  state_builder::BuildOptions opts;
  opts.pmf = state_builder::PmfShape::GaussianLinearized;
  const auto jsa = state_builder::build_jsa(table, crystal, pump, filters,
                                            grid, opts);
  const auto dec = decompose(jsa);

  const auto walk = crystal_optics::walkoff_terms(
      table, crystal, lambda_from_omega(grid.omega_c));
  gaussian_model::ModelInputs in;
  in.sigma = pump.sigma;
  in.sigma_F = filters.sigma_F;
  in.sigma_g = std::nullopt;
  in.omega_c = grid.omega_c;
  in.tau_s_fs = walk.tau_s_fs;
  in.tau_i_fs = walk.tau_i_fs;
  const double tb = gaussian_model::time_bandwidth(
      gaussian_model::second_moments(in));

  KTbCheck check;
  check.schmidt_number = dec.schmidt_number();
  check.time_bandwidth = tb;
  check.relative_difference =
      std::abs(check.schmidt_number - tb) / tb;
  check.pass = check.relative_difference < 0.02;
  return check;
}

}  // namespace photonpair::schmidt_analysis
