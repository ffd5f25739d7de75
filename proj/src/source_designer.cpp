#include "photonpair/source_designer.hpp"

#include <cmath>
#include <functional>

#include "photonpair/gaussian_model.hpp"
#include "photonpair/wigner_numerics.hpp"
#include "photonpair/schmidt_analysis.hpp"

namespace photonpair::source_designer {

const char* to_string(GvmCondition c) {
  return c == GvmCondition::SGVM ? "sgvm" : "agvm";
}

CrystalSpec DesignSolution::crystal() const {
  CrystalSpec spec;
  spec.material = material;
  spec.pm_type = crystal_optics::PmType::TypeII;
  spec.cut_angle_deg = theta_deg;
  spec.length_mm = length_mm;
  spec.signal_polarization = signal_polarization;
  return spec;
}

namespace {

// Bracketing root-find (bisection refined by secant) to 0.01 nm.
double solve_lambda(const std::function<double(double)>& f, double lo,
                    double hi, const char* what) {
  double flo = f(lo), fhi = f(hi);
  if (flo * fhi > 0)
    throw SolverError(std::string("no ") + what +
                      " point in the wavelength range [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "] nm");
  while (hi - lo > 0.01) {
    double mid = 0.5 * (lo + hi);
    // Secant proposal, accepted when it stays inside the bracket.
    if (fhi != flo) {
      const double sec = hi - fhi * (hi - lo) / (fhi - flo);
      if (sec > lo + 0.1 * (hi - lo) && sec < hi - 0.1 * (hi - lo)) mid = sec;
    }
    const double fm = f(mid);
    if (flo * fm <= 0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

DesignSolution finish_solution(const SellmeierTable& table, Material material,
                               GvmCondition condition, double lambda_c,
                               Polarization signal_pol, double length_mm) {
  DesignSolution sol;
  sol.material = material;
  sol.condition = condition;
  sol.lambda_c_nm = lambda_c;
  sol.length_mm = length_mm;
  sol.signal_polarization = signal_pol;
  sol.theta_deg = crystal_optics::phasematch_angle(
      table, material, crystal_optics::PmType::TypeII, lambda_c, signal_pol);
  const auto walk =
      crystal_optics::walkoff_terms(table, sol.crystal(), lambda_c);
  sol.tau_s_fs = walk.tau_s_fs;
  sol.tau_i_fs = walk.tau_i_fs;
  sol.tau_minus_fs = walk.tau_minus_fs();
  sol.residual_fs = condition == GvmCondition::SGVM
                        ? std::abs(sol.tau_s_fs + sol.tau_i_fs)
                        : std::abs(sol.tau_s_fs);
  if (std::abs(sol.tau_i_fs) > 0)
    sol.sigma_star =
        2.0 / (std::sqrt(kSincGaussGamma) * std::abs(sol.tau_i_fs));
  if (sol.residual_fs > 0.1)
    throw SolverError(std::string(to_string(condition)) +
                      " residual above 0.1 fs after the wavelength solve");
  return sol;
}

}  // namespace

DesignSolution find_sgvm(const SellmeierTable& table, Material material,
                         double lambda_lo_nm, double lambda_hi_nm,
                         double length_mm) {
  auto residual = [&](double lambda) {
    const double theta = crystal_optics::phasematch_angle(
        table, material, crystal_optics::PmType::TypeII, lambda);
    CrystalSpec spec;
    spec.material = material;
    spec.pm_type = crystal_optics::PmType::TypeII;
    spec.cut_angle_deg = theta;
    spec.length_mm = length_mm;
    const auto w = crystal_optics::walkoff_terms(table, spec, lambda);
    return w.tau_s_fs + w.tau_i_fs;
  };
  const double lambda =
      solve_lambda(residual, lambda_lo_nm, lambda_hi_nm, "SGVM");
  return finish_solution(table, material, GvmCondition::SGVM, lambda,
                         Polarization::Ordinary, length_mm);
}

DesignSolution find_agvm(const SellmeierTable& table, Material material,
                         double lambda_lo_nm, double lambda_hi_nm,
                         double length_mm) {
  // The matched daughter becomes the signal; try each polarization and
  // keep the one whose residual brackets a root.
  for (Polarization pol :
       {Polarization::Ordinary, Polarization::Extraordinary}) {
    auto residual = [&](double lambda) {
      const double theta = crystal_optics::phasematch_angle(
          table, material, crystal_optics::PmType::TypeII, lambda, pol);
      CrystalSpec spec;
      spec.material = material;
      spec.pm_type = crystal_optics::PmType::TypeII;
      spec.cut_angle_deg = theta;
      spec.length_mm = length_mm;
      spec.signal_polarization = pol;
      return crystal_optics::walkoff_terms(table, spec, lambda).tau_s_fs;
    };
    if (residual(lambda_lo_nm) * residual(lambda_hi_nm) > 0) continue;
    const double lambda =
        solve_lambda(residual, lambda_lo_nm, lambda_hi_nm, "AGVM");
    return finish_solution(table, material, GvmCondition::AGVM, lambda, pol,
                           length_mm);
  }
  throw SolverError("no AGVM point in the wavelength range [" +
                    std::to_string(lambda_lo_nm) + ", " +
                    std::to_string(lambda_hi_nm) +
                    "] nm for either daughter polarization");
}

double agvm_quality(const DesignSolution& solution, double length_mm,
                    double sigma) {
  // tau_i scales linearly with length.
  const double tau_i = solution.tau_i_fs * length_mm / solution.length_mm;
  return sigma * std::abs(tau_i);
}

ScanTable scan(const SellmeierTable& table, const CrystalSpec& crystal_base,
               double lambda_c_nm, const std::vector<double>& lengths_mm,
               const std::vector<double>& pump_fwhms_nm,
               const ScanOptions& options) {
  ScanTable tab;
  tab.lengths_mm = lengths_mm;
  tab.pump_fwhms_nm = pump_fwhms_nm;
  tab.cells.resize(lengths_mm.size() * pump_fwhms_nm.size());

  for (std::size_t il = 0; il < lengths_mm.size(); ++il) {
    for (std::size_t ib = 0; ib < pump_fwhms_nm.size(); ++ib) {
      ScanCell& cell = tab.cells[il * pump_fwhms_nm.size() + ib];
      cell.length_mm = lengths_mm[il];
      cell.pump_fwhm_nm = pump_fwhms_nm[ib];
      try {
        CrystalSpec crystal = crystal_base;
        crystal.length_mm = cell.length_mm;
        const auto pump = state_builder::PumpSpec::from_fwhm(
            lambda_c_nm / 2.0, cell.pump_fwhm_nm);
        const auto filters = state_builder::FilterSpec::unfiltered();

        const auto walk =
            crystal_optics::walkoff_terms(table, crystal, lambda_c_nm);
        gaussian_model::ModelInputs gin;
        gin.sigma = pump.sigma;
        gin.omega_c = omega_from_lambda(lambda_c_nm);
        gin.tau_s_fs = walk.tau_s_fs;
        gin.tau_i_fs = walk.tau_i_fs;
        const auto report = gaussian_model::make_report(gin);
        cell.tb = report.tb;
        cell.delta_t_analytic_fs = report.delta_t_fs;
        cell.tau_c_fs = report.tau_c_fs;

        auto grid = state_builder::auto_grid(table, crystal, pump, filters);
        if (options.grid_n > 0) {
          const double span = grid.span();
          grid.size = options.grid_n;
          grid.spacing = span / grid.size;
        }
        const auto jsa =
            state_builder::build_jsa(table, crystal, pump, filters, grid);
        const auto rho =
            wigner_numerics::heralded_density_matrix(jsa, filters);
        const auto cwf = wigner_numerics::numerical_cwf(rho);
        const auto marg = wigner_numerics::marginals(cwf);
        cell.delta_t_numeric_fs =
            wigner_numerics::measure_width(marg.temporal).half_width;
        cell.delta_omega =
            wigner_numerics::measure_width(marg.spectral).half_width;
        cell.ratio_num_analytic =
            cell.delta_t_numeric_fs / cell.delta_t_analytic_fs;
        if (options.with_schmidt) {
          const auto dec = schmidt_analysis::decompose(jsa);
          cell.schmidt_number = dec.schmidt_number();
        }
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
    }
  }
  return tab;
}

}  // namespace photonpair::source_designer
