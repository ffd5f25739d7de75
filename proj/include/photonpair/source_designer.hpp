#pragma once

#include <optional>
#include <string>
#include <vector>

#include "photonpair/crystal_optics.hpp"
#include "photonpair/state_builder.hpp"

namespace photonpair::source_designer {

using crystal_optics::CrystalSpec;
using crystal_optics::Material;
using crystal_optics::Polarization;
using crystal_optics::SellmeierTable;

enum class GvmCondition { SGVM, AGVM };

const char* to_string(GvmCondition c);

struct DesignSolution {
  Material material;
  GvmCondition condition;
  double lambda_c_nm = 0;
  double theta_deg = 0;
  double length_mm = 1;
  Polarization signal_polarization = Polarization::Ordinary;
  double tau_s_fs = 0;
  double tau_i_fs = 0;
  double tau_minus_fs = 0;
  double residual_fs = 0;  // |tau_s + tau_i| (SGVM) or |tau_s| (AGVM)
  // Pump bandwidth at which T_si = 0 exactly under this geometry
  // (sigma* = 2/(sqrt(gamma) |tau_i|)); SGVM is factorable only there.
  double sigma_star = 0;

  CrystalSpec crystal() const;
};

// Outer root in lambda_c of tau_s + tau_i with the cut angle re-solved
// at every wavelength; residual |tau_s + tau_i| < 0.1 fs at length_mm.
DesignSolution find_sgvm(const SellmeierTable& table, Material material,
                         double lambda_lo_nm, double lambda_hi_nm,
                         double length_mm = 1.0);

// Same for tau_s = 0 (pump group-matched to the signal).  The daughter
// polarization admitting a root becomes the signal.
DesignSolution find_agvm(const SellmeierTable& table, Material material,
                         double lambda_lo_nm, double lambda_hi_nm,
                         double length_mm = 1.0);

// Dimensionless sigma*|tau_i|; TB -> 1 when this is large.  A value of
// at least kAgvmQualityThreshold is recommended.
inline constexpr double kAgvmQualityThreshold = 10.0;
double agvm_quality(const DesignSolution& solution, double length_mm,
                    double sigma);

struct ScanCell {
  double length_mm = 0;
  double pump_fwhm_nm = 0;
  bool ok = false;
  std::string error;
  double tb = 0;
  double schmidt_number = 0;
  double delta_t_analytic_fs = 0;
  double delta_t_numeric_fs = 0;
  double delta_omega = 0;        // rad/fs, numeric
  double tau_c_fs = 0;           // analytic
  double ratio_num_analytic = 0; // delta_t_numeric / delta_t_analytic
};

struct ScanTable {
  std::vector<double> lengths_mm;
  std::vector<double> pump_fwhms_nm;
  std::vector<ScanCell> cells;  // row-major over (length, fwhm)

  const ScanCell& cell(std::size_t il, std::size_t ib) const {
    return cells[il * pump_fwhms_nm.size() + ib];
  }
};

struct ScanOptions {
  int grid_n = 0;  // 0 = auto
  bool with_schmidt = true;
};

// Full pipeline (build -> Gaussian report -> numerical CWF -> widths ->
// Schmidt) per cell; per-cell failures are recorded and the scan
// continues.
ScanTable scan(const SellmeierTable& table, const CrystalSpec& crystal_base,
               double lambda_c_nm, const std::vector<double>& lengths_mm,
               const std::vector<double>& pump_fwhms_nm,
               const ScanOptions& options = {});

}  // namespace photonpair::source_designer
