#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "photonpair/crystal_optics.hpp"
#include "photonpair/gaussian_model.hpp"
#include "photonpair/schmidt_analysis.hpp"
#include "photonpair/source_designer.hpp"
#include "photonpair/state_builder.hpp"
#include "photonpair/wigner_numerics.hpp"

namespace photonpair::scenario {

// One scenario per file, plain key = value lines ('#' comments).
// Recognized keys (exact names are part of the CLI contract):
//   material            BBO | KDP
//   pm_type             typeI | typeII
//   cut_angle_deg       degrees | auto
//   length_mm           millimeters
//   lambda_c_nm         degenerate daughter wavelength
//   pump_fwhm_nm        pump intensity FWHM in wavelength
//   sigma_F             rad/fs | inf
//   sigma_g             rad/fs | inf
//   omega_g0            rad/fs | center
//   grid_N              power of two | auto
//   grid_span           rad/fs (full span) | auto
//   signal_polarization ordinary | extraordinary | auto
//   analytic            true | false
//   numerical           true | false
//   schmidt             true | false
//   joint_temporal      true | false
//   contour_level       fraction of max, default e^-1
struct ScenarioConfig {
  crystal_optics::Material material = crystal_optics::Material::BBO;
  crystal_optics::PmType pm_type = crystal_optics::PmType::TypeII;
  std::optional<double> cut_angle_deg;           // nullopt = auto
  double length_mm = 1.0;
  double lambda_c_nm = 800.0;
  double pump_fwhm_nm = 5.0;
  std::optional<double> sigma_F;                 // nullopt = inf
  std::optional<double> sigma_g;                 // nullopt = inf
  std::optional<double> omega_g0;                // nullopt = center
  std::optional<int> grid_n;                     // nullopt = auto
  std::optional<double> grid_span;               // nullopt = auto
  std::optional<crystal_optics::Polarization> signal_polarization;
  bool analytic = true;
  bool numerical = true;
  bool schmidt = true;
  bool joint_temporal = true;
  double contour_level = std::exp(-1.0);

  static ScenarioConfig parse_file(const std::string& path);
  static ScenarioConfig parse_text(const std::string& text,
                                   const std::string& origin = "<string>");

  // Resolved pieces (auto values filled in).
  crystal_optics::CrystalSpec resolve_crystal(
      const crystal_optics::SellmeierTable& table) const;
  state_builder::PumpSpec pump() const;
  state_builder::FilterSpec filters() const;
};

struct NumericalMeasurements {
  double delta_t_fs = 0;
  double delta_omega = 0;  // rad/fs
  double tb = 0;
  double tau_c_fs = 0;     // from the joint temporal analysis
  bool has_tau_c = false;
};

struct RunReport {
  ScenarioConfig scenario;
  crystal_optics::CrystalSpec crystal;  // resolved (cut angle solved)
  state_builder::FrequencyGrid grid;
  std::optional<gaussian_model::GaussianReport> gaussian;
  std::string gaussian_error;  // set when the Gaussian model is degenerate
  std::optional<NumericalMeasurements> numerical;
  std::optional<schmidt_analysis::EntanglementReport> entanglement;
  std::vector<std::string> files;  // emitted artifacts
  std::string code_version;
  std::string sellmeier_version;
};

struct PipelineArtifacts {
  state_builder::JointSpectralAmplitude jsa;
  wigner_numerics::HeraldedDensityMatrix rho;
  ChronocyclicWigner cwf;
  wigner_numerics::Marginals margins;
  std::optional<schmidt_analysis::SchmidtDecomposition> schmidt;
};

// Runs the enabled stages; artifacts are returned for CSV export when
// `keep_artifacts` is set.
RunReport run(const crystal_optics::SellmeierTable& table,
              const ScenarioConfig& config,
              PipelineArtifacts* artifacts = nullptr);

nlohmann::json to_json(const RunReport& report);

inline constexpr const char* kCodeVersion = "photonpair 1.0.0";

}  // namespace photonpair::scenario
