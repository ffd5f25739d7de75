#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "photonpair/gaussian_model.hpp"
#include "photonpair/io.hpp"
#include "photonpair/scenario.hpp"
#include "photonpair/source_designer.hpp"

namespace {

using namespace photonpair;
namespace fs = std::filesystem;

// Exit codes: 0 success, 2 scenario/usage parse error, 3 compute error.
constexpr int kExitParse = 2;
constexpr int kExitCompute = 3;

const crystal_optics::SellmeierTable& dispersion_table() {
  static const crystal_optics::SellmeierTable table = [] {
    if (const char* dir = std::getenv("PHOTONPAIR_DATA_DIR")) {
      const fs::path path = fs::path(dir) / "sellmeier.dat";
      return crystal_optics::SellmeierTable::load(path.string());
    }
    return crystal_optics::SellmeierTable::builtin();
  }();
  return table;
}

scenario::ScenarioConfig load_scenario(const std::string& path,
                                       int grid_n_override,
                                       double contour_level_override) {
  auto cfg = scenario::ScenarioConfig::parse_file(path);
  if (grid_n_override > 0) cfg.grid_n = grid_n_override;
  if (contour_level_override > 0) cfg.contour_level = contour_level_override;
  return cfg;
}

void write_report(const scenario::RunReport& report, const std::string& out_dir,
                  bool to_stdout) {
  const std::string text = scenario::to_json(report).dump(2) + "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    io::write_text_atomic((fs::path(out_dir) / "report.json").string(), text);
  }
  if (to_stdout || out_dir.empty()) std::cout << text;
}

int cmd_report(const std::string& scenario_path, const std::string& out_dir,
               int grid_n, bool json_stdout) {
  const auto cfg = load_scenario(scenario_path, grid_n, 0);
  scenario::PipelineArtifacts artifacts;
  auto report = scenario::run(dispersion_table(), cfg, &artifacts);

  if (!out_dir.empty() && artifacts.schmidt) {
    fs::create_directories(out_dir);
    // Two-column Schmidt spectrum next to the report.
    std::ostringstream out;
    out << "m,lambda_m\n";
    const auto& ev = artifacts.schmidt->eigenvalues;
    for (std::size_t m = 0; m < ev.size() && m < 64; ++m)
      out << m << "," << ev[m] << "\n";
    const std::string path =
        (fs::path(out_dir) / "schmidt_spectrum.csv").string();
    io::write_text_atomic(path, out.str());
    report.files.push_back(path);
  }
  write_report(report, out_dir, json_stdout);
  return 0;
}

int cmd_wigner(const std::string& scenario_path, const std::string& out_dir,
               int grid_n, double contour_level) {
  auto cfg = load_scenario(scenario_path, grid_n, contour_level);
  cfg.numerical = true;
  fs::create_directories(out_dir);

  scenario::PipelineArtifacts artifacts;
  auto report = scenario::run(dispersion_table(), cfg, &artifacts);

  const fs::path dir(out_dir);
  io::write_cwf_csv((dir / "cwf.csv").string(), artifacts.cwf);
  report.files.push_back((dir / "cwf.csv").string());

  const auto contours =
      wigner_numerics::contour_e1(artifacts.cwf, cfg.contour_level);
  io::write_contour_csv((dir / "contour_numeric.csv").string(), contours);
  report.files.push_back((dir / "contour_numeric.csv").string());

  if (report.gaussian) {
    const auto analytic = gaussian_model::analytic_cwf(
        *report.gaussian, artifacts.cwf.omega_axis, artifacts.cwf.time_axis);
    const auto acontours =
        wigner_numerics::contour_e1(analytic, cfg.contour_level);
    io::write_contour_csv((dir / "contour_analytic.csv").string(), acontours);
    report.files.push_back((dir / "contour_analytic.csv").string());
  }

  io::write_profile_csv((dir / "i_omega.csv").string(),
                        artifacts.margins.spectral, "omega_rad_fs",
                        "intensity");
  io::write_profile_csv((dir / "i_t.csv").string(), artifacts.margins.temporal,
                        "t_fs", "intensity");
  report.files.push_back((dir / "i_omega.csv").string());
  report.files.push_back((dir / "i_t.csv").string());

  write_report(report, out_dir, false);
  return 0;
}

int cmd_design(const std::string& material_name, const std::string& condition,
               const std::string& range, double length_mm,
               const std::string& out_dir) {
  crystal_optics::Material material;
  if (material_name == "BBO")
    material = crystal_optics::Material::BBO;
  else if (material_name == "KDP")
    material = crystal_optics::Material::KDP;
  else
    throw ParseError("unknown material '" + material_name + "'");

  const auto colon = range.find(':');
  if (colon == std::string::npos)
    throw ParseError("wavelength range must look like LO:HI (nm)");
  const double lo = std::stod(range.substr(0, colon));
  const double hi = std::stod(range.substr(colon + 1));
  if (!(lo < hi)) throw ParseError("empty wavelength range");

  source_designer::DesignSolution sol;
  if (condition == "sgvm")
    sol = source_designer::find_sgvm(dispersion_table(), material, lo, hi,
                                     length_mm);
  else if (condition == "agvm")
    sol = source_designer::find_agvm(dispersion_table(), material, lo, hi,
                                     length_mm);
  else
    throw ParseError("condition must be sgvm or agvm");

  nlohmann::json j = {
      {"material", crystal_optics::to_string(sol.material)},
      {"condition", source_designer::to_string(sol.condition)},
      {"lambda_c_nm", sol.lambda_c_nm},
      {"theta_deg", sol.theta_deg},
      {"length_mm", sol.length_mm},
      {"signal_polarization",
       crystal_optics::to_string(sol.signal_polarization)},
      {"tau_s_fs", sol.tau_s_fs},
      {"tau_i_fs", sol.tau_i_fs},
      {"tau_minus_fs", sol.tau_minus_fs},
      {"residual_fs", sol.residual_fs},
      {"sigma_star_rad_fs", sol.sigma_star},
  };
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    io::write_text_atomic(
        (fs::path(out_dir) / "design.json").string(), text);
  }
  return 0;
}

int cmd_scan(const std::string& scenario_path,
             const std::vector<double>& lengths,
             const std::vector<double>& bandwidths, int grid_n,
             const std::string& out_dir) {
  const auto cfg = load_scenario(scenario_path, 0, 0);
  const auto crystal = cfg.resolve_crystal(dispersion_table());
  source_designer::ScanOptions opts;
  opts.grid_n = grid_n;
  const auto table = source_designer::scan(dispersion_table(), crystal,
                                           cfg.lambda_c_nm, lengths,
                                           bandwidths, opts);
  std::ostringstream csv;
  csv << "length_mm,pump_fwhm_nm,ok,tb,schmidt_number,delta_t_an_fs,"
         "delta_t_num_fs,delta_omega_rad_fs,tau_c_fs,ratio_num_an,error\n";
  for (const auto& c : table.cells) {
    csv << c.length_mm << "," << c.pump_fwhm_nm << "," << (c.ok ? 1 : 0) << ","
        << c.tb << "," << c.schmidt_number << "," << c.delta_t_analytic_fs
        << "," << c.delta_t_numeric_fs << "," << c.delta_omega << ","
        << c.tau_c_fs << "," << c.ratio_num_analytic << ",\""
        << c.error << "\"\n";
  }
  fs::create_directories(out_dir);
  io::write_text_atomic((fs::path(out_dir) / "scan.csv").string(), csv.str());

  nlohmann::json meta = {
      {"scenario", scenario_path},
      {"lambda_c_nm", cfg.lambda_c_nm},
      {"material", crystal_optics::to_string(cfg.material)},
      {"lengths_mm", lengths},
      {"pump_fwhms_nm", bandwidths},
      {"grid_n", grid_n},
      {"versions",
       {{"code", scenario::kCodeVersion},
        {"sellmeier_data", dispersion_table().version()}}},
  };
  io::write_text_atomic((fs::path(out_dir) / "scan_meta.json").string(),
                        meta.dump(2) + "\n");
  std::cout << "scan written to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "photonpair: pulsed parametric-downconversion photon pair source "
      "design and heralded single-photon analysis"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  int grid_n = 0;
  int threads = 1;
  bool json_stdout = false;
  double contour_level = 0;

  auto* report = app.add_subcommand(
      "report", "run a scenario and emit the JSON report");
  report->add_option("--scenario", scenario_path, "scenario file")->required();
  report->add_option("--out", out_dir, "output directory");
  report->add_option("--grid-n", grid_n, "override grid size (power of two)");
  report->add_flag("--json", json_stdout, "also print the report to stdout");
  report->add_option("--threads", threads, "worker threads (recorded only)");

  auto* wigner = app.add_subcommand(
      "wigner", "run a scenario and emit chronocyclic Wigner CSV data");
  wigner->add_option("--scenario", scenario_path, "scenario file")->required();
  wigner->add_option("--out", out_dir, "output directory")->required();
  wigner->add_option("--grid-n", grid_n, "override grid size");
  wigner->add_option("--contour-level", contour_level,
                     "contour level as a fraction of max (default e^-1)");
  wigner->add_option("--threads", threads, "worker threads (recorded only)");

  std::string material, condition, range;
  double design_length = 1.0;
  auto* design = app.add_subcommand(
      "design", "solve a group-velocity-matched source geometry");
  design->add_option("material", material, "BBO or KDP")->required();
  design->add_option("condition", condition, "sgvm or agvm")->required();
  design->add_option("range", range, "wavelength range LO:HI in nm")
      ->required();
  design->add_option("--length", design_length, "crystal length in mm");
  design->add_option("--out", out_dir, "output directory");

  std::vector<double> lengths, bandwidths;
  auto* scan = app.add_subcommand(
      "scan", "scan crystal length and pump bandwidth over a scenario");
  scan->add_option("--scenario", scenario_path, "base scenario file")
      ->required();
  scan->add_option("--lengths", lengths, "crystal lengths in mm")->required();
  scan->add_option("--bandwidths", bandwidths, "pump FWHMs in nm")->required();
  scan->add_option("--grid-n", grid_n, "override grid size");
  scan->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (report->parsed())
      return cmd_report(scenario_path, out_dir, grid_n, json_stdout);
    if (wigner->parsed())
      return cmd_wigner(scenario_path, out_dir, grid_n, contour_level);
    if (design->parsed())
      return cmd_design(material, condition, range, design_length, out_dir);
    if (scan->parsed())
      return cmd_scan(scenario_path, lengths, bandwidths, grid_n, out_dir);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  return 0;
}
