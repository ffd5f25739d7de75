#include "photonpair/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace photonpair::scenario {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("scenario key '" + key + "': cannot parse number '" + v +
                     "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("scenario key '" + key + "': expected true/false, got '" +
                   v + "'");
}

}  // namespace

ScenarioConfig ScenarioConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

ScenarioConfig ScenarioConfig::parse_text(const std::string& text,
                                          const std::string& origin) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(origin + ":" + std::to_string(lineno) +
                       ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (seen[key])
      throw ParseError(origin + ": duplicate key '" + key + "'");
    seen[key] = true;

    if (key == "material") {
      if (value == "BBO")
        cfg.material = crystal_optics::Material::BBO;
      else if (value == "KDP")
        cfg.material = crystal_optics::Material::KDP;
      else
        throw ParseError("scenario key 'material': unknown material '" +
                         value + "' (expected BBO or KDP)");
    } else if (key == "pm_type") {
      if (value == "typeI")
        cfg.pm_type = crystal_optics::PmType::TypeI;
      else if (value == "typeII")
        cfg.pm_type = crystal_optics::PmType::TypeII;
      else
        throw ParseError("scenario key 'pm_type': expected typeI or typeII, "
                         "got '" + value + "'");
    } else if (key == "cut_angle_deg") {
      if (value == "auto")
        cfg.cut_angle_deg.reset();
      else
        cfg.cut_angle_deg = parse_double(key, value);
    } else if (key == "length_mm") {
      cfg.length_mm = parse_double(key, value);
    } else if (key == "lambda_c_nm") {
      cfg.lambda_c_nm = parse_double(key, value);
    } else if (key == "pump_fwhm_nm") {
      cfg.pump_fwhm_nm = parse_double(key, value);
    } else if (key == "sigma_F") {
      if (value == "inf")
        cfg.sigma_F.reset();
      else
        cfg.sigma_F = parse_double(key, value);
    } else if (key == "sigma_g") {
      if (value == "inf")
        cfg.sigma_g.reset();
      else
        cfg.sigma_g = parse_double(key, value);
    } else if (key == "omega_g0") {
      if (value == "center")
        cfg.omega_g0.reset();
      else
        cfg.omega_g0 = parse_double(key, value);
    } else if (key == "grid_N") {
      if (value == "auto")
        cfg.grid_n.reset();
      else
        cfg.grid_n = static_cast<int>(parse_double(key, value));
    } else if (key == "grid_span") {
      if (value == "auto")
        cfg.grid_span.reset();
      else
        cfg.grid_span = parse_double(key, value);
    } else if (key == "signal_polarization") {
      if (value == "auto")
        cfg.signal_polarization.reset();
      else if (value == "ordinary")
        cfg.signal_polarization = crystal_optics::Polarization::Ordinary;
      else if (value == "extraordinary")
        cfg.signal_polarization = crystal_optics::Polarization::Extraordinary;
      else
        throw ParseError(
            "scenario key 'signal_polarization': expected ordinary, "
            "extraordinary or auto, got '" + value + "'");
    } else if (key == "analytic") {
      cfg.analytic = parse_bool(key, value);
    } else if (key == "numerical") {
      cfg.numerical = parse_bool(key, value);
    } else if (key == "schmidt") {
      cfg.schmidt = parse_bool(key, value);
    } else if (key == "joint_temporal") {
      cfg.joint_temporal = parse_bool(key, value);
    } else if (key == "contour_level") {
      cfg.contour_level = parse_double(key, value);
      if (!(cfg.contour_level > 0 && cfg.contour_level < 1))
        throw ParseError("scenario key 'contour_level': must be in (0, 1)");
    } else {
      throw ParseError(origin + ": unknown scenario key '" + key + "'");
    }
  }
  if (!(cfg.length_mm > 0))
    throw ParseError("scenario: length_mm must be positive");
  if (!(cfg.lambda_c_nm > 0) || !(cfg.pump_fwhm_nm > 0))
    throw ParseError("scenario: wavelengths and bandwidths must be positive");
  return cfg;
}

crystal_optics::CrystalSpec ScenarioConfig::resolve_crystal(
    const crystal_optics::SellmeierTable& table) const {
  crystal_optics::CrystalSpec spec;
  spec.material = material;
  spec.pm_type = pm_type;
  spec.length_mm = length_mm;
  spec.signal_polarization =
      pm_type == crystal_optics::PmType::TypeI
          ? crystal_optics::Polarization::Ordinary
          : signal_polarization.value_or(crystal_optics::Polarization::Ordinary);
  spec.cut_angle_deg =
      cut_angle_deg ? *cut_angle_deg
                    : crystal_optics::phasematch_angle(
                          table, material, pm_type, lambda_c_nm,
                          spec.signal_polarization);
  spec.validate();
  return spec;
}

state_builder::PumpSpec ScenarioConfig::pump() const {
  return state_builder::PumpSpec::from_fwhm(lambda_c_nm / 2.0, pump_fwhm_nm);
}

state_builder::FilterSpec ScenarioConfig::filters() const {
  state_builder::FilterSpec f;
  f.sigma_F = sigma_F;
  f.sigma_g = sigma_g;
  f.omega_g0 = omega_g0.value_or(omega_from_lambda(lambda_c_nm));
  return f;
}

RunReport run(const crystal_optics::SellmeierTable& table,
              const ScenarioConfig& config, PipelineArtifacts* artifacts) {
  RunReport report;
  report.scenario = config;
  report.code_version = kCodeVersion;
  report.sellmeier_version = table.version();
  report.crystal = config.resolve_crystal(table);
  const auto pump = config.pump();
  const auto filters = config.filters();
  const double omega_c = omega_from_lambda(config.lambda_c_nm);

  if (config.analytic) {
    const auto walk =
        crystal_optics::walkoff_terms(table, report.crystal,
                                      config.lambda_c_nm);
    gaussian_model::ModelInputs gin;
    gin.sigma = pump.sigma;
    gin.sigma_F = filters.sigma_F;
    gin.sigma_g = filters.sigma_g;
    gin.omega_g0 = filters.omega_g0;
    gin.omega_c = omega_c;
    gin.tau_s_fs = walk.tau_s_fs;
    gin.tau_i_fs = walk.tau_i_fs;
    try {
      report.gaussian = gaussian_model::make_report(gin);
    } catch (const PhysicalityError& e) {
      report.gaussian_error = e.what();
    }
  }

  if (!config.numerical && !config.schmidt && !config.joint_temporal)
    return report;

  auto grid = state_builder::auto_grid(table, report.crystal, pump, filters);
  if (config.grid_span) {
    grid.spacing = *config.grid_span / grid.size;
  }
  if (config.grid_n) {
    const double span = grid.span();
    grid.size = *config.grid_n;
    grid.spacing = span / grid.size;
  }
  report.grid = grid;

  const auto jsa =
      state_builder::build_jsa(table, report.crystal, pump, filters, grid);

  NumericalMeasurements num;
  bool have_num = false;
  wigner_numerics::HeraldedDensityMatrix rho;
  if (config.numerical || config.schmidt) {
    rho = wigner_numerics::heralded_density_matrix(jsa, filters);
  }
  if (config.numerical) {
    const auto cwf = wigner_numerics::numerical_cwf(rho);
    const auto marg = wigner_numerics::marginals(cwf);
    num.delta_t_fs = wigner_numerics::measure_width(marg.temporal).half_width;
    num.delta_omega = wigner_numerics::measure_width(marg.spectral).half_width;
    num.tb = num.delta_t_fs * num.delta_omega;
    have_num = true;
    if (artifacts) {
      artifacts->cwf = cwf;
      artifacts->margins = marg;
    }
  }
  if (config.joint_temporal) {
    const auto jt = wigner_numerics::joint_temporal_analysis(jsa);
    num.tau_c_fs = jt.tau_c_fs;
    num.has_tau_c = true;
    have_num = true;
  }
  if (have_num) report.numerical = num;

  if (config.schmidt) {
    auto dec = schmidt_analysis::decompose(jsa);
    if (!filters.sigma_g) {
      report.entanglement = schmidt_analysis::purity_report(dec, rho);
    } else {
      // p = 1/K does not apply with a trigger filter; report K alone,
      // with the filtered purity from the trace route.
      schmidt_analysis::EntanglementReport er;
      er.schmidt_number = dec.schmidt_number();
      er.purity = rho.purity();
      er.purity_trace = rho.purity();
      er.purity_discrepancy = 0;
      er.visibility = er.purity;
      er.effective_rank = 0;
      for (double l : dec.eigenvalues)
        if (l > 1e-6) ++er.effective_rank;
      report.entanglement = er;
    }
    if (artifacts) artifacts->schmidt = std::move(dec);
  }

  if (artifacts) {
    artifacts->jsa = jsa;
    artifacts->rho = rho;
  }
  return report;
}

nlohmann::json to_json(const RunReport& report) {
  using nlohmann::json;
  json j;

  const auto& cfg = report.scenario;
  json scen;
  scen["material"] = crystal_optics::to_string(cfg.material);
  scen["pm_type"] = crystal_optics::to_string(cfg.pm_type);
  scen["cut_angle_deg"] = report.crystal.cut_angle_deg;
  scen["length_mm"] = cfg.length_mm;
  scen["lambda_c_nm"] = cfg.lambda_c_nm;
  scen["pump_fwhm_nm"] = cfg.pump_fwhm_nm;
  scen["sigma_F"] = cfg.sigma_F ? json(*cfg.sigma_F) : json("inf");
  scen["sigma_g"] = cfg.sigma_g ? json(*cfg.sigma_g) : json("inf");
  scen["omega_g0"] = cfg.omega_g0 ? json(*cfg.omega_g0) : json("center");
  scen["grid_N"] = report.grid.size;
  scen["grid_span"] = report.grid.span();
  scen["signal_polarization"] =
      crystal_optics::to_string(report.crystal.signal_polarization);
  scen["contour_level"] = cfg.contour_level;
  j["scenario"] = scen;

  if (report.gaussian) {
    const auto& g = *report.gaussian;
    j["gaussian"] = {
        {"delta_t_fs", g.delta_t_fs},
        {"delta_omega_rad_per_fs", g.delta_omega},
        {"tb", g.tb},
        {"tau_c_fs", g.tau_c_fs},
        {"t_shift_fs", g.t_shift_fs},
        {"omega_shift_rad_per_fs", g.omega_shift},
        {"tau_p_fs", g.tau_p_fs},
        {"gamma", g.gamma},
    };
  } else if (!report.gaussian_error.empty()) {
    j["gaussian"] = {{"error", report.gaussian_error}};
  }

  if (report.numerical) {
    const auto& n = *report.numerical;
    json num;
    num["delta_t_fs"] = n.delta_t_fs;
    num["delta_omega_rad_per_fs"] = n.delta_omega;
    num["delta_omega_thz"] = n.delta_omega * kThzPerRadFs;
    num["tb"] = n.tb;
    if (n.has_tau_c) num["tau_c_fs"] = n.tau_c_fs;
    j["numerical"] = num;
  }

  if (report.entanglement) {
    const auto& e = *report.entanglement;
    j["entanglement"] = {
        {"schmidt_number", e.schmidt_number},
        {"purity", e.purity},
        {"purity_trace", e.purity_trace},
        {"purity_discrepancy", e.purity_discrepancy},
        {"visibility", e.visibility},
        {"effective_rank", e.effective_rank},
    };
  }

  j["files"] = report.files;
  j["versions"] = {{"code", report.code_version},
                   {"sellmeier_data", report.sellmeier_version}};
  return j;
}

}  // namespace photonpair::scenario
