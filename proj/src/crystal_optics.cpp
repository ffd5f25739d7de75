#include "photonpair/crystal_optics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace photonpair::crystal_optics {

const char* to_string(Material m) { return m == Material::BBO ? "BBO" : "KDP"; }

const char* to_string(Polarization p) {
  return p == Polarization::Ordinary ? "ordinary" : "extraordinary";
}

const char* to_string(PmType t) {
  return t == PmType::TypeI ? "typeI" : "typeII";
}

double SellmeierEntry::n_squared(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  double v = a + b / (l2 - c);
  if (form == Form::Kato) {
    v += d * l2;
  } else {
    v += d * l2 / (l2 - e);
  }
  return v;
}

double SellmeierEntry::dn_squared_dlambda(double lambda_um) const {
  const double l = lambda_um;
  const double l2 = l * l;
  double v = -2.0 * b * l / ((l2 - c) * (l2 - c));
  if (form == Form::Kato) {
    v += 2.0 * d * l;
  } else {
    // d/dl [ d*l^2/(l^2 - e) ] = -2*d*e*l/(l^2 - e)^2
    v += -2.0 * d * e * l / ((l2 - e) * (l2 - e));
  }
  return v;
}

namespace {

std::size_t entry_index(Material m, Polarization p) {
  return 2 * static_cast<std::size_t>(m) + static_cast<std::size_t>(p);
}

}  // namespace

const SellmeierTable& SellmeierTable::builtin() {
  static const SellmeierTable table = [] {
    SellmeierTable t;
    t.version_ = "kato1986+zernike1964 r1";
    auto set = [&t](Material m, Polarization p, SellmeierEntry e) {
      t.entries_[entry_index(m, p)] = e;
    };
    using F = SellmeierEntry::Form;
    set(Material::BBO, Polarization::Ordinary,
        {F::Kato, 2.7359, 0.01878, 0.01822, -0.01354, 0, 210, 1800});
    set(Material::BBO, Polarization::Extraordinary,
        {F::Kato, 2.3753, 0.01224, 0.01667, -0.01516, 0, 210, 1800});
    set(Material::KDP, Polarization::Ordinary,
        {F::Zernike, 2.259276, 0.01008956, 0.012942625, 13.00522, 400.0, 210,
         1800});
    set(Material::KDP, Polarization::Extraordinary,
        {F::Zernike, 2.132668, 0.008637494, 0.012281043, 3.2279924, 400.0, 210,
         1800});
    return t;
  }();
  return table;
}

SellmeierTable SellmeierTable::load(const std::string& path) {
  SellmeierTable t;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open Sellmeier data file: " + path);
  std::string line;
  int n_entries = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "version") {
      std::string rest;
      std::getline(ss, rest);
      const auto start = rest.find_first_not_of(" \t");
      t.version_ = start == std::string::npos ? "" : rest.substr(start);
      continue;
    }
    Material m;
    if (first == "BBO")
      m = Material::BBO;
    else if (first == "KDP")
      m = Material::KDP;
    else
      throw ParseError("sellmeier.dat line " + std::to_string(lineno) +
                       ": unknown material '" + first + "'");
    std::string pol, form;
    if (!(ss >> pol >> form))
      throw ParseError("sellmeier.dat line " + std::to_string(lineno) +
                       ": truncated entry");
    Polarization p;
    if (pol == "o")
      p = Polarization::Ordinary;
    else if (pol == "e")
      p = Polarization::Extraordinary;
    else
      throw ParseError("sellmeier.dat line " + std::to_string(lineno) +
                       ": unknown polarization '" + pol + "'");
    SellmeierEntry e;
    bool ok = true;
    if (form == "kato") {
      e.form = SellmeierEntry::Form::Kato;
      ok = static_cast<bool>(ss >> e.a >> e.b >> e.c >> e.d);
    } else if (form == "zernike") {
      e.form = SellmeierEntry::Form::Zernike;
      ok = static_cast<bool>(ss >> e.a >> e.b >> e.c >> e.d >> e.e);
    } else {
      throw ParseError("sellmeier.dat line " + std::to_string(lineno) +
                       ": unknown form '" + form + "'");
    }
    ok = ok && static_cast<bool>(ss >> e.lambda_min_nm >> e.lambda_max_nm);
    if (!ok)
      throw ParseError("sellmeier.dat line " + std::to_string(lineno) +
                       ": malformed coefficients");
    t.entries_[entry_index(m, p)] = e;
    ++n_entries;
  }
  if (n_entries != 4)
    throw ParseError("sellmeier.dat: expected 4 entries, got " +
                     std::to_string(n_entries));
  return t;
}

const SellmeierEntry& SellmeierTable::entry(Material m, Polarization p) const {
  return entries_[entry_index(m, p)];
}

void CrystalSpec::validate() const {
  if (!(length_mm > 0)) throw Error("crystal length must be positive");
  if (cut_angle_deg < 0 || cut_angle_deg > 90)
    throw Error("cut angle must lie in [0, 90] degrees");
  if (pm_type == PmType::TypeI &&
      signal_polarization != Polarization::Ordinary)
    throw Error("TypeI daughters are both ordinary");
}

Polarization CrystalSpec::idler_polarization() const {
  if (pm_type == PmType::TypeI) return Polarization::Ordinary;
  return signal_polarization == Polarization::Ordinary
             ? Polarization::Extraordinary
             : Polarization::Ordinary;
}

namespace {

void check_range(const SellmeierEntry& e, Material m, Polarization p,
                 double lambda_nm) {
  if (!(lambda_nm >= e.lambda_min_nm && lambda_nm <= e.lambda_max_nm)) {
    std::ostringstream msg;
    msg << "wavelength " << lambda_nm << " nm outside the "
        << to_string(m) << "/" << to_string(p) << " validity range ["
        << e.lambda_min_nm << ", " << e.lambda_max_nm << "] nm";
    throw DispersionRangeError(msg.str());
  }
}

// n and dn/dlambda (per um) at fixed propagation angle.
struct IndexAndSlope {
  double n;
  double dn_dlambda_um;
};

IndexAndSlope index_and_slope(const SellmeierTable& table, Material m,
                              Polarization p, double theta_deg,
                              double lambda_nm) {
  const double lambda_um = lambda_nm * 1e-3;
  if (p == Polarization::Ordinary) {
    const auto& e = table.entry(m, Polarization::Ordinary);
    check_range(e, m, p, lambda_nm);
    const double s = e.n_squared(lambda_um);
    const double n = std::sqrt(s);
    return {n, e.dn_squared_dlambda(lambda_um) / (2.0 * n)};
  }
  const auto& eo = table.entry(m, Polarization::Ordinary);
  const auto& ee = table.entry(m, Polarization::Extraordinary);
  check_range(eo, m, p, lambda_nm);
  check_range(ee, m, p, lambda_nm);
  const double th = theta_deg * kPi / 180.0;
  const double c2 = std::cos(th) * std::cos(th);
  const double s2 = std::sin(th) * std::sin(th);
  const double so = eo.n_squared(lambda_um);
  const double se = ee.n_squared(lambda_um);
  // 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2
  const double inv_n2 = c2 / so + s2 / se;
  const double n = 1.0 / std::sqrt(inv_n2);
  const double dso = eo.dn_squared_dlambda(lambda_um);
  const double dse = ee.dn_squared_dlambda(lambda_um);
  const double dinv_n2 = -c2 * dso / (so * so) - s2 * dse / (se * se);
  // dn/dl = -(1/2) n^3 d(1/n^2)/dl
  return {n, -0.5 * n * n * n * dinv_n2};
}

}  // namespace

double refractive_index(const SellmeierTable& table, Material m,
                        Polarization p, double theta_deg, double lambda_nm) {
  return index_and_slope(table, m, p, theta_deg, lambda_nm).n;
}

double inverse_group_velocity(const SellmeierTable& table, Material m,
                              Polarization p, double theta_deg,
                              double lambda_nm) {
  const auto is = index_and_slope(table, m, p, theta_deg, lambda_nm);
  // k' = (n - lambda dn/dlambda)/c, in fs/mm with c in nm/fs and the
  // 1e6 nm->mm factor.
  const double lambda_um = lambda_nm * 1e-3;
  const double group_index = is.n - lambda_um * is.dn_dlambda_um;
  return group_index / kSpeedOfLightNmPerFs * 1e6;
}

double group_velocity_dispersion(const SellmeierTable& table, Material m,
                                 Polarization p, double theta_deg,
                                 double lambda_nm) {
  const double omega = omega_from_lambda(lambda_nm);
  const double h = 1e-4;  // rad/fs
  const double kp_plus = inverse_group_velocity(
      table, m, p, theta_deg, lambda_from_omega(omega + h));
  const double kp_minus = inverse_group_velocity(
      table, m, p, theta_deg, lambda_from_omega(omega - h));
  return (kp_plus - kp_minus) / (2.0 * h);
}

DispersionSample sample(const SellmeierTable& table, Material m,
                        Polarization p, double theta_deg, double lambda_nm) {
  DispersionSample s;
  s.lambda_nm = lambda_nm;
  s.n = refractive_index(table, m, p, theta_deg, lambda_nm);
  // k = n*omega/c in rad/um  (= 2*pi*n*1000/lambda_nm)
  s.k_rad_um = s.n * omega_from_lambda(lambda_nm) / kSpeedOfLightNmPerFs * 1e3;
  s.kprime_fs_mm = inverse_group_velocity(table, m, p, theta_deg, lambda_nm);
  return s;
}

double delta_k(const SellmeierTable& table, const CrystalSpec& crystal,
               double omega_s, double omega_i) {
  if (!(omega_s > 0) || !(omega_i > 0))
    throw Error("delta_k requires positive frequencies");
  const double omega_p = omega_s + omega_i;
  const double th = crystal.cut_angle_deg;
  const double np = refractive_index(table, crystal.material,
                                     Polarization::Extraordinary, th,
                                     lambda_from_omega(omega_p));
  const double ns =
      refractive_index(table, crystal.material, crystal.signal_polarization,
                       th, lambda_from_omega(omega_s));
  const double ni =
      refractive_index(table, crystal.material, crystal.idler_polarization(),
                       th, lambda_from_omega(omega_i));
  // k = n*omega/c * 1e3 [rad/um]
  return (np * omega_p - ns * omega_s - ni * omega_i) / kSpeedOfLightNmPerFs *
         1e3;
}

WalkoffTerms walkoff_terms(const SellmeierTable& table,
                           const CrystalSpec& crystal, double lambda_c_nm) {
  const double th = crystal.cut_angle_deg;
  const double kp_pump =
      inverse_group_velocity(table, crystal.material,
                             Polarization::Extraordinary, th, lambda_c_nm / 2);
  const double kp_s = inverse_group_velocity(
      table, crystal.material, crystal.signal_polarization, th, lambda_c_nm);
  const double kp_i = inverse_group_velocity(
      table, crystal.material, crystal.idler_polarization(), th, lambda_c_nm);
  WalkoffTerms w;
  w.tau_s_fs = crystal.length_mm * (kp_pump - kp_s);
  w.tau_i_fs = crystal.length_mm * (kp_pump - kp_i);
  return w;
}

double phasematch_angle(const SellmeierTable& table, Material m, PmType type,
                        double lambda_c_nm, Polarization signal_pol) {
  const double wc = omega_from_lambda(lambda_c_nm);
  CrystalSpec spec;
  spec.material = m;
  spec.pm_type = type;
  spec.signal_polarization =
      type == PmType::TypeI ? Polarization::Ordinary : signal_pol;
  spec.length_mm = 1.0;
  auto mismatch = [&](double theta) {
    spec.cut_angle_deg = theta;
    return delta_k(table, spec, wc, wc);
  };
  double lo = 1e-6, hi = 90.0 - 1e-6;
  double flo = mismatch(lo), fhi = mismatch(hi);
  if (flo * fhi > 0) {
    std::ostringstream msg;
    msg << to_string(m) << " " << to_string(type) << " at " << lambda_c_nm
        << " nm is not phasematchable: degenerate mismatch has no zero in "
           "(0, 90) deg";
    throw NotPhasematchableError(msg.str());
  }
  // Bisection; the mismatch is monotone in theta for these crystals.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = mismatch(mid);
    if (std::abs(fm) < 1e-12 || hi - lo < 1e-13) return mid;
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

}  // namespace photonpair::crystal_optics
