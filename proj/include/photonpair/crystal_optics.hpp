#pragma once

#include <array>
#include <string>
#include <vector>

#include "photonpair/errors.hpp"
#include "photonpair/units.hpp"

namespace photonpair::crystal_optics {

enum class Material { BBO, KDP };
enum class Polarization { Ordinary, Extraordinary };

// TypeI: e -> o + o.  TypeII: e -> o + e.
enum class PmType { TypeI, TypeII };

const char* to_string(Material m);
const char* to_string(Polarization p);
const char* to_string(PmType t);

// One Sellmeier entry, kept in the published form (lambda in um):
//   kato:    n^2 = A + B/(l^2 - C) + D*l^2
//   zernike: n^2 = A + B/(l^2 - C) + D*l^2/(l^2 - E)
struct SellmeierEntry {
  enum class Form { Kato, Zernike } form = Form::Kato;
  double a = 0, b = 0, c = 0, d = 0, e = 0;
  double lambda_min_nm = 0, lambda_max_nm = 0;

  double n_squared(double lambda_um) const;
  double dn_squared_dlambda(double lambda_um) const;  // d(n^2)/d(lambda_um)
};

// Coefficient table for all material/polarization pairs.  Immutable after
// construction; all evaluation is pure.
class SellmeierTable {
 public:
  // The pinned coefficient sets compiled into the library.
  static const SellmeierTable& builtin();
  // Parse data/sellmeier.dat (same content as builtin unless overridden).
  static SellmeierTable load(const std::string& path);

  const SellmeierEntry& entry(Material m, Polarization p) const;
  const std::string& version() const { return version_; }

 private:
  std::array<SellmeierEntry, 4> entries_{};
  std::string version_;
};

struct CrystalSpec {
  Material material = Material::BBO;
  double cut_angle_deg = 0.0;  // angle between optic axis and propagation
  double length_mm = 1.0;
  PmType pm_type = PmType::TypeII;
  // Which daughter is the heralded signal.  TypeI forces Ordinary.
  Polarization signal_polarization = Polarization::Ordinary;

  void validate() const;
  Polarization idler_polarization() const;
};

struct DispersionSample {
  double lambda_nm = 0;
  double n = 0;
  double k_rad_um = 0;
  double kprime_fs_mm = 0;
};

// n_o(lambda), or the angle-tuned extraordinary index
// n_e(theta, lambda) = [cos^2(theta)/n_o^2 + sin^2(theta)/n_e^2]^(-1/2).
double refractive_index(const SellmeierTable& table, Material m,
                        Polarization p, double theta_deg, double lambda_nm);

// Analytic dk/domega in fs/mm (group index over c), including the
// theta chain rule for extraordinary waves.
double inverse_group_velocity(const SellmeierTable& table, Material m,
                              Polarization p, double theta_deg,
                              double lambda_nm);

// d2k/domega2 in fs^2/mm (central difference of the analytic k').
double group_velocity_dispersion(const SellmeierTable& table, Material m,
                                 Polarization p, double theta_deg,
                                 double lambda_nm);

DispersionSample sample(const SellmeierTable& table, Material m,
                        Polarization p, double theta_deg, double lambda_nm);

// Full collinear phasemismatch k_p(w_s + w_i) - k_s(w_s) - k_i(w_i)
// in rad/um.  Pump is extraordinary at the cut angle; daughter
// polarizations follow pm_type and signal_polarization.
double delta_k(const SellmeierTable& table, const CrystalSpec& crystal,
               double omega_s, double omega_i);

struct WalkoffTerms {
  double tau_s_fs = 0;  // L*(k'_p(2wc) - k'_s(wc))
  double tau_i_fs = 0;  // L*(k'_p(2wc) - k'_i(wc))
  double tau_minus_fs() const { return tau_s_fs - tau_i_fs; }
};

WalkoffTerms walkoff_terms(const SellmeierTable& table,
                           const CrystalSpec& crystal, double lambda_c_nm);

// Cut angle solving delta_k(wc, wc) = 0 for degenerate collinear
// emission at lambda_c; |delta_k| < 1e-8 rad/um at the returned angle.
double phasematch_angle(const SellmeierTable& table, Material m, PmType type,
                        double lambda_c_nm,
                        Polarization signal_pol = Polarization::Ordinary);

}  // namespace photonpair::crystal_optics
