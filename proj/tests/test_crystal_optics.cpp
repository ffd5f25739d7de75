#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "photonpair/crystal_optics.hpp"

using namespace photonpair;
using namespace photonpair::crystal_optics;

namespace {
const SellmeierTable& table() { return SellmeierTable::builtin(); }

CrystalSpec bbo_type2_800() {
  CrystalSpec c;
  c.material = Material::BBO;
  c.pm_type = PmType::TypeII;
  c.cut_angle_deg = phasematch_angle(table(), Material::BBO, PmType::TypeII,
                                     800.0);
  c.length_mm = 5.0;
  return c;
}
}  // namespace

TEST_CASE("ordinary index matches the frozen Sellmeier evaluation") {
  // Independent evaluation of the published coefficient sets, frozen as
  // regression constants.
  CHECK(refractive_index(table(), Material::BBO, Polarization::Ordinary, 0,
                         800.0) == doctest::Approx(1.660553524880645).epsilon(1e-12));
  CHECK(refractive_index(table(), Material::KDP, Polarization::Ordinary, 0,
                         830.0) == doctest::Approx(1.5005883658504573).epsilon(1e-12));
  CHECK(refractive_index(table(), Material::KDP, Polarization::Extraordinary,
                         90.0, 415.0) ==
        doctest::Approx(1.4782695295507269).epsilon(1e-12));
}

TEST_CASE("extraordinary index at 0 and 90 degrees hits the principal values") {
  const double no = refractive_index(table(), Material::BBO,
                                     Polarization::Ordinary, 0, 800.0);
  const double ne0 = refractive_index(table(), Material::BBO,
                                      Polarization::Extraordinary, 0.0, 800.0);
  CHECK(ne0 == doctest::Approx(no).epsilon(1e-14));
  const double ne90 = refractive_index(
      table(), Material::BBO, Polarization::Extraordinary, 90.0, 800.0);
  CHECK(ne90 == doctest::Approx(1.5444203018104292).epsilon(1e-12));
}

TEST_CASE("angle-tuned index is monotone between the principal values") {
  double prev = refractive_index(table(), Material::BBO,
                                 Polarization::Extraordinary, 0.0, 800.0);
  for (int d = 1; d <= 90; ++d) {
    const double n = refractive_index(
        table(), Material::BBO, Polarization::Extraordinary, d, 800.0);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("out-of-range wavelength raises a range error naming the interval") {
  CHECK_THROWS_AS(refractive_index(table(), Material::BBO,
                                   Polarization::Ordinary, 0, 150.0),
                  DispersionRangeError);
  try {
    refractive_index(table(), Material::KDP, Polarization::Ordinary, 0,
                     2500.0);
    FAIL("expected a range error");
  } catch (const DispersionRangeError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("1800") != std::string::npos);
    CHECK(msg.find("210") != std::string::npos);
  }
}

TEST_CASE("inverse group velocity: frozen value and finite differences") {
  CHECK(inverse_group_velocity(table(), Material::BBO, Polarization::Ordinary,
                               0, 800.0) ==
        doctest::Approx(5618.866818622337).epsilon(1e-10));
  CHECK(inverse_group_velocity(table(), Material::KDP, Polarization::Ordinary,
                               0, 830.0) ==
        doctest::Approx(5089.199596113758).epsilon(1e-10));

  // Analytic derivative vs central difference at random wavelengths.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> lam(360.0, 1650.0);
  std::uniform_real_distribution<double> ang(5.0, 85.0);
  for (int i = 0; i < 50; ++i) {
    const double lambda = lam(rng);
    const double theta = ang(rng);
    for (Material m : {Material::BBO, Material::KDP}) {
      for (Polarization p :
           {Polarization::Ordinary, Polarization::Extraordinary}) {
        const double omega = omega_from_lambda(lambda);
        const double h = 1e-4;
        auto k_rad_mm = [&](double w) {
          return refractive_index(table(), m, p, theta,
                                  lambda_from_omega(w)) *
                 w / kSpeedOfLightNmPerFs * 1e6;
        };
        const double fd = (k_rad_mm(omega + h) - k_rad_mm(omega - h)) /
                          (2.0 * h);
        const double an = inverse_group_velocity(table(), m, p, theta, lambda);
        CHECK(std::abs(an - fd) / std::abs(fd) < 1e-6);
      }
    }
  }
}

TEST_CASE("sample carries consistent wavenumber units") {
  const auto s = sample(table(), Material::BBO, Polarization::Ordinary, 0,
                        800.0);
  CHECK(s.k_rad_um == doctest::Approx(13.041956886644176).epsilon(1e-12));
  CHECK(s.n > 1.0);
}

TEST_CASE("n stays above 1 across the supported range") {
  for (double lambda = 350; lambda <= 1700; lambda += 13.7) {
    for (Material m : {Material::BBO, Material::KDP}) {
      CHECK(refractive_index(table(), m, Polarization::Ordinary, 0, lambda) >
            1.0);
      CHECK(refractive_index(table(), m, Polarization::Extraordinary, 90.0,
                             lambda) > 1.0);
    }
  }
}

TEST_CASE("phasematch angles for the reference configurations") {
  CHECK(phasematch_angle(table(), Material::BBO, PmType::TypeII, 800.0) ==
        doctest::Approx(42.3).epsilon(0.5 / 42.3));
  CHECK(phasematch_angle(table(), Material::BBO, PmType::TypeI, 800.0) ==
        doctest::Approx(29.2).epsilon(0.5 / 29.2));
  CHECK(phasematch_angle(table(), Material::KDP, PmType::TypeII, 830.0) ==
        doctest::Approx(67.7).epsilon(0.5 / 67.7));
  CHECK(phasematch_angle(table(), Material::BBO, PmType::TypeII, 1514.0) ==
        doctest::Approx(28.8).epsilon(0.5 / 28.8));
}

TEST_CASE("phasematch angle round trip: mismatch below solver tolerance") {
  for (auto [m, t, lam] :
       {std::tuple{Material::BBO, PmType::TypeII, 800.0},
        std::tuple{Material::BBO, PmType::TypeI, 800.0},
        std::tuple{Material::KDP, PmType::TypeII, 830.0}}) {
    const double theta = phasematch_angle(table(), m, t, lam);
    CrystalSpec spec;
    spec.material = m;
    spec.pm_type = t;
    spec.cut_angle_deg = theta;
    spec.length_mm = 1.0;
    const double wc = omega_from_lambda(lam);
    CHECK(std::abs(delta_k(table(), spec, wc, wc)) < 1e-8);
  }
}

TEST_CASE("unreachable phasematching reports not-phasematchable") {
  // Degenerate TypeII emission at 420 nm would need the pump at 210 nm
  // where BBO cannot compensate the daughter momenta at any angle.
  CHECK_THROWS_AS(phasematch_angle(table(), Material::BBO, PmType::TypeII,
                                   430.0),
                  NotPhasematchableError);
}

TEST_CASE("delta_k symmetry under signal/idler exchange") {
  auto crystal = bbo_type2_800();
  const double wc = omega_from_lambda(800.0);
  const double a = wc + 0.01, b = wc - 0.017;

  // TypeI: both daughters ordinary, exchange is exact.
  CrystalSpec t1 = crystal;
  t1.pm_type = PmType::TypeI;
  t1.signal_polarization = Polarization::Ordinary;
  t1.cut_angle_deg = phasematch_angle(table(), Material::BBO, PmType::TypeI,
                                      800.0);
  CHECK(delta_k(table(), t1, a, b) ==
        doctest::Approx(delta_k(table(), t1, b, a)).epsilon(1e-14));

  // TypeII at a detuned angle: exchange changes the mismatch.
  CrystalSpec t2 = crystal;
  t2.cut_angle_deg += 1.0;
  CHECK(std::abs(delta_k(table(), t2, a, b) - delta_k(table(), t2, b, a)) >
        1e-6);
}

TEST_CASE("first-order Taylor reconstruction tracks the full mismatch") {
  // SGVM geometry near 1514 nm; the linearized mismatch from the
  // walkoff terms should track the full one to 5% over the pump's
  // +-3 sigma neighborhood.
  CrystalSpec c;
  c.material = Material::BBO;
  c.pm_type = PmType::TypeII;
  c.length_mm = 2.3;
  c.cut_angle_deg = phasematch_angle(table(), Material::BBO, PmType::TypeII,
                                     1514.7);
  const double wc = omega_from_lambda(1514.7);
  const auto w = walkoff_terms(table(), c, 1514.7);
  const double sigma = 0.0419;  // 15 nm pump at 757 nm
  for (double ds : {-3.0, -1.5, 1.0, 2.5}) {
    for (double di : {-2.0, -0.5, 1.5, 3.0}) {
      const double ws = wc + ds * sigma, wi = wc + di * sigma;
      const double full = delta_k(table(), c, ws, wi);
      const double lin = (w.tau_s_fs * (ws - wc) + w.tau_i_fs * (wi - wc)) /
                         (c.length_mm * 1e3);
      CHECK(std::abs(full - lin) <
            0.05 * std::max(std::abs(full), std::abs(lin)));
    }
  }
}

TEST_CASE("walkoff terms: TypeI at degeneracy gives tau_s = tau_i") {
  CrystalSpec c;
  c.material = Material::BBO;
  c.pm_type = PmType::TypeI;
  c.length_mm = 5.0;
  c.cut_angle_deg = phasematch_angle(table(), Material::BBO, PmType::TypeI,
                                     800.0);
  const auto w = walkoff_terms(table(), c, 800.0);
  CHECK(w.tau_s_fs == doctest::Approx(w.tau_i_fs).epsilon(1e-12));
  CHECK(w.tau_minus_fs() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("walkoff terms: KDP AGVM geometry has tau_s near zero") {
  CrystalSpec c;
  c.material = Material::KDP;
  c.pm_type = PmType::TypeII;
  c.length_mm = 20.0;
  c.cut_angle_deg = 67.7;
  c.signal_polarization = Polarization::Ordinary;
  const auto w = walkoff_terms(table(), c, 830.0);
  CHECK(std::abs(w.tau_s_fs) < 0.05 * std::abs(w.tau_i_fs));
}

TEST_CASE("walkoff terms: BBO SGVM geometry has tau_s = -tau_i") {
  CrystalSpec c;
  c.material = Material::BBO;
  c.pm_type = PmType::TypeII;
  c.length_mm = 2.3;
  c.cut_angle_deg = 28.8;
  const auto w = walkoff_terms(table(), c, 1514.0);
  CHECK(std::abs(w.tau_s_fs + w.tau_i_fs) < 0.05 * std::abs(w.tau_i_fs));
}

TEST_CASE("TypeI forces ordinary signal polarization") {
  CrystalSpec c;
  c.pm_type = PmType::TypeI;
  c.signal_polarization = Polarization::Extraordinary;
  c.length_mm = 1.0;
  c.cut_angle_deg = 29.0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("data file matches the builtin coefficients") {
  const auto loaded = SellmeierTable::load(std::string(PHOTONPAIR_SOURCE_DIR) +
                                           "/data/sellmeier.dat");
  CHECK(loaded.version() == table().version());
  for (Material m : {Material::BBO, Material::KDP}) {
    for (Polarization p :
         {Polarization::Ordinary, Polarization::Extraordinary}) {
      const auto& a = loaded.entry(m, p);
      const auto& b = table().entry(m, p);
      CHECK(a.a == b.a);
      CHECK(a.b == b.b);
      CHECK(a.c == b.c);
      CHECK(a.d == b.d);
      CHECK(a.e == b.e);
      CHECK(a.lambda_min_nm == b.lambda_min_nm);
      CHECK(a.lambda_max_nm == b.lambda_max_nm);
    }
  }
}
