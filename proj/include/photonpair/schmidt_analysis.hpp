#pragma once

#include <vector>

#include <Eigen/Dense>

#include "photonpair/state_builder.hpp"
#include "photonpair/wigner_numerics.hpp"

namespace photonpair::schmidt_analysis {

using state_builder::JointSpectralAmplitude;
using wigner_numerics::HeraldedDensityMatrix;

// f = sum_m sqrt(lambda_m) u_m(w_s) v_m(w_i), from the SVD of f*spacing.
// Eigenvalues descend and sum to one; the mode columns are orthonormal
// under the spacing-weighted inner product.  Each u_m is phased so its
// largest-magnitude sample is real positive (and v_m counter-rotated),
// making decompositions comparable across runs.
struct SchmidtDecomposition {
  std::vector<double> eigenvalues;
  Eigen::MatrixXcd modes_u;  // column m = u_m on the grid
  Eigen::MatrixXcd modes_v;  // column m = v_m on the grid
  state_builder::FrequencyGrid grid;

  double sum() const;
  double schmidt_number() const;  // K = 1 / sum(lambda^2)
};

SchmidtDecomposition decompose(const JointSpectralAmplitude& jsa);

double schmidt_number(const SchmidtDecomposition& d);

struct EntanglementReport {
  double schmidt_number = 1;     // K
  double purity = 1;             // 1/K
  double purity_trace = 1;       // Tr(rho^2) spacing^2, independent route
  double purity_discrepancy = 0; // |1/K - Tr(rho^2)|
  double visibility = 1;         // predicted event-ready HOM visibility = p
  int effective_rank = 1;        // count of lambda_m > 1e-6
};

// p computed both as 1/K and as Tr(rho^2); the identity only holds for
// an unfiltered trigger, so a filtered density matrix is rejected.
EntanglementReport purity_report(const SchmidtDecomposition& d,
                                 const HeraldedDensityMatrix& rho);

struct KTbCheck {
  double schmidt_number = 0;     // numeric, Gaussian-linearized PMF
  double time_bandwidth = 0;     // analytic TB
  double relative_difference = 0;
  bool pass = false;             // difference < 2%
};

// Builds the JSA with the Gaussian-linearized PMF (unfiltered trigger),
// decomposes it, and compares K against the closed-form TB.
KTbCheck gaussian_k_equals_tb_check(
    const crystal_optics::SellmeierTable& table,
    const crystal_optics::CrystalSpec& crystal,
    const state_builder::PumpSpec& pump, const state_builder::FilterSpec& filters,
    const state_builder::FrequencyGrid& grid);

}  // namespace photonpair::schmidt_analysis
