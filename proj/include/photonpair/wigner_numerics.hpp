#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "photonpair/chronocyclic.hpp"
#include "photonpair/errors.hpp"
#include "photonpair/state_builder.hpp"

namespace photonpair::wigner_numerics {

using state_builder::FilterSpec;
using state_builder::FrequencyGrid;
using state_builder::JointSpectralAmplitude;

// <w_j| rho_s |w_k> for the heralded signal photon, unit trace
// (trace(R) * spacing = 1).
struct HeraldedDensityMatrix {
  FrequencyGrid grid;
  Eigen::MatrixXcd values;
  bool trigger_filtered = false;

  double trace() const { return values.trace().real() * grid.spacing; }
  // Tr(rho^2): values.squaredNorm is sum |R_jk|^2 = Tr(R R^H) = Tr(R^2)
  // for Hermitian R.
  double purity() const {
    return values.squaredNorm() * grid.spacing * grid.spacing;
  }
};

// R[j][k] = sum_m g(w_m) f[j][m] conj(f[k][m]) * spacing, renormalized
// to unit trace.  g == 1 for an unfiltered trigger.
HeraldedDensityMatrix heralded_density_matrix(const JointSpectralAmplitude& jsa,
                                              const FilterSpec& trigger);

struct CwfOptions {
  // The natural t-step pi/(N*spacing) can undersample short wavepackets;
  // the omega' sum is zero-padded by this factor before the transform
  // (exact refinement of the band-limited t-dependence).  The Nyquist
  // range t in [-pi/(2*spacing), pi/(2*spacing)) is unchanged.
  int time_oversampling = 8;
};

// W(w_j, t) = (1/2pi) sum_m R[j+m][j-m] exp(i 2m*spacing*t) * 2*spacing,
// i.e. w' sampled at even grid multiples so w +/- w'/2 lands exactly on
// grid points; out-of-range entries are zero.
ChronocyclicWigner numerical_cwf(const HeraldedDensityMatrix& rho,
                                 const CwfOptions& options = {});

struct Marginals {
  IntensityProfile spectral;  // I_omega
  IntensityProfile temporal;  // I_t
};

Marginals marginals(const ChronocyclicWigner& w);

// Half the distance between the outermost crossings of level*max,
// crossings located by linear interpolation.  Outermost crossings keep
// sinc side-lobes inside the width for top-hat-like profiles.
WidthMeasurement measure_width(const IntensityProfile& profile,
                               double level = std::exp(-1.0));

struct ContourPoint {
  double omega;
  double t;
};
using Contour = std::vector<ContourPoint>;  // closed: front() == back()

// Marching-squares level set at level*max(W).
std::vector<Contour> contour_e1(const ChronocyclicWigner& w,
                                double level = std::exp(-1.0));

double contour_area(const Contour& c);

struct JointTemporalResult {
  IntensityProfile s_minus;   // marginal of |f~(ts,ti)|^2 over t_+
  double tau_c_fs = 0;        // e^-1 half-width of S_-
};

// 2-D Fourier transform of f, intensity, rotation to t_+/- = t_s -/+ t_i,
// marginal over t_+ taken along grid antidiagonals (no interpolation).
JointTemporalResult joint_temporal_analysis(const JointSpectralAmplitude& jsa);

}  // namespace photonpair::wigner_numerics
