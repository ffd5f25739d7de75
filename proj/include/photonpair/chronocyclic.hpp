#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace photonpair {

// Real-valued W(omega, t) on a frequency x time grid.  Shared between
// the closed-form Gaussian model and the grid numerics.
struct ChronocyclicWigner {
  std::vector<double> omega_axis;  // rad/fs
  std::vector<double> time_axis;   // fs
  Eigen::MatrixXd values;          // values(j, l) = W(omega_j, t_l)

  double omega_spacing() const { return omega_axis[1] - omega_axis[0]; }
  double time_spacing() const { return time_axis[1] - time_axis[0]; }
  double integral() const;
};

// Nonnegative density on one axis, normalized to unit integral.
struct IntensityProfile {
  std::vector<double> axis;
  std::vector<double> density;

  double integral() const;
  double centroid() const;
  void normalize();
};

// Half the distance between the outermost crossings of level*max.
struct WidthMeasurement {
  double half_width = 0;
  double left_crossing = 0;
  double right_crossing = 0;
  double level = 0;                 // fraction of max, e.g. exp(-1)
  std::string convention = "e^-1-of-max";
};

}  // namespace photonpair
