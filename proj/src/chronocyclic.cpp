#include "photonpair/chronocyclic.hpp"

namespace photonpair {

namespace {

// Trapezoidal rule on a uniform axis.
double trapezoid(const std::vector<double>& axis,
                 const std::vector<double>& values) {
  if (axis.size() < 2) return 0.0;
  const double h = axis[1] - axis[0];
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * h;
}

}  // namespace

double ChronocyclicWigner::integral() const {
  return values.sum() * omega_spacing() * time_spacing();
}

double IntensityProfile::integral() const { return trapezoid(axis, density); }

double IntensityProfile::centroid() const {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    num += axis[i] * density[i];
    den += density[i];
  }
  return num / den;
}

void IntensityProfile::normalize() {
  const double total = integral();
  if (total > 0)
    for (auto& v : density) v /= total;
}

}  // namespace photonpair
