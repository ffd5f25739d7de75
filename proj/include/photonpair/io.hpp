#pragma once

#include <string>
#include <vector>

#include "photonpair/chronocyclic.hpp"
#include "photonpair/wigner_numerics.hpp"

namespace photonpair::io {

// All writers go through a temp file + rename so partially written
// outputs never appear under the final name.

// Two-column CSV: axis,value
void write_profile_csv(const std::string& path, const IntensityProfile& p,
                       const std::string& axis_name,
                       const std::string& value_name);
IntensityProfile read_profile_csv(const std::string& path);

// Grid CSV: first row = time axis (prefixed by a corner label cell),
// following rows = omega value then one cell per time sample.
void write_cwf_csv(const std::string& path, const ChronocyclicWigner& w);
ChronocyclicWigner read_cwf_csv(const std::string& path);

// Contour CSV: omega_thz,t_fs polyline rows; blank line between
// polylines.
void write_contour_csv(const std::string& path,
                       const std::vector<wigner_numerics::Contour>& contours);
std::vector<wigner_numerics::Contour> read_contour_csv(
    const std::string& path);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace photonpair::io
