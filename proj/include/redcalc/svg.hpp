#pragma once

#include <string>

#include "redcalc/anticipatory.hpp"

namespace redcalc {

// 800x600 scatter of the scan with labeled a and x axes. Each occupied
// pixel is drawn once as a 1px rect, in order of first occurrence.
std::string render_scan_svg(const BifurcationScan& scan);

// Scan points as "a,x" CSV rows at the given precision.
std::string render_scan_csv(const BifurcationScan& scan, int precision);

}  // namespace redcalc
