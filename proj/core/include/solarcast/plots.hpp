#pragma once

#include <string>
#include <utility>
#include <vector>

#include "solarcast/harness.hpp"

namespace solarcast {

/// Fan chart: nested central-interval bands (10th-90th deciles) around the
/// median, with the observed irradiance overlaid. Throws on an empty window.
void emit_fan_chart(const std::vector<FanPoint>& window, const std::string& out_path);

struct NamedCurve {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (level, coverage), both in [0,1]
};

/// Calibration plot: the diagonal reference plus one polyline per curve.
void emit_calibration_curves(const std::vector<NamedCurve>& curves,
                             const std::string& out_path);

}  // namespace solarcast
