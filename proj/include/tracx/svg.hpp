#ifndef TRACX_SVG_HPP
#define TRACX_SVG_HPP

#include <string>
#include <vector>

namespace tracx {

struct ScatterPoint {
    double x = 0.0, y = 0.0;
    std::string label;
    std::string cls; // legend/color class
};

// Data-faithful SVG scatter: axes with min/max ticks, one marker per point,
// colors keyed by class, legend. Deterministic output for fixed input.
std::string svg_scatter(const std::vector<ScatterPoint>& points, const std::string& title,
                        const std::string& x_label, const std::string& y_label);

} // namespace tracx

#endif
