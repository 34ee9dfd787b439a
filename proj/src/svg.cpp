#include "tracx/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tracx/csv.hpp"

namespace tracx {

namespace {
const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;
} // namespace

std::string svg_scatter(const std::vector<ScatterPoint>& points, const std::string& title,
                        const std::string& x_label, const std::string& y_label) {
    const double w = 640, h = 520, ml = 60, mr = 150, mt = 40, mb = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!points.empty()) {
        xmin = xmax = points[0].x;
        ymin = ymax = points[0].y;
        for (const auto& p : points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;
    const auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    const auto sy = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::map<std::string, std::string> colors;
    for (const auto& p : points)
        if (!colors.count(p.cls)) colors[p.cls] = kPalette[colors.size() % kPaletteSize];

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
       << w << " " << h << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
       << x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + h - mb) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
       << (mt + h - mb) / 2 << ")\">" << y_label << "</text>\n";
    os << "<text x=\"" << ml << "\" y=\"" << h - mb + 16 << "\" font-size=\"10\">" << fmt9(xmin) << "</text>\n";
    os << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 16 << "\" text-anchor=\"end\" font-size=\"10\">" << fmt9(xmax)
       << "</text>\n";
    os << "<text x=\"" << ml - 4 << "\" y=\"" << h - mb << "\" text-anchor=\"end\" font-size=\"10\">" << fmt9(ymin)
       << "</text>\n";
    os << "<text x=\"" << ml - 4 << "\" y=\"" << mt + 10 << "\" text-anchor=\"end\" font-size=\"10\">" << fmt9(ymax)
       << "</text>\n";
    for (const auto& p : points) {
        os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3.5\" fill=\"" << colors[p.cls]
           << "\" fill-opacity=\"0.8\"><title>" << p.label << "</title></circle>\n";
    }
    double ly = mt + 10;
    for (const auto& [cls, color] : colors) {
        os << "<circle cx=\"" << w - mr + 16 << "\" cy=\"" << ly << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << w - mr + 26 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << cls << "</text>\n";
        ly += 18;
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace tracx
