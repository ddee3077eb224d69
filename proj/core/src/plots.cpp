#include "solarcast/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace solarcast {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 40.0;

const char* kBandColors[] = {"#c6dbef", "#9ecae1", "#6baed6", "#3182bd"};
const char* kCurveColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::ofstream open_svg(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void emit_fan_chart(const std::vector<FanPoint>& window, const std::string& out_path) {
    if (window.empty()) throw DataError("fan chart: empty window");

    double ymax = 0.0;
    for (const FanPoint& p : window) {
        ymax = std::max(ymax, p.ghi);
        for (double q : p.quantiles) ymax = std::max(ymax, q);
    }
    if (ymax <= 0.0) ymax = 1.0;
    ymax *= 1.05;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const std::size_t n = window.size();
    auto sx = [&](std::size_t i) {
        return kMarginLeft + plot_w * static_cast<double>(i) /
                                 static_cast<double>(std::max<std::size_t>(n - 1, 1));
    };
    auto sy = [&](double v) { return kMarginTop + plot_h * (1.0 - v / ymax); };

    auto out = open_svg(out_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Nested decile bands: (q10,q90), (q20,q80), (q30,q70), (q40,q60).
    for (int band = 0; band < 4; ++band) {
        std::ostringstream path;
        for (std::size_t i = 0; i < n; ++i)
            path << (i == 0 ? "M" : "L") << fmt(sx(i)) << ","
                 << fmt(sy(window[i].quantiles[band])) << " ";
        for (std::size_t i = n; i-- > 0;)
            path << "L" << fmt(sx(i)) << "," << fmt(sy(window[i].quantiles[8 - band])) << " ";
        path << "Z";
        out << "<path d=\"" << path.str() << "\" fill=\"" << kBandColors[band]
            << "\" stroke=\"none\"/>\n";
    }

    // Median.
    out << "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < n; ++i)
        out << fmt(sx(i)) << "," << fmt(sy(window[i].quantiles[4])) << " ";
    out << "\"/>\n";

    // Observations.
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < n; ++i) out << fmt(sx(i)) << "," << fmt(sy(window[i].ghi)) << " ";
    out << "\"/>\n";

    // Axes and labels.
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = ymax * tick / 4.0;
        out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << sy(v) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << static_cast<int>(v)
            << "</text>\n";
    }
    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 8
        << "\" text-anchor=\"middle\" font-size=\"12\">" << to_iso8601(window.front().t)
        << " to " << to_iso8601(window.back().t) << "</text>\n";
    out << "<text x=\"14\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
        << kMarginTop + plot_h / 2 << ")\">GHI (W/m^2)</text>\n";
    out << "</svg>\n";
}

void emit_calibration_curves(const std::vector<NamedCurve>& curves,
                             const std::string& out_path) {
    if (curves.empty()) throw DataError("calibration plot: no curves");
    for (const NamedCurve& c : curves) {
        if (c.points.empty()) throw DataError("calibration plot: empty curve " + c.label);
        for (const auto& [p, cov] : c.points)
            if (p < 0.0 || p > 1.0 || cov < 0.0 || cov > 1.0)
                throw DataError("calibration plot: values outside [0,1] in " + c.label);
    }

    const double size = 460.0;
    const double margin = 50.0;
    const double plot = size - 2 * margin;
    auto sx = [&](double p) { return margin + plot * p; };
    auto sy = [&](double v) { return size - margin - plot * v; };

    auto out = open_svg(out_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 200 << "\" height=\""
        << size << "\" viewBox=\"0 0 " << size + 200 << " " << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(1) << "\" y2=\""
        << sy(1) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char* color = kCurveColors[c % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [p, cov] : curves[c].points)
            out << fmt(sx(p)) << "," << fmt(sy(cov)) << " ";
        out << "\"/>\n";
        out << "<rect x=\"" << size + 10 << "\" y=\"" << margin + 18.0 * c << "\" width=\"12\""
            << " height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << size + 28 << "\" y=\"" << margin + 18.0 * c + 10
            << "\" font-size=\"12\">" << curves[c].label << "</text>\n";
    }

    out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(1) << "\" y2=\""
        << sy(0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\""
        << sy(1) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(0.5) << "\" y=\"" << size - 14
        << "\" text-anchor=\"middle\" font-size=\"12\">nominal level</text>\n";
    out << "<text x=\"16\" y=\"" << sy(0.5)
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " << sy(0.5)
        << ")\">empirical coverage</text>\n";
    out << "</svg>\n";
}

}  // namespace solarcast
