#pragma once

#include <string>
#include <vector>

namespace rsiss::cli {

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;  // non-finite y values break the line
    std::string color = "#1f77b4";
    double width = 1.5;
    bool dashed = false;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    double y_max = 0.0;  // clip above this when > 0
    // shaded x-interval, skipped when band_lo >= band_hi
    double band_lo = 0.0, band_hi = 0.0;
    int width = 720, height = 460;
};

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace rsiss::cli
