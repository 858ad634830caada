#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace rsiss::cli {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tick_label(double v) {
    std::ostringstream ss;
    ss << std::setprecision(3) << v;
    return ss.str();
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
    const double left = 70, right = 20, top = 40, bottom = 55;
    const double pw = opt.width - left - right, ph = opt.height - top - bottom;

    auto ty = [&](double y) { return opt.log_y ? std::log10(y) : y; };
    auto usable = [&](double y) {
        return std::isfinite(y) && (!opt.log_y || y > 0.0) && (opt.y_max <= 0.0 || y <= opt.y_max);
    };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            if (usable(s.y[i])) {
                y0 = std::min(y0, ty(s.y[i]));
                y1 = std::max(y1, ty(s.y[i]));
            }
        }
    if (!(x1 > x0)) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (!(y1 > y0)) {
        y0 = std::isfinite(y0) ? y0 - 0.5 : 0.0;
        y1 = std::isfinite(y1) ? y1 + 0.5 : 1.0;
    }
    if (opt.log_y) {
        y0 = std::floor(y0);
        y1 = std::ceil(y1);
    }
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (1.0 - (ty(y) - y0) / (y1 - y0)) * ph; };

    std::ostringstream svg;
    svg << std::fixed << std::setprecision(2);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (opt.band_hi > opt.band_lo) {
        const double a = px(std::max(opt.band_lo, x0)), b = px(std::min(opt.band_hi, x1));
        svg << "<rect x=\"" << a << "\" y=\"" << top << "\" width=\"" << std::max(0.0, b - a) << "\" height=\"" << ph
            << "\" fill=\"#f4d03f\" fill-opacity=\"0.35\"/>\n";
    }

    // axes and ticks
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph << "\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
    svg << "</g>\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = x0 + (x1 - x0) * i / 5.0;
        svg << "<line x1=\"" << px(x) << "\" y1=\"" << top + ph << "\" x2=\"" << px(x) << "\" y2=\"" << top + ph + 5
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px(x) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << tick_label(x)
            << "</text>\n";
    }
    const int yticks = opt.log_y ? static_cast<int>(y1 - y0) : 5;
    for (int i = 0; i <= yticks; ++i) {
        const double t = y0 + (y1 - y0) * i / std::max(1, yticks);
        const double yv = opt.log_y ? std::pow(10.0, t) : t;
        const double yp = top + (1.0 - (t - y0) / (y1 - y0)) * ph;
        svg << "<line x1=\"" << left - 5 << "\" y1=\"" << yp << "\" x2=\"" << left << "\" y2=\"" << yp
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << yp + 4 << "\" text-anchor=\"end\">" << tick_label(yv)
            << "</text>\n";
    }

    for (const auto& s : series) {
        std::ostringstream pts;
        auto flush = [&]() {
            if (pts.tellp() > 0) {
                svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << s.width << "\""
                    << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << pts.str() << "\"/>\n";
                pts.str("");
                pts.clear();
            }
        };
        pts << std::fixed << std::setprecision(2);
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!usable(s.y[i])) {
                flush();
                continue;
            }
            pts << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        flush();
    }

    // legend
    double ly = top + 14;
    for (const auto& s : series) {
        svg << "<line x1=\"" << left + pw - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw - 125 << "\" y2=\""
            << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"" << s.width << "\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        svg << "<text x=\"" << left + pw - 120 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
        ly += 16;
    }

    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << 22 << "\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(opt.title) << "</text>\n";
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << opt.height - 12 << "\" text-anchor=\"middle\">"
        << escape(opt.x_label) << "</text>\n";
    svg << "<text transform=\"translate(16," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(opt.y_label) << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace rsiss::cli
