#include "roughflux/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "roughflux/errors.hpp"

namespace roughflux::svg {

namespace {

constexpr int width = 720, height = 440;
constexpr int margin_l = 64, margin_r = 160, margin_t = 40, margin_b = 48;

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

} // namespace

void write_line_plot(const std::string& file, const std::string& title,
                     std::span<const Series> series, const std::string& x_label,
                     const std::string& y_label, bool log_x, bool log_y) {
    // Collect transformed points per series and the global data window.
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    std::vector<std::vector<std::pair<double, double>>> pts(series.size());
    for (std::size_t s = 0; s < series.size(); ++s) {
        const Series& sr = series[s];
        if (sr.x.size() != sr.y.size())
            throw std::invalid_argument("write_line_plot: series length mismatch");
        for (std::size_t i = 0; i < sr.x.size(); ++i) {
            double px = sr.x[i], py = sr.y[i];
            if (log_x) {
                if (!(px > 0.0)) continue;
                px = std::log10(px);
            }
            if (log_y) {
                if (!(py > 0.0)) continue;
                py = std::log10(py);
            }
            if (!std::isfinite(px) || !std::isfinite(py)) continue;
            pts[s].emplace_back(px, py);
            x_lo = std::min(x_lo, px);
            x_hi = std::max(x_hi, px);
            y_lo = std::min(y_lo, py);
            y_hi = std::max(y_hi, py);
        }
    }
    if (!(x_lo <= x_hi)) { x_lo = 0.0; x_hi = 1.0; }
    if (!(y_lo <= y_hi)) { y_lo = 0.0; y_hi = 1.0; }
    if (x_hi == x_lo) { x_lo -= 0.5; x_hi += 0.5; }
    if (y_hi == y_lo) { y_lo -= 0.5; y_hi += 0.5; }
    const double x_pad = 0.03 * (x_hi - x_lo), y_pad = 0.06 * (y_hi - y_lo);
    x_lo -= x_pad;
    x_hi += x_pad;
    y_lo -= y_pad;
    y_hi += y_pad;

    const double plot_w = width - margin_l - margin_r;
    const double plot_h = height - margin_t - margin_b;
    auto sx = [&](double v) { return margin_l + (v - x_lo) / (x_hi - x_lo) * plot_w; };
    auto sy = [&](double v) {
        return margin_t + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h;
    };

    std::ofstream out(file);
    if (!out) throw ConfigError("cannot open for writing: " + file);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // Axes box and 5 ticks per axis.
    out << "<rect x=\"" << margin_l << "\" y=\"" << margin_t << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = x_lo + (x_hi - x_lo) * k / 4.0;
        const double fy = y_lo + (y_hi - y_lo) * k / 4.0;
        const double px = sx(fx), py = sy(fy);
        out << "<line x1=\"" << px << "\" y1=\"" << margin_t + plot_h << "\" x2=\"" << px
            << "\" y2=\"" << margin_t + plot_h + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << margin_t + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << (log_x ? "1e" + fmt(fx) : fmt(fx)) << "</text>\n";
        out << "<line x1=\"" << margin_l - 5 << "\" y1=\"" << py << "\" x2=\"" << margin_l
            << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << margin_l - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << (log_y ? "1e" + fmt(fy) : fmt(fy)) << "</text>\n";
    }
    if (!x_label.empty())
        out << "<text x=\"" << margin_l + plot_w / 2 << "\" y=\"" << height - 10
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << x_label << "</text>\n";
    if (!y_label.empty())
        out << "<text x=\"16\" y=\"" << margin_t + plot_h / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
            << "transform=\"rotate(-90 16 " << margin_t + plot_h / 2 << ")\">" << y_label
            << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const std::string color = series[s].color.empty()
                                      ? palette[s % (sizeof palette / sizeof *palette)]
                                      : series[s].color;
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\" points=\"";
        for (const auto& [px, py] : pts[s]) out << sx(px) << "," << sy(py) << " ";
        out << "\"/>\n";
        const double ly = margin_t + 16 + 18.0 * static_cast<double>(s);
        out << "<line x1=\"" << width - margin_r + 10 << "\" y1=\"" << ly << "\" x2=\""
            << width - margin_r + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.6\"/>\n";
        out << "<text x=\"" << width - margin_r + 40 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].label
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw ConfigError("write failed: " + file);
}

} // namespace roughflux::svg
