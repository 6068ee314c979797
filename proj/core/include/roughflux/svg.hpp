#pragma once

#include <span>
#include <string>
#include <vector>

namespace roughflux::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color; // CSS color; assigned from a small palette if empty
};

// Static line plot (polylines, axes with ticks, legend) written as a
// standalone SVG file. Log axes take log10 of the data; nonpositive values
// are dropped from log-scaled series.
void write_line_plot(const std::string& file, const std::string& title,
                     std::span<const Series> series, const std::string& x_label = "",
                     const std::string& y_label = "", bool log_x = false,
                     bool log_y = false);

} // namespace roughflux::svg
