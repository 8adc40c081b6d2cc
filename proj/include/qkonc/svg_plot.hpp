#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace qkonc::svg {

struct Series {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<std::array<double, 2>> points; // (x, y); y must be > 0 to appear
    bool line = true;
    bool markers = true;
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 760;
    int height = 520;
};

// Self-contained SVG with a linear x axis and a log-scale y axis (decade
// ticks and gridlines). Points with non-positive y are dropped from drawing.
// An empty series list still yields a valid plot with axes.
void write_log_y_plot(const std::filesystem::path& path, const PlotSpec& spec,
                      const std::vector<Series>& series);

} // namespace qkonc::svg
