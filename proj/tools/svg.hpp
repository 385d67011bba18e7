#pragma once

#include <string>
#include <vector>

namespace lineshape::svgplot {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6feb";
    std::string label;
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool log_x = false;
    bool log_y = false;
};

// Minimal line-plot writer; plots are derived views of the CSV data, never a
// data source of their own.
void write_svg_plot(const std::string& path, const std::vector<Series>& series,
                    const PlotSpec& spec);

}  // namespace lineshape::svgplot
