#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace lineshape::svgplot {

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kLeft = 80.0, kRight = 40.0, kTop = 50.0, kBottom = 60.0;

double transform(double v, bool log_scale) {
    if (!log_scale) return v;
    if (v <= 0.0) throw std::invalid_argument("log-scale axis requires positive values");
    return std::log10(v);
}

std::string fmt_tick(double v) {
    char buf[32];
    if (v != 0.0 && (std::abs(v) >= 1e4 || std::abs(v) < 1e-3))
        std::snprintf(buf, sizeof(buf), "%.1e", v);
    else
        std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<Series>& series,
                    const PlotSpec& spec) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("series x and y lengths differ");
        for (size_t i = 0; i < s.x.size(); ++i) {
            double tx = transform(s.x[i], spec.log_x);
            double ty = transform(s.y[i], spec.log_y);
            xmin = std::min(xmin, tx);
            xmax = std::max(xmax, tx);
            ymin = std::min(ymin, ty);
            ymax = std::max(ymax, ty);
        }
    }
    if (!(xmin <= xmax) || !(ymin <= ymax))
        throw std::invalid_argument("nothing to plot");
    if (xmax - xmin < 1e-300) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-300) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (transform(v, spec.log_x) - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double v) { return kTop + plot_h - (transform(v, spec.log_y) - ymin) / (ymax - ymin) * plot_h; };

    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open svg output: " + path);
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                 "viewBox=\"0 0 %g %g\" font-family=\"sans-serif\" font-size=\"13\">\n",
                 kWidth, kHeight, kWidth, kHeight);
    std::fprintf(f, "<rect width=\"%g\" height=\"%g\" fill=\"white\"/>\n", kWidth, kHeight);
    std::fprintf(f,
                 "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
                 "stroke=\"#888\"/>\n",
                 kLeft, kTop, plot_w, plot_h);
    std::fprintf(f, "<text x=\"%g\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">%s</text>\n",
                 kLeft + plot_w / 2, spec.title.c_str());
    std::fprintf(f, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n",
                 kLeft + plot_w / 2, kHeight - 14.0, spec.xlabel.c_str());
    std::fprintf(f,
                 "<text x=\"20\" y=\"%g\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
                 "%g)\">%s</text>\n",
                 kTop + plot_h / 2, kTop + plot_h / 2, spec.ylabel.c_str());

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        double fx = xmin + (xmax - xmin) * i / ticks;
        double fy = ymin + (ymax - ymin) * i / ticks;
        double vx = spec.log_x ? std::pow(10.0, fx) : fx;
        double vy = spec.log_y ? std::pow(10.0, fy) : fy;
        double sx = kLeft + plot_w * i / ticks;
        double sy = kTop + plot_h - plot_h * i / ticks;
        std::fprintf(f, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#888\"/>\n",
                     sx, kTop + plot_h, sx, kTop + plot_h + 5);
        std::fprintf(f,
                     "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n",
                     sx, kTop + plot_h + 20, fmt_tick(vx).c_str());
        std::fprintf(f, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#888\"/>\n",
                     kLeft - 5, sy, kLeft, sy);
        std::fprintf(f, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%s</text>\n", kLeft - 9,
                     sy + 4, fmt_tick(vy).c_str());
    }

    for (const auto& s : series) {
        if (s.x.empty()) continue;
        std::fprintf(f, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.8\" points=\"",
                     s.color.c_str());
        for (size_t i = 0; i < s.x.size(); ++i)
            std::fprintf(f, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
        std::fprintf(f, "\"/>\n");
    }

    double ly = kTop + 16.0;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        std::fprintf(f, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
                        "stroke-width=\"3\"/>\n",
                     kLeft + plot_w - 150, ly - 4, kLeft + plot_w - 125, ly - 4, s.color.c_str());
        std::fprintf(f, "<text x=\"%g\" y=\"%g\">%s</text>\n", kLeft + plot_w - 118, ly,
                     s.label.c_str());
        ly += 18.0;
    }
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
}

}  // namespace lineshape::svgplot
