#include "qkonc/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qkonc::svg {

namespace {

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Largest of {1, 2, 5} * 10^k not exceeding `raw`.
double nice_step(double raw) {
    if (!(raw > 0.0)) {
        return 1.0;
    }
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r >= 5.0) {
        return 5.0 * mag;
    }
    if (r >= 2.0) {
        return 2.0 * mag;
    }
    return mag;
}

} // namespace

void write_log_y_plot(const std::filesystem::path& path, const PlotSpec& spec,
                      const std::vector<Series>& series) {
    // Data ranges over drawable (y > 0) points.
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -std::numeric_limits<double>::infinity();
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (const Series& s : series) {
        for (const auto& [x, y] : s.points) {
            if (y > 0.0) {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    const bool have_data = std::isfinite(x_min) && std::isfinite(y_min);
    if (!have_data) {
        x_min = 0.0;
        x_max = 1.0;
        y_min = 0.1;
        y_max = 10.0;
    }
    if (x_min == x_max) {
        x_min -= 0.5;
        x_max += 0.5;
    }

    int dec_lo = static_cast<int>(std::floor(std::log10(y_min)));
    int dec_hi = static_cast<int>(std::ceil(std::log10(y_max)));
    if (dec_lo == dec_hi) {
        --dec_lo;
        ++dec_hi;
    }

    const double ml = 86.0, mr = 24.0, mt = 48.0, mb = 64.0;
    const double pw = spec.width - ml - mr;  // plot width
    const double ph = spec.height - mt - mb; // plot height

    auto x_px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    auto y_px = [&](double y) {
        const double t = (std::log10(y) - dec_lo) / (dec_hi - dec_lo);
        return mt + (1.0 - t) * ph;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(spec.title) << "</text>\n";

    // Decade gridlines and y tick labels.
    for (int d = dec_lo; d <= dec_hi; ++d) {
        const double y = y_px(std::pow(10.0, d));
        out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(ml + pw)
            << "\" y2=\"" << fmt(y) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" << d
            << "</text>\n";
    }

    // X ticks.
    const double step = nice_step((x_max - x_min) / 6.0);
    for (double x = std::ceil(x_min / step) * step; x <= x_max + 1e-9; x += step) {
        const double px = x_px(x);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << fmt(mt + ph + 5) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(mt + ph + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt_g(x) << "</text>\n";
    }

    // Axes.
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
        << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\"" << fmt(ml + pw)
        << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(spec.height - 16.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << escape(spec.x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << fmt(mt + ph / 2) << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 20 "
        << fmt(mt + ph / 2) << ")\">" << escape(spec.y_label) << "</text>\n";

    // Series.
    for (const Series& s : series) {
        std::vector<std::array<double, 2>> drawable;
        for (const auto& pt : s.points) {
            if (pt[1] > 0.0) {
                drawable.push_back(pt);
            }
        }
        if (drawable.empty()) {
            continue;
        }
        if (s.line && drawable.size() >= 2) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"";
            if (s.dashed) {
                out << " stroke-dasharray=\"6,4\"";
            }
            out << " points=\"";
            for (const auto& [x, y] : drawable) {
                out << fmt(x_px(x)) << "," << fmt(y_px(y)) << " ";
            }
            out << "\"/>\n";
        }
        if (s.markers) {
            for (const auto& [x, y] : drawable) {
                out << "<circle cx=\"" << fmt(x_px(x)) << "\" cy=\"" << fmt(y_px(y))
                    << "\" r=\"3.5\" fill=\"" << s.color << "\"/>\n";
            }
        }
    }

    // Legend, top right.
    if (!series.empty()) {
        const double lx = ml + pw - 190.0;
        const double ly = mt + 10.0;
        const double lh = 20.0 * static_cast<double>(series.size()) + 10.0;
        out << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly) << "\" width=\"180\" height=\""
            << fmt(lh) << "\" fill=\"white\" stroke=\"#999999\"/>\n";
        for (std::size_t i = 0; i < series.size(); ++i) {
            const double ry = ly + 20.0 * static_cast<double>(i) + 18.0;
            out << "<line x1=\"" << fmt(lx + 8) << "\" y1=\"" << fmt(ry - 4) << "\" x2=\""
                << fmt(lx + 36) << "\" y2=\"" << fmt(ry - 4) << "\" stroke=\"" << series[i].color
                << "\" stroke-width=\"2\"";
            if (series[i].dashed) {
                out << " stroke-dasharray=\"6,4\"";
            }
            out << "/>\n";
            out << "<text x=\"" << fmt(lx + 42) << "\" y=\"" << fmt(ry)
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[i].label)
                << "</text>\n";
        }
    }
    out << "</svg>\n";

    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    file << out.str();
    if (!file) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

} // namespace qkonc::svg
