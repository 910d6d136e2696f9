#include "tsh/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "tsh/errors.hpp"

namespace tsh {

namespace {

constexpr int kWidth = 900;
constexpr int kHeight = 500;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 170;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

const char* kObservedColor = "#333333";
const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string render_plot_svg(const std::vector<double>& observed,
                            const std::vector<PlotSeries>& forecasts,
                            const std::string& title) {
    if (observed.empty()) {
        throw std::invalid_argument("render_plot_svg: observed sequence is empty");
    }
    for (const auto& f : forecasts) {
        if (f.values.size() != observed.size()) {
            throw std::invalid_argument("render_plot_svg: series '" + f.name +
                                        "' is not aligned with the observed sequence");
        }
    }

    double lo = observed.front();
    double hi = observed.front();
    auto widen = [&](const std::vector<double>& v) {
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    };
    widen(observed);
    for (const auto& f : forecasts) widen(f.values);
    if (hi == lo) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const std::size_t n = observed.size();
    const double x_span = (n > 1) ? static_cast<double>(n - 1) : 1.0;

    auto x_at = [&](std::size_t i) {
        return kMarginLeft + plot_w * static_cast<double>(i) / x_span;
    };
    auto y_at = [&](double v) { return kMarginTop + plot_h * (1.0 - (v - lo) / (hi - lo)); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
           std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg += "<text x=\"" + std::to_string(kMarginLeft) +
               "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" + xml_escape(title) +
               "</text>\n";
    }

    // Axes and horizontal grid lines with value ticks.
    svg += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" + fmt(kMarginTop) +
           "\" x2=\"" + std::to_string(kMarginLeft) + "\" y2=\"" + fmt(kMarginTop + plot_h) +
           "\" stroke=\"#999999\"/>\n";
    svg += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" + fmt(kMarginTop + plot_h) +
           "\" x2=\"" + fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(kMarginTop + plot_h) +
           "\" stroke=\"#999999\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = lo + (hi - lo) * tick / 4.0;
        const double y = y_at(v);
        svg += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
               fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(y) +
               "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + std::to_string(kMarginLeft - 8) + "\" y=\"" + fmt(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + fmt(v) +
               "</text>\n";
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const std::size_t i = (n - 1) * static_cast<std::size_t>(tick) / 4;
        svg += "<text x=\"" + fmt(x_at(i)) + "\" y=\"" + fmt(kMarginTop + plot_h + 18) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               std::to_string(i) + "</text>\n";
    }
    svg += "<text x=\"" + fmt(kMarginLeft + plot_w / 2) + "\" y=\"" +
           std::to_string(kHeight - 12) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">index</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(kMarginTop + plot_h / 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " +
           fmt(kMarginTop + plot_h / 2) + ")\">value</text>\n";

    auto polyline = [&](const std::vector<double>& vals, const char* color, int width) {
        std::string pts;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) pts += ' ';
            pts += fmt(x_at(i)) + "," + fmt(y_at(vals[i]));
        }
        return std::string("<polyline fill=\"none\" stroke=\"") + color + "\" stroke-width=\"" +
               std::to_string(width) + "\" points=\"" + pts + "\"/>\n";
    };

    svg += polyline(observed, kObservedColor, 2);
    for (std::size_t s = 0; s < forecasts.size(); ++s) {
        svg += polyline(forecasts[s].values, kPalette[s % 6], 1);
    }

    // Legend.
    const double legend_x = kMarginLeft + plot_w + 14;
    double legend_y = kMarginTop + 10;
    auto legend_entry = [&](const std::string& name, const char* color) {
        std::string row;
        row += "<line x1=\"" + fmt(legend_x) + "\" y1=\"" + fmt(legend_y - 4) + "\" x2=\"" +
               fmt(legend_x + 22) + "\" y2=\"" + fmt(legend_y - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        row += "<text x=\"" + fmt(legend_x + 28) + "\" y=\"" + fmt(legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(name) + "</text>\n";
        legend_y += 18;
        return row;
    };
    svg += legend_entry("observed", kObservedColor);
    for (std::size_t s = 0; s < forecasts.size(); ++s) {
        svg += legend_entry(forecasts[s].name, kPalette[s % 6]);
    }

    svg += "</svg>\n";
    return svg;
}

void emit_plot(const std::vector<double>& observed, const std::vector<PlotSeries>& forecasts,
               const std::string& path, const std::string& title) {
    const std::string svg = render_plot_svg(observed, forecasts, title);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("emit_plot: cannot open " + path + " for writing");
    }
    out << svg;
    if (!out) {
        throw IoError("emit_plot: write failed for " + path);
    }
}

}  // namespace tsh
