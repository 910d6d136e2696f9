#ifndef TSH_SVG_HPP
#define TSH_SVG_HPP

#include <string>
#include <vector>

namespace tsh {

struct PlotSeries {
    std::string name;
    std::vector<double> values;  // same length as the observed sequence
};

/// Renders a line chart (observed values plus one polyline per forecast
/// series, shared x axis by index) as a standalone SVG document. Output is
/// byte-deterministic for a given input.
std::string render_plot_svg(const std::vector<double>& observed,
                            const std::vector<PlotSeries>& forecasts,
                            const std::string& title = "");

/// render_plot_svg written to `path`; throws IoError when unwritable.
void emit_plot(const std::vector<double>& observed, const std::vector<PlotSeries>& forecasts,
               const std::string& path, const std::string& title = "");

}  // namespace tsh

#endif
