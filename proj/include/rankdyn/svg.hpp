#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankdyn::svg {

// Minimal deterministic SVG charts: fixed canvas, fixed styling, no external
// renderer. Each series becomes one <g class="series"> group.

struct Series {
    std::string label;
    std::string color = "#1f77b4";
    bool line = true; // polyline when true, point markers otherwise
    std::vector<std::pair<double, double>> points;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    bool invert_y = false; // rank axes: 1 at the top
    std::optional<double> y_min;
    std::optional<double> y_max;
    std::vector<Series> series;

    void render(std::ostream& out) const;
};

std::string escape_xml(const std::string& text);

} // namespace rankdyn::svg
