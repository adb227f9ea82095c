#include "rankdyn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "rankdyn/error.hpp"

namespace rankdyn::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 42.0;
constexpr double kMarginBottom = 56.0;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[48];
    if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-3))
        std::snprintf(buf, sizeof buf, "%.0e", v);
    else if (v == std::floor(v) && std::abs(v) < 1e15)
        std::snprintf(buf, sizeof buf, "%.0f", v);
    else
        std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct AxisScale {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double transform(double v) const { return log ? std::log10(v) : v; }
    double unit(double v) const {
        double t = transform(v);
        return (t - lo) / (hi - lo);
    }
};

std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
    std::vector<double> ticks;
    double span = hi - lo;
    if (span <= 0) return {lo};
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step) ticks.push_back(v);
    return ticks;
}

} // namespace

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

void Chart::render(std::ostream& out) const {
    bool have_point = false;
    double x_lo = 0.0, x_hi = 1.0, data_y_lo = 0.0, data_y_hi = 1.0;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (log_x && !(x > 0.0))
                throw Error(ErrorKind::InvalidArgument, "svg: log x-axis needs positive x");
            if (log_y && !(y > 0.0))
                throw Error(ErrorKind::InvalidArgument, "svg: log y-axis needs positive y");
            double tx = log_x ? std::log10(x) : x;
            double ty = log_y ? std::log10(y) : y;
            if (!have_point) {
                x_lo = x_hi = tx;
                data_y_lo = data_y_hi = ty;
                have_point = true;
            } else {
                x_lo = std::min(x_lo, tx);
                x_hi = std::max(x_hi, tx);
                data_y_lo = std::min(data_y_lo, ty);
                data_y_hi = std::max(data_y_hi, ty);
            }
        }
    }
    if (!have_point) throw Error(ErrorKind::InvalidArgument, "svg: chart has no points");

    AxisScale xs{x_lo, x_hi, log_x};
    AxisScale ys{data_y_lo, data_y_hi, log_y};
    if (y_min) ys.lo = log_y ? std::log10(*y_min) : *y_min;
    if (y_max) ys.hi = log_y ? std::log10(*y_max) : *y_max;
    if (xs.hi - xs.lo <= 0) {
        xs.lo -= 0.5;
        xs.hi += 0.5;
    }
    if (ys.hi - ys.lo <= 0) {
        ys.lo -= 0.5;
        ys.hi += 0.5;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + xs.unit(x) * plot_w; };
    auto py = [&](double y) {
        double u = ys.unit(y);
        if (invert_y) u = 1.0 - u;
        return kMarginTop + (1.0 - u) * plot_h;
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
        << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << " " << fmt(kHeight) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << escape_xml(title) << "</text>\n";

    // frame
    out << "<rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kMarginTop) << "\" width=\""
        << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
        << "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";

    // x ticks
    std::vector<double> xticks;
    if (log_x) {
        for (int e = static_cast<int>(std::floor(xs.lo)); e <= static_cast<int>(std::ceil(xs.hi));
             ++e) {
            double v = std::pow(10.0, e);
            if (std::log10(v) >= xs.lo - 1e-9 && std::log10(v) <= xs.hi + 1e-9) xticks.push_back(v);
        }
        if (xticks.size() < 2) xticks = {std::pow(10.0, xs.lo), std::pow(10.0, xs.hi)};
    } else {
        xticks = linear_ticks(xs.lo, xs.hi);
    }
    for (double v : xticks) {
        double x = px(v);
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kMarginTop + plot_h) << "\" x2=\""
            << fmt(x) << "\" y2=\"" << fmt(kMarginTop + plot_h + 5)
            << "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kMarginTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt_tick(v) << "</text>\n";
    }

    // y ticks
    std::vector<double> yticks;
    if (log_y) {
        for (int e = static_cast<int>(std::floor(ys.lo)); e <= static_cast<int>(std::ceil(ys.hi));
             ++e) {
            double v = std::pow(10.0, e);
            if (std::log10(v) >= ys.lo - 1e-9 && std::log10(v) <= ys.hi + 1e-9) yticks.push_back(v);
        }
        if (yticks.size() < 2) yticks = {std::pow(10.0, ys.lo), std::pow(10.0, ys.hi)};
    } else {
        yticks = linear_ticks(ys.lo, ys.hi);
    }
    for (double v : yticks) {
        double y = py(v);
        out << "<line x1=\"" << fmt(kMarginLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(kMarginLeft) << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(kMarginLeft - 9) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt_tick(v)
            << "</text>\n";
    }

    // axis labels
    out << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_xml(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << fmt(kMarginTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << fmt(kMarginTop + plot_h / 2) << ")\">" << escape_xml(y_label) << "</text>\n";

    // series
    for (const auto& s : series) {
        out << "<g class=\"series\" fill=\"none\" stroke=\"" << s.color << "\">\n";
        if (s.line) {
            out << "<polyline stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (const auto& [x, y] : s.points) {
                if (!first) out << ' ';
                first = false;
                out << fmt(px(x)) << ',' << fmt(py(y));
            }
            out << "\"/>\n";
        } else {
            for (const auto& [x, y] : s.points) {
                out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
                    << "\" r=\"2.2\" fill=\"" << s.color << "\" stroke=\"none\"/>\n";
            }
        }
        out << "</g>\n";
    }

    // legend
    double ly = kMarginTop + 10;
    for (const auto& s : series) {
        double lx = kMarginLeft + plot_w - 170;
        out << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 9) << "\" width=\"12\" height=\"12\""
            << " fill=\"" << s.color << "\"/>\n";
        out << "<text x=\"" << fmt(lx + 18) << "\" y=\"" << fmt(ly + 2)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label)
            << "</text>\n";
        ly += 18;
    }

    out << "</svg>\n";
}

} // namespace rankdyn::svg
