#include "relmas/exp/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "relmas/core.hpp"

namespace relmas::exp {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 30.0;
constexpr double kTop = 64.0;
constexpr double kBottom = 64.0;

const char* kPalette[] = {"#4878a8", "#e49444", "#5ba053", "#d1605e",
                          "#857aab", "#937860", "#d684bd", "#808080"};
constexpr int kPaletteSize = 8;

std::string esc(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct YScale {
    double lo = 0.0;
    double hi = 1.0;

    double to_px(double v) const {
        double h = kHeight - kTop - kBottom;
        return kTop + h * (1.0 - (v - lo) / (hi - lo));
    }
};

YScale fit_y(const std::vector<Series>& series) {
    double lo = 0.0, hi = 0.0;
    for (const auto& s : series)
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    double pad = 0.05 * (hi - lo);
    if (lo < 0.0) lo -= pad;
    return YScale{lo, hi + pad};
}

void open_svg(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)kWidth
        << "\" height=\"" << (int)kHeight << "\" viewBox=\"0 0 " << (int)kWidth
        << " " << (int)kHeight << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"" << (int)kWidth << "\" height=\"" << (int)kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2)
        << "\" y=\"26\" font-size=\"18\" text-anchor=\"middle\">" << esc(title)
        << "</text>\n";
}

void y_axis(std::ostringstream& out, const YScale& ys, const std::string& label) {
    for (int i = 0; i <= 5; ++i) {
        double v = ys.lo + (ys.hi - ys.lo) * i / 5.0;
        double y = ys.to_px(v);
        out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(kWidth - kRight) << "\" y2=\"" << num(y)
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << tick_label(v)
            << "</text>\n";
    }
    out << "<text x=\"18\" y=\"" << num(kHeight / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << num(kHeight / 2) << ")\">" << esc(label) << "</text>\n";
}

void legend(std::ostringstream& out, const std::vector<Series>& series) {
    double x = kLeft;
    double y = kHeight - 18.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        out << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 10)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << num(x + 16) << "\" y=\"" << num(y)
            << "\" font-size=\"12\">" << esc(series[i].label) << "</text>\n";
        x += 28.0 + 7.0 * static_cast<double>(series[i].label.size());
    }
}

void frame(std::ostringstream& out) {
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
        << num(kLeft) << "\" y2=\"" << num(kHeight - kBottom)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kHeight - kBottom)
        << "\" x2=\"" << num(kWidth - kRight) << "\" y2=\""
        << num(kHeight - kBottom) << "\" stroke=\"black\"/>\n";
}

}  // namespace

std::string grouped_bar_chart_svg(const std::string& title,
                                  const std::vector<std::string>& group_labels,
                                  const std::vector<Series>& series,
                                  const std::string& y_label) {
    if (group_labels.empty() || series.empty())
        throw SimError("bar chart needs at least one group and one series");
    for (const auto& s : series)
        if (s.values.size() != group_labels.size())
            throw SimError("bar chart series '" + s.label +
                           "' does not cover every group");

    YScale ys = fit_y(series);
    double base = ys.to_px(std::max(0.0, ys.lo));
    double plot_w = kWidth - kLeft - kRight;
    double slot = plot_w / static_cast<double>(group_labels.size());
    double bar = slot * 0.8 / static_cast<double>(series.size());

    std::ostringstream out;
    open_svg(out, title);
    y_axis(out, ys, y_label);
    for (std::size_t g = 0; g < group_labels.size(); ++g) {
        double x0 = kLeft + slot * static_cast<double>(g) + slot * 0.1;
        for (std::size_t s = 0; s < series.size(); ++s) {
            double v = series[s].values[g];
            double y = ys.to_px(v);
            double top = std::min(y, base);
            double h = std::max(std::abs(base - y), 0.5);
            out << "<rect x=\"" << num(x0 + bar * static_cast<double>(s))
                << "\" y=\"" << num(top) << "\" width=\"" << num(bar)
                << "\" height=\"" << num(h) << "\" fill=\""
                << kPalette[s % kPaletteSize] << "\"/>\n";
        }
        out << "<text x=\"" << num(kLeft + slot * (static_cast<double>(g) + 0.5))
            << "\" y=\"" << num(kHeight - kBottom + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\">"
            << esc(group_labels[g]) << "</text>\n";
    }
    frame(out);
    legend(out, series);
    out << "</svg>\n";
    return out.str();
}

std::string line_chart_svg(const std::string& title, const std::vector<double>& xs,
                           const std::vector<Series>& series,
                           const std::string& x_label, const std::string& y_label) {
    if (xs.empty() || series.empty())
        throw SimError("line chart needs at least one x position and one series");
    for (const auto& s : series)
        if (s.values.size() != xs.size())
            throw SimError("line chart series '" + s.label +
                           "' does not cover every x position");

    YScale ys = fit_y(series);
    double xlo = xs.front(), xhi = xs.front();
    for (double x : xs) {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
    }
    double span = std::max(xhi - xlo, 1e-9);
    double plot_w = kWidth - kLeft - kRight - 40.0;
    auto x_px = [&](double x) { return kLeft + 20.0 + plot_w * (x - xlo) / span; };

    std::ostringstream out;
    open_svg(out, title);
    y_axis(out, ys, y_label);
    for (double x : xs) {
        out << "<text x=\"" << num(x_px(x)) << "\" y=\""
            << num(kHeight - kBottom + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << tick_label(x)
            << "</text>\n";
    }
    out << "<text x=\"" << num(kLeft + plot_w / 2 + 20.0) << "\" y=\""
        << num(kHeight - kBottom + 38) << "\" font-size=\"13\" text-anchor=\"middle\">"
        << esc(x_label) << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out << ' ';
            out << num(x_px(xs[i])) << ',' << num(ys.to_px(series[s].values[i]));
        }
        out << "\"/>\n";
        for (std::size_t i = 0; i < xs.size(); ++i)
            out << "<circle cx=\"" << num(x_px(xs[i])) << "\" cy=\""
                << num(ys.to_px(series[s].values[i])) << "\" r=\"3.5\" fill=\""
                << color << "\"/>\n";
    }
    frame(out);
    legend(out, series);
    out << "</svg>\n";
    return out.str();
}

}  // namespace relmas::exp
