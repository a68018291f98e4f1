#ifndef RELMAS_EXP_SVG_HPP
#define RELMAS_EXP_SVG_HPP

#include <string>
#include <vector>

namespace relmas::exp {

// One named sequence of y values; bar charts index it by group, line charts
// by shared x position.
struct Series {
    std::string label;
    std::vector<double> values;
};

// Self-contained SVG, deterministic byte-for-byte for equal inputs. Every
// series must carry one value per group label.
std::string grouped_bar_chart_svg(const std::string& title,
                                  const std::vector<std::string>& group_labels,
                                  const std::vector<Series>& series,
                                  const std::string& y_label);

// One polyline per series over shared ascending x positions.
std::string line_chart_svg(const std::string& title, const std::vector<double>& xs,
                           const std::vector<Series>& series,
                           const std::string& x_label, const std::string& y_label);

}  // namespace relmas::exp

#endif
