#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "citemetrics/distributions.hpp"

namespace citemetrics {

struct Series {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

// Minimal static SVG charts; no scripting, no external resources.
std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values, const std::string& y_label);
std::string svg_line_chart(const std::string& title, const std::vector<Series>& series, const std::string& x_label,
                           const std::string& y_label);

std::string distribution_svg(const DistributionSummary& s);
std::string share_histogram_svg(const ShareHistogram& h);
std::string cohort_svg(const CohortCurve& c);
std::string inflation_svg(const InflationSeries& s);

// Throws Error(Io) when the file cannot be written.
void write_svg(const std::filesystem::path& path, const std::string& svg);

}  // namespace citemetrics
