#include "citemetrics/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace citemetrics {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 60;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(const std::string& s) {
    std::string out;
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
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void open_svg(std::ostringstream& out, const std::string& title, const std::string& x_label,
              const std::string& y_label) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8 << "\" text-anchor=\"middle\">" << escape(x_label)
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << kHeight / 2 << ")\">" << escape(y_label) << "</text>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
        << "\" stroke=\"black\"/>\n";
}

void y_ticks(std::ostringstream& out, double y_max) {
    const double plot_h = kHeight - kTop - kBottom;
    for (int i = 0; i <= 4; ++i) {
        const double v = y_max * i / 4.0;
        const double y = kHeight - kBottom - plot_h * i / 4.0;
        out << "<text x=\"" << kLeft - 4 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick(v)
            << "</text>\n";
    }
}

double nice_max(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (v <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values, const std::string& y_label) {
    std::ostringstream out;
    open_svg(out, title, "", y_label);
    const double y_max = nice_max(values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()));
    y_ticks(out, y_max);
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double bw = values.empty() ? 0.0 : plot_w / static_cast<double>(values.size());
    const std::size_t label_every = std::max<std::size_t>(1, values.size() / 10);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double h = plot_h * std::max(values[i], 0.0) / y_max;
        const double x = kLeft + bw * static_cast<double>(i);
        out << "<rect x=\"" << num(x + 1) << "\" y=\"" << num(kHeight - kBottom - h) << "\" width=\""
            << num(std::max(bw - 2, 1.0)) << "\" height=\"" << num(h) << "\" fill=\"" << kColors[0] << "\"/>\n";
        if (i < labels.size() && i % label_every == 0) {
            out << "<text x=\"" << num(x + bw / 2) << "\" y=\"" << kHeight - kBottom + 14
                << "\" text-anchor=\"middle\">" << escape(labels[i]) << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_line_chart(const std::string& title, const std::vector<Series>& series, const std::string& x_label,
                           const std::string& y_label) {
    std::ostringstream out;
    open_svg(out, title, x_label, y_label);
    double x_min = 0, x_max = 1, y_top = 0;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
            if (!std::isfinite(s.ys[i])) continue;
            if (first) {
                x_min = x_max = s.xs[i];
                first = false;
            }
            x_min = std::min(x_min, s.xs[i]);
            x_max = std::max(x_max, s.xs[i]);
            y_top = std::max(y_top, s.ys[i]);
        }
    }
    if (x_max <= x_min) x_max = x_min + 1;
    const double y_max = nice_max(y_top);
    y_ticks(out, y_max);
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + plot_w * (x - x_min) / (x_max - x_min); };
    auto py = [&](double y) { return kHeight - kBottom - plot_h * y / y_max; };
    for (int i = 0; i <= 4; ++i) {
        const double x = x_min + (x_max - x_min) * i / 4.0;
        out << "<text x=\"" << num(px(x)) << "\" y=\"" << kHeight - kBottom + 14 << "\" text-anchor=\"middle\">"
            << tick(std::round(x * 100) / 100) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % std::size(kColors)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
            if (!std::isfinite(s.ys[i])) continue;
            out << num(px(s.xs[i])) << ',' << num(py(s.ys[i])) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 14 * static_cast<double>(k + 1) << "\" fill=\""
            << color << "\">" << escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string distribution_svg(const DistributionSummary& s) {
    std::vector<std::string> labels;
    std::vector<double> values;
    if (!s.histogram.empty()) {
        const auto top = s.histogram.rbegin()->first;
        for (std::uint32_t c = 0; c <= top; ++c) {
            auto it = s.histogram.find(c);
            labels.push_back(std::to_string(c));
            values.push_back(it == s.histogram.end() ? 0.0 : static_cast<double>(it->second));
        }
    }
    return svg_bar_chart(s.journal_id + " " + std::to_string(s.census_year) + ": papers by citation count", labels,
                         values, "papers");
}

std::string share_histogram_svg(const ShareHistogram& h) {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (std::size_t i = 0; i < h.buckets.size(); ++i) {
        labels.push_back(std::to_string(i * ShareHistogram::kBucketWidthPct));
        values.push_back(h.n_journals ? static_cast<double>(h.buckets[i]) / static_cast<double>(h.n_journals) : 0.0);
    }
    return svg_bar_chart("Journals by share of papers at or above the JIF (%)", labels, values, "fraction of journals");
}

std::string cohort_svg(const CohortCurve& c) {
    Series s{c.label + " " + std::to_string(c.pub_year), {}, {}};
    for (std::size_t i = 0; i < c.cumulative_fraction.size(); ++i) {
        s.xs.push_back(static_cast<double>(i));
        s.ys.push_back(c.cumulative_fraction[i]);
    }
    return svg_line_chart("Cumulative share of citations", {s}, "years since publication", "share");
}

std::string inflation_svg(const InflationSeries& s) {
    Series mean{"mean JIF", {}, {}};
    for (const auto& y : s.years) {
        mean.xs.push_back(y.year);
        mean.ys.push_back(y.mean_jif);
    }
    return svg_line_chart("Mean JIF by year", {mean}, "year", "mean JIF");
}

void write_svg(const std::filesystem::path& path, const std::string& svg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << svg;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace citemetrics
