#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "envtrack/io.hpp"

namespace envtrack {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 420;
constexpr int kMargin = 60;

const char* kPalette[] = {"#1f77b4", "#2ca02c", "#d62728", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#000000"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_svg_lines(const std::filesystem::path& path, const std::string& title,
                     const std::vector<PlotSeries>& series, const std::string& x_label,
                     const std::string& y_label) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) { ymax = ymin + 0.5; ymin -= 0.5; }

    auto sx = [&](double x) {
        return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin);
    };
    auto sy = [&](double y) {
        return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
    };

    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    // Embedded data table keeps the plot self-describing.
    out << "<!-- data\nseries,x,y\n";
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << s.name << ',' << fmt(s.x[i]) << ',' << fmt(s.y[i]) << "\n";
    out << "-->\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" font-size=\"10\">" << fmt(xmin) << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(xmax) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(ymin) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(ymax) << "</text>\n";

    int color = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 8]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i])) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kMargin + 6 << "\" y=\"" << kMargin + 14 * color
            << "\" font-size=\"11\" fill=\"" << kPalette[color % 8] << "\">" << s.name
            << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
}

void write_svg_bars(const std::filesystem::path& path, const std::string& title,
                    const std::vector<std::pair<std::string, double>>& bars,
                    const std::string& y_label) {
    double ymin = 0.0, ymax = 0.0;
    for (const auto& [_, v] : bars) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
    }
    if (ymax == ymin) ymax = ymin + 1.0;

    auto sy = [&](double y) {
        return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
    };

    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    out << "<!-- data\nlabel,value\n";
    for (const auto& [label, v] : bars) out << label << ',' << fmt(v) << "\n";
    out << "-->\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";

    const double slot = static_cast<double>(kWidth - 2 * kMargin) / std::max<std::size_t>(1, bars.size());
    const double bar_w = slot * 0.6;
    const double y0 = sy(0.0);
    int i = 0;
    for (const auto& [label, v] : bars) {
        const double x = kMargin + slot * i + (slot - bar_w) / 2.0;
        const double y = sy(v);
        out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(std::min(y, y0)) << "\" width=\""
            << fmt(bar_w) << "\" height=\"" << fmt(std::abs(y0 - y)) << "\" fill=\""
            << kPalette[i % 8] << "\"/>\n";
        out << "<text x=\"" << fmt(x + bar_w / 2) << "\" y=\"" << kHeight - kMargin + 16
            << "\" text-anchor=\"middle\" font-size=\"10\">" << label << "</text>\n";
        ++i;
    }
    out << "<line x1=\"" << kMargin << "\" y1=\"" << fmt(y0) << "\" x2=\"" << kWidth - kMargin
        << "\" y2=\"" << fmt(y0) << "\" stroke=\"black\"/>\n";
    out << "</svg>\n";
}

}  // namespace envtrack
