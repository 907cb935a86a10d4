#include "remeta/io/forest_svg.hpp"

#include "remeta/error.hpp"
#include "remeta/io/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace remeta::io {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
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

// Tick step from {1, 2, 5} x 10^n giving roughly `target` intervals.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) return m * mag;
    return 10.0 * mag;
}

std::string interval_text(double centre, double lo, double hi, int digits) {
    return format_fixed(centre, digits) + " [" + format_fixed(lo, digits) + ", " + format_fixed(hi, digits) + "]";
}

}  // namespace

std::string forest_svg(const StudySet& s, const IntervalResult& r, const ForestOptions& opt) {
    const std::size_t K = s.size();
    const double z = opt.study_z;

    double lo = r.muhat;
    double hi = r.muhat;
    for (std::size_t k = 0; k < K; ++k) {
        lo = std::min(lo, s.y()[k] - z * s.sigma()[k]);
        hi = std::max(hi, s.y()[k] + z * s.sigma()[k]);
    }
    for (const auto& l : {r.prediction, r.confidence})
        if (l) {
            lo = std::min(lo, l->lower);
            hi = std::max(hi, l->upper);
        }
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double step = nice_step(hi - lo, 6);
    const double axis_lo = std::floor(lo / step) * step;
    const double axis_hi = std::ceil(hi / step) * step;

    const double label_w = 220.0;
    const double text_w = 190.0;
    const double plot_x0 = label_w;
    const double plot_x1 = opt.width - text_w;
    const double rh = opt.row_height;
    const double top = 40.0;
    const std::size_t summary_rows = (r.confidence ? 1 : 0) + (r.prediction ? 1 : 0);
    const double rows_bottom = top + rh * (static_cast<double>(K) + 1.0 + static_cast<double>(summary_rows));
    const double axis_y = rows_bottom + 8.0;
    const double height = axis_y + 40.0;
    auto x_of = [&](double v) { return plot_x0 + (v - axis_lo) / (axis_hi - axis_lo) * (plot_x1 - plot_x0); };
    auto row_y = [&](double row) { return top + rh * row + rh / 2.0; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(opt.width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(opt.width) << ' ' << num(height)
        << "\" font-family=\"Arial, Helvetica, sans-serif\" font-size=\"12\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(opt.width) << "\" height=\"" << num(height)
        << "\" fill=\"white\"/>\n";

    // column headers
    const std::string level = format_fixed(100.0 * (1.0 - r.alpha), 0);
    svg << "<text x=\"10\" y=\"" << num(top - 12.0) << "\" font-weight=\"bold\">Study</text>\n"
        << "<text x=\"" << num(opt.width - 10.0) << "\" y=\"" << num(top - 12.0)
        << "\" text-anchor=\"end\" font-weight=\"bold\">Estimate [95% CI]</text>\n";

    // reference line at zero
    if (axis_lo < 0.0 && axis_hi > 0.0) {
        svg << "<line class=\"reference\" x1=\"" << num(x_of(0.0)) << "\" y1=\"" << num(top) << "\" x2=\""
            << num(x_of(0.0)) << "\" y2=\"" << num(rows_bottom) << "\" stroke=\"#888888\" stroke-dasharray=\"4,3\"/>\n";
    }

    svg << "<g class=\"studies\">\n";
    for (std::size_t k = 0; k < K; ++k) {
        const double y = row_y(static_cast<double>(k));
        const double est = s.y()[k];
        const double l = est - z * s.sigma()[k];
        const double u = est + z * s.sigma()[k];
        svg << "<g class=\"study\">"
            << "<text x=\"10\" y=\"" << num(y + 4.0) << "\">" << escape(s.label(k)) << "</text>"
            << "<line x1=\"" << num(x_of(l)) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x_of(u)) << "\" y2=\""
            << num(y) << "\" stroke=\"black\"/>"
            << "<rect x=\"" << num(x_of(est) - 4.0) << "\" y=\"" << num(y - 4.0)
            << "\" width=\"8.00\" height=\"8.00\" fill=\"black\"/>"
            << "<text x=\"" << num(opt.width - 10.0) << "\" y=\"" << num(y + 4.0) << "\" text-anchor=\"end\">"
            << interval_text(est, l, u, opt.digits) << "</text>"
            << "</g>\n";
    }
    svg << "</g>\n";

    double row = static_cast<double>(K) + 1.0;
    if (r.confidence) {
        const double y = row_y(row);
        const auto& c = *r.confidence;
        svg << "<g class=\"summary-ci\">"
            << "<text x=\"10\" y=\"" << num(y + 4.0) << "\" font-weight=\"bold\">Average effect (" << level
            << "% CI)</text>"
            << "<polygon points=\"" << num(x_of(c.lower)) << ',' << num(y) << ' ' << num(x_of(r.muhat)) << ','
            << num(y - 7.0) << ' ' << num(x_of(c.upper)) << ',' << num(y) << ' ' << num(x_of(r.muhat)) << ','
            << num(y + 7.0) << "\" fill=\"#1f4e9c\"/>"
            << "<text x=\"" << num(opt.width - 10.0) << "\" y=\"" << num(y + 4.0)
            << "\" text-anchor=\"end\" font-weight=\"bold\">" << interval_text(r.muhat, c.lower, c.upper, opt.digits)
            << "</text>"
            << "</g>\n";
        row += 1.0;
    }
    if (r.prediction) {
        const double y = row_y(row);
        const auto& p = *r.prediction;
        svg << "<g class=\"summary-pi\">"
            << "<text x=\"10\" y=\"" << num(y + 4.0) << "\" font-weight=\"bold\">Prediction interval (" << level
            << "%)</text>"
            << "<rect x=\"" << num(x_of(p.lower)) << "\" y=\"" << num(y - 3.0) << "\" width=\""
            << num(x_of(p.upper) - x_of(p.lower)) << "\" height=\"6.00\" fill=\"#c0392b\"/>"
            << "<text x=\"" << num(opt.width - 10.0) << "\" y=\"" << num(y + 4.0)
            << "\" text-anchor=\"end\" font-weight=\"bold\">" << interval_text(r.muhat, p.lower, p.upper, opt.digits)
            << "</text>"
            << "</g>\n";
    }

    // x axis
    svg << "<g class=\"axis\">"
        << "<line x1=\"" << num(plot_x0) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(plot_x1) << "\" y2=\""
        << num(axis_y) << "\" stroke=\"black\"/>";
    const int ticks = static_cast<int>(std::lround((axis_hi - axis_lo) / step));
    for (int i = 0; i <= ticks; ++i) {
        const double v = axis_lo + step * i;
        const double x = x_of(v);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(x) << "\" y2=\""
            << num(axis_y + 5.0) << "\" stroke=\"black\"/>"
            << "<text x=\"" << num(x) << "\" y=\"" << num(axis_y + 18.0) << "\" text-anchor=\"middle\">"
            << format_fixed(v, opt.digits) << "</text>";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void write_forest_svg(const StudySet& s, const IntervalResult& r, const std::filesystem::path& path,
                      const ForestOptions& opt) {
    const std::string text = forest_svg(s, r, opt);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace remeta::io
