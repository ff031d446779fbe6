#include "wseshadri/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace wseshadri {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

} // namespace

std::string emit_svg(const std::vector<std::pair<double, double>>& points,
                     const SvgStyle& style) {
    require(points.size() >= 2, "TooFewPoints",
            "an SVG polyline needs at least two points");

    double xmin = points[0].first, xmax = xmin;
    double ymin = points[0].second, ymax = ymin;
    for (const auto& [x, y] : points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    const double x0 = style.margin, x1 = style.width - style.margin;
    const double y0 = style.height - style.margin, y1 = style.margin;
    auto px = [&](double x) { return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0); };
    auto py = [&](double y) { return y0 + (y - ymin) / (ymax - ymin) * (y1 - y0); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        << "width=\"" << style.width << "\" height=\"" << style.height
        << "\" viewBox=\"0 0 " << style.width << ' ' << style.height
        << "\">\n";
    if (!style.title.empty())
        out << "  <title>" << style.title << "</title>\n";
    out << "  <line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\""
        << fmt(x1) << "\" y2=\"" << fmt(y0)
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\""
        << fmt(x0) << "\" y2=\"" << fmt(y1)
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << fmt(x0) << "\" y=\"" << fmt(y0 + 16.0)
        << "\" font-size=\"10\">" << fmt(xmin) << "</text>\n";
    out << "  <text x=\"" << fmt(x1 - 40.0) << "\" y=\"" << fmt(y0 + 16.0)
        << "\" font-size=\"10\">" << fmt(xmax) << "</text>\n";
    out << "  <text x=\"" << fmt(4.0) << "\" y=\"" << fmt(y0)
        << "\" font-size=\"10\">" << fmt(ymin) << "</text>\n";
    out << "  <text x=\"" << fmt(4.0) << "\" y=\"" << fmt(y1)
        << "\" font-size=\"10\">" << fmt(ymax) << "</text>\n";
    out << "  <polyline fill=\"none\" stroke=\"" << style.stroke
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out << ' ';
        out << fmt(px(points[i].first)) << ',' << fmt(py(points[i].second));
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

} // namespace wseshadri
