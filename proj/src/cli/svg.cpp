#include "qnr/cli/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace qnr::cli {

namespace {

constexpr double kSize = 800.0;
constexpr const char* kColours[8] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                     "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const std::vector<SvgLayer>& layers, std::string_view title) {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // the origin is always in view
    for (const auto& l : layers) {
        for (const auto* pts : {&l.boundary, &l.markers})
            for (const auto& z : *pts) {
                x0 = std::min(x0, z.real());
                x1 = std::max(x1, z.real());
                y0 = std::min(y0, z.imag());
                y1 = std::max(y1, z.imag());
            }
    }
    double span = std::max(x1 - x0, y1 - y0);
    if (span <= 0.0) span = 1.0;
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    const double half = 0.5 * span / 0.9;  // 5% margin on each side
    const double scale = kSize / (2.0 * half);
    auto px = [&](double x) { return (x - (cx - half)) * scale; };
    auto py = [&](double y) { return ((cy + half) - y) * scale; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    s += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    if (!title.empty())
        s += "<text x=\"12\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\">" + escape(title) + "</text>\n";
    const double ox = px(0.0), oy = py(0.0);
    s += "<line x1=\"0\" y1=\"" + num(oy) + "\" x2=\"800\" y2=\"" + num(oy) + "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + num(ox) + "\" y1=\"0\" x2=\"" + num(ox) + "\" y2=\"800\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    s += "<path d=\"M " + num(ox - 8) + " " + num(oy) + " L " + num(ox + 8) + " " + num(oy) + " M " + num(ox) + " " +
         num(oy - 8) + " L " + num(ox) + " " + num(oy + 8) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";

    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto& l = layers[k];
        const char* col = kColours[k % 8];
        if (l.boundary.size() == 1) {
            s += "<circle cx=\"" + num(px(l.boundary[0].real())) + "\" cy=\"" + num(py(l.boundary[0].imag())) +
                 "\" r=\"4\" fill=\"" + col + "\"/>\n";
        } else if (!l.boundary.empty()) {
            s += "<path d=\"";
            for (std::size_t i = 0; i < l.boundary.size(); ++i) {
                s += i == 0 ? "M " : " L ";
                s += num(px(l.boundary[i].real())) + " " + num(py(l.boundary[i].imag()));
            }
            s += " Z\" fill=\"" + std::string(col) + "\" fill-opacity=\"0.12\" stroke=\"" + col +
                 "\" stroke-width=\"2\"/>\n";
        }
        for (const auto& z : l.markers)
            s += "<circle cx=\"" + num(px(z.real())) + "\" cy=\"" + num(py(z.imag())) + "\" r=\"1.5\" fill=\"" + col +
                 "\"/>\n";
        if (!l.label.empty())
            s += "<text x=\"12\" y=\"" + num(46.0 + 18.0 * static_cast<double>(k)) +
                 "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" + col + "\">" + escape(l.label) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace qnr::cli
