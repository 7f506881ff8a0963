#include "gridnav/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gridnav {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

void open_svg(std::ostringstream& os) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
}

}  // namespace

std::string svg_line_chart(const std::vector<double>& values, const std::string& title,
                           const std::string& y_label) {
    const double left = 70, right = 20, top = 40, bottom = 50;
    const double plot_w = kWidth - left - right;
    const double plot_h = kHeight - top - bottom;

    double lo = 0.0, hi = 1.0;
    if (!values.empty()) {
        lo = *std::min_element(values.begin(), values.end());
        hi = *std::max_element(values.begin(), values.end());
        if (lo == hi) {
            lo -= 1.0;
            hi += 1.0;
        }
    }

    std::ostringstream os;
    open_svg(os);
    os << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"white\"/>\n";
    os << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">"
       << escape(title) << "</text>\n";
    os << "  <rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(plot_w)
       << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "  <text x=\"16\" y=\"" << fmt(top + plot_h / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
          "transform=\"rotate(-90 16 "
       << fmt(top + plot_h / 2) << ")\">" << escape(y_label) << "</text>\n";
    os << "  <text x=\"" << fmt(left + plot_w / 2) << "\" y=\"" << fmt(kHeight - 14)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">episode"
          "</text>\n";
    os << "  <text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(top + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(hi)
       << "</text>\n";
    os << "  <text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(top + plot_h)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(lo)
       << "</text>\n";

    if (!values.empty()) {
        const std::size_t n = values.size();
        os << "  <polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            const double x = n == 1 ? left + plot_w / 2
                                    : left + plot_w * static_cast<double>(i) /
                                          static_cast<double>(n - 1);
            const double y = top + plot_h * (1.0 - (values[i] - lo) / (hi - lo));
            os << (i ? " " : "") << fmt(x) << "," << fmt(y);
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string svg_grid_path(const OccupancyGrid& grid, const PathTrace& trace,
                          const EnvConfig& env) {
    const double margin = 20;
    const double scale = std::min((kWidth - 2 * margin) / grid.width(),
                                  (kHeight - 2 * margin) / grid.height());
    const double ox = (kWidth - scale * grid.width()) / 2;
    const double oy = (kHeight - scale * grid.height()) / 2;

    // grid y up, svg y down
    auto sx = [&](double cx) { return ox + scale * cx; };
    auto sy = [&](double cy) { return oy + scale * (grid.height() - cy); };

    std::ostringstream os;
    open_svg(os);
    os << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"#b4b4b4\"/>\n";
    os << "  <rect x=\"" << fmt(sx(0)) << "\" y=\"" << fmt(sy(grid.height())) << "\" width=\""
       << fmt(scale * grid.width()) << "\" height=\"" << fmt(scale * grid.height())
       << "\" fill=\"#cdcdcd\"/>\n";

    auto cell_rect = [&](int x, int y, const char* fill) {
        os << "  <rect x=\"" << fmt(sx(x)) << "\" y=\"" << fmt(sy(y + 1)) << "\" width=\""
           << fmt(scale) << "\" height=\"" << fmt(scale) << "\" fill=\"" << fill << "\"/>\n";
    };
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            if (grid.at(x, y) == CellState::Occupied) {
                cell_rect(x, y, "#1a1a1a");
            } else if (grid.at(x, y) == CellState::Free) {
                cell_rect(x, y, "#ffffff");
            }
        }
    }

    auto footprint_mark = [&](const AgentState& s, const char* fill) {
        os << "  <rect x=\"" << fmt(sx(s.x)) << "\" y=\"" << fmt(sy(s.y + env.footprint_h))
           << "\" width=\"" << fmt(scale * env.footprint_w) << "\" height=\""
           << fmt(scale * env.footprint_h) << "\" fill=\"" << fill
           << "\" fill-opacity=\"0.55\"/>\n";
    };
    footprint_mark(env.start, "#d62728");
    footprint_mark(env.goal, "#2ca02c");

    if (!trace.states.empty()) {
        os << "  <polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2.5\" points=\"";
        for (std::size_t i = 0; i < trace.states.size(); ++i) {
            const double cx = trace.states[i].x + env.footprint_w / 2.0;
            const double cy = trace.states[i].y + env.footprint_h / 2.0;
            os << (i ? " " : "") << fmt(sx(cx)) << "," << fmt(sy(cy));
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace gridnav
