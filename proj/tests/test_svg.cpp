#include <doctest.h>

#include "gridnav/oracle.hpp"
#include "gridnav/svg.hpp"

using namespace gridnav;

namespace {

// minimal well-formedness scan: tags balance and attributes stay quoted
bool looks_like_xml(const std::string& s) {
    if (s.rfind("<?xml", 0) != 0) return false;
    long depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '<') continue;
        if (s.compare(i, 2, "<?") == 0) continue;
        const auto close = s.find('>', i);
        if (close == std::string::npos) return false;
        if (s[i + 1] == '/') {
            --depth;
        } else if (s[close - 1] != '/') {
            ++depth;
        }
        if (depth < 0) return false;
    }
    return depth == 0;
}

}  // namespace

TEST_CASE("line charts are valid 800x600 svg with one point per value") {
    const std::vector<double> values{-10, -5, 0, 2.5, 7};
    const std::string svg = svg_line_chart(values, "reward", "accumulated reward");
    CHECK(looks_like_xml(svg));
    CHECK(svg.find("width=\"800\" height=\"600\"") != std::string::npos);
    CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);

    const auto points_pos = svg.find("points=\"");
    REQUIRE(points_pos != std::string::npos);
    const auto points_end = svg.find('"', points_pos + 8);
    const std::string points = svg.substr(points_pos + 8, points_end - points_pos - 8);
    CHECK(std::count(points.begin(), points.end(), ',') == 5);

    // empty series still renders a valid frame
    CHECK(looks_like_xml(svg_line_chart({}, "empty", "y")));
    // titles get escaped
    CHECK(svg_line_chart({1.0}, "a < b & c", "y").find("a &lt; b &amp; c") !=
          std::string::npos);
}

TEST_CASE("path overlays render the map and the trace polyline") {
    const EnvConfig env = default_paper_layout();
    const OracleResult res = shortest_path(env);
    const std::string svg = svg_grid_path(env.grid, res.trace, env);
    CHECK(looks_like_xml(svg));
    CHECK(svg.find("width=\"800\" height=\"600\"") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    // one polyline vertex per visited state
    const auto points_pos = svg.find("points=\"", svg.find("<polyline"));
    const auto points_end = svg.find('"', points_pos + 8);
    const std::string points = svg.substr(points_pos + 8, points_end - points_pos - 8);
    CHECK(std::count(points.begin(), points.end(), ',') ==
          static_cast<long>(res.trace.states.size()));
}
