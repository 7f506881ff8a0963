#include "gridnav/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gridnav {

namespace {

// Header keys of the accepted PCD subset, in the order they must appear.
const char* const kHeaderKeys[] = {"VERSION", "FIELDS", "SIZE",      "TYPE",
                                   "COUNT",   "WIDTH",  "HEIGHT",    "VIEWPOINT",
                                   "POINTS",  "DATA"};

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_coord(const std::string& tok) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw BadNumber("unparsable coordinate: '" + tok + "'");
    }
    if (pos != tok.size() || !std::isfinite(v)) {
        throw BadNumber("unparsable coordinate: '" + tok + "'");
    }
    return v;
}

}  // namespace

PointCloud parse_pcd(const std::string& text) {
    std::istringstream in(text);
    std::string line;

    std::size_t key_idx = 0;
    long declared_points = -1;
    std::string data_mode;
    std::vector<std::string> fields;

    // Header: the ten keys in order; '#' lines are comments.
    while (key_idx < std::size(kHeaderKeys) && std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto toks = split_ws(line);
        const std::string expect = kHeaderKeys[key_idx];
        if (toks.empty() || toks[0] != expect) {
            throw MalformedHeader("expected header key " + expect + ", got: " + line);
        }
        if (expect == "FIELDS") {
            fields.assign(toks.begin() + 1, toks.end());
            if (fields.size() < 3 || fields[0] != "x" || fields[1] != "y" || fields[2] != "z") {
                throw MalformedHeader("FIELDS must begin \"x y z\"");
            }
        } else if (expect == "POINTS") {
            if (toks.size() != 2) throw MalformedHeader("POINTS needs one value");
            try {
                declared_points = std::stol(toks[1]);
            } catch (const std::exception&) {
                throw MalformedHeader("POINTS value not an integer: " + toks[1]);
            }
            if (declared_points < 0) throw MalformedHeader("POINTS must be non-negative");
        } else if (expect == "DATA") {
            if (toks.size() != 2) throw MalformedHeader("DATA needs one value");
            data_mode = toks[1];
        }
        ++key_idx;
    }
    if (key_idx < std::size(kHeaderKeys)) {
        throw MalformedHeader(std::string("missing header key ") + kHeaderKeys[key_idx]);
    }
    if (data_mode != "ascii") {
        throw NonAsciiData("DATA must be \"ascii\", got \"" + data_mode + "\"");
    }

    PointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(declared_points));
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto toks = split_ws(line);
        if (toks.size() < 3) throw BadNumber("data row has fewer than 3 values: " + line);
        Point3 p{parse_coord(toks[0]), parse_coord(toks[1]), parse_coord(toks[2])};
        cloud.points.push_back(p);
    }

    if (static_cast<long>(cloud.points.size()) != declared_points) {
        throw CountMismatch("POINTS declares " + std::to_string(declared_points) + " but " +
                            std::to_string(cloud.points.size()) + " rows present");
    }
    return cloud;
}

std::string write_pcd(const PointCloud& cloud) {
    std::ostringstream out;
    const std::size_t n = cloud.size();
    out << "VERSION .7\n"
        << "FIELDS x y z\n"
        << "SIZE 4 4 4\n"
        << "TYPE F F F\n"
        << "COUNT 1 1 1\n"
        << "WIDTH " << n << "\n"
        << "HEIGHT 1\n"
        << "VIEWPOINT 0 0 0 1 0 0 0\n"
        << "POINTS " << n << "\n"
        << "DATA ascii\n";
    char buf[96];
    for (const Point3& p : cloud.points) {
        std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f\n", p.x, p.y, p.z);
        out << buf;
    }
    return out.str();
}

PointCloud load_pcd_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_pcd(ss.str());
}

void save_pcd_file(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << write_pcd(cloud);
}

Aabb bounding_box(const PointCloud& cloud) {
    if (cloud.empty()) throw EmptyCloud("bounding_box of empty cloud");
    Aabb box{cloud.points.front(), cloud.points.front()};
    for (const Point3& p : cloud.points) {
        box.lo.x = std::min(box.lo.x, p.x);
        box.lo.y = std::min(box.lo.y, p.y);
        box.lo.z = std::min(box.lo.z, p.z);
        box.hi.x = std::max(box.hi.x, p.x);
        box.hi.y = std::max(box.hi.y, p.y);
        box.hi.z = std::max(box.hi.z, p.z);
    }
    return box;
}

}  // namespace gridnav
