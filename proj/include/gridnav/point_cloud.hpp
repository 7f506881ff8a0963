#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gridnav/errors.hpp"

namespace gridnav {

/// A single 3D point in map units (1 unit = 1 grid cell edge).
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Point3&) const = default;
};

/// Axis-aligned bounding box, closed on all faces.
struct Aabb {
    Point3 lo;
    Point3 hi;

    bool contains(const Point3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y &&
               p.z >= lo.z && p.z <= hi.z;
    }
};

struct PointCloud {
    std::vector<Point3> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    bool operator==(const PointCloud&) const = default;
};

struct MalformedHeader : Error {
    using Error::Error;
};
struct CountMismatch : Error {
    using Error::Error;
};
struct NonAsciiData : Error {
    using Error::Error;
};
struct BadNumber : Error {
    using Error::Error;
};
struct EmptyCloud : Error {
    using Error::Error;
};

/// Parses an ASCII PCD document. Header keys must appear in the standard
/// order (VERSION .. DATA), FIELDS must begin "x y z", DATA must be "ascii".
/// Fields beyond x, y, z are parsed positionally and discarded.
PointCloud parse_pcd(const std::string& text);

/// Serializes a cloud as ASCII PCD with 6 fractional digits per coordinate.
/// parse_pcd(write_pcd(c)) == c for clouds representable at that precision.
std::string write_pcd(const PointCloud& cloud);

PointCloud load_pcd_file(const std::string& path);
void save_pcd_file(const PointCloud& cloud, const std::string& path);

/// Tight closed bounding box of a non-empty cloud.
Aabb bounding_box(const PointCloud& cloud);

}  // namespace gridnav
