#include "gridnav/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gridnav {

namespace {

constexpr std::uint8_t kOccupiedPixel = 0;
constexpr std::uint8_t kFreePixel = 254;
constexpr std::uint8_t kUnknownPixel = 205;

std::uint8_t pixel_of(CellState s) {
    switch (s) {
        case CellState::Occupied: return kOccupiedPixel;
        case CellState::Free: return kFreePixel;
        case CellState::Unknown: return kUnknownPixel;
    }
    return kUnknownPixel;
}

CellState state_of(std::uint8_t v) {
    // Nearest of {0, 205, 254}; the midpoints 102.5 and 229.5 are not
    // representable so no ties arise.
    const int d0 = std::abs(int(v) - int(kOccupiedPixel));
    const int d205 = std::abs(int(v) - int(kUnknownPixel));
    const int d254 = std::abs(int(v) - int(kFreePixel));
    if (d0 <= d205 && d0 <= d254) return CellState::Occupied;
    if (d205 <= d254) return CellState::Unknown;
    return CellState::Free;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

OccupancyGrid::OccupancyGrid(int width, int height, double cell_size, double origin_x,
                             double origin_y, CellState fill)
    : width_(width),
      height_(height),
      cell_size_(cell_size),
      origin_x_(origin_x),
      origin_y_(origin_y),
      cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
    if (width <= 0 || height <= 0) throw Error("grid dimensions must be positive");
    if (cell_size <= 0.0) throw Error("cell_size must be positive");
}

int OccupancyGrid::count(CellState s) const {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), s));
}

OccupancyGrid project_octree(const OctoMap& map, const ZBand& band, double cell_size) {
    if (cell_size <= 0.0) throw Error("cell_size must be positive");
    if (!(band.z_min < band.z_max)) throw Error("z band must satisfy z_min < z_max");

    const Aabb& root = map.root_bounds();
    const double extent_x = root.hi.x - root.lo.x;
    const double extent_y = root.hi.y - root.lo.y;
    const int w = std::max(1, static_cast<int>(std::ceil(extent_x / cell_size - 1e-9)));
    const int h = std::max(1, static_cast<int>(std::ceil(extent_y / cell_size - 1e-9)));

    OccupancyGrid grid(w, h, cell_size, root.lo.x, root.lo.y, CellState::Unknown);

    // Free wherever the cell box lies inside the cloud's xy bounding box.
    const Aabb& cb = map.cloud_bounds();
    for (int y = 0; y < h; ++y) {
        const double cy0 = root.lo.y + y * cell_size;
        const double cy1 = cy0 + cell_size;
        if (cy0 < cb.lo.y || cy1 > cb.hi.y) continue;
        for (int x = 0; x < w; ++x) {
            const double cx0 = root.lo.x + x * cell_size;
            const double cx1 = cx0 + cell_size;
            if (cx0 >= cb.lo.x && cx1 <= cb.hi.x) grid.set(x, y, CellState::Free);
        }
    }

    for (const OctoMap::Leaf& leaf : map.occupied_leaves()) {
        if (!(leaf.bounds.lo.z < band.z_max && leaf.bounds.hi.z > band.z_min)) continue;

        // Candidate index range padded by one cell, then the exact
        // positive-area overlap test per cell.
        int x0 = static_cast<int>(std::floor((leaf.bounds.lo.x - root.lo.x) / cell_size)) - 1;
        int x1 = static_cast<int>(std::ceil((leaf.bounds.hi.x - root.lo.x) / cell_size)) + 1;
        int y0 = static_cast<int>(std::floor((leaf.bounds.lo.y - root.lo.y) / cell_size)) - 1;
        int y1 = static_cast<int>(std::ceil((leaf.bounds.hi.y - root.lo.y) / cell_size)) + 1;
        x0 = std::max(x0, 0);
        y0 = std::max(y0, 0);
        x1 = std::min(x1, w);
        y1 = std::min(y1, h);
        for (int y = y0; y < y1; ++y) {
            const double cy0 = root.lo.y + y * cell_size;
            if (!(cy0 < leaf.bounds.hi.y && cy0 + cell_size > leaf.bounds.lo.y)) continue;
            for (int x = x0; x < x1; ++x) {
                const double cx0 = root.lo.x + x * cell_size;
                if (cx0 < leaf.bounds.hi.x && cx0 + cell_size > leaf.bounds.lo.x) {
                    grid.set(x, y, CellState::Occupied);
                }
            }
        }
    }
    return grid;
}

GridFiles write_grid(const OccupancyGrid& grid, const std::string& image_name) {
    GridFiles out;
    std::ostringstream pgm;
    pgm << "P5\n" << grid.width() << " " << grid.height() << "\n255\n";
    // raster row 0 is the top of the map
    for (int y = grid.height() - 1; y >= 0; --y) {
        for (int x = 0; x < grid.width(); ++x) {
            pgm.put(static_cast<char>(pixel_of(grid.at(x, y))));
        }
    }
    out.pgm = pgm.str();

    std::ostringstream meta;
    meta << "image: " << image_name << "\n"
         << "resolution: " << format_double(grid.cell_size()) << "\n"
         << "origin_x: " << format_double(grid.origin_x()) << "\n"
         << "origin_y: " << format_double(grid.origin_y()) << "\n"
         << "negate: 0\n";
    out.metadata = meta.str();
    return out;
}

OccupancyGrid read_grid(const std::string& pgm, const std::string& metadata) {
    std::istringstream in(pgm);
    std::string magic;
    in >> magic;
    if (magic != "P5") throw BadMagic("expected P5, got \"" + magic + "\"");
    long w = 0, h = 0, maxval = 0;
    in >> w >> h >> maxval;
    if (!in || w <= 0 || h <= 0) throw BadMagic("bad PGM dimensions");
    if (maxval != 255) throw BadMagic("expected maxval 255");
    in.get();  // the single whitespace byte after maxval

    const std::size_t expected = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::string payload(expected, '\0');
    in.read(payload.data(), static_cast<std::streamsize>(expected));
    if (static_cast<std::size_t>(in.gcount()) != expected || in.peek() != EOF) {
        throw DimensionMismatch("PGM payload does not match width*height");
    }

    double resolution = 1.0, origin_x = 0.0, origin_y = 0.0;
    bool seen[5] = {false, false, false, false, false};
    std::istringstream min(metadata);
    std::string line;
    while (std::getline(min, line)) {
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        const std::string key = line.substr(0, colon);
        const std::string value = line.substr(colon + 1);
        if (key == "image") {
            seen[0] = true;
        } else if (key == "resolution") {
            seen[1] = true;
            resolution = std::stod(value);
        } else if (key == "origin_x") {
            seen[2] = true;
            origin_x = std::stod(value);
        } else if (key == "origin_y") {
            seen[3] = true;
            origin_y = std::stod(value);
        } else if (key == "negate") {
            seen[4] = true;
        }
    }
    const char* names[5] = {"image", "resolution", "origin_x", "origin_y", "negate"};
    for (int i = 0; i < 5; ++i) {
        if (!seen[i]) throw MissingMetadataKey(std::string("missing metadata key ") + names[i]);
    }

    OccupancyGrid grid(static_cast<int>(w), static_cast<int>(h), resolution, origin_x,
                       origin_y);
    for (long row = 0; row < h; ++row) {
        const int y = static_cast<int>(h) - 1 - static_cast<int>(row);
        for (long x = 0; x < w; ++x) {
            const auto v = static_cast<std::uint8_t>(
                payload[static_cast<std::size_t>(row) * static_cast<std::size_t>(w) +
                        static_cast<std::size_t>(x)]);
            grid.set(static_cast<int>(x), y, state_of(v));
        }
    }
    return grid;
}

void save_grid_files(const OccupancyGrid& grid, const std::string& prefix) {
    const auto slash = prefix.find_last_of('/');
    const std::string base = slash == std::string::npos ? prefix : prefix.substr(slash + 1);
    GridFiles files = write_grid(grid, base + ".pgm");
    std::ofstream pgm(prefix + ".pgm", std::ios::binary);
    std::ofstream meta(prefix + ".meta", std::ios::binary);
    if (!pgm || !meta) throw Error("cannot write grid files at prefix " + prefix);
    pgm << files.pgm;
    meta << files.metadata;
}

OccupancyGrid load_grid_files(const std::string& prefix) {
    std::ifstream pgm(prefix + ".pgm", std::ios::binary);
    std::ifstream meta(prefix + ".meta", std::ios::binary);
    if (!pgm || !meta) throw Error("cannot read grid files at prefix " + prefix);
    std::ostringstream ps, ms;
    ps << pgm.rdbuf();
    ms << meta.rdbuf();
    return read_grid(ps.str(), ms.str());
}

bool footprint_collides(const OccupancyGrid& grid, int x, int y, int w, int h) {
    if (w < 1 || h < 1) throw Error("footprint size must be at least 1x1");
    if (x < 0 || y < 0 || x + w > grid.width() || y + h > grid.height()) return true;
    for (int cy = y; cy < y + h; ++cy) {
        for (int cx = x; cx < x + w; ++cx) {
            if (grid.at(cx, cy) != CellState::Free) return true;
        }
    }
    return false;
}

}  // namespace gridnav
