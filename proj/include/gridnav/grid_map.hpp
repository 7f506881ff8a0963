#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gridnav/octree.hpp"

namespace gridnav {

enum class CellState : std::uint8_t { Occupied, Free, Unknown };

struct BadMagic : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct MissingMetadataKey : Error {
    using Error::Error;
};

/// 2D occupancy grid. Cell (0,0) is the lower-left cell; world coordinates of
/// its lower-left corner are (origin_x, origin_y). Storage is row-major with
/// y growing upward; the top-down flip happens only in the PGM raster.
class OccupancyGrid {
public:
    OccupancyGrid() = default;
    OccupancyGrid(int width, int height, double cell_size, double origin_x, double origin_y,
                  CellState fill = CellState::Unknown);

    int width() const { return width_; }
    int height() const { return height_; }
    double cell_size() const { return cell_size_; }
    double origin_x() const { return origin_x_; }
    double origin_y() const { return origin_y_; }

    CellState at(int x, int y) const { return cells_[index(x, y)]; }
    void set(int x, int y, CellState s) { cells_[index(x, y)] = s; }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    int count(CellState s) const;

    bool operator==(const OccupancyGrid&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    double cell_size_ = 1.0;
    double origin_x_ = 0.0;
    double origin_y_ = 0.0;
    std::vector<CellState> cells_;
};

/// Height slab retained when flattening the octree.
struct ZBand {
    double z_min;
    double z_max;
};

/// Flattens an octree map onto the xy plane. A cell is Occupied iff an
/// occupied leaf whose z-interval intersects the band overlaps the cell's xy
/// box; otherwise Free when the cell lies inside the cloud's xy bounding box,
/// else Unknown.
OccupancyGrid project_octree(const OctoMap& map, const ZBand& band, double cell_size);

struct GridFiles {
    std::string pgm;       // binary PGM P5 payload
    std::string metadata;  // 5-line key:value text
};

/// PGM P5 (maxval 255) plus metadata text. Pixel values: Occupied 0,
/// Free 254, Unknown 205. Raster row 0 is the top row (y = height-1).
GridFiles write_grid(const OccupancyGrid& grid, const std::string& image_name = "map.pgm");

/// Inverse of write_grid. Pixel values other than {0, 205, 254} map to the
/// nearest of the three.
OccupancyGrid read_grid(const std::string& pgm, const std::string& metadata);

void save_grid_files(const OccupancyGrid& grid, const std::string& prefix);
OccupancyGrid load_grid_files(const std::string& prefix);

/// True iff the w x h cell rectangle anchored at (x, y) leaves the grid or
/// overlaps any Occupied or Unknown cell.
bool footprint_collides(const OccupancyGrid& grid, int x, int y, int w, int h);

}  // namespace gridnav
