#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gridnav/point_cloud.hpp"

namespace gridnav {

struct OctreeConfig {
    double resolution = 1.0;  // edge length of a max-depth leaf, map units
    int max_depth = 8;
    int split_threshold = 1;  // a node splits while its point count exceeds this
};

struct CloudExceedsRootCube : Error {
    using Error::Error;
};

enum class VoxelState { Occupied, Free, Outside };

/// Integer voxel coordinate at max depth, relative to the root cube corner.
struct VoxelIndex {
    int x = 0;
    int y = 0;
    int z = 0;

    bool operator==(const VoxelIndex&) const = default;
    auto operator<=>(const VoxelIndex&) const = default;
};

/// Octree occupancy map over a cubic region. Internal nodes always have
/// exactly eight children; child boxes are half-open per axis except the
/// maximal faces of the root, which are closed. A leaf is occupied iff it
/// contains at least one point.
class OctoMap {
public:
    struct Leaf {
        Aabb bounds;
        int depth = 0;
        int point_count = 0;
    };

    /// Builds the tree over a cube of edge resolution * 2^max_depth centered
    /// on the cloud centroid. A node subdivides iff its point count exceeds
    /// cfg.split_threshold and its depth is below cfg.max_depth.
    static OctoMap build(const PointCloud& cloud, const OctreeConfig& cfg);

    const Aabb& root_bounds() const { return root_bounds_; }
    const Aabb& cloud_bounds() const { return cloud_bounds_; }
    const OctreeConfig& config() const { return cfg_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t point_count() const { return points_.size(); }

    /// Occupied leaves in depth-first order, children visited 0..7.
    std::vector<Leaf> occupied_leaves() const;

    VoxelState query_voxel(const Point3& p) const;

    /// Max-depth voxel containing p, found by descending the subdivision
    /// hierarchy (not by coordinate division). p must lie in the root cube.
    VoxelIndex voxel_of(const Point3& p) const;

    /// Distinct max-depth voxels of all stored points, sorted.
    std::vector<VoxelIndex> occupied_max_depth_voxels() const;

    /// One line per occupied leaf: "lo_x lo_y lo_z edge depth".
    std::string dump_occupied() const;

private:
    struct Node {
        std::array<std::int32_t, 8> children{};  // all -1 for a leaf
        std::int32_t first_point = 0;            // range into point_order_
        std::int32_t num_points = 0;
        bool is_leaf = true;
    };

    std::int32_t build_node(const Aabb& bounds, int depth, std::int32_t first,
                            std::int32_t count);
    static Aabb child_bounds(const Aabb& parent, int octant);

    std::vector<Node> nodes_;
    std::vector<Point3> points_;
    std::vector<std::int32_t> point_order_;
    Aabb root_bounds_{};
    Aabb cloud_bounds_{};
    OctreeConfig cfg_{};
};

inline OctoMap build_octree(const PointCloud& cloud, const OctreeConfig& cfg) {
    return OctoMap::build(cloud, cfg);
}

}  // namespace gridnav
