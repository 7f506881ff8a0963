#include "gridnav/octree.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace gridnav {

namespace {

// Octant of p within a box split at mid. Bit 0: x >= mid.x, bit 1: y, bit 2: z.
// The >= convention sends points on the shared face to the upper child, so a
// point exactly on the root's maximal face still lands in a leaf.
int octant_of(const Point3& p, const Point3& mid) {
    return (p.x >= mid.x ? 1 : 0) | (p.y >= mid.y ? 2 : 0) | (p.z >= mid.z ? 4 : 0);
}

Point3 box_mid(const Aabb& b) {
    return {0.5 * (b.lo.x + b.hi.x), 0.5 * (b.lo.y + b.hi.y), 0.5 * (b.lo.z + b.hi.z)};
}

}  // namespace

Aabb OctoMap::child_bounds(const Aabb& parent, int octant) {
    const Point3 mid = box_mid(parent);
    Aabb c;
    c.lo.x = (octant & 1) ? mid.x : parent.lo.x;
    c.hi.x = (octant & 1) ? parent.hi.x : mid.x;
    c.lo.y = (octant & 2) ? mid.y : parent.lo.y;
    c.hi.y = (octant & 2) ? parent.hi.y : mid.y;
    c.lo.z = (octant & 4) ? mid.z : parent.lo.z;
    c.hi.z = (octant & 4) ? parent.hi.z : mid.z;
    return c;
}

OctoMap OctoMap::build(const PointCloud& cloud, const OctreeConfig& cfg) {
    if (cloud.empty()) throw EmptyCloud("build_octree of empty cloud");

    OctoMap map;
    map.cfg_ = cfg;
    map.points_ = cloud.points;
    map.cloud_bounds_ = bounding_box(cloud);

    const double edge = cfg.resolution * static_cast<double>(1 << cfg.max_depth);
    Point3 centroid{0, 0, 0};
    for (const Point3& p : map.points_) {
        centroid.x += p.x;
        centroid.y += p.y;
        centroid.z += p.z;
    }
    const double inv_n = 1.0 / static_cast<double>(map.points_.size());
    centroid.x *= inv_n;
    centroid.y *= inv_n;
    centroid.z *= inv_n;

    map.root_bounds_.lo = {centroid.x - 0.5 * edge, centroid.y - 0.5 * edge,
                           centroid.z - 0.5 * edge};
    map.root_bounds_.hi = {map.root_bounds_.lo.x + edge, map.root_bounds_.lo.y + edge,
                           map.root_bounds_.lo.z + edge};

    for (const Point3& p : map.points_) {
        if (!map.root_bounds_.contains(p)) {
            throw CloudExceedsRootCube(
                "cloud does not fit the root cube; increase resolution or max depth");
        }
    }

    map.point_order_.resize(map.points_.size());
    for (std::size_t i = 0; i < map.point_order_.size(); ++i) {
        map.point_order_[i] = static_cast<std::int32_t>(i);
    }
    map.build_node(map.root_bounds_, 0, 0, static_cast<std::int32_t>(map.points_.size()));
    return map;
}

std::int32_t OctoMap::build_node(const Aabb& bounds, int depth, std::int32_t first,
                                 std::int32_t count) {
    const auto idx = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_[idx].children.fill(-1);
    nodes_[idx].first_point = first;
    nodes_[idx].num_points = count;

    if (count <= cfg_.split_threshold || depth >= cfg_.max_depth) {
        return idx;  // stop rule: few enough points, or maximum depth reached
    }
    nodes_[idx].is_leaf = false;

    // Partition the point range into the eight octants (stable, so traversal
    // order stays deterministic).
    const Point3 mid = box_mid(bounds);
    auto begin = point_order_.begin() + first;
    auto end = begin + count;
    std::stable_sort(begin, end, [&](std::int32_t a, std::int32_t b) {
        return octant_of(points_[a], mid) < octant_of(points_[b], mid);
    });

    std::int32_t child_first = first;
    for (int oct = 0; oct < 8; ++oct) {
        auto upper = std::partition_point(point_order_.begin() + child_first, end,
                                          [&](std::int32_t i) {
                                              return octant_of(points_[i], mid) <= oct;
                                          });
        const auto child_count =
            static_cast<std::int32_t>(upper - (point_order_.begin() + child_first));
        const std::int32_t child =
            build_node(child_bounds(bounds, oct), depth + 1, child_first, child_count);
        nodes_[idx].children[oct] = child;
        child_first += child_count;
    }
    return idx;
}

std::vector<OctoMap::Leaf> OctoMap::occupied_leaves() const {
    std::vector<Leaf> out;
    if (nodes_.empty()) return out;

    struct Frame {
        std::int32_t node;
        Aabb bounds;
        int depth;
    };
    std::vector<Frame> stack{{0, root_bounds_, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const Node& n = nodes_[static_cast<std::size_t>(f.node)];
        if (n.is_leaf) {
            if (n.num_points >= 1) out.push_back(Leaf{f.bounds, f.depth, n.num_points});
            continue;
        }
        // push in reverse so children pop in order 0..7
        for (int oct = 7; oct >= 0; --oct) {
            stack.push_back(Frame{n.children[oct], child_bounds(f.bounds, oct), f.depth + 1});
        }
    }
    return out;
}

VoxelState OctoMap::query_voxel(const Point3& p) const {
    if (!root_bounds_.contains(p)) return VoxelState::Outside;
    std::int32_t node = 0;
    Aabb bounds = root_bounds_;
    while (!nodes_[static_cast<std::size_t>(node)].is_leaf) {
        const int oct = octant_of(p, box_mid(bounds));
        node = nodes_[static_cast<std::size_t>(node)].children[oct];
        bounds = child_bounds(bounds, oct);
    }
    return nodes_[static_cast<std::size_t>(node)].num_points >= 1 ? VoxelState::Occupied
                                                                  : VoxelState::Free;
}

VoxelIndex OctoMap::voxel_of(const Point3& p) const {
    VoxelIndex v;
    Aabb bounds = root_bounds_;
    for (int d = 0; d < cfg_.max_depth; ++d) {
        const int oct = octant_of(p, box_mid(bounds));
        v.x = (v.x << 1) | (oct & 1);
        v.y = (v.y << 1) | ((oct >> 1) & 1);
        v.z = (v.z << 1) | ((oct >> 2) & 1);
        bounds = child_bounds(bounds, oct);
    }
    return v;
}

std::vector<VoxelIndex> OctoMap::occupied_max_depth_voxels() const {
    std::vector<VoxelIndex> out;
    out.reserve(points_.size());
    for (const Point3& p : points_) out.push_back(voxel_of(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string OctoMap::dump_occupied() const {
    std::ostringstream os;
    char buf[160];
    for (const Leaf& leaf : occupied_leaves()) {
        std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f %.6f %d\n", leaf.bounds.lo.x,
                      leaf.bounds.lo.y, leaf.bounds.lo.z, leaf.bounds.hi.x - leaf.bounds.lo.x,
                      leaf.depth);
        os << buf;
    }
    return os.str();
}

}  // namespace gridnav
