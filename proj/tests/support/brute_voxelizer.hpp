#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gridnav/octree.hpp"

namespace gridnav::test {

/// Independent voxelization: floor-divide each point by the resolution
/// relative to the root corner, clamping points on the root's maximal faces
/// into the last voxel. No tree structure involved.
inline std::vector<VoxelIndex> brute_force_voxels(const PointCloud& cloud, const Aabb& root,
                                                  double resolution, int max_depth) {
    const int n = 1 << max_depth;
    std::vector<VoxelIndex> out;
    for (const Point3& p : cloud.points) {
        auto axis = [&](double v, double lo) {
            const int i = static_cast<int>(std::floor((v - lo) / resolution));
            return std::clamp(i, 0, n - 1);
        };
        out.push_back(VoxelIndex{axis(p.x, root.lo.x), axis(p.y, root.lo.y),
                                 axis(p.z, root.lo.z)});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace gridnav::test
