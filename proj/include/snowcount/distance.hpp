#pragma once

#include <memory>
#include <vector>

#include "snowcount/geometry.hpp"
#include "snowcount/ifs.hpp"

namespace snowcount {

// Bounding-volume tree over the boundary segments of a polygon. Distance queries
// are exact against the stored polygon; the certified accuracy against the limit
// curve is the polygon's hausdorff_error, carried by the caller.
class DistanceField {
  public:
    explicit DistanceField(const std::vector<Vec2>& closed_polygon);

    // Unsigned distance from p to the polygon boundary.
    double distance(const Vec2& p) const;
    // Exact minimum distance from an axis box to the boundary (0 if they meet).
    double distance_box(const Box2& box) const;
    // True if p lies inside the polygon (even-odd rule via the tree).
    bool inside(const Vec2& p) const;
    // Signed distance: positive inside, negative outside.
    double signed_distance(const Vec2& p) const { return inside(p) ? distance(p) : -distance(p); }

    const Box2& bounds() const { return root_box_; }
    size_t segment_count() const { return seg_a_.size(); }

  private:
    struct Node {
        Box2 box;
        int32_t left = -1, right = -1;   // children, or
        int32_t first = -1, count = 0;   // leaf segment range
    };

    int32_t build(std::vector<uint32_t>& idx, int32_t lo, int32_t hi);

    std::vector<Vec2> seg_a_, seg_b_;
    std::vector<Node> nodes_;
    Box2 root_box_;
};

}  // namespace snowcount
