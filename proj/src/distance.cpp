#include "snowcount/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snowcount {

namespace {
constexpr int kLeafSize = 8;
}

DistanceField::DistanceField(const std::vector<Vec2>& poly) {
    size_t n = poly.size();
    if (n < 3) throw std::invalid_argument("DistanceField: polygon needs >= 3 vertices");
    seg_a_.reserve(n);
    seg_b_.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        seg_a_.push_back(poly[i]);
        seg_b_.push_back(poly[(i + 1) % n]);
    }
    std::vector<uint32_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = (uint32_t)i;
    nodes_.reserve(2 * n / kLeafSize + 4);
    int32_t root = build(idx, 0, (int32_t)n);
    // Reorder segments into the permuted order stored in idx.
    std::vector<Vec2> a2(n), b2(n);
    for (size_t i = 0; i < n; ++i) {
        a2[i] = seg_a_[idx[i]];
        b2[i] = seg_b_[idx[i]];
    }
    seg_a_ = std::move(a2);
    seg_b_ = std::move(b2);
    root_box_ = nodes_[root].box;
}

int32_t DistanceField::build(std::vector<uint32_t>& idx, int32_t lo, int32_t hi) {
    Node node;
    node.box = Box2{seg_a_[idx[lo]], seg_a_[idx[lo]]};
    for (int32_t i = lo; i < hi; ++i) {
        node.box.expand(seg_a_[idx[i]]);
        node.box.expand(seg_b_[idx[i]]);
    }
    int32_t self = (int32_t)nodes_.size();
    nodes_.push_back(node);
    if (hi - lo <= kLeafSize) {
        nodes_[self].first = lo;
        nodes_[self].count = hi - lo;
        return self;
    }
    Vec2 ext = node.box.hi - node.box.lo;
    bool split_x = ext.x >= ext.y;
    int32_t mid = (lo + hi) / 2;
    std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi,
                     [&](uint32_t a, uint32_t b) {
                         double ma = split_x ? seg_a_[a].x + seg_b_[a].x : seg_a_[a].y + seg_b_[a].y;
                         double mb = split_x ? seg_a_[b].x + seg_b_[b].x : seg_a_[b].y + seg_b_[b].y;
                         return ma < mb;
                     });
    int32_t l = build(idx, lo, mid);
    int32_t r = build(idx, mid, hi);
    nodes_[self].left = l;
    nodes_[self].right = r;
    return self;
}

double DistanceField::distance(const Vec2& p) const {
    double best = std::numeric_limits<double>::infinity();
    // Manual stack of node ids ordered greedily by box distance.
    int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        int32_t ni = stack[--top];
        const Node& nd = nodes_[ni];
        if (nd.box.dist_point(p) >= best) continue;
        if (nd.count > 0) {
            for (int32_t i = nd.first; i < nd.first + nd.count; ++i)
                best = std::fmin(best, dist_point_segment(p, seg_a_[i], seg_b_[i]));
        } else {
            double dl = nodes_[nd.left].box.dist_point(p);
            double dr = nodes_[nd.right].box.dist_point(p);
            // push the farther child first so the nearer is processed next
            if (dl <= dr) {
                if (dr < best) stack[top++] = nd.right;
                if (dl < best) stack[top++] = nd.left;
            } else {
                if (dl < best) stack[top++] = nd.left;
                if (dr < best) stack[top++] = nd.right;
            }
        }
    }
    return best;
}

double DistanceField::distance_box(const Box2& box) const {
    double best = std::numeric_limits<double>::infinity();
    int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        int32_t ni = stack[--top];
        const Node& nd = nodes_[ni];
        if (nd.box.dist_box(box) >= best) continue;
        if (nd.count > 0) {
            for (int32_t i = nd.first; i < nd.first + nd.count; ++i) {
                best = std::fmin(best, dist_segment_box(seg_a_[i], seg_b_[i], box));
                if (best == 0.0) return 0.0;
            }
        } else {
            double dl = nodes_[nd.left].box.dist_box(box);
            double dr = nodes_[nd.right].box.dist_box(box);
            if (dl <= dr) {
                if (dr < best) stack[top++] = nd.right;
                if (dl < best) stack[top++] = nd.left;
            } else {
                if (dl < best) stack[top++] = nd.left;
                if (dr < best) stack[top++] = nd.right;
            }
        }
    }
    return best;
}

bool DistanceField::inside(const Vec2& p) const {
    bool in = false;
    int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        int32_t ni = stack[--top];
        const Node& nd = nodes_[ni];
        // Prune: all endpoints strictly above / all at or below p.y cannot toggle
        // the (a.y > p.y) != (b.y > p.y) rule; crossings left of p never count.
        if (nd.box.lo.y > p.y || nd.box.hi.y <= p.y || nd.box.hi.x < p.x) continue;
        if (nd.count > 0) {
            for (int32_t i = nd.first; i < nd.first + nd.count; ++i) {
                const Vec2& a = seg_a_[i];
                const Vec2& b = seg_b_[i];
                if ((a.y > p.y) != (b.y > p.y)) {
                    double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                    if (p.x < xint) in = !in;
                }
            }
        } else {
            stack[top++] = nd.left;
            stack[top++] = nd.right;
        }
    }
    return in;
}

}  // namespace snowcount
