#include "snowcount/geometry.hpp"

#include <algorithm>

namespace snowcount {

namespace {
int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    double v = (b - a).cross(c - a);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}
bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::fmin(a.x, b.x) <= p.x && p.x <= std::fmax(a.x, b.x) &&
           std::fmin(a.y, b.y) <= p.y && p.y <= std::fmax(a.y, b.y);
}
}  // namespace

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    double m = dist_point_segment(a, c, d);
    m = std::fmin(m, dist_point_segment(b, c, d));
    m = std::fmin(m, dist_point_segment(c, a, b));
    m = std::fmin(m, dist_point_segment(d, a, b));
    return m;
}

double dist_segment_box(const Vec2& a, const Vec2& b, const Box2& box) {
    if (box.contains(a) || box.contains(b)) return 0.0;
    Vec2 c00 = box.lo, c11 = box.hi;
    Vec2 c10 = {box.hi.x, box.lo.y}, c01 = {box.lo.x, box.hi.y};
    double m = dist_segment_segment(a, b, c00, c10);
    m = std::fmin(m, dist_segment_segment(a, b, c10, c11));
    m = std::fmin(m, dist_segment_segment(a, b, c11, c01));
    m = std::fmin(m, dist_segment_segment(a, b, c01, c00));
    return m;
}

double polygon_signed_area(const std::vector<Vec2>& poly) {
    double s = 0.0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        s += p.cross(q);
    }
    return 0.5 * s;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
    bool inside = false;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

double point_set_diameter(const std::vector<Vec2>& pts) {
    if (pts.size() < 2) return 0.0;
    // Andrew monotone chain hull, then brute-force over hull vertices.
    std::vector<Vec2> p = pts;
    std::sort(p.begin(), p.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::vector<Vec2> h(2 * p.size());
    size_t k = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && (h[k - 1] - h[k - 2]).cross(p[i] - h[k - 2]) <= 0) --k;
        h[k++] = p[i];
    }
    for (size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && (h[k - 1] - h[k - 2]).cross(p[i] - h[k - 2]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k > 1 ? k - 1 : k);
    double best = 0.0;
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = i + 1; j < h.size(); ++j)
            best = std::fmax(best, (h[i] - h[j]).norm());
    return best;
}

}  // namespace snowcount
