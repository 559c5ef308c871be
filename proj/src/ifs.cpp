#include "snowcount/ifs.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace snowcount {

double minkowski_dimension(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("minkowski_dimension: p outside (0,1)");
    return std::log(4.0) / std::log(1.0 / p);
}

PKochSystem make_p_koch(double p) {
    if (!(p > kPMin && p < kPMax))
        throw std::domain_error("make_p_koch: p must lie in (1/4, (sqrt(3)-1)/2)");
    PKochSystem sys;
    sys.p = p;
    sys.delta = minkowski_dimension(p);
    double h = std::sqrt(4.0 * p - 1.0) / 2.0;
    Vec2 P0{0.0, 0.0}, P1{p, 0.0}, P2{0.5, h}, P3{1.0 - p, 0.0}, P4{1.0, 0.0};
    sys.maps[0] = Similarity::from_two_points(P0, P1);
    sys.maps[1] = Similarity::from_two_points(P1, P2);
    sys.maps[2] = Similarity::from_two_points(P2, P3);
    sys.maps[3] = Similarity::from_two_points(P3, P4);
    return sys;
}

double chain_hausdorff_error(double p, int level) {
    return std::pow(p, level) * std::sqrt(4.0 * p - 1.0) / (2.0 * (1.0 - p));
}

std::array<Vec2, 5> refine_segment(double p, const Vec2& a, const Vec2& b, bool bump_left) {
    Vec2 d = b - a;
    Vec2 n = d.perp();  // left normal
    if (!bump_left) n = {-n.x, -n.y};
    double h = std::sqrt(4.0 * p - 1.0) / 2.0;
    return {a, a + d * p, a + d * 0.5 + n * h, a + d * (1.0 - p), b};
}

PolyChain iterate_chain_on(double p, const Vec2& a, const Vec2& b, int level, bool bump_left,
                           uint64_t vertex_budget) {
    if (level < 0) throw std::invalid_argument("iterate_chain: level must be >= 0");
    uint64_t nseg = 1;
    for (int i = 0; i < level; ++i) {
        nseg *= 4;
        if (nseg + 1 > vertex_budget)
            throw std::length_error("iterate_chain: vertex budget exceeded");
    }
    std::vector<Vec2> cur = {a, b};
    cur.reserve(nseg + 1);
    for (int m = 0; m < level; ++m) {
        std::vector<Vec2> next;
        next.reserve((cur.size() - 1) * 4 + 1);
        for (size_t i = 0; i + 1 < cur.size(); ++i) {
            auto r = refine_segment(p, cur[i], cur[i + 1], bump_left);
            next.push_back(r[0]);
            next.push_back(r[1]);
            next.push_back(r[2]);
            next.push_back(r[3]);
        }
        next.push_back(cur.back());
        cur = std::move(next);
    }
    PolyChain out;
    out.vertices = std::move(cur);
    out.level = level;
    out.hausdorff_error = chain_hausdorff_error(p, level) * (b - a).norm();
    return out;
}

PolyChain iterate_chain(const PKochSystem& sys, int level, uint64_t vertex_budget) {
    return iterate_chain_on(sys.p, {0.0, 0.0}, {1.0, 0.0}, level, /*bump_left=*/true,
                            vertex_budget);
}

double fringe_area_per_unit_side(double p) {
    return (1.0 - 2.0 * p) * std::sqrt(4.0 * p - 1.0) / (4.0 * (1.0 - 4.0 * p * p));
}

double snowflake_area_exact(SnowflakeKind kind, double p) {
    double base = kind == SnowflakeKind::TriangleK ? std::sqrt(3.0) / 4.0 : 1.0;
    double sides = kind == SnowflakeKind::TriangleK ? 3.0 : 4.0;
    return base + sides * fringe_area_per_unit_side(p);
}

double snowflake_area_tail(SnowflakeKind kind, double p, int level) {
    double sides = kind == SnowflakeKind::TriangleK ? 3.0 : 4.0;
    return sides * (1.0 - 2.0 * p) * std::sqrt(4.0 * p - 1.0) / 4.0 *
           std::pow(4.0 * p * p, level) / (1.0 - 4.0 * p * p);
}

SnowflakeDomain build_snowflake(SnowflakeKind kind, double p, int level, uint64_t vertex_budget) {
    if (!(p > kPMin && p < kPMax))
        throw std::domain_error("build_snowflake: p must lie in (1/4, (sqrt(3)-1)/2)");
    if (level < 0) throw std::invalid_argument("build_snowflake: level must be >= 0");
    SnowflakeDomain dom;
    dom.kind = kind;
    dom.p = p;
    dom.level = level;
    if (kind == SnowflakeKind::TriangleK) {
        dom.base_polygon = {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    } else {
        dom.base_polygon = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    }
    size_t ns = dom.base_polygon.size();
    for (size_t i = 0; i < ns; ++i) {
        const Vec2& a = dom.base_polygon[i];
        const Vec2& b = dom.base_polygon[(i + 1) % ns];
        // Counter-clockwise traversal keeps the interior on the left, so outward
        // bumps must point to the right of the travel direction.
        dom.boundary.push_back(iterate_chain_on(p, a, b, level, /*bump_left=*/false,
                                                vertex_budget));
    }
    for (const PolyChain& side : dom.boundary) {
        dom.polygon.insert(dom.polygon.end(), side.vertices.begin(), side.vertices.end() - 1);
        dom.hausdorff_error = std::fmax(dom.hausdorff_error, side.hausdorff_error);
    }
    dom.area_exact = snowflake_area_exact(kind, p);
    return dom;
}

double snowflake_diameter(SnowflakeKind kind, double p) {
    // Hull diameter of a refined polygon plus the certified error margin.
    // For K(1/3) the extreme points already occur at level 1 (the snowflake is
    // contained in the circumcircle) and the value is 2/sqrt(3) up to rounding.
    SnowflakeDomain dom = build_snowflake(kind, p, 6);
    double d = point_set_diameter(dom.polygon);
    if (kind == SnowflakeKind::TriangleK && std::abs(p - 1.0 / 3.0) < 1e-12)
        return 2.0 / std::sqrt(3.0);
    return d + 2.0 * dom.hausdorff_error;
}

bool polygon_is_simple(const std::vector<Vec2>& poly) {
    size_t n = poly.size();
    if (n < 3) return false;
    // Uniform grid over segments; only non-adjacent pairs may not intersect.
    Box2 bb{poly[0], poly[0]};
    for (const Vec2& v : poly) bb.expand(v);
    double maxlen = 0.0;
    for (size_t i = 0; i < n; ++i)
        maxlen = std::fmax(maxlen, (poly[(i + 1) % n] - poly[i]).norm());
    double cell = std::fmax(maxlen, 1e-12);
    auto key = [&](int64_t ix, int64_t iy) { return (ix << 32) ^ (iy & 0xffffffffll); };
    std::unordered_map<int64_t, std::vector<uint32_t>> grid;
    auto cells_of = [&](size_t i, auto&& fn) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        int64_t x0 = (int64_t)std::floor((std::fmin(a.x, b.x) - bb.lo.x) / cell);
        int64_t x1 = (int64_t)std::floor((std::fmax(a.x, b.x) - bb.lo.x) / cell);
        int64_t y0 = (int64_t)std::floor((std::fmin(a.y, b.y) - bb.lo.y) / cell);
        int64_t y1 = (int64_t)std::floor((std::fmax(a.y, b.y) - bb.lo.y) / cell);
        for (int64_t x = x0; x <= x1; ++x)
            for (int64_t y = y0; y <= y1; ++y) fn(key(x, y));
    };
    for (size_t i = 0; i < n; ++i) {
        bool bad = false;
        cells_of(i, [&](int64_t k) {
            for (uint32_t j : grid[k]) {
                size_t prev = (i + n - 1) % n, next = (i + 1) % n;
                if (j == i || j == prev || j == next) continue;
                if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
                    bad = true;
            }
        });
        if (bad) return false;
        cells_of(i, [&](int64_t k) { grid[k].push_back((uint32_t)i); });
    }
    return true;
}

}  // namespace snowcount
