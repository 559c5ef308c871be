#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "snowcount/geometry.hpp"

namespace snowcount {

inline constexpr double kPMin = 0.25;
inline const double kPMax = (std::sqrt(3.0) - 1.0) / 2.0;  // ~0.3660254

// Four-map similarity system generating the p-Koch curve on the unit segment.
// The generator chain is (0,0)->(p,0)->(1/2,h)->(1-p,0)->(1,0), h = sqrt(4p-1)/2.
struct PKochSystem {
    double p = 1.0 / 3.0;
    std::array<Similarity, 4> maps;
    double delta = 0.0;  // Minkowski dimension of the limit curve, -log_p 4

    double bump_height() const { return std::sqrt(4.0 * p - 1.0) / 2.0; }
};

PKochSystem make_p_koch(double p);

// Minkowski dimension -log_p 4 of the p-Koch curve (and of the snowflake boundaries).
double minkowski_dimension(double p);

// Polygonal approximation of the p-Koch curve on one base segment.
struct PolyChain {
    std::vector<Vec2> vertices;  // 4^level + 1 points
    int level = 0;
    double hausdorff_error = 0.0;  // certified distance to the limit curve
};

// Upper bound on the Hausdorff distance between the level-m chain and the limit
// curve: the remaining bumps have heights p^{m+j} sqrt(4p-1)/2, j >= 0; a point
// of the limit curve above a level-m segment is reached through a nested chain of
// them, so dist <= sum_j p^{m+j} sqrt(4p-1)/2 / p = p^m sqrt(4p-1)/(2(1-p)).
double chain_hausdorff_error(double p, int level);

// One refinement step of a single segment a->b. With bump_left the bump points to
// the left of the travel direction (the canonical seed); snowflake sides use
// bump_left=false so that bumps point outward of a counter-clockwise polygon.
std::array<Vec2, 5> refine_segment(double p, const Vec2& a, const Vec2& b, bool bump_left);

// Canonical chain on the unit segment, bumps up ("left"), with certified error.
// Throws on a vertex budget overflow (4^level+1 > budget).
PolyChain iterate_chain(const PKochSystem& sys, int level, uint64_t vertex_budget = (1ull << 26));

// Chain on an arbitrary base segment with chosen bump side.
PolyChain iterate_chain_on(double p, const Vec2& a, const Vec2& b, int level, bool bump_left,
                           uint64_t vertex_budget = (1ull << 26));

enum class SnowflakeKind { TriangleK, SquareR };

// Area added by the limit fringe over one unit base segment:
// sum_m 4^m * (area of one generation-(m+1) bump triangle) = (1-2p)sqrt(4p-1)/(4(1-4p^2)).
double fringe_area_per_unit_side(double p);

struct SnowflakeDomain {
    SnowflakeKind kind = SnowflakeKind::TriangleK;
    double p = 1.0 / 3.0;
    int level = 0;
    std::vector<PolyChain> boundary;  // 3 or 4 sides, oriented counter-clockwise
    std::vector<Vec2> polygon;        // concatenated closed polygon (no repeated endpoint)
    double area_exact = 0.0;          // base area + sides * fringe series
    double hausdorff_error = 0.0;
    std::vector<Vec2> base_polygon;   // the level-0 triangle/square, counter-clockwise

    int sides() const { return kind == SnowflakeKind::TriangleK ? 3 : 4; }
};

SnowflakeDomain build_snowflake(SnowflakeKind kind, double p, int level,
                                uint64_t vertex_budget = (1ull << 26));

// Closed-form exact area of the limit domain.
double snowflake_area_exact(SnowflakeKind kind, double p);

// Upper bound on |polygon area at level m - area_exact|.
double snowflake_area_tail(SnowflakeKind kind, double p, int level);

// Diameter of the limit domain. For the classic Koch snowflake this is the
// circumdiameter 2/sqrt(3) of the base triangle (the curve stays inside the
// circumcircle); in general it is computed from a refined polygon plus the
// certified Hausdorff error.
double snowflake_diameter(SnowflakeKind kind, double p);

// Simplicity check of the polygon at its construction level (segment-tree sweep).
bool polygon_is_simple(const std::vector<Vec2>& poly);

}  // namespace snowcount
