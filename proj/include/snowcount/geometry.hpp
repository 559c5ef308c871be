#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace snowcount {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    Vec2 perp() const { return {-y, x}; }  // rotate +90 degrees (left normal)
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

// Planar similarity x -> scale * R(rotation) * F(reflect) * x + translation,
// where F is reflection across the x-axis applied first when reflect is set.
struct Similarity {
    double scale = 1.0;
    double rotation = 0.0;  // radians
    bool reflect = false;
    Vec2 translation{0.0, 0.0};

    Similarity() = default;
    Similarity(double scale_, double rotation_, bool reflect_, Vec2 translation_)
        : scale(scale_), rotation(rotation_), reflect(reflect_), translation(translation_) {
        if (!(scale_ > 0.0)) throw std::invalid_argument("Similarity: scale must be positive");
    }

    Vec2 apply(const Vec2& v) const {
        double vy = reflect ? -v.y : v.y;
        double c = std::cos(rotation), s = std::sin(rotation);
        return {scale * (c * v.x - s * vy) + translation.x,
                scale * (s * v.x + c * vy) + translation.y};
    }
    Vec2 operator()(const Vec2& v) const { return apply(v); }

    // Linear part only (no translation); useful for direction transport.
    Vec2 apply_linear(const Vec2& v) const {
        double vy = reflect ? -v.y : v.y;
        double c = std::cos(rotation), s = std::sin(rotation);
        return {scale * (c * v.x - s * vy), scale * (s * v.x + c * vy)};
    }

    // Composition: (*this) after `inner`, i.e. x -> this(inner(x)).
    Similarity compose(const Similarity& inner) const {
        Similarity out;
        out.scale = scale * inner.scale;
        out.reflect = reflect != inner.reflect;
        out.rotation = reflect ? rotation - inner.rotation : rotation + inner.rotation;
        out.translation = apply(inner.translation);
        // keep the angle in a sane range for reproducibility
        out.rotation = std::remainder(out.rotation, 2.0 * M_PI);
        return out;
    }

    // Similarity mapping (0,0)->a and (1,0)->b, optional pre-reflection.
    static Similarity from_two_points(const Vec2& a, const Vec2& b, bool reflect = false) {
        Vec2 d = b - a;
        double s = d.norm();
        if (!(s > 0.0)) throw std::invalid_argument("from_two_points: coincident points");
        Similarity out;
        out.scale = s;
        out.rotation = std::atan2(d.y, d.x);
        out.reflect = reflect;
        out.translation = a;
        return out;
    }

    Similarity inverse() const {
        // y = s R(r) F x + t  =>  x = (1/s) F R(-r) (y - t).
        // With F R(-r) = R(r) F when reflecting, the inverse is again canonical.
        Similarity out;
        out.scale = 1.0 / scale;
        out.reflect = reflect;
        out.rotation = reflect ? rotation : -rotation;
        out.translation = {0.0, 0.0};
        out.translation = out.apply({-translation.x, -translation.y});
        return out;
    }
};

// ---- segment / polygon helpers -------------------------------------------

inline double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 d = b - a;
    double l2 = d.norm2();
    if (l2 <= 0.0) return (p - a).norm();
    double t = (p - a).dot(d) / l2;
    t = std::fmax(0.0, std::fmin(1.0, t));
    return (p - (a + d * t)).norm();
}

struct Box2 {
    Vec2 lo{0, 0}, hi{0, 0};
    bool contains(const Vec2& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
    Vec2 center() const { return (lo + hi) * 0.5; }
    double diag() const { return (hi - lo).norm(); }
    double dist_point(const Vec2& p) const {
        double dx = std::fmax(std::fmax(lo.x - p.x, 0.0), p.x - hi.x);
        double dy = std::fmax(std::fmax(lo.y - p.y, 0.0), p.y - hi.y);
        return std::sqrt(dx * dx + dy * dy);
    }
    double dist_box(const Box2& o) const {
        double dx = std::fmax(std::fmax(lo.x - o.hi.x, 0.0), o.lo.x - hi.x);
        double dy = std::fmax(std::fmax(lo.y - o.hi.y, 0.0), o.lo.y - hi.y);
        return std::sqrt(dx * dx + dy * dy);
    }
    void expand(const Vec2& p) {
        lo.x = std::fmin(lo.x, p.x); lo.y = std::fmin(lo.y, p.y);
        hi.x = std::fmax(hi.x, p.x); hi.y = std::fmax(hi.y, p.y);
    }
};

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);
double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);
double dist_segment_box(const Vec2& a, const Vec2& b, const Box2& box);

// Signed area of a closed polygon (positive if counter-clockwise).
double polygon_signed_area(const std::vector<Vec2>& poly);
// Even-odd point-in-polygon test (closed polygon, last vertex != first required).
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly);
// Maximum pairwise distance between the given points (convex-hull based).
double point_set_diameter(const std::vector<Vec2>& pts);

}  // namespace snowcount
