#include "snowcount/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "snowcount/distance.hpp"
#include "snowcount/threads.hpp"

namespace snowcount {

namespace {

double koch_scale_coeff(double p) { return (1.0 - 2.0 * p) / std::sqrt(4.0 * p - 1.0); }

// ---- fiber band recursion -------------------------------------------------

struct BandTracer {
    double p, h, m;  // h = unit bump height, m = 2p/(1-2p) crossing density step
    Similarity phi[4];
    Fiber* fib = nullptr;

    explicit BandTracer(double p_) : p(p_) {
        h = std::sqrt(4.0 * p - 1.0) / 2.0;
        m = 2.0 * p / (1.0 - 2.0 * p);
        Vec2 c0{0, 0}, c1{p, 0}, c2{0.5, h}, c3{1.0 - p, 0}, c4{1, 0};
        phi[0] = Similarity::from_two_points(c0, c1);
        phi[1] = Similarity::from_two_points(c1, c2);
        phi[2] = Similarity::from_two_points(c2, c3);
        phi[3] = Similarity::from_two_points(c3, c4);
    }

    void add_band(const Vec2& a, const Vec2& b, double beta) {
        double len = (b - a).norm();
        if (!(len > 0.0)) return;
        if (fib->knots.empty())
            fib->knots.push_back({a, beta});
        else
            fib->knots.back().beta = beta;
        fib->knots.push_back({b, beta});
        fib->length += len;
        fib->beta_integral += beta * len;
    }

    // fiber continuation inside the fringe over the unit segment carried by T;
    // the fiber enters at local (u, 0) with the given density
    void recurse(const Similarity& T, double u, double beta, int gens) {
        if (gens <= 0) return;
        const double tol = 1e-13;
        if (u < tol || u > 1.0 - tol || std::abs(u - p) < tol || std::abs(u - 0.5) < tol ||
            std::abs(u - (1.0 - p)) < tol)
            fib->degenerate = true;
        if (u <= p) {
            recurse(T.compose(phi[0]), u / p, beta, gens - 1);
        } else if (u <= 0.5) {
            double y = (u - p) * h / (0.5 - p);
            add_band(T.apply({u, 0.0}), T.apply({u, y}), beta);
            recurse(T.compose(phi[1]), (u - p) / (0.5 - p), beta * m, gens - 1);
        } else if (u <= 1.0 - p) {
            double y = (1.0 - p - u) * h / (0.5 - p);
            add_band(T.apply({u, 0.0}), T.apply({u, y}), beta);
            recurse(T.compose(phi[2]), (u - 0.5) / (0.5 - p), beta * m, gens - 1);
        } else {
            recurse(T.compose(phi[3]), (u - 1.0 + p) / p, beta, gens - 1);
        }
    }
};

struct ElementDims {
    double W = 0.0;  // chord carrying the fringe
    double e = 0.0;  // lR extension
    double H = 0.0;  // fR tent height
};

ElementDims element_dims(double p, ElementKind kind, double epsilon, int k) {
    ElementDims d;
    switch (kind) {
        case ElementKind::FringedRect:
            d.W = (1.0 - 2.0 * p) * std::pow(p, k - 1);
            d.H = std::pow(p, k - 1) * std::sqrt(4.0 * p - 1.0) / 2.0;
            break;
        case ElementKind::ShortRect:
            d.W = std::pow(p, k);
            break;
        case ElementKind::LongRect:
            d.W = std::pow(p, k);
            d.e = epsilon * std::sqrt(4.0 * p - 1.0) / (2.0 * p);
            break;
    }
    return d;
}

Fiber trace_local_fiber(double p, ElementKind kind, double q, int depth, double epsilon, int k) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("trace_fiber: q must be interior to (0,1)");
    if (depth < 1) throw std::domain_error("trace_fiber: depth must be >= 1");
    if (!(epsilon > 0.0) || k < 1) throw std::domain_error("trace_fiber: bad epsilon or k");
    ElementDims d = element_dims(p, kind, epsilon, k);
    Fiber fib;
    fib.q = q;
    fib.r = epsilon;
    BandTracer tr(p);
    tr.fib = &fib;
    double B = d.W + d.e;
    double x0 = q * B;
    tr.add_band({x0, -epsilon}, {x0, 0.0}, 1.0);
    if (kind == ElementKind::LongRect && x0 >= d.W) {
        // over the flat extension the fiber ends at the element's top face
        if (x0 == d.W) fib.degenerate = true;
        return fib;
    }
    if (kind == ElementKind::FringedRect) {
        if (std::abs(q - 0.5) < 1e-15) {
            // apex line: measure-zero degenerate fiber; documented convention
            // partitions the vertical run by the p-scaled frames toward the
            // apex, with one density step per generation
            fib.degenerate = true;
            double beta = 1.0;
            for (int l = 0; l < depth; ++l) {
                double y0 = d.H * (1.0 - std::pow(p, l));
                double y1 = d.H * (1.0 - std::pow(p, l + 1));
                tr.add_band({x0, y0}, {x0, y1}, beta);
                beta *= tr.m;
            }
            return fib;
        }
        if (q < 0.5) {
            double y = 2.0 * q * d.H;
            tr.add_band({x0, 0.0}, {x0, y}, 1.0);
            Similarity T = Similarity::from_two_points({0.0, 0.0}, {d.W / 2.0, d.H});
            tr.recurse(T, 2.0 * q, tr.m, depth);
        } else {
            double y = 2.0 * (1.0 - q) * d.H;
            tr.add_band({x0, 0.0}, {x0, y}, 1.0);
            Similarity T = Similarity::from_two_points({d.W / 2.0, d.H}, {d.W, 0.0});
            tr.recurse(T, 2.0 * q - 1.0, tr.m, depth);
        }
        return fib;
    }
    Similarity T = Similarity::from_two_points({0.0, 0.0}, {d.W, 0.0});
    tr.recurse(T, x0 / d.W, 1.0, depth);
    return fib;
}

// point between the unit base segment and the p-Koch curve over it (bumps +y)
bool fringe_contains(double p, double h, double x, double y, int depth) {
    if (depth <= 0) return false;
    if (y <= 0.0 || x <= 0.0 || x >= 1.0) return false;
    // the curve stays inside the triangle (0,0),(1/2,h),(1,0) for all valid p
    if (y > 2.0 * h * x || y > 2.0 * h * (1.0 - x)) return false;
    if (x <= p) return fringe_contains(p, h, x / p, y / p, depth - 1);
    if (x >= 1.0 - p) return fringe_contains(p, h, (x - 1.0 + p) / p, y / p, depth - 1);
    double yl = (x - p) * h / (0.5 - p);
    double yr = (1.0 - p - x) * h / (0.5 - p);
    if (y <= yl && y <= yr) return true;  // generation-1 bump interior
    double s = p;  // both slanted sub-maps have ratio p
    double ct = (0.5 - p) / p, st = h / p;  // cos/sin of the flank angle
    if (y > yl) {
        double dx = x - p, dy = y;
        double lx = (ct * dx + st * dy) / s, ly = (-st * dx + ct * dy) / s;
        if (fringe_contains(p, h, lx, ly, depth - 1)) return true;
    }
    if (y > yr) {
        double dx = x - 0.5, dy = y - h;
        double rx = (ct * dx - st * dy) / s, ry = (st * dx + ct * dy) / s;
        if (fringe_contains(p, h, rx, ry, depth - 1)) return true;
    }
    return false;
}

}  // namespace

double seed_triangle_density(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("seed_triangle_density: sides must be positive");
    return b / a;
}

ConstantRange scale_interval(double p, int k) {
    double cj = koch_scale_coeff(p);
    return {std::pow(p, k + 1) * cj, std::pow(p, k) * cj};
}

double c_L_upper(double p) {
    return 1.0 + (4.0 * p - 1.0) / (p * p * (2.0 - 6.0 * p + 4.0 * p * p));
}

double c_I_upper(double p) {
    return 1.0 + (4.0 * p - 1.0) / (2.0 * p * p * (1.0 - 2.0 * p - 2.0 * p * p));
}

double c_diam_upper(double p) {
    double a = (4.0 * p - 1.0) / (p * p * p * p);
    double b = 1.0 - (4.0 * p - 1.0) / (2.0 * p * p * (1.0 - 2.0 * p));
    return std::sqrt(a + b * b);
}

double C_of_omega(SnowflakeKind kind, double p) {
    double cj = koch_scale_coeff(p);
    double delta = minkowski_dimension(p);
    if (kind == SnowflakeKind::SquareR) return 3.0 * std::pow(cj, delta);
    if (std::abs(p - 1.0 / 3.0) < 1e-12) return 1.0;
    return 2.25 * std::pow(cj, delta);
}

Fiber trace_fiber(const PKochSystem& sys, ElementKind kind, double q, int depth, double epsilon,
                  int k) {
    return trace_local_fiber(sys.p, kind, q, depth, epsilon, k);
}

double GraphFoliation::fiber_integral() const {
    // beta == 1: sum of fiber lengths over midpoints of the linear interpolant
    size_t n = heights.size();
    if (n < 2 || !(base > 0.0)) return 0.0;
    size_t m = 8 * (n - 1);
    double dx = base / (double)m, acc = 0.0;
    for (size_t i = 0; i < m; ++i) {
        double x = (i + 0.5) * dx;
        double s = x / base * (double)(n - 1);
        size_t j = std::min((size_t)s, n - 2);
        double f = heights[j] + (heights[j + 1] - heights[j]) * (s - (double)j);
        acc += f * dx;
    }
    return acc;
}

double GraphFoliation::graph_area() const {
    size_t n = heights.size();
    if (n < 2 || !(base > 0.0)) return 0.0;
    double dx = base / (double)(n - 1), acc = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) acc += 0.5 * (heights[i] + heights[i + 1]) * dx;
    return acc;
}

GraphFoliation graph_domain_foliation(const std::vector<double>& f_samples, double base) {
    if (f_samples.size() < 2 || !(base > 0.0))
        throw std::domain_error("graph_domain_foliation: need >= 2 samples and positive base");
    for (double f : f_samples)
        if (!(f > 0.0)) throw std::domain_error("graph_domain_foliation: heights must be positive");
    return GraphFoliation{base, f_samples};
}

bool element_contains(const CoverElement& el, double p, const Vec2& global_point) {
    Vec2 l = el.placement.inverse().apply(global_point);
    double B = el.width + el.extension;
    if (l.x >= 0.0 && l.x <= B && l.y >= -el.epsilon && l.y <= 0.0) return true;
    if (l.y <= 0.0) return false;
    double h = std::sqrt(4.0 * p - 1.0) / 2.0;
    const int cap = 200;
    if (el.kind == ElementKind::FringedRect) {
        double W = el.width;
        double H = W * h / (1.0 - 2.0 * p);
        if (l.x >= 0.0 && l.x <= W && l.y <= 2.0 * H * l.x / W &&
            l.y <= 2.0 * H * (W - l.x) / W)
            return true;  // tent interior
        double s = std::hypot(W / 2.0, H);  // flank length p^k
        double ct = (W / 2.0) / s, st = H / s;
        {
            double dx = l.x, dy = l.y;
            double fx = (ct * dx + st * dy) / s, fy = (-st * dx + ct * dy) / s;
            if (fringe_contains(p, h, fx, fy, cap)) return true;
        }
        {
            double dx = l.x - W / 2.0, dy = l.y - H;
            double fx = (ct * dx - st * dy) / s, fy = (st * dx + ct * dy) / s;
            if (fringe_contains(p, h, fx, fy, cap)) return true;
        }
        return false;
    }
    return fringe_contains(p, h, l.x / el.width, l.y / el.width, cap);
}

std::vector<Vec2> element_polygon(const CoverElement& el, double p, int arc_level) {
    ElementDims d = element_dims(p, el.kind, el.epsilon, el.k);
    double B = d.W + d.e;
    std::vector<Vec2> out;
    out.push_back({0.0, -el.epsilon});
    out.push_back({B, -el.epsilon});
    out.push_back({B, 0.0});
    auto append_arc = [&](const Vec2& a, const Vec2& b) {
        PolyChain arc = iterate_chain_on(p, a, b, arc_level, /*bump_left=*/false);
        for (size_t i = 1; i + 1 < arc.vertices.size(); ++i) out.push_back(arc.vertices[i]);
        out.push_back(b);
    };
    if (el.kind == ElementKind::FringedRect) {
        append_arc({d.W, 0.0}, {d.W / 2.0, d.H});
        append_arc({d.W / 2.0, d.H}, {0.0, 0.0});
    } else {
        if (d.e > 0.0) out.push_back({d.W, 0.0});
        append_arc({d.W, 0.0}, {0.0, 0.0});
    }
    return out;  // closed; last vertex (0,0) differs from the first
}

double change_of_variables_area(const CoverElement& el, const PKochSystem& sys, int quad_points) {
    if (quad_points < 1) throw std::domain_error("change_of_variables_area: quad_points >= 1");
    double B = el.width + el.extension;
    double acc = 0.0;
    for (int i = 0; i < quad_points; ++i) {
        double q = (i + 0.5) / (double)quad_points;
        Fiber f = trace_local_fiber(sys.p, el.kind, q, 120, el.epsilon, el.k);
        acc += f.beta_integral;
    }
    return acc * B / (double)quad_points;
}

// ---- cover construction ---------------------------------------------------

WellCoveredCertificate build_cover(const SnowflakeDomain& domain, double epsilon,
                                   uint64_t mc_points, uint64_t seed, int fiber_samples) {
    const double p = domain.p;
    WellCoveredCertificate cert;
    cert.p = p;
    cert.epsilon = epsilon;
    int k = 0;
    for (int kk = 1; kk <= 60; ++kk) {
        ConstantRange jk = scale_interval(p, kk);
        if (epsilon > jk.lo && epsilon <= jk.hi * (1.0 + 1e-12)) {
            k = kk;
            break;
        }
    }
    if (k == 0)
        throw std::invalid_argument("build_cover: epsilon not in any J_k with k >= 1");
    if (domain.level < k)
        throw std::invalid_argument("build_cover: polygon level below the cover generation k");
    if (domain.hausdorff_error > epsilon / 8.0)
        throw std::invalid_argument(
            "build_cover: polygon level too coarse for epsilon (hausdorff_error > eps/8)");
    cert.k = k;

    // generation-k boundary walk
    const int sides = domain.sides();
    const int64_t per_side = (int64_t)1 << (2 * k);  // 4^k
    const int64_t nseg = sides * per_side;
    std::vector<Vec2> V;
    V.reserve(nseg);
    for (int s = 0; s < sides; ++s) {
        PolyChain chain = iterate_chain_on(p, domain.base_polygon[s],
                                           domain.base_polygon[(s + 1) % sides], k,
                                           /*bump_left=*/false);
        for (int64_t i = 0; i < per_side; ++i) V.push_back(chain.vertices[i]);
    }
    auto vat = [&](int64_t i) -> const Vec2& { return V[((i % nseg) + nseg) % nseg]; };

    bool corner_fr = domain.kind == SnowflakeKind::TriangleK && std::abs(p - 1.0 / 3.0) < 1e-12;
    std::vector<uint8_t> is_fr_junction(nseg, 0), consumed(nseg, 0);
    std::vector<double> turn(nseg, 0.0);
    double turn_tol = 1e-9 * std::pow(p, 2 * k);
    for (int64_t j = 0; j < nseg; ++j) {
        Vec2 d0 = vat(j) - vat(j - 1), d1 = vat(j + 1) - vat(j);
        turn[j] = d0.cross(d1);
        if (std::abs(turn[j]) <= turn_tol)
            throw std::logic_error("build_cover: straight junction in the generation walk");
        bool corner = (j % per_side) == 0;
        if (turn[j] > 0.0 && (!corner || corner_fr)) is_fr_junction[j] = 1;
    }
    for (int64_t j = 0; j < nseg; ++j)
        if (is_fr_junction[j]) {
            int64_t a = ((j - 1) % nseg + nseg) % nseg;
            if (consumed[a] || consumed[j])
                throw std::logic_error("build_cover: a segment is claimed by two apexes");
            consumed[a] = consumed[j] = 1;
        }

    double ext = epsilon * std::sqrt(4.0 * p - 1.0) / (2.0 * p);
    ElementDims dfr = element_dims(p, ElementKind::FringedRect, epsilon, k);
    auto rigid = [](const Vec2& a, const Vec2& b) {
        Vec2 d = b - a;
        return Similarity(1.0, std::atan2(d.y, d.x), /*reflect=*/true, a);
    };
    for (int64_t j = 0; j < nseg; ++j) {
        if (is_fr_junction[j]) {
            CoverElement el;
            el.kind = ElementKind::FringedRect;
            el.k = k;
            el.epsilon = epsilon;
            Vec2 a = vat(j - 1), b = vat(j + 1);
            el.placement = rigid(a, b);
            el.width = (b - a).norm();
            if (std::abs(el.width - dfr.W) > 1e-9 * dfr.W)
                throw std::logic_error("build_cover: fR chord length mismatch");
            Vec2 apex_local = el.placement.inverse().apply(vat(j));
            if (std::abs(apex_local.x - el.width / 2.0) > 1e-9 ||
                std::abs(apex_local.y - dfr.H) > 1e-9)
                throw std::logic_error("build_cover: fR apex misplaced");
            cert.elements.push_back(el);
            ++cert.count_fr;
        }
        if (!consumed[j]) {
            CoverElement el;
            el.k = k;
            el.epsilon = epsilon;
            Vec2 a = vat(j), b = vat(j + 1);
            el.placement = rigid(a, b);
            el.width = (b - a).norm();
            int64_t jn = (j + 1) % nseg;
            bool extend = turn[jn] < 0.0 && !consumed[jn];
            el.kind = extend ? ElementKind::LongRect : ElementKind::ShortRect;
            el.extension = extend ? ext : 0.0;
            cert.elements.push_back(el);
            if (extend)
                ++cert.count_lr;
            else
                ++cert.count_sr;
        }
    }
    cert.cardinality = cert.elements.size();
    cert.C_of_Omega = C_of_omega(domain.kind, p);

    // per-kind measured constants (elements of one kind are congruent)
    double a_inf = fringe_area_per_unit_side(p);
    double p2k = std::pow(p, 2 * k);
    double vol_kind[3];
    vol_kind[(int)ElementKind::FringedRect] =
        dfr.W * epsilon + dfr.W * dfr.H / 2.0 + 2.0 * p2k * a_inf;
    vol_kind[(int)ElementKind::ShortRect] = std::pow(p, k) * epsilon + p2k * a_inf;
    vol_kind[(int)ElementKind::LongRect] = (std::pow(p, k) + ext) * epsilon + p2k * a_inf;
    double len_min[3], len_max[3], ibeta_min[3], ibeta_max[3], diam_kind[3];
    bool kind_present[3] = {cert.count_fr > 0, cert.count_sr > 0, cert.count_lr > 0};
    for (int kk = 0; kk < 3; ++kk) {
        len_min[kk] = ibeta_min[kk] = 1e300;
        len_max[kk] = ibeta_max[kk] = diam_kind[kk] = 0.0;
        if (!kind_present[kk]) continue;
        ElementKind kind = (ElementKind)kk;
        for (int i = 0; i < fiber_samples; ++i) {
            double q = (i + 0.37) / (double)fiber_samples;
            Fiber f = trace_local_fiber(p, kind, q, 160, epsilon, k);
            len_min[kk] = std::fmin(len_min[kk], f.length);
            len_max[kk] = std::fmax(len_max[kk], f.length);
            ibeta_min[kk] = std::fmin(ibeta_min[kk], f.beta_integral);
            ibeta_max[kk] = std::fmax(ibeta_max[kk], f.beta_integral);
        }
        CoverElement probe;
        probe.kind = kind;
        probe.k = k;
        probe.epsilon = epsilon;
        probe.width = element_dims(p, kind, epsilon, k).W;
        probe.extension = kind == ElementKind::LongRect ? ext : 0.0;
        std::vector<Vec2> poly = element_polygon(probe, p, 4);
        double arc_err = std::pow(p, k) * chain_hausdorff_error(p, 4);
        diam_kind[kk] = point_set_diameter(poly) + 2.0 * arc_err;
    }
    for (CoverElement& el : cert.elements) {
        int kk = (int)el.kind;
        el.r = epsilon;
        el.beta_inf = 1.0;
        el.vol = vol_kind[kk];
        el.L_up = c_L_upper(p) * epsilon;
        el.I_beta = ibeta_max[kk];
        el.diam = diam_kind[kk];
        el.lambda2_E = std::pow(M_PI / std::fmax(el.width + el.extension, epsilon), 2.0);
    }
    cert.beta_inf = 1.0;
    cert.c_r = {1.0, 1.0};
    double lmin = 1e300, imin = 1e300, dmin = 1e300, vmin = 1e300, vmax = 0.0;
    for (int kk = 0; kk < 3; ++kk) {
        if (!kind_present[kk]) continue;
        lmin = std::fmin(lmin, len_min[kk]);
        imin = std::fmin(imin, ibeta_min[kk]);
        dmin = std::fmin(dmin, diam_kind[kk]);
        vmin = std::fmin(vmin, vol_kind[kk]);
        vmax = std::fmax(vmax, vol_kind[kk]);
    }
    cert.c_L = {lmin / epsilon, c_L_upper(p)};
    cert.c_I = {imin / epsilon, c_I_upper(p)};
    cert.c_diam = {dmin / epsilon, c_diam_upper(p)};
    cert.c_vol = {vmin / (epsilon * epsilon), vmax / (epsilon * epsilon)};

    // Monte-Carlo multiplicity and coverage over Omega_{-eps}
    if (mc_points > 0) {
        DistanceField df(domain.polygon);
        double margin = 2.0 * domain.hausdorff_error;
        cert.mc_margin = margin;
        double h = std::sqrt(4.0 * p - 1.0) / 2.0;
        // bucket grid over conservative element bounding boxes
        std::vector<Box2> bboxes(cert.elements.size());
        double cell = 0.0;
        for (size_t i = 0; i < cert.elements.size(); ++i) {
            const CoverElement& el = cert.elements[i];
            double B = el.width + el.extension;
            double ymax = el.kind == ElementKind::FringedRect
                              ? el.width * h / (1.0 - 2.0 * p) + std::pow(p, k) * h / (1.0 - p)
                              : el.width * h / (1.0 - p);
            Vec2 c0 = el.placement.apply({0.0, -el.epsilon});
            Box2 bb{c0, c0};
            bb.expand(el.placement.apply({B, -el.epsilon}));
            bb.expand(el.placement.apply({0.0, ymax}));
            bb.expand(el.placement.apply({B, ymax}));
            bboxes[i] = bb;
            cell = std::fmax(cell, std::fmax(bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y));
        }
        cell *= 1.0000001;
        auto cell_key = [cell](double x, double y) {
            int64_t cx = (int64_t)std::floor(x / cell), cy = (int64_t)std::floor(y / cell);
            return (uint64_t)(uint32_t)(cx + (1ll << 30)) << 32 | (uint32_t)(cy + (1ll << 30));
        };
        std::unordered_map<uint64_t, std::vector<uint32_t>> grid;
        for (size_t i = 0; i < cert.elements.size(); ++i) {
            int64_t x0 = (int64_t)std::floor(bboxes[i].lo.x / cell);
            int64_t x1 = (int64_t)std::floor(bboxes[i].hi.x / cell);
            int64_t y0 = (int64_t)std::floor(bboxes[i].lo.y / cell);
            int64_t y1 = (int64_t)std::floor(bboxes[i].hi.y / cell);
            for (int64_t cx = x0; cx <= x1; ++cx)
                for (int64_t cy = y0; cy <= y1; ++cy)
                    grid[(uint64_t)(uint32_t)(cx + (1ll << 30)) << 32 | (uint32_t)(cy + (1ll << 30))]
                        .push_back((uint32_t)i);
        }
        // proposal: uniform point near the fine boundary polygon, then accept
        // by certified signed distance into (margin, eps - margin)
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uu(0.0, 1.0);
        double R = 1.25 * epsilon;
        size_t npoly = domain.polygon.size();
        std::vector<Vec2> accepted;
        accepted.reserve(mc_points);
        uint64_t batch = 4 * mc_points;
        for (int round = 0; round < 40 && accepted.size() < mc_points; ++round) {
            std::vector<Vec2> cand(batch);
            for (uint64_t i = 0; i < batch; ++i) {
                size_t s = std::min((size_t)(uu(rng) * npoly), npoly - 1);
                double t = uu(rng);
                Vec2 base = domain.polygon[s] +
                            (domain.polygon[(s + 1) % npoly] - domain.polygon[s]) * t;
                cand[i] = base + Vec2{(2.0 * uu(rng) - 1.0) * R, (2.0 * uu(rng) - 1.0) * R};
            }
            std::vector<uint8_t> ok(batch, 0);
            parallel_for(batch, [&](size_t b, size_t e) {
                for (size_t i = b; i < e; ++i) {
                    double sd = df.signed_distance(cand[i]);
                    ok[i] = sd > margin && sd < epsilon - margin;
                }
            });
            for (uint64_t i = 0; i < batch && accepted.size() < mc_points; ++i)
                if (ok[i]) accepted.push_back(cand[i]);
        }
        if (accepted.size() < mc_points / 2)
            throw std::runtime_error("build_cover: Monte-Carlo acceptance too low");
        std::vector<int> hitcount(accepted.size(), 0);
        parallel_for(accepted.size(), [&](size_t b, size_t e) {
            for (size_t i = b; i < e; ++i) {
                auto it = grid.find(cell_key(accepted[i].x, accepted[i].y));
                int hits = 0;
                if (it != grid.end())
                    for (uint32_t ei : it->second)
                        if (bboxes[ei].contains(accepted[i]) &&
                            element_contains(cert.elements[ei], p, accepted[i]))
                            ++hits;
                hitcount[i] = hits;
            }
        });
        uint64_t covered = 0;
        int maxmult = 0;
        for (int c : hitcount) {
            if (c > 0) ++covered;
            maxmult = std::max(maxmult, c);
        }
        cert.mc_points = accepted.size();
        cert.multiplicity = maxmult;
        cert.coverage_fraction = (double)covered / (double)accepted.size();
    }
    return cert;
}

}  // namespace snowcount
