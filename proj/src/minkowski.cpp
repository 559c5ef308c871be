#include "snowcount/minkowski.hpp"

#include <atomic>
#include <memory>
#include <cmath>
#include <random>
#include <stdexcept>

#include "snowcount/threads.hpp"

namespace snowcount {

double lapidus_pearse_tube_koch(double epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("lapidus_pearse_tube_koch: epsilon <= 0");
    const double s3 = std::sqrt(3.0);
    const double delta = std::log(4.0) / std::log(3.0);
    double volK = 2.0 * s3 / 5.0;
    double xr = -std::log(epsilon * s3) / std::log(3.0);
    double x = xr - std::floor(xr);  // fractional part in [0,1)
    double poly = 3.0 * s3 / 40.0 * std::pow(9.0, x) + s3 / 2.0 * std::pow(3.0, x) +
                  (M_PI / 3.0 - s3) / 6.0;
    double v = 3.0 * (std::pow(epsilon, 2.0 - delta) * std::pow(4.0, -x) * poly -
                      epsilon * epsilon * (M_PI / 3.0 + 2.0 * s3) / 3.0);
    if (v < 0.0) v = 0.0;
    if (v > volK) v = volK;
    return v;
}

double content_upper_koch() { return (723.0 * std::sqrt(3.0) + 20.0 * M_PI) / 480.0; }

namespace {

struct RasterAccum {
    double certain = 0.0;
    double ambiguous = 0.0;
};

// Adaptive quadtree accumulation of {x in Omega : dist < eps}.
void raster_rec(const DistanceField& df, const Box2& box, double eps, double err, double hmin,
                RasterAccum& acc) {
    Vec2 c = box.center();
    double half = 0.5 * box.diag();
    double area = (box.hi.x - box.lo.x) * (box.hi.y - box.lo.y);
    double sd = df.signed_distance(c);
    // Entirely outside the domain?
    if (sd < -(half + err)) return;
    // Entirely inside the domain and deeper than eps?
    if (sd - half > eps + err) return;
    // Entirely inside the tube? (inside Omega and distance below eps everywhere)
    double d = std::abs(sd);
    if (sd > half + err && d + half < eps - err) {
        acc.certain += area;
        return;
    }
    if (box.hi.x - box.lo.x <= hmin) {
        // classify by center, but book it as ambiguous mass
        acc.ambiguous += area;
        return;
    }
    double mx = c.x, my = c.y;
    Box2 q[4] = {{box.lo, c},
                 {{mx, box.lo.y}, {box.hi.x, my}},
                 {{box.lo.x, my}, {mx, box.hi.y}},
                 {c, box.hi}};
    for (const Box2& b : q) raster_rec(df, b, eps, err, hmin, acc);
}

}  // namespace

TubeEstimate inner_tube_volume(const SnowflakeDomain& domain, double epsilon, TubeMethod method,
                               uint64_t mc_samples, uint64_t seed, const DistanceField* field) {
    if (!(epsilon > 0.0)) throw std::domain_error("inner_tube_volume: epsilon <= 0");
    TubeEstimate out;
    out.epsilon = epsilon;
    out.method = method;
    if (method == TubeMethod::LapidusPearseBound) {
        if (domain.kind != SnowflakeKind::TriangleK || std::abs(domain.p - 1.0 / 3.0) > 1e-12)
            throw std::domain_error(
                "inner_tube_volume: Lapidus-Pearse bound is available only for K(1/3)");
        out.volume = lapidus_pearse_tube_koch(epsilon);
        out.uncertainty = 0.0;
        return out;
    }
    if (domain.hausdorff_error > epsilon / 100.0)
        throw std::invalid_argument(
            "inner_tube_volume: polygon level too coarse (hausdorff_error > eps/100)");
    std::unique_ptr<DistanceField> local_df;
    if (!field) local_df = std::make_unique<DistanceField>(domain.polygon);
    const DistanceField& df = field ? *field : *local_df;
    double err = domain.hausdorff_error;
    double tail = snowflake_area_tail(domain.kind, domain.p, domain.level);
    if (method == TubeMethod::Raster) {
        Box2 bb = df.bounds();
        // square up the root box
        double w = std::fmax(bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y);
        bb.hi = bb.lo + Vec2{w, w};
        RasterAccum acc;
        raster_rec(df, bb, epsilon, err, epsilon / 64.0, acc);
        out.volume = acc.certain + 0.5 * acc.ambiguous;
        out.uncertainty = 0.5 * acc.ambiguous + tail;
    } else {
        Box2 bb = df.bounds();
        double bw = bb.hi.x - bb.lo.x, bh = bb.hi.y - bb.lo.y;
        std::atomic<uint64_t> hits{0};
        size_t workers = worker_count();
        uint64_t per = (mc_samples + workers - 1) / workers;
        parallel_for(workers, [&](size_t wb, size_t we) {
            for (size_t w = wb; w < we; ++w) {
                std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + w);
                std::uniform_real_distribution<double> ux(bb.lo.x, bb.hi.x), uy(bb.lo.y, bb.hi.y);
                uint64_t local = 0;
                for (uint64_t i = 0; i < per; ++i) {
                    Vec2 pt{ux(rng), uy(rng)};
                    double sd = df.signed_distance(pt);
                    if (sd > 0.0 && sd < epsilon) ++local;
                }
                hits += local;
            }
        });
        uint64_t total = per * workers;
        double frac = (double)hits.load() / (double)total;
        out.volume = frac * bw * bh;
        double sigma = std::sqrt(std::fmax(frac * (1.0 - frac), 1.0 / (double)total) /
                                 (double)total);
        // 3-sigma binomial plus the polygon-resolution systematic: misclassified
        // mass lives within err of the two level sets {d=0}, {d=eps}
        double perim = 0.0;
        for (size_t i = 0; i < domain.polygon.size(); ++i)
            perim += (domain.polygon[(i + 1) % domain.polygon.size()] - domain.polygon[i]).norm();
        out.uncertainty = 3.0 * sigma * bw * bh + 4.0 * err * perim + tail;
    }
    double vol = snowflake_area_exact(domain.kind, domain.p);
    if (out.volume > vol) out.volume = vol;
    return out;
}

double eps_prime(const SnowflakeDomain& domain, double epsilon, double delta, double content,
                 TubeMethod method) {
    if (!(content > 0.0)) throw std::domain_error("eps_prime: content must be positive");
    TubeEstimate t = inner_tube_volume(domain, epsilon, method);
    return std::pow(epsilon, delta - 2.0) * t.volume / content - 1.0;
}

ContentEstimate estimate_content(const SnowflakeDomain& domain, int num_scales, uint64_t seed) {
    ContentEstimate out;
    out.delta = minkowski_dimension(domain.p);
    bool lp = domain.kind == SnowflakeKind::TriangleK && std::abs(domain.p - 1.0 / 3.0) < 1e-12;
    out.eps_max_scanned = 0.1;
    out.eps_min_scanned = lp ? 1e-6 : std::fmax(1e-4, domain.hausdorff_error * 100.0);
    DistanceField df(domain.polygon);
    std::vector<double> epss(num_scales), vols(num_scales);
    double best = 0.0;
    for (int i = 0; i < num_scales; ++i) {
        double f = (double)i / (double)(num_scales - 1);
        double eps = out.eps_max_scanned * std::pow(out.eps_min_scanned / out.eps_max_scanned, f);
        epss[i] = eps;
        if (lp) {
            vols[i] = lapidus_pearse_tube_koch(eps);
            best = std::fmax(best, std::pow(eps, out.delta - 2.0) * vols[i]);
        } else {
            TubeEstimate t =
                inner_tube_volume(domain, eps, TubeMethod::MonteCarlo, 200000, seed, &df);
            vols[i] = t.volume;
            // stay one-sided: the content bound must dominate the scan
            best = std::fmax(best, std::pow(eps, out.delta - 2.0) * (t.volume + t.uncertainty));
        }
    }
    out.content_upper = lp ? content_upper_koch() : best;
    double worst_rel = -1e300;
    for (int i = 0; i < num_scales; ++i)
        worst_rel = std::fmax(
            worst_rel, std::pow(epss[i], out.delta - 2.0) * vols[i] / out.content_upper - 1.0);
    out.eps_prime_sup = worst_rel;
    return out;
}

double m_frak_koch() {
    double delta = std::log(4.0) / std::log(3.0);
    return content_upper_koch() * std::pow(5.0 * std::sqrt(2.0), 2.0 - delta);
}

double m_frak(const SnowflakeDomain& domain, const ContentEstimate& content) {
    (void)domain;
    double boost = 1.0 + std::fmax(0.0, content.eps_prime_sup);
    return content.content_upper * boost * std::pow(5.0 * std::sqrt(2.0), 2.0 - content.delta);
}

}  // namespace snowcount
