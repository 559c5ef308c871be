#include "snowcount/whitney.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "snowcount/threads.hpp"

namespace snowcount {

namespace {

const double kSqrtN = std::sqrt(2.0);

uint64_t cube_key(int k, int64_t ix, int64_t iy) {
    return (uint64_t)(k + 32) << 52 | (uint64_t)(uint32_t)(ix + (1ll << 25)) << 26 |
           (uint64_t)(uint32_t)(iy + (1ll << 25));
}

struct SliceJob {
    const DistanceField* df;
    double lo, hi, err;
    int k;
    std::atomic<uint64_t>* visited;
    uint64_t budget;
};

// Does the level-j cube possibly contain a point of the closed shell
// {lo <= dist <= hi}? Prunes are exact dominations of the leaf test below, so
// no qualifying leaf is ever lost. On a full certificate (the signed distance
// range is provably inside [lo-err, hi+err]) every descendant qualifies and the
// whole block is emitted at once.
void slice_rec(const SliceJob& job, int j, int64_t ix, int64_t iy, std::vector<DyadicCube>& out) {
    double s = std::ldexp(1.0, -j);
    Box2 box{{ix * s, iy * s}, {(ix + 1) * s, (iy + 1) * s}};
    double half = 0.5 * box.diag();
    double dmin = job.df->distance_box(box);
    if (dmin > job.hi + job.err) return;  // every point is too far out
    Vec2 c = box.center();
    double sd_c = job.df->signed_distance(c);
    // For any descendant cube Q', sd(center') + half' <= sd_c + half.
    if (sd_c + half < job.lo - job.err) return;
    if (job.visited->fetch_add(1, std::memory_order_relaxed) >= job.budget)
        throw std::length_error("build_whitney: cube budget exceeded");
    if (j == job.k) {
        out.push_back(DyadicCube{j, ix, iy});
        return;
    }
    if (sd_c - half >= job.lo - job.err && sd_c + half <= job.hi + job.err) {
        // certified interior of the shell: emit the full block of leaves
        int sh = job.k - j;
        int64_t n = 1ll << sh;
        for (int64_t dx = 0; dx < n; ++dx)
            for (int64_t dy = 0; dy < n; ++dy)
                out.push_back(DyadicCube{job.k, (ix << sh) + dx, (iy << sh) + dy});
        job.visited->fetch_add((uint64_t)n * n, std::memory_order_relaxed);
        return;
    }
    for (int q = 0; q < 4; ++q)
        slice_rec(job, j + 1, 2 * ix + (q & 1), 2 * iy + (q >> 1), out);
}

std::vector<DyadicCube> build_slice(const DistanceField& df, int k, int j0, int64_t rx0,
                                    int64_t rx1, int64_t ry0, int64_t ry1, double err,
                                    std::atomic<uint64_t>& visited, uint64_t budget) {
    SliceJob job{&df, std::ldexp(2.0, -k) * kSqrtN, std::ldexp(4.0, -k) * kSqrtN, err, k,
                 &visited, budget};
    // frontier of subcubes a few levels down, for balanced parallel work
    int j_split = std::min(k, j0 + 5);
    std::vector<DyadicCube> frontier;
    for (int64_t ix = rx0; ix <= rx1; ++ix)
        for (int64_t iy = ry0; iy <= ry1; ++iy) {
            int sh = j_split - j0;
            for (int64_t dx = 0; dx < (1ll << sh); ++dx)
                for (int64_t dy = 0; dy < (1ll << sh); ++dy)
                    frontier.push_back(DyadicCube{j_split, (ix << sh) + dx, (iy << sh) + dy});
        }
    std::vector<std::vector<DyadicCube>> parts(frontier.size());
    std::exception_ptr fail;
    std::atomic<bool> failed{false};
    parallel_for(frontier.size(), [&](size_t b, size_t e) {
        try {
            for (size_t i = b; i < e; ++i)
                slice_rec(job, frontier[i].k, frontier[i].ix, frontier[i].iy, parts[i]);
        } catch (...) {
            if (!failed.exchange(true)) fail = std::current_exception();
        }
    });
    if (fail) std::rethrow_exception(fail);
    std::vector<DyadicCube> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace

WhitneyCover build_whitney(const SnowflakeDomain& domain, int k_max, uint64_t cube_budget) {
    WhitneyCover cover;
    cover.delta = minkowski_dimension(domain.p);
    cover.domain_volume = snowflake_area_exact(domain.kind, domain.p);
    cover.distance_error = domain.hausdorff_error;
    if (domain.hausdorff_error > std::ldexp(kSqrtN, -k_max - 3))
        throw std::invalid_argument(
            "build_whitney: polygon level too coarse for k_max (need hausdorff_error <= "
            "2^{-k_max-3} sqrt(n))");
    double diam = snowflake_diameter(domain.kind, domain.p);
    int k_start = (int)std::floor(-std::log2(diam / kSqrtN));
    if (k_max < k_start) throw std::invalid_argument("build_whitney: k_max below coarsest slice");
    cover.k_min_built = k_start;
    cover.k_max_built = k_max;
    cover.eps_trunc = std::ldexp(2.0, -k_max) * kSqrtN;

    DistanceField df(domain.polygon);
    Box2 bb = df.bounds();
    int j0 = k_start - 2;
    double s0 = std::ldexp(1.0, -j0);
    int64_t rx0 = (int64_t)std::floor(bb.lo.x / s0), rx1 = (int64_t)std::floor(bb.hi.x / s0);
    int64_t ry0 = (int64_t)std::floor(bb.lo.y / s0), ry1 = (int64_t)std::floor(bb.hi.y / s0);

    std::atomic<uint64_t> visited{0};
    std::unordered_set<uint64_t> raw;
    std::vector<std::vector<DyadicCube>> slices;
    for (int k = k_start; k <= k_max; ++k) {
        slices.push_back(
            build_slice(df, k, j0, rx0, rx1, ry0, ry1, domain.hausdorff_error, visited,
                        cube_budget));
        cover.slice_counts[k] = slices.back().size();
        for (const DyadicCube& q : slices.back()) raw.insert(cube_key(q.k, q.ix, q.iy));
    }
    // keep only cubes maximal in the union of all slices
    for (const auto& slice : slices)
        for (const DyadicCube& q : slice) {
            bool shadowed = false;
            for (int j = k_start; j < q.k && !shadowed; ++j)
                shadowed = raw.count(cube_key(j, q.ix >> (q.k - j), q.iy >> (q.k - j))) != 0;
            if (!shadowed) {
                cover.cubes.push_back(q);
                ++cover.retained_counts[q.k];
            }
        }
    return cover;
}

double a_omega(int n, double delta, double m_frak) {
    double sum = 0.0;
    for (int k = 0; k <= 2; ++k) sum += std::pow(2.0, k * (delta - (n - 1)));
    return 2.0 * n * std::pow(2.0 * std::sqrt((double)n), delta - (n - 1)) * m_frak * sum;
}

double union_perimeter(const std::vector<DyadicCube>& cubes) {
    if (cubes.empty()) return 0.0;
    int kf = cubes[0].k;
    for (const DyadicCube& q : cubes) kf = std::max(kf, q.k);
    // integer overlay at the finest level: opposing faces on a shared grid line
    // cancel exactly, the rest is exposed
    std::unordered_map<int64_t, std::vector<std::pair<int64_t, int>>> vert, horz;
    for (const DyadicCube& q : cubes) {
        int sh = kf - q.k;
        int64_t x = q.ix << sh, y = q.iy << sh, s = 1ll << sh;
        auto add = [s](std::vector<std::pair<int64_t, int>>& ev, int64_t t0, int d) {
            ev.push_back({t0, d});
            ev.push_back({t0 + s, -d});
        };
        add(vert[x], y, -1);      // left face, outward -x
        add(vert[x + s], y, +1);  // right face, outward +x
        add(horz[y], x, -1);
        add(horz[y + s], x, +1);
    }
    double total = 0.0;
    for (auto* lines : {&vert, &horz})
        for (auto& [line, ev] : *lines) {
            std::sort(ev.begin(), ev.end());
            int64_t prev = 0;
            int cur = 0;
            for (auto& [t, d] : ev) {
                if (cur != 0) total += (double)std::abs(cur) * (double)(t - prev);
                prev = t;
                cur += d;
            }
        }
    return std::ldexp(total, -kf);
}

EpsRestriction restrict_eps(const SnowflakeDomain& domain, const WhitneyCover& cover,
                            double epsilon, double m_frak) {
    if (!(epsilon >= cover.eps_trunc))
        throw std::invalid_argument("restrict_eps: epsilon below the truncation scale of the cover");
    EpsRestriction out;
    out.epsilon = epsilon;
    DistanceField df(domain.polygon);
    double err = cover.distance_error;
    for (const DyadicCube& q : cover.cubes) {
        Box2 box = q.box();
        double half = 0.5 * box.diag();
        double sd_c = df.signed_distance(box.center());
        if (sd_c + half < epsilon - err) continue;  // certainly misses {dist >= eps}
        out.cubes.push_back(q);
        out.boundary_flag.push_back(df.distance_box(box) <= epsilon + err ? 1 : 0);
    }
    out.perimeter = union_perimeter(out.cubes);
    if (m_frak > 0.0)
        out.A_bound = a_omega(2, cover.delta, m_frak) *
                      std::pow(epsilon, (2 - 1) - cover.delta);
    return out;
}

}  // namespace snowcount
