#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <unordered_set>

#include "snowcount/distance.hpp"
#include "snowcount/minkowski.hpp"
#include "snowcount/whitney.hpp"

using namespace snowcount;

namespace {

const double kSqrt2 = std::sqrt(2.0);

uint64_t key_of(int k, int64_t ix, int64_t iy) {
    return (uint64_t)(k + 32) << 52 | (uint64_t)(uint32_t)(ix + (1ll << 25)) << 26 |
           (uint64_t)(uint32_t)(iy + (1ll << 25));
}

std::unordered_set<uint64_t> key_set(const std::vector<DyadicCube>& cubes) {
    std::unordered_set<uint64_t> s;
    for (const DyadicCube& q : cubes) s.insert(key_of(q.k, q.ix, q.iy));
    return s;
}

// number of cubes of the family containing p (counting a shared edge for both)
int containment_count(const std::vector<DyadicCube>& cubes, const std::unordered_set<uint64_t>& keys,
                      int k_min, int k_max, const Vec2& p) {
    (void)cubes;
    int hits = 0;
    for (int k = k_min; k <= k_max; ++k) {
        double s = std::ldexp(1.0, k);
        int64_t ix = (int64_t)std::floor(p.x * s), iy = (int64_t)std::floor(p.y * s);
        for (int64_t dx = -1; dx <= 0; ++dx)
            for (int64_t dy = -1; dy <= 0; ++dy)
                if (keys.count(key_of(k, ix + dx, iy + dy))) {
                    DyadicCube q{k, ix + dx, iy + dy};
                    Box2 b = q.box();
                    if (p.x >= b.lo.x && p.x <= b.hi.x && p.y >= b.lo.y && p.y <= b.hi.y) ++hits;
                }
    }
    return hits;
}

}  // namespace

TEST_CASE("whitney cover of K(1/3): certificates, slice law, disjoint coverage") {
    SnowflakeDomain dom = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 7);
    WhitneyCover cover = build_whitney(dom, 9);
    double err = cover.distance_error;
    CHECK(cover.k_min_built == 0);
    CHECK(!cover.cubes.empty());

    DistanceField df(dom.polygon);
    // every retained cube satisfies diam <= dist(Q, boundary) <= 4 diam within err
    size_t certified = 0;
    for (const DyadicCube& q : cover.cubes) {
        double d = df.distance_box(q.box());
        if (d >= q.diam() - err - 1e-12 && d <= 4.0 * q.diam() + err + 1e-12) ++certified;
    }
    CHECK(certified == cover.cubes.size());

    // slice cardinality law: #W_k <= m_frak * 2^{k delta}
    double mf = m_frak_koch();
    for (auto& [k, cnt] : cover.slice_counts)
        CHECK((double)cnt <= mf * std::pow(2.0, k * cover.delta) * (1.0 + 1e-12));

    // retained family is an antichain: no retained cube has a retained ancestor
    auto keys = key_set(cover.cubes);
    CHECK(keys.size() == cover.cubes.size());
    for (const DyadicCube& q : cover.cubes)
        for (int j = cover.k_min_built; j < q.k; ++j)
            CHECK(keys.count(key_of(j, q.ix >> (q.k - j), q.iy >> (q.k - j))) == 0);

    // interior points away from the truncation scale lie in exactly one cube
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-0.2, 1.2), uy(-0.4, 1.0);
    int tested = 0;
    while (tested < 4000) {
        Vec2 p{ux(rng), uy(rng)};
        double sd = df.signed_distance(p);
        if (sd < cover.eps_trunc + 2.0 * err) continue;
        // stay off the lattice lines so membership is unambiguous
        double s = std::ldexp(1.0, cover.k_max_built);
        if (std::abs(p.x * s - std::round(p.x * s)) < 1e-6) continue;
        if (std::abs(p.y * s - std::round(p.y * s)) < 1e-6) continue;
        ++tested;
        CHECK(containment_count(cover.cubes, keys, cover.k_min_built, cover.k_max_built, p) == 1);
    }

    // total area: disjoint cubes inside Omega, missing at most the truncation tube
    double area = 0.0;
    for (const DyadicCube& q : cover.cubes) area += q.side() * q.side();
    double vol = cover.domain_volume;
    CHECK(area <= vol + 1e-6);
    CHECK(area >= vol - lapidus_pearse_tube_koch(1.2 * (cover.eps_trunc + 2.0 * err)) - 1e-6);
}

TEST_CASE("whitney cover: polygon too coarse for k_max throws") {
    SnowflakeDomain dom = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 3);
    CHECK_THROWS_AS(build_whitney(dom, 12), std::invalid_argument);
}

TEST_CASE("a_omega closed form") {
    CHECK(a_omega(2, std::log(4.0) / std::log(3.0), m_frak_koch()) ==
          doctest::Approx(221.71).epsilon(1e-3));
}

TEST_CASE("union_perimeter exact on hand-checked unions") {
    CHECK(union_perimeter({{0, 0, 0}}) == doctest::Approx(4.0));
    CHECK(union_perimeter({{0, 0, 0}, {0, 1, 0}}) == doctest::Approx(6.0));
    // unit cube plus a half-size cube attached to its right edge
    CHECK(union_perimeter({{0, 0, 0}, {1, 2, 0}}) == doctest::Approx(5.0));
    // detached cubes add independently
    CHECK(union_perimeter({{0, 0, 0}, {1, 5, 5}}) == doctest::Approx(6.0));
    // 2x2 block of quarter cubes equals one unit cube
    CHECK(union_perimeter({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}}) == doctest::Approx(4.0));
}

TEST_CASE("eps restriction: sizes, perimeter law, coverage, monotonicity") {
    SnowflakeDomain dom = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 7);
    WhitneyCover cover = build_whitney(dom, 9);
    DistanceField df(dom.polygon);
    double err = cover.distance_error;
    double mf = m_frak_koch();
    size_t prev_count = (size_t)-1;
    for (double eps : {0.02, 0.04, 0.08, 0.16, 0.31}) {
        EpsRestriction r = restrict_eps(dom, cover, eps, mf);
        CHECK(!r.cubes.empty());
        CHECK(r.A_bound == doctest::Approx(a_omega(2, cover.delta, mf) *
                                           std::pow(eps, 1.0 - cover.delta)));
        CHECK(r.perimeter <= r.A_bound);
        CHECK(r.perimeter > 0.0);
        // boundary-touching cubes: eps/5 <= diam <= eps within err, <= 3 sizes
        std::unordered_set<int> sizes;
        for (size_t i = 0; i < r.cubes.size(); ++i) {
            if (!r.boundary_flag[i]) continue;
            sizes.insert(r.cubes[i].k);
            CHECK(r.cubes[i].diam() >= (eps - err) / 5.0 - 1e-12);
            CHECK(r.cubes[i].diam() <= eps + err + 1e-12);
        }
        CHECK(sizes.size() >= 1);
        CHECK(sizes.size() <= 3);
        // the restriction still covers {dist >= eps}
        auto keys = key_set(r.cubes);
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> ux(-0.2, 1.2), uy(-0.4, 1.0);
        int tested = 0;
        while (tested < 800) {
            Vec2 p{ux(rng), uy(rng)};
            if (df.signed_distance(p) < eps + 2.0 * err) continue;
            ++tested;
            CHECK(containment_count(r.cubes, keys, cover.k_min_built, cover.k_max_built, p) >= 1);
        }
        // nested in eps: a larger eps keeps a subfamily
        CHECK(r.cubes.size() <= prev_count);
        prev_count = r.cubes.size();
    }
    CHECK_THROWS_AS(restrict_eps(dom, cover, cover.eps_trunc / 2.0), std::invalid_argument);
}

TEST_CASE("whitney cover of the square snowflake R(0.3)") {
    SnowflakeDomain dom = build_snowflake(SnowflakeKind::SquareR, 0.3, 6);
    WhitneyCover cover = build_whitney(dom, 6);
    CHECK(!cover.cubes.empty());
    DistanceField df(dom.polygon);
    double err = cover.distance_error;
    for (const DyadicCube& q : cover.cubes) {
        double d = df.distance_box(q.box());
        CHECK(d >= q.diam() - err - 1e-12);
        CHECK(d <= 4.0 * q.diam() + err + 1e-12);
    }
    ContentEstimate c = estimate_content(dom, 12, 7);
    double mf = m_frak(dom, c);
    for (auto& [k, cnt] : cover.slice_counts)
        CHECK((double)cnt <= 1.1 * mf * std::pow(2.0, k * cover.delta));
    double area = 0.0;
    for (const DyadicCube& q : cover.cubes) area += q.side() * q.side();
    CHECK(area <= cover.domain_volume + 1e-6);
    CHECK(area >= 0.5 * cover.domain_volume);
}
