#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "snowcount/minkowski.hpp"

using namespace snowcount;

namespace {
const double kDelta = std::log(4.0) / std::log(3.0);
}

TEST_CASE("content_upper_koch closed form") {
    CHECK(content_upper_koch() == doctest::Approx(2.7398013).epsilon(1e-7));
}

TEST_CASE("lapidus-pearse tube bound: closed-form structure") {
    // pick eps with {x} = 1/4, safely away from the branch lattice
    double s3 = std::sqrt(3.0);
    double eps = std::pow(3.0, -5.25) / s3;
    double x = 0.25;
    double poly = 3.0 * s3 / 40.0 * std::pow(9.0, x) + s3 / 2.0 * std::pow(3.0, x) +
                  (M_PI / 3.0 - s3) / 6.0;
    double expect = 3.0 * (std::pow(eps, 2.0 - kDelta) * std::pow(4.0, -x) * poly -
                           eps * eps * (M_PI / 3.0 + 2.0 * s3) / 3.0);
    CHECK(lapidus_pearse_tube_koch(eps) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("lapidus-pearse bound: monotone in eps and dominated by content") {
    double prev = 0.0;
    for (int i = 0; i <= 300; ++i) {
        double eps = 1e-4 * std::pow(1e3, i / 300.0);  // 1e-4 .. 1e-1
        double v = lapidus_pearse_tube_koch(eps);
        CHECK(v >= prev - 1e-15);
        prev = v;
        CHECK(v * std::pow(eps, kDelta - 2.0) <= content_upper_koch() * (1.0 + 1e-12));
    }
}

TEST_CASE("sup of eps^{delta-2} * tube bound attains the content value") {
    // the envelope is maximal as the phase x = frac(-log_3(eps sqrt3)) -> 1
    double sup = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        double eps = 1e-6 * std::pow(1e5, i / 4000.0);
        sup = std::fmax(sup, lapidus_pearse_tube_koch(eps) * std::pow(eps, kDelta - 2.0));
    }
    for (double x : {0.9, 0.99, 0.999, 0.9999999}) {
        double eps = std::pow(3.0, -(12.0 + x)) / std::sqrt(3.0);
        sup = std::fmax(sup, lapidus_pearse_tube_koch(eps) * std::pow(eps, kDelta - 2.0));
    }
    CHECK(sup == doctest::Approx(content_upper_koch()).epsilon(1e-6));
}

TEST_CASE("eps_prime: definition arithmetic and LP non-positivity") {
    SnowflakeDomain k = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 2);
    double eps = 0.01;
    TubeEstimate t = inner_tube_volume(k, eps, TubeMethod::LapidusPearseBound);
    double content_match = std::pow(eps, kDelta - 2.0) * t.volume;
    CHECK(eps_prime(k, eps, kDelta, content_match, TubeMethod::LapidusPearseBound) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eps_prime(k, eps, kDelta, content_match / 1.1, TubeMethod::LapidusPearseBound) ==
          doctest::Approx(0.1).epsilon(1e-9));
    for (int i = 0; i <= 40; ++i) {
        double e = 1e-5 * std::pow(1e4, i / 40.0);
        CHECK(eps_prime(k, e, kDelta, content_upper_koch(), TubeMethod::LapidusPearseBound) <=
              1e-12);
    }
}

TEST_CASE("m_frak for the Koch snowflake") {
    CHECK(m_frak_koch() <= 11.61);
    CHECK(m_frak_koch() == doctest::Approx(11.6083).epsilon(2e-4));
    SnowflakeDomain k = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 2);
    ContentEstimate c = estimate_content(k);
    CHECK(c.eps_prime_sup <= 1e-12);
    CHECK(m_frak(k, c) == doctest::Approx(m_frak_koch()).epsilon(1e-12));
}

TEST_CASE("tube swallows the whole domain for large eps") {
    SnowflakeDomain k = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 7);
    TubeEstimate t = inner_tube_volume(k, 0.7, TubeMethod::Raster);
    CHECK(std::abs(t.volume - 2.0 * std::sqrt(3.0) / 5.0) <= t.uncertainty + 1e-3);
}

TEST_CASE("raster, monte carlo and LP cross-validate at eps = 0.01") {
    SnowflakeDomain k = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 8);
    double eps = 0.01;
    TubeEstimate ra = inner_tube_volume(k, eps, TubeMethod::Raster);
    TubeEstimate mc = inner_tube_volume(k, eps, TubeMethod::MonteCarlo, 1000000, 42);
    TubeEstimate lp = inner_tube_volume(k, eps, TubeMethod::LapidusPearseBound);
    CHECK(std::abs(ra.volume - mc.volume) <= ra.uncertainty + mc.uncertainty);
    // the closed form is an upper bound for the true volume
    CHECK(ra.volume - ra.uncertainty <= lp.volume);
    CHECK(mc.volume - mc.uncertainty <= lp.volume);
    CHECK(ra.volume > 0.0);
    // precondition: level too coarse must throw
    SnowflakeDomain coarse = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 2);
    CHECK_THROWS_AS(inner_tube_volume(coarse, 1e-4, TubeMethod::Raster), std::invalid_argument);
}

TEST_CASE("tube volume nondecreasing in eps (raster samples)") {
    SnowflakeDomain k = build_snowflake(SnowflakeKind::TriangleK, 1.0 / 3.0, 8);
    double prev = -1.0, prev_unc = 0.0;
    for (double eps : {0.01, 0.02, 0.04, 0.08, 0.16}) {
        TubeEstimate t = inner_tube_volume(k, eps, TubeMethod::Raster);
        CHECK(t.volume >= prev - (t.uncertainty + prev_unc));
        prev = t.volume;
        prev_unc = t.uncertainty;
    }
}

TEST_CASE("box-counting slope of the tube scan recovers the dimension") {
    // fit log vol = (2-delta) log eps + c over three decades of the LP scan
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i <= 60; ++i) {
        double eps = 1e-4 * std::pow(1e3, i / 60.0);
        double x = std::log(eps), y = std::log(lapidus_pearse_tube_koch(eps));
        sx += x; sy += y; sxx += x * x; sxy += x * y; ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs((2.0 - slope) - kDelta) < 0.05);
}

TEST_CASE("content estimate for a non-classic p stays positive and finite") {
    SnowflakeDomain d = build_snowflake(SnowflakeKind::TriangleK, 0.3, 6);
    ContentEstimate c = estimate_content(d, 12, 7);
    CHECK(c.content_upper > 0.0);
    CHECK(c.eps_prime_sup <= 1e-9);  // content dominates its own scan
    CHECK(m_frak(d, c) > 0.0);
}
