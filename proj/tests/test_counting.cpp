#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "snowcount/counting.hpp"
#include "snowcount/minkowski.hpp"
#include "snowcount/whitney.hpp"

using namespace snowcount;

namespace {
const double kThird = 1.0 / 3.0;

// direct enumeration over the full integer box, no dimension peeling
uint64_t brute_count(int n, double side, double t, BoundaryCondition bc) {
    double x = side * side * std::fmax(t, 0.0) / (M_PI * M_PI);
    uint64_t X = (uint64_t)std::floor(x);
    uint64_t kmax = (uint64_t)std::floor(std::sqrt((double)X) + 1.0);
    uint64_t k0 = bc == BoundaryCondition::Neumann ? 0 : 1;
    uint64_t count = 0;
    if (n == 1) {
        for (uint64_t a = k0; a <= kmax; ++a) count += a * a <= X;
    } else if (n == 2) {
        for (uint64_t a = k0; a <= kmax; ++a)
            for (uint64_t b = k0; b <= kmax; ++b) count += a * a + b * b <= X;
    } else {
        for (uint64_t a = k0; a <= kmax; ++a)
            for (uint64_t b = k0; b <= kmax; ++b)
                for (uint64_t c = k0; c <= kmax; ++c) count += a * a + b * b + c * c <= X;
    }
    return count;
}

ConstantsLedger koch_ledger() {
    WellCoveredCertificate c;
    c.p = kThird;
    c.c_r = {1.0, 1.0};
    c.beta_inf = 1.0;
    c.c_L = {1.0, c_L_upper(kThird)};
    c.c_I = {1.0, c_I_upper(kThird)};
    c.c_diam = {1.0, c_diam_upper(kThird)};
    c.C_of_Omega = 1.0;
    double mf = m_frak_koch();
    return make_ledger(c, mf, a_omega(2, minkowski_dimension(kThird), mf), 2);
}
}  // namespace

TEST_CASE("cube counts: hand examples and conventions") {
    CHECK(count_cube({2, 1.0, 1.5 * M_PI * M_PI, BoundaryCondition::Neumann}) == 3);
    CHECK(count_cube({2, 1.0, 2.0 * M_PI * M_PI, BoundaryCondition::Dirichlet}) == 1);
    CHECK(count_cube({3, 1.0, -5.0, BoundaryCondition::Neumann}) == 1);
    CHECK(count_cube({3, 1.0, -5.0, BoundaryCondition::Dirichlet}) == 0);
    // t exactly on an eigenvalue is counted; just below is not
    CHECK(count_cube({2, 1.0, 2.0 * M_PI * M_PI * (1 - 1e-12), BoundaryCondition::Dirichlet}) == 0);
    // unit square at t = 100: N_D = 6 (pairs with |k|^2 <= 10), Polya gives 7.96
    CHECK(count_cube({2, 1.0, 100.0, BoundaryCondition::Dirichlet}) == 6);
    CHECK_THROWS_AS(count_cube({2, 1.0, 1e18, BoundaryCondition::Neumann}), std::overflow_error);
    CHECK_THROWS_AS(count_cube({0, 1.0, 1.0, BoundaryCondition::Neumann}), std::domain_error);
}

TEST_CASE("cube counts match brute-force enumeration on random queries") {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> un(1, 3);
    std::uniform_real_distribution<double> us(0.3, 2.0), ut(0.0, 1e4);
    for (int i = 0; i < 1000; ++i) {
        int n = un(rng);
        double s = us(rng), t = ut(rng);
        for (BoundaryCondition bc : {BoundaryCondition::Neumann, BoundaryCondition::Dirichlet}) {
            CountQuery q{n, s, t, bc};
            CHECK(count_cube(q) == brute_count(n, s, t, bc));
            // homogeneity: count(side s, t) == count(side 1, s^2 t)
            CHECK(count_cube(q) == count_cube({n, 1.0, s * s * t, bc}));
        }
    }
}

TEST_CASE("rectangle counts vs cube specialization and closed lambda2") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> us(0.3, 2.0), ut(0.0, 2e3);
    for (int i = 0; i < 200; ++i) {
        double s = us(rng), t = ut(rng);
        for (BoundaryCondition bc : {BoundaryCondition::Neumann, BoundaryCondition::Dirichlet})
            CHECK(count_rectangle({s, s}, t, bc) == count_cube({2, s, t, bc}));
    }
    // lambda_2^N(a x b) = (pi/max(a,b))^2: the count jumps from 1 to 2 there
    double a = 0.7, b = 1.3;
    double l2 = std::pow(M_PI / 1.3, 2.0);
    CHECK(count_rectangle({a, b}, l2 * (1 - 1e-9), BoundaryCondition::Neumann) == 1);
    CHECK(count_rectangle({a, b}, l2 * (1 + 1e-9), BoundaryCondition::Neumann) == 2);
    CHECK_THROWS_AS(count_rectangle({}, 1.0, BoundaryCondition::Neumann), std::domain_error);
}

TEST_CASE("counts are nondecreasing step functions; Polya and shift dominance") {
    for (int n : {1, 2, 3}) {
        uint64_t prev_n = 0, prev_d = 0;
        for (double t = 0.0; t <= 1e6; t = t == 0.0 ? 0.37 : t * 1.9) {
            double tt = n == 3 ? std::fmin(t, 1e4) : t;
            uint64_t nn = count_cube({n, 1.0, tt, BoundaryCondition::Neumann});
            uint64_t nd = count_cube({n, 1.0, tt, BoundaryCondition::Dirichlet});
            if (tt == t) {
                CHECK(nn >= prev_n);
                CHECK(nd >= prev_d);
                prev_n = nn;
                prev_d = nd;
            }
            CHECK(nn >= nd);
            PolyaShift ps = polya_and_shift_bounds({n, 1.0, tt, BoundaryCondition::Neumann});
            CHECK(ps.polya_ok);
            CHECK((double)nn <= ps.shifted_upper);
        }
    }
    // t = 0: shifted upper still dominates the constant mode
    PolyaShift ps0 = polya_and_shift_bounds({2, 1.0, 0.0, BoundaryCondition::Neumann});
    CHECK(ps0.shifted_upper >= 1.0);
}

TEST_CASE("bracketing defect Q = N_N - N_D") {
    CHECK(bracketing_defect(2, 1.0, 0.0) == 1);
    CHECK(bracketing_defect(2, 1.0, 2.5 * M_PI * M_PI) == 3);  // N_N = 4, N_D = 1
    for (double t = 0.0; t <= 1e6; t = t == 0.0 ? 1.0 : t * 2.3)
        CHECK(bracketing_defect(2, 1.0, t) >= 0);
}

TEST_CASE("S1 bound and the eps-t coupling threshold") {
    ConstantsLedger led = koch_ledger();
    double eps0 = kThird / std::sqrt(3.0);  // top of J_1
    double t0 = led.C2 / (eps0 * eps0 * 3.0);
    CHECK(t0 == doctest::Approx(0.0276).epsilon(2e-3));
    CHECK(s1_bound(led, 100.0, eps0) ==
          doctest::Approx(led.s1_coefficient * std::pow(100.0, 0.5 * led.delta)));
    CHECK(s1_bound(led, 100.0, eps0) <= 104282.0 * std::pow(100.0, 0.5 * led.delta));
    CHECK_THROWS_AS(s1_bound(led, t0 / 2.0, eps0), std::domain_error);
}

TEST_CASE("absolute S2 coefficients reproduce the published bound") {
    ConstantsLedger led = koch_ledger();
    double diam = 2.0 / std::sqrt(3.0);
    AbsoluteCoefficients a = s2_bound_absolute(led, diam);
    CHECK(a.a_delta == doctest::Approx(3.527e6).epsilon(2e-3));
    CHECK(a.a_delta == doctest::Approx(3.537e6).epsilon(1e-2));  // within 1%
    CHECK(a.a_const == doctest::Approx(353.0).epsilon(1e-2));
    CHECK(a.a_sqrt == doctest::Approx(911.0).epsilon(1e-2));
    AbsoluteCoefficients s = s2_bound_absolute(led, diam, true);
    CHECK(s.k_minus == 0.0);
    CHECK(s.a_delta == doctest::Approx(4.75e6).epsilon(1e-2));
    CHECK(s.a_const == doctest::Approx(655.5).epsilon(1e-2));
    CHECK(s.a_sqrt == doctest::Approx(1036.1).epsilon(1e-2));
    // the strict variant only weakens the t^{delta/2} coefficient
    CHECK(s.a_delta >= a.a_delta);
}

TEST_CASE("discrete slice sum is dominated by the closed S2 assembly") {
    SnowflakeDomain dom = build_snowflake(SnowflakeKind::TriangleK, kThird, 7);
    WhitneyCover cover = build_whitney(dom, 9);
    double mf = m_frak_koch(), delta = cover.delta;
    double cw = weyl_constant(2), vol = cover.domain_volume;
    for (double t : {1.0, 10.0, 100.0, 1000.0}) {
        double lhs = s2_slice_sum(cover.slice_counts, 2, t);
        double rhs = 0.0;
        for (auto& [k, cnt] : cover.slice_counts) {
            (void)cnt;
            double a = std::ldexp(std::sqrt(t), -k) + 2.0 * M_PI * std::sqrt(2.0);
            double b = std::ldexp(std::sqrt(t), -k);
            rhs += mf * std::pow(2.0, k * delta) * (a * a - b * b);
        }
        CHECK(lhs <= cw * (vol * t + rhs));
    }
}

TEST_CASE("van den Berg-Lianantonakis lower bound") {
    double delta = minkowski_dimension(kThird);
    double C_tilde = 21.56;  // c_vol+ C(K)
    double coeff = 5.0 * C_tilde / ((2.0 - delta) * (delta - 1.0));
    CHECK(coeff == doctest::Approx(557.7).epsilon(1e-2));
    double t = 50.0;
    CHECK(lower_bound_vdbl(2.0 * std::sqrt(3.0) / 5.0, delta, 2, C_tilde, t) ==
          doctest::Approx(weyl_constant(2) * (2.0 * std::sqrt(3.0) / 5.0) * t -
                          coeff * std::pow(t, 0.5 * delta)));
    // logarithmic branch on the unit square
    double lg = lower_bound_vdbl(1.0, 1.0, 2, 1.0, 1000.0);
    CHECK(std::isfinite(lg));
    CHECK(lg < weyl_constant(2) * 1000.0);
    CHECK(lg == doctest::Approx(weyl_constant(2) * 1000.0 -
                                3.0 * std::sqrt(1000.0) * std::log(2.0 * 1000.0)));
    CHECK_THROWS_AS(lower_bound_vdbl(1.0, 1.0, 2, 1.0, 3.9), std::domain_error);
    CHECK_THROWS_AS(lower_bound_vdbl(1.0, 2.0, 2, 1.0, 10.0), std::domain_error);  // delta -> n pole
}

TEST_CASE("bound report: two-sided bracketing and exact scaling identity") {
    ConstantsLedger led = koch_ledger();
    BoundReport rep = make_bound_report(led, "K", 2.0 * std::sqrt(3.0) / 5.0,
                                        2.0 / std::sqrt(3.0), 21.56, kThird / std::sqrt(3.0));
    CHECK(rep.t0 == doctest::Approx(0.1));
    CHECK(rep.t0_certified == doctest::Approx(0.0276).epsilon(2e-3));
    CHECK(rep.upper[0].coefficient == doctest::Approx(rep.lower[0].coefficient));
    CHECK(rep.upper[0].exponent == 1.0);
    CHECK(rep.M_abs == doctest::Approx(weyl_constant(2) * 3.527e6).epsilon(2e-3));
    CHECK(rep.M_tilde == rep.M_abs);  // the lower coefficient is far smaller
    for (double t = rep.t0_certified; t <= 1e6; t *= 1.2)
        CHECK(eval_terms(rep.upper, t) >= eval_terms(rep.lower, t));
    // M_{alpha Omega}(t) = alpha^delta M_Omega(alpha^2 t) for the assembled bounds
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ua(0.2, 5.0), ut(1.0, 1e5);
    for (int i = 0; i < 10; ++i) {
        double alpha = ua(rng), t = ut(rng);
        BoundReport sc = scale_report(rep, alpha);
        CHECK(eval_terms(sc.upper, t) == doctest::Approx(eval_terms(rep.upper, alpha * alpha * t))
                                             .epsilon(1e-12));
        double m_sc = (eval_terms(sc.upper, t) - sc.weyl_coefficient * t) /
                      std::pow(t, 0.5 * rep.delta);
        double m_base = (eval_terms(rep.upper, alpha * alpha * t) -
                         rep.weyl_coefficient * alpha * alpha * t) /
                        std::pow(alpha * alpha * t, 0.5 * rep.delta);
        CHECK(m_sc == doctest::Approx(std::pow(alpha, rep.delta) * m_base).epsilon(1e-10));
    }
}
