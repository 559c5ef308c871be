#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "snowcount/constants.hpp"
#include "snowcount/minkowski.hpp"
#include "snowcount/whitney.hpp"

using namespace snowcount;

namespace {
const double kThird = 1.0 / 3.0;

// closed-form certificate for K(p): measured ranges replaced by their proven
// bounds (c_r == 1 and beta_inf == 1 are exact for these elements)
WellCoveredCertificate synthetic_cert(double p, bool with_diam = true) {
    WellCoveredCertificate c;
    c.p = p;
    c.c_r = {1.0, 1.0};
    c.beta_inf = 1.0;
    c.c_L = {1.0, c_L_upper(p)};
    c.c_I = {1.0, c_I_upper(p)};
    c.c_diam = {1.0, with_diam ? c_diam_upper(p) : 10.0};
    c.C_of_Omega = C_of_omega(SnowflakeKind::TriangleK, p);
    return c;
}
}  // namespace

TEST_CASE("weyl constants in dimensions 1..3") {
    CHECK(weyl_constant(2) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(weyl_constant(1) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    CHECK(weyl_constant(3) == doctest::Approx(1.0 / (6.0 * M_PI * M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(weyl_constant(0), std::domain_error);
}

TEST_CASE("c_E closed form") {
    CHECK(c_E_rohde(kThird) == doctest::Approx(4.0 * M_PI * M_PI / 147.0).epsilon(1e-14));
    CHECK(c_E_rohde(kThird) == doctest::Approx(0.2686).epsilon(1e-3));
    // near p = 1/4 the 1/(4p-1) blowup is clamped by the min at pi^2
    CHECK(c_E_rohde(0.2501) == doctest::Approx(M_PI * M_PI));
    // stays positive and finite up to the upper end of the p-range
    double p_hi = (std::sqrt(3.0) - 1.0) / 2.0;
    for (double p = 0.26; p < p_hi; p += 0.005) {
        CHECK(c_E_rohde(p) > 0.0);
        CHECK(c_E_rohde(p) <= M_PI * M_PI);
    }
}

TEST_CASE("C1: hand value, Koch value, alpha optimization") {
    // degenerate all-ones certificate: [1(1+2) + 2]^{-1} = 1/5
    WellCoveredCertificate ones;
    ones.c_r = {1.0, 1.0};
    ones.c_L = {1.0, 1.0};
    ones.c_I = {1.0, 1.0};
    ones.c_diam = {1.0, 1.0};
    ones.beta_inf = 1.0;
    CHECK(c1_section5(ones, 1.0) == doctest::Approx(0.2).epsilon(1e-14));

    WellCoveredCertificate k = synthetic_cert(kThird);
    double c1 = c1_section5(k, c_E_rohde(kThird));
    CHECK(c1 == doctest::Approx(0.00306865).epsilon(1e-4));
    // two significant figures: lambda_2 >= 0.0031 eps^{-2}
    CHECK(std::round(c1 * 1e4) / 1e4 == doctest::Approx(0.0031));

    double alpha = 0.0;
    double c1opt = c1_alpha_optimized(k, c_E_rohde(kThird), &alpha);
    CHECK(c1opt >= c1 - 1e-12);
    // the baked-in alpha = sqrt(c_E c_L+) is already the optimizer here
    CHECK(alpha == doctest::Approx(std::sqrt(c_E_rohde(kThird) * 7.75)).epsilon(1e-5));
    CHECK(c1opt == doctest::Approx(c1).epsilon(1e-8));
}

TEST_CASE("ledger chain for the classic Koch snowflake") {
    WellCoveredCertificate cert = synthetic_cert(kThird);
    double mf = m_frak_koch();
    double delta = minkowski_dimension(kThird);
    ConstantsLedger led = make_ledger(cert, mf, a_omega(2, delta, mf), 2);
    CHECK(led.C2 == doctest::Approx(led.C1));  // the diameter branch is larger
    CHECK(led.C3 == doctest::Approx(1352.5).epsilon(2e-3));
    CHECK(led.C3 == doctest::Approx(1354.0).epsilon(1e-2));
    CHECK(led.s1_coefficient == doctest::Approx(104192.0).epsilon(2e-3));
    CHECK(led.s1_coefficient <= 104282.0);
    CHECK(led.s1_coefficient == doctest::Approx(104282.0).epsilon(1e-2));
    CHECK(led.M_Omega == doctest::Approx(104235.0).epsilon(2e-3));
    CHECK(led.M_Omega <= 104325.5);
    CHECK(led.M_Omega == doctest::Approx(104325.5).epsilon(1e-2));
    // dropped "-1" terms only enlarge the section-5 form
    CHECK(!led.proof_variant_exceeds);
    CHECK(led.C3_proof_variant > 0.0);
    for (double v : {led.c_E, led.C1, led.C2, led.C3, led.M_Omega, led.M_frak, led.A_Omega,
                     led.C_of_Omega, led.s1_coefficient})
        CHECK(v > 0.0);
    CHECK(led.weyl.at(2) == doctest::Approx(1.0 / (4.0 * M_PI)));
}

TEST_CASE("p-scan: C1 vanishes and M diverges toward the upper p limit") {
    double prev_c1 = 1e300;
    for (double p = 0.30; p <= 0.3601; p += 0.004) {
        WellCoveredCertificate c = synthetic_cert(p);
        double c1 = c1_section5(c, c_E_rohde(p));
        CHECK(c1 < prev_c1);
        prev_c1 = c1;
    }
    // c_I+ pole at p = (sqrt(3)-1)/2 drives C1 to zero
    WellCoveredCertificate near = synthetic_cert(0.3660, false);
    CHECK(c1_section5(near, c_E_rohde(0.3660)) < 1e-4);
    double mf = m_frak_koch();
    double prev_m = 0.0;
    for (double p = 0.30; p <= 0.3601; p += 0.004) {
        ConstantsLedger led = make_ledger(synthetic_cert(p), mf, 200.0, 2);
        CHECK(led.M_Omega > prev_m);
        prev_m = led.M_Omega;
    }
}

TEST_CASE("weinberger isoperimetric upper bound") {
    // p_2 ~= 1.84118, the first positive root of J_1'
    CHECK(weinberger_upper(M_PI, 2) == doctest::Approx(3.390).epsilon(1e-3));
    CHECK(weinberger_upper(4.0 * M_PI, 2) ==
          doctest::Approx(weinberger_upper(M_PI, 2) / 4.0).epsilon(1e-12));
    CHECK(weinberger_upper(1.0, 3) > 0.0);
    CHECK_THROWS_AS(weinberger_upper(-1.0, 2), std::domain_error);
    // series evaluation sanity against known values
    CHECK(bessel_j(0.0, 2.404825557695773) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(bessel_j(1.0, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-12));
    CHECK(bessel_j(0.5, 1.0) ==
          doctest::Approx(std::sqrt(2.0 / M_PI) * std::sin(1.0)).epsilon(1e-12));
}
