#include "snowcount/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "snowcount/minkowski.hpp"

namespace snowcount {

double weyl_constant(int n) {
    if (n < 1) throw std::domain_error("weyl_constant: n >= 1");
    return std::pow(2.0, -n) * std::pow(M_PI, -0.5 * n) / std::tgamma(1.0 + 0.5 * n);
}

double c_E_rohde(double p) {
    double num = 4.0 * (1.0 - 2.0 * p) * (1.0 - 2.0 * p) * p * p;
    double den = (3.0 - 2.0 * p) * (3.0 - 2.0 * p) * (4.0 * p - 1.0);
    return std::fmin(1.0, num / den) * M_PI * M_PI;
}

double c1_of_alpha(const WellCoveredCertificate& cert, double c_E, double alpha) {
    double crp = cert.c_r.hi, crm = cert.c_r.lo;
    double cl = cert.c_L.hi, ci = cert.c_I.hi, bi = cert.beta_inf;
    if (!(crp > 0.0 && crm > 0.0 && cl > 0.0 && ci > 0.0 && bi > 0.0 && c_E > 0.0 && alpha > 0.0))
        throw std::domain_error("c1_of_alpha: certificate ranges must be positive");
    double term1 = (crp * crp / c_E) * (1.0 + ((crp + alpha * crp) / (crp * bi)) * (ci / crm));
    double term2 = ((1.0 + 1.0 / alpha) / bi) * cl * ci;
    return 1.0 / (term1 + term2);
}

double c1_section5(const WellCoveredCertificate& cert, double c_E) {
    double alpha = std::sqrt(c_E * cert.c_L.hi * cert.c_r.lo) / cert.c_r.hi;
    return c1_of_alpha(cert, c_E, alpha);
}

double c1_alpha_optimized(const WellCoveredCertificate& cert, double c_E, double* alpha_star) {
    double lo = 1e-6, hi = 1e6;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = c1_of_alpha(cert, c_E, a), fb = c1_of_alpha(cert, c_E, b);
    while (hi - lo > 1e-10) {
        if (fa < fb) {  // maximize C1
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = c1_of_alpha(cert, c_E, b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = c1_of_alpha(cert, c_E, a);
        }
    }
    double alpha = 0.5 * (lo + hi);
    if (alpha_star) *alpha_star = alpha;
    return c1_of_alpha(cert, c_E, alpha);
}

ConstantsLedger make_ledger(const WellCoveredCertificate& cert, double m_frak,
                            double a_omega_value, int mu) {
    ConstantsLedger led;
    led.n = 2;
    led.delta = minkowski_dimension(cert.p);
    led.mu = mu;
    led.M_frak = m_frak;
    led.A_Omega = a_omega_value;
    led.C_of_Omega = cert.C_of_Omega;
    for (int n = 1; n <= 3; ++n) led.weyl[n] = weyl_constant(n);
    led.c_E = c_E_rohde(cert.p);
    led.C1 = c1_section5(cert, led.c_E);
    led.C1_alpha_opt = c1_alpha_optimized(cert, led.c_E, &led.alpha_star);
    double sqn = std::sqrt((double)led.n);
    double half_diam = sqn * M_PI / cert.c_diam.hi;
    led.C2 = std::fmin(led.C1, 0.5 * half_diam * half_diam);
    double pow2d = std::pow(2.0, led.delta) - 1.0;
    led.C3 = led.C_of_Omega + m_frak * std::pow(40.0 * sqn, led.delta) / pow2d;
    double s = cert.c_diam.hi;  // 1 <= s_sup <= c_diam+
    led.C3_proof_variant =
        led.C_of_Omega +
        m_frak * std::pow(sqn / s, led.delta) * (std::pow(40.0 * s, led.delta) - 1.0) / pow2d;
    led.proof_variant_exceeds = led.C3_proof_variant > led.C3;
    if (!(led.C2 > 0.0)) throw std::domain_error("make_ledger: C2 must be positive");
    double ratio = (mu + 1.0) / led.C2;
    led.s1_coefficient = led.C3 * std::pow(ratio, 0.5 * led.delta);
    led.M_Omega = led.s1_coefficient + (weyl_constant(led.n - 1) / 4.0) * a_omega_value *
                                           std::pow(ratio, 0.5 * (led.delta - (led.n - 1)));
    return led;
}

double bessel_j(double nu, double x) {
    // ascending series; accurate to ~1e-12 for the small arguments needed here
    double half = 0.5 * x;
    double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int m = 1; m <= 200; ++m) {
        term *= -half * half / (m * (nu + m));
        sum += term;
        if (std::abs(term) < 1e-16 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

double weinberger_upper(double vol, int n) {
    if (!(vol > 0.0) || n < 1) throw std::domain_error("weinberger_upper: vol > 0, n >= 1");
    double hn = 0.5 * n;
    auto f = [hn](double x) { return bessel_j(hn, x) - x * bessel_j(hn + 1.0, x); };
    // first positive root: scan for the sign change, then bisect
    double a = 1e-3, fa = f(a), b = 0.0;
    for (double x = 0.05; x <= 20.0; x += 0.05) {
        double fx = f(x);
        if (fa * fx <= 0.0) {
            b = x;
            break;
        }
        a = x;
        fa = fx;
    }
    if (b == 0.0) throw std::runtime_error("weinberger_upper: no Bessel root found");
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        double m = 0.5 * (a + b), fm = f(m);
        if (fa * fm <= 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    double pn = 0.5 * (a + b);
    double omega_n = std::pow(M_PI, hn) / std::tgamma(1.0 + hn);
    return pn * pn * std::pow(omega_n / vol, 2.0 / n);
}

}  // namespace snowcount
