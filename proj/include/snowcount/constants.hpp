#pragma once

#include <map>

#include "snowcount/foliation.hpp"

namespace snowcount {

// The full chain of explicit spectral constants derived from a well-covered
// certificate, with the diagnostic variants reported alongside.
struct ConstantsLedger {
    int n = 2;
    double delta = 0.0;
    int mu = 0;  // cover multiplicity; mu + 1 enters the eps <-> t coupling
    double c_E = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
    double M_Omega = 0.0;
    double M_frak = 0.0;    // Whitney slice cardinality coefficient
    double A_Omega = 0.0;   // perimeter coefficient of the eps-restriction
    double C_of_Omega = 0.0;
    std::map<int, double> weyl;  // n -> C_W^{(n)}
    // diagnostics
    double s1_coefficient = 0.0;    // C3 ((mu+1)/C2)^{delta/2}
    double C1_alpha_opt = 0.0;      // numerically alpha-optimized variant
    double alpha_star = 0.0;        // optimizing alpha
    double C3_proof_variant = 0.0;  // with the s_sup factors kept
    bool proof_variant_exceeds = false;
};

// C_W^{(n)} = 2^{-n} pi^{-n/2} / Gamma(1 + n/2)
double weyl_constant(int n);

// c_E(R(p)) = min(1, 4(1-2p)^2 p^2 / ((3-2p)^2 (4p-1))) pi^2
double c_E_rohde(double p);

// Poincare chain constant as a function of the interpolation weight alpha;
// the fixed closed form bakes in alpha = sqrt(c_E c_L+ c_r-) / c_r+.
double c1_of_alpha(const WellCoveredCertificate& cert, double c_E, double alpha);
double c1_section5(const WellCoveredCertificate& cert, double c_E);
// golden-section optimization of c1_of_alpha (tol 1e-10); alpha_star optional
double c1_alpha_optimized(const WellCoveredCertificate& cert, double c_E,
                          double* alpha_star = nullptr);

// Assemble the ledger; m_frak and a_omega_value come from the Whitney /
// Minkowski side, mu is the measured cover multiplicity.
ConstantsLedger make_ledger(const WellCoveredCertificate& cert, double m_frak,
                            double a_omega_value, int mu = 2);

// Bessel function of the first kind, real order, by the ascending series.
double bessel_j(double nu, double x);

// lambda_2^N(Omega) <= p_n^2 (omega_n / vol_n(Omega))^{2/n}, p_n the first
// positive root of J_{n/2}(x) = x J_{1+n/2}(x).
double weinberger_upper(double vol, int n);

}  // namespace snowcount
