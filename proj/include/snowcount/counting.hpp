#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "snowcount/constants.hpp"

namespace snowcount {

enum class BoundaryCondition { Dirichlet, Neumann };

struct CountQuery {
    int n = 2;
    double side = 1.0;
    double t = 0.0;  // spectral parameter; negative treated as 0
    BoundaryCondition bc = BoundaryCondition::Neumann;
};

// Exact eigenvalue count of the side-s cube by recursive lattice enumeration:
// #{k in N_0^n (Neumann) resp. N^n (Dirichlet) : |k|^2 <= t s^2 / pi^2}.
// Eigenvalues exactly at t are counted (<= convention).
uint64_t count_cube(const CountQuery& q);

// Rectangle with per-axis sides: pairs k with sum (k_i pi / a_i)^2 <= t.
uint64_t count_rectangle(const std::vector<double>& sides, double t, BoundaryCondition bc);

struct PolyaShift {
    bool polya_ok = false;      // N_D <= C_W (s^2 t)^{n/2}
    double shifted_upper = 0.0;  // C_W (sqrt(s^2 t) + 2 pi sqrt(n))^n >= N_N
};
PolyaShift polya_and_shift_bounds(const CountQuery& q);

// Bracketing defect Q = N_N - N_D >= 0 of the side-s cube.
uint64_t bracketing_defect(int n, double side, double t);

// S1 bound: s1_coefficient * t^{delta/2}; the eps <-> t coupling
// (mu+1) t = C2 eps^{-2} must keep eps <= eps0, i.e. t >= t0.
double s1_bound(const ConstantsLedger& ledger, double t, double eps0);

// Discrete S2 diagnostic: sum over slices of #W_k * N_N(2^{-k} I^n, t).
double s2_slice_sum(const std::map<int, uint64_t>& slice_counts, int n, double t);

// Closed absolute coefficients of the S2 bound, assembled so that
// N_N - C_W vol t <= C_W (a_delta t^{delta/2} - a_const - a_sqrt sqrt(t)).
// `strict` keeps the literal floor/ceil cutoffs instead of the continuous
// smoothing that reproduces the published numbers.
struct AbsoluteCoefficients {
    double a_delta = 0.0, a_const = 0.0, a_sqrt = 0.0;
    double cap_c = 0.0;    // 2^{k_+} <= cap_c sqrt(t)
    double k_minus = 0.0;  // lower slice cutoff actually used
};
AbsoluteCoefficients s2_bound_absolute(const ConstantsLedger& ledger, double diam,
                                       bool strict = false);

// van den Berg–Lianantonakis lower bound for N_D, with the logarithmic
// delta = n-1 branch (valid only for t > 4 / vol^{2/n}).
double lower_bound_vdbl(double vol, double delta, int n, double C_tilde, double t);

struct PowerTerm {
    double coefficient = 0.0, exponent = 0.0;
};
double eval_terms(const std::vector<PowerTerm>& terms, double t);

struct BoundReport {
    std::string domain_id;
    double t0 = 0.0;            // headline validity threshold
    double t0_certified = 0.0;  // C2 eps0^{-2} / (mu+1)
    std::vector<PowerTerm> upper, lower;  // leading term (C_W vol, n/2) in both
    double M_abs = 0.0;    // C_W a_delta
    double M_tilde = 0.0;  // max{M_abs, lower-bound coefficient}
    double C_tilde = 0.0;  // c_vol+ C(Omega)
    double delta = 0.0, volume = 0.0, weyl_coefficient = 0.0;
    int n = 2;
};

BoundReport make_bound_report(const ConstantsLedger& ledger, const std::string& domain_id,
                              double vol, double diam, double c_vol_upper, double eps0);

// Rescaling alpha*Omega: N scales as N(alpha Omega, t) = N(Omega, alpha^2 t),
// so every power term coefficient picks up alpha^{2 exponent}.
BoundReport scale_report(const BoundReport& report, double alpha);

}  // namespace snowcount
