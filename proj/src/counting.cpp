#include "snowcount/counting.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace snowcount {

namespace {

uint64_t isqrt_u64(uint64_t x) {
    if (x == 0) return 0;
    uint64_t r = (uint64_t)std::sqrt((double)x);
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

// #{k in N_0^n resp. N^n : |k|^2 <= X} by dimension peeling
uint64_t count_lattice(int n, uint64_t X, bool include_zero) {
    uint64_t kmax = isqrt_u64(X);
    if (n == 1) return include_zero ? kmax + 1 : kmax;
    uint64_t total = 0;
    for (uint64_t k = include_zero ? 0 : 1; k <= kmax; ++k)
        total += count_lattice(n - 1, X - k * k, include_zero);
    return total;
}

uint64_t count_rect_rec(const std::vector<double>& sides, size_t i, double rem,
                        BoundaryCondition bc) {
    double a = sides[i];
    uint64_t kmax = (uint64_t)std::floor(a * std::sqrt(std::fmax(rem, 0.0)) / M_PI);
    uint64_t k0 = bc == BoundaryCondition::Neumann ? 0 : 1;
    if (i + 1 == sides.size()) return kmax + 1 >= k0 + 1 ? kmax + 1 - k0 : 0;
    uint64_t total = 0;
    for (uint64_t k = k0; k <= kmax; ++k) {
        double e = k * M_PI / a;
        total += count_rect_rec(sides, i + 1, rem - e * e, bc);
    }
    return total;
}

}  // namespace

uint64_t count_cube(const CountQuery& q) {
    if (q.n < 1 || !(q.side > 0.0)) throw std::domain_error("count_cube: n >= 1, side > 0");
    double x = q.side * q.side * std::fmax(q.t, 0.0) / (M_PI * M_PI);
    if (!(x < 9e15)) throw std::overflow_error("count_cube: t too large for exact counting");
    return count_lattice(q.n, (uint64_t)std::floor(x), q.bc == BoundaryCondition::Neumann);
}

uint64_t count_rectangle(const std::vector<double>& sides, double t, BoundaryCondition bc) {
    if (sides.empty()) throw std::domain_error("count_rectangle: need at least one side");
    for (double a : sides)
        if (!(a > 0.0)) throw std::domain_error("count_rectangle: sides must be positive");
    double tt = std::fmax(t, 0.0);
    if (!(tt * sides[0] * sides[0] / (M_PI * M_PI) < 9e15))
        throw std::overflow_error("count_rectangle: t too large for exact counting");
    return count_rect_rec(sides, 0, tt, bc);
}

PolyaShift polya_and_shift_bounds(const CountQuery& q) {
    PolyaShift out;
    double cw = weyl_constant(q.n);
    double st = q.side * q.side * std::fmax(q.t, 0.0);
    CountQuery d = q;
    d.bc = BoundaryCondition::Dirichlet;
    out.polya_ok = (double)count_cube(d) <= cw * std::pow(st, 0.5 * q.n);
    out.shifted_upper = cw * std::pow(std::sqrt(st) + 2.0 * M_PI * std::sqrt((double)q.n), q.n);
    return out;
}

uint64_t bracketing_defect(int n, double side, double t) {
    CountQuery q{n, side, t, BoundaryCondition::Neumann};
    uint64_t nn = count_cube(q);
    q.bc = BoundaryCondition::Dirichlet;
    return nn - count_cube(q);
}

double s1_bound(const ConstantsLedger& ledger, double t, double eps0) {
    double t0 = ledger.C2 / (eps0 * eps0 * (ledger.mu + 1));
    if (!(t >= t0)) {
        std::ostringstream msg;
        msg << "s1_bound: eps-t coupling leaves the certified range; need t >= t0 = " << t0;
        throw std::domain_error(msg.str());
    }
    return ledger.s1_coefficient * std::pow(t, 0.5 * ledger.delta);
}

double s2_slice_sum(const std::map<int, uint64_t>& slice_counts, int n, double t) {
    double total = 0.0;
    for (auto& [k, cnt] : slice_counts) {
        CountQuery q{n, std::ldexp(1.0, -k), t, BoundaryCondition::Neumann};
        total += (double)cnt * (double)count_cube(q);
    }
    return total;
}

AbsoluteCoefficients s2_bound_absolute(const ConstantsLedger& ledger, double diam, bool strict) {
    int n = ledger.n;
    if (n != 2) throw std::domain_error("s2_bound_absolute: assembled for n = 2");
    double delta = ledger.delta, mf = ledger.M_frak;
    double sqn = std::sqrt((double)n);
    double g1 = std::pow(2.0, delta) - 1.0;        // geometric sums of 2^{k delta}
    double g2 = std::pow(2.0, delta - 1.0) - 1.0;  // and of 2^{k(delta-1)}
    double c8 = 8.0 * M_PI * M_PI, c4 = 4.0 * M_PI * sqn;
    AbsoluteCoefficients out;
    double coupling = std::sqrt((ledger.mu + 1) / ledger.C2);
    if (strict) {
        // literal cutoffs: the geometric sums run to 2^{(k_+ + 1) delta} with
        // 2^{k_+} <= 2 * 5 sqrt(n)/eps, and k'_- = floor(-log2(diam/sqrt n))
        out.cap_c = 4.0 * 5.0 * sqn * coupling;
        out.k_minus = std::floor(-std::log2(diam / sqn));
    } else {
        // continuous smoothing reproducing the published coefficients
        out.cap_c = 20.0 * coupling;
        out.k_minus = -std::log2(sqn * diam);
    }
    out.a_delta = ledger.s1_coefficient / weyl_constant(n) +
                  mf * (c8 * std::pow(out.cap_c, delta) / g1 +
                        c4 * std::pow(out.cap_c, delta - 1.0) / g2);
    out.a_const = mf * c8 * std::pow(2.0, out.k_minus * delta) / g1;
    out.a_sqrt = mf * c4 * std::pow(2.0, out.k_minus * (delta - 1.0)) / g2;
    return out;
}

double lower_bound_vdbl(double vol, double delta, int n, double C_tilde, double t) {
    if (!(vol > 0.0) || !(C_tilde > 0.0))
        throw std::domain_error("lower_bound_vdbl: vol and C_tilde must be positive");
    double weyl = weyl_constant(n) * vol * std::pow(t, 0.5 * n);
    if (delta == (double)(n - 1)) {
        if (!(t > 4.0 / std::pow(vol, 2.0 / n)))
            throw std::domain_error("lower_bound_vdbl: log branch needs t > 4 vol^{-2/n}");
        return weyl - 3.0 * C_tilde * std::pow(t, 0.5 * (n - 1)) *
                          std::log(std::pow(2.0 * vol, 2.0 / n) * t);
    }
    if (!(delta > (double)(n - 1) && delta < (double)n))
        throw std::domain_error("lower_bound_vdbl: delta must lie in [n-1, n)");
    return weyl - 5.0 * C_tilde / ((n - delta) * (delta + 1.0 - n)) * std::pow(t, 0.5 * delta);
}

double eval_terms(const std::vector<PowerTerm>& terms, double t) {
    double total = 0.0;
    for (const PowerTerm& pt : terms) total += pt.coefficient * std::pow(t, pt.exponent);
    return total;
}

BoundReport make_bound_report(const ConstantsLedger& ledger, const std::string& domain_id,
                              double vol, double diam, double c_vol_upper, double eps0) {
    BoundReport rep;
    rep.domain_id = domain_id;
    rep.n = ledger.n;
    rep.delta = ledger.delta;
    rep.volume = vol;
    rep.weyl_coefficient = weyl_constant(ledger.n) * vol;
    rep.t0_certified = ledger.C2 / (eps0 * eps0 * (ledger.mu + 1));
    rep.t0 = std::fmax(rep.t0_certified, 0.1);
    AbsoluteCoefficients abs = s2_bound_absolute(ledger, diam);
    double cw = weyl_constant(ledger.n);
    rep.M_abs = cw * abs.a_delta;
    rep.upper = {{rep.weyl_coefficient, 0.5 * ledger.n},
                 {cw * abs.a_delta, 0.5 * ledger.delta},
                 {-cw * abs.a_const, 0.0},
                 {-cw * abs.a_sqrt, 0.5}};
    rep.C_tilde = c_vol_upper * ledger.C_of_Omega;
    double lower_coeff =
        5.0 * rep.C_tilde / ((ledger.n - ledger.delta) * (ledger.delta + 1.0 - ledger.n));
    rep.lower = {{rep.weyl_coefficient, 0.5 * ledger.n}, {-lower_coeff, 0.5 * ledger.delta}};
    rep.M_tilde = std::fmax(rep.M_abs, lower_coeff);
    return rep;
}

BoundReport scale_report(const BoundReport& report, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("scale_report: alpha > 0");
    BoundReport rep = report;
    for (auto* terms : {&rep.upper, &rep.lower})
        for (PowerTerm& pt : *terms) pt.coefficient *= std::pow(alpha, 2.0 * pt.exponent);
    rep.t0 = report.t0 / (alpha * alpha);
    rep.t0_certified = report.t0_certified / (alpha * alpha);
    rep.volume = report.volume * std::pow(alpha, (double)report.n);
    rep.weyl_coefficient = rep.upper[0].coefficient;
    rep.M_abs = report.M_abs * std::pow(alpha, report.delta);
    rep.M_tilde = report.M_tilde * std::pow(alpha, report.delta);
    rep.C_tilde = report.C_tilde * std::pow(alpha, report.delta);
    return rep;
}

}  // namespace snowcount
