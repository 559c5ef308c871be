#pragma once

#include <cstdint>
#include <vector>

#include "snowcount/geometry.hpp"
#include "snowcount/ifs.hpp"

namespace snowcount {

enum class ElementKind { FringedRect, ShortRect, LongRect };

// One polyline band of a fiber; beta is the (piecewise constant) density on the
// segment from this knot to the next one.
struct FiberKnot {
    Vec2 point;
    double beta = 1.0;
};

struct Fiber {
    double q = 0.0;  // base parameter in (0,1)
    std::vector<FiberKnot> knots;
    double length = 0.0;         // exact sum of band lengths
    double beta_integral = 0.0;  // exact finite sum of beta * band length
    double r = 0.0;              // depth of the E-segment (first band)
    bool degenerate = false;     // q hit a band junction; left-limit convention used
};

struct CoverElement {
    ElementKind kind = ElementKind::ShortRect;
    int k = 1;          // generation
    double epsilon = 0.0;
    Similarity placement;  // local coords -> plane; local chord on [0,width]x{0},
                           // E-box below (y in [-eps,0]), fringe above (y > 0)
    double width = 0.0;      // chord length carrying the fringe
    double extension = 0.0;  // LongRect only: flat extension beyond the chord
    double r = 0.0;          // = epsilon
    double L_up = 0.0;       // certified upper bound on fiber length
    double I_beta = 0.0;     // measured sup over sampled fibers of int beta dt
    double diam = 0.0;       // measured diameter of the element
    double vol = 0.0;        // exact closed-form area
    double beta_inf = 1.0;
    double lambda2_E = 0.0;  // (pi / longest E side)^2
};

// Exact membership in the limit element (E-box, tent for fR, and the full
// fractal fringe) via the self-similar band recursion -- no polygon error.
bool element_contains(const CoverElement& element, double p, const Vec2& global_point);

// Closed local-coordinate outline (rectangle + fringe arcs at arc_level).
std::vector<Vec2> element_polygon(const CoverElement& element, double p, int arc_level);

struct ConstantRange {
    double lo = 0.0, hi = 0.0;
};

struct WellCoveredCertificate {
    double p = 0.0;
    double epsilon = 0.0;
    int k = 0;  // generation with epsilon in J_k
    std::vector<CoverElement> elements;
    uint64_t cardinality = 0;
    uint64_t count_fr = 0, count_sr = 0, count_lr = 0;
    double C_of_Omega = 0.0;
    int multiplicity = 0;         // measured max over Monte-Carlo points
    double coverage_fraction = 0.0;  // fraction of interior samples covered
    uint64_t mc_points = 0;
    double mc_margin = 0.0;  // samples kept at dist in (margin, eps - margin)
    // certificate ranges, normalized by epsilon (c_vol by epsilon^2)
    ConstantRange c_r, c_L, c_I, c_diam, c_vol;
    double beta_inf = 1.0;
};

// Jacobian of the affine seed band of Fig.-4 type: a base of width a carried to
// a band of width b has |det Db| = b/a.
double seed_triangle_density(double a, double b);

// Scale interval J_k = (p^{k+1}(1-2p)/sqrt(4p-1), p^k(1-2p)/sqrt(4p-1)] served
// by the generation-k cover; returns {lower, upper}.
ConstantRange scale_interval(double p, int k);

// Closed-form per-p bounds of the element constants (normalized by epsilon).
double c_L_upper(double p);     // 1 + (4p-1)/(p^2(2-6p+4p^2))
double c_I_upper(double p);     // 1 + (4p-1)/(2p^2(1-2p-2p^2))
double c_diam_upper(double p);  // sqrt((4p-1)/p^4 + (1-(4p-1)/(2p^2(1-2p)))^2)

// Cover cardinality coefficient: #I_eps <= C(Omega) eps^{-delta}.
double C_of_omega(SnowflakeKind kind, double p);

// Fiber through a canonical generation-k element in element-local coordinates
// (chord on [0,width]x{0}, E below). Bands beyond `depth` generations are
// truncated; their contribution is a geometric tail.
Fiber trace_fiber(const PKochSystem& sys, ElementKind kind, double q, int depth, double epsilon,
                  int k = 1);

// Trivial straight-line foliation of a graph domain {0 < y < f(x)}: beta == 1.
struct GraphFoliation {
    double base = 0.0;
    std::vector<double> heights;  // uniform samples of f over [0, base]
    double fiber_integral() const;  // int int beta dt dq, beta == 1
    double graph_area() const;      // area under the piecewise-linear graph
};
GraphFoliation graph_domain_foliation(const std::vector<double>& f_samples, double base);

// Cover of Omega_{-eps} by fR/sR/lR elements with measured certificate.
WellCoveredCertificate build_cover(const SnowflakeDomain& domain, double epsilon,
                                   uint64_t mc_points = 100000, uint64_t seed = 2026,
                                   int fiber_samples = 64);

// int_0^B int beta dt dx over the element's fiber field; equals vol(element).
double change_of_variables_area(const CoverElement& element, const PKochSystem& sys,
                                int quad_points = 4096);

}  // namespace snowcount
