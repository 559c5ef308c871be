#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "snowcount/distance.hpp"
#include "snowcount/ifs.hpp"

namespace snowcount {

// Open dyadic cube (2^{-k} ix, 2^{-k}(ix+1)) x (2^{-k} iy, 2^{-k}(iy+1)).
struct DyadicCube {
    int k = 0;
    int64_t ix = 0, iy = 0;

    double side() const { return std::ldexp(1.0, -k); }
    double diam() const { return side() * std::sqrt(2.0); }
    Box2 box() const {
        double s = side();
        return Box2{{ix * s, iy * s}, {(ix + 1) * s, (iy + 1) * s}};
    }
};

struct WhitneyCover {
    std::vector<DyadicCube> cubes;         // maximal (retained) cubes, disjoint
    std::map<int, uint64_t> slice_counts;  // raw #W_k per slice, before filtering
    std::map<int, uint64_t> retained_counts;
    int k_min_built = 0, k_max_built = 0;
    double eps_trunc = 0.0;       // untiled mass is within eps_trunc of the boundary
    double distance_error = 0.0;  // certified polygon accuracy used for membership
    double domain_volume = 0.0;   // exact limit-domain area
    double delta = 0.0;
};

// Whitney cover per the dyadic-shell construction: slice k collects the lattice
// cubes meeting the closed shell {2^{-k+1} sqrt(n) <= dist(.,boundary) <= 2^{-k+2} sqrt(n)}
// inside the domain, then only cubes maximal in the union of all slices are kept.
// Every retained cube satisfies the sandwich diam(Q) <= dist(Q,bdry) <= 4 diam(Q)
// within the certified distance error.
WhitneyCover build_whitney(const SnowflakeDomain& domain, int k_max,
                           uint64_t cube_budget = 80000000);

struct EpsRestriction {
    double epsilon = 0.0;
    std::vector<DyadicCube> cubes;           // all retained cubes meeting {dist >= eps}
    std::vector<uint8_t> boundary_flag;      // cube also meets {dist <= eps}
    double perimeter = 0.0;                  // exact exposed-face measure of the union
    double A_bound = 0.0;                    // A_Omega * eps^{(n-1)-delta}, 0 if m_frak unset
};

// Perimeter constant A_Omega = 2n (2 sqrt n)^{delta-(n-1)} m_frak * sum_{k=0..2} 2^{k(delta-(n-1))}.
double a_omega(int n, double delta, double m_frak);

// Smallest subfamily of the cover whose union still covers {dist >= eps}.
EpsRestriction restrict_eps(const SnowflakeDomain& domain, const WhitneyCover& cover,
                            double epsilon, double m_frak = 0.0);

// Exact exposed-face measure of the (closed) cube union.
double union_perimeter(const std::vector<DyadicCube>& cubes);

}  // namespace snowcount
