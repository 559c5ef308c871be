#pragma once

#include <cstdint>
#include <vector>

#include "snowcount/distance.hpp"
#include "snowcount/ifs.hpp"

namespace snowcount {

enum class TubeMethod { LapidusPearseBound, Raster, MonteCarlo };

struct TubeEstimate {
    double epsilon = 0.0;
    double volume = 0.0;
    TubeMethod method = TubeMethod::Raster;
    double uncertainty = 0.0;  // 0 for the certified closed-form bound
};

// Closed-form upper bound on vol(K_{-eps}) for the classic Koch snowflake
// (p = 1/3, unit side), clamped to [0, vol(K)]:
//   3 [ eps^{2-d} 4^{-{x}} (3 sqrt3/40 9^{x} + sqrt3/2 3^{x} + (pi/3 - sqrt3)/6)
//       - eps^2 (pi/3 + 2 sqrt3)/3 ],   {x} = frac(-log_3(eps sqrt3)).
double lapidus_pearse_tube_koch(double epsilon);

// vol{x in Omega : dist(x, boundary) < eps}. For Raster/MonteCarlo the domain
// polygon must satisfy hausdorff_error <= eps/100. The optional field reuses a
// prebuilt distance field over domain.polygon.
TubeEstimate inner_tube_volume(const SnowflakeDomain& domain, double epsilon, TubeMethod method,
                               uint64_t mc_samples = 1000000, uint64_t seed = 2026,
                               const DistanceField* field = nullptr);

// (723 sqrt3 + 20 pi)/480, the certified upper inner Minkowski content of
// (boundary K, K) in dimension delta = log_3 4.
double content_upper_koch();

// eps'(eps) = eps^{delta-n} vol(Omega_{-eps}) / content - 1   (n = 2).
double eps_prime(const SnowflakeDomain& domain, double epsilon, double delta, double content,
                 TubeMethod method = TubeMethod::Raster);

struct ContentEstimate {
    double delta = 0.0;
    double content_upper = 0.0;
    double eps_prime_sup = 0.0;  // sup over the scanned eps of eps'(eps)
    double eps_min_scanned = 0.0, eps_max_scanned = 0.0;
};

// Scan-based content estimate; for K(1/3) the Lapidus-Pearse bound is used and
// content_upper is the certified value, otherwise the max of eps^{delta-2} vol
// over a geometric eps grid.
ContentEstimate estimate_content(const SnowflakeDomain& domain, int num_scales = 40,
                                 uint64_t seed = 2026);

// Whitney slice coefficient (cardinality of slices): the sup over k of
// content * (1 + max(0, eps'(5 sqrt(n) 2^{-k}))) * (5 sqrt(n))^{n - delta}.
// For K(1/3) eps' <= 0 by the monotone structure of the Lapidus-Pearse bound,
// so the value is content_upper_koch() * (5 sqrt2)^{2 - delta} <= 11.61.
double m_frak_koch();
double m_frak(const SnowflakeDomain& domain, const ContentEstimate& content);

}  // namespace snowcount
