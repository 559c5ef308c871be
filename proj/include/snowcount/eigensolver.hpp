#pragma once

#include <cstdint>
#include <vector>

#include "snowcount/foliation.hpp"
#include "snowcount/geometry.hpp"

namespace snowcount {

// Cell-centered occupancy raster of a domain.
struct GridMask {
    double h = 0.0;
    int nx = 0, ny = 0;
    Vec2 origin;  // lower-left corner of cell (0, 0)
    std::vector<uint8_t> occ;
    bool connected = false;  // 4-neighbour connectivity of the occupied cells
    size_t cell_count = 0;
    bool at(int i, int j) const {
        return i >= 0 && i < nx && j >= 0 && j < ny && occ[(size_t)j * nx + i];
    }
    Vec2 center(int i, int j) const {
        return {origin.x + (i + 0.5) * h, origin.y + (j + 0.5) * h};
    }
};

// cell occupied iff its center lies inside with signed distance > margin
GridMask rasterize_polygon(const std::vector<Vec2>& polygon, double h, double margin = 0.0);

// exact membership raster of a cover element in local coordinates
GridMask rasterize_element(const CoverElement& element, double p, double h);

// One application of the 5-point Neumann Laplacian to a field given on the
// occupied cells in row-major order (for operator-level checks).
std::vector<double> apply_neumann(const GridMask& mask, const std::vector<double>& u);

struct SpectralResult {
    std::vector<double> eigenvalues;  // ascending, starting with the 0 mode
    std::vector<double> residuals;    // ||A u - lambda u|| / ((|lambda| + 1) ||u||)
    double h = 0.0;
    int iterations = 0;
};

// First m Neumann eigenvalues of the 5-point Laplacian on the mask
// (reflecting closure: missing neighbours dropped). Shift-free: the inverse of
// the operator on the mean-zero complement is applied exactly via a grounded
// sparse factorization, and Lanczos with full reorthogonalization runs there.
SpectralResult smallest_eigs(const GridMask& mask, int m, double tol = 1e-8);

// second-order Richardson extrapolation from grids h and h/2
inline double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

// lambda_2 lower bound of the foliation lemma for one cover element:
// [ (1/l2E)(1 + ((1+alpha)/r) I) + (1 + 1/alpha) L I ]^{-1}; alpha <= 0 means
// numerically optimized.
double lem32_lower_bound(const CoverElement& element, double alpha = 0.0);

struct PoincareResult {
    double worst_ratio = 0.0;  // max over trials of ||u - mean_E u||^2 / ||grad u||^2
    double bound_C = 0.0;      // 1 / lem32_lower_bound
    int trials = 0;
};

// Monte-Carlo verification of the Poincare-Wirtinger inequality behind the
// lemma, with band-limited random trial fields on a raster of the element.
PoincareResult poincare_check(const CoverElement& element, double p, int trials, uint64_t seed,
                              double h);

}  // namespace snowcount
