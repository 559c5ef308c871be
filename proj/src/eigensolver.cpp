#include "snowcount/eigensolver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>

#include "snowcount/distance.hpp"

namespace snowcount {

namespace {

// keep the largest 4-connected component (conservative shrink; stray cells can
// appear where thin fringe features meet the grid)
void prune_to_largest_component(GridMask& m) {
    std::vector<int> comp((size_t)m.nx * m.ny, -1);
    int best = -1;
    size_t best_size = 0;
    int n_comp = 0;
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i) {
            size_t idx = (size_t)j * m.nx + i;
            if (!m.occ[idx] || comp[idx] >= 0) continue;
            size_t size = 0;
            std::queue<std::pair<int, int>> bfs;
            bfs.push({i, j});
            comp[idx] = n_comp;
            while (!bfs.empty()) {
                auto [x, y] = bfs.front();
                bfs.pop();
                ++size;
                const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int nx2 = x + dx[d], ny2 = y + dy[d];
                    if (!m.at(nx2, ny2)) continue;
                    size_t nidx = (size_t)ny2 * m.nx + nx2;
                    if (comp[nidx] >= 0) continue;
                    comp[nidx] = n_comp;
                    bfs.push({nx2, ny2});
                }
            }
            if (size > best_size) {
                best_size = size;
                best = n_comp;
            }
            ++n_comp;
        }
    m.cell_count = 0;
    for (size_t idx = 0; idx < m.occ.size(); ++idx) {
        m.occ[idx] = comp[idx] == best;
        m.cell_count += m.occ[idx];
    }
    m.connected = m.cell_count > 0;
}

using SpMat = Eigen::SparseMatrix<double>;

SpMat assemble_neumann(const GridMask& mask, std::vector<int>& index) {
    index.assign((size_t)mask.nx * mask.ny, -1);
    int n = 0;
    for (size_t idx = 0; idx < index.size(); ++idx)
        if (mask.occ[idx]) index[idx] = n++;
    std::vector<Eigen::Triplet<double>> trip;
    double w = 1.0 / (mask.h * mask.h);
    for (int j = 0; j < mask.ny; ++j)
        for (int i = 0; i < mask.nx; ++i) {
            if (!mask.at(i, j)) continue;
            int me = index[(size_t)j * mask.nx + i];
            int deg = 0;
            const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                if (!mask.at(i + dx[d], j + dy[d])) continue;  // reflecting closure
                ++deg;
                trip.push_back({me, index[(size_t)(j + dy[d]) * mask.nx + i + dx[d]], -w});
            }
            trip.push_back({me, me, deg * w});
        }
    SpMat A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

}  // namespace

GridMask rasterize_polygon(const std::vector<Vec2>& polygon, double h, double margin) {
    if (!(h > 0.0)) throw std::invalid_argument("rasterize_polygon: h > 0");
    DistanceField df(polygon);
    Box2 bb = df.bounds();
    GridMask m;
    m.h = h;
    m.origin = {bb.lo.x - h, bb.lo.y - h};
    m.nx = (int)std::ceil((bb.hi.x - m.origin.x) / h) + 1;
    m.ny = (int)std::ceil((bb.hi.y - m.origin.y) / h) + 1;
    m.occ.assign((size_t)m.nx * m.ny, 0);
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i)
            m.occ[(size_t)j * m.nx + i] = df.signed_distance(m.center(i, j)) > margin;
    prune_to_largest_component(m);
    if (m.cell_count == 0) throw std::invalid_argument("rasterize_polygon: empty raster");
    return m;
}

GridMask rasterize_element(const CoverElement& element, double p, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("rasterize_element: h > 0");
    std::vector<Vec2> outline = element_polygon(element, p, 5);
    Box2 bb{outline[0], outline[0]};
    for (const Vec2& v : outline) {
        bb.lo = {std::fmin(bb.lo.x, v.x), std::fmin(bb.lo.y, v.y)};
        bb.hi = {std::fmax(bb.hi.x, v.x), std::fmax(bb.hi.y, v.y)};
    }
    GridMask m;
    m.h = h;
    m.origin = {bb.lo.x - h, bb.lo.y - h};
    m.nx = (int)std::ceil((bb.hi.x - m.origin.x) / h) + 1;
    m.ny = (int)std::ceil((bb.hi.y - m.origin.y) / h) + 1;
    m.occ.assign((size_t)m.nx * m.ny, 0);
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i) {
            Vec2 c = m.center(i, j);  // local coordinates; membership is exact
            m.occ[(size_t)j * m.nx + i] = element_contains(element, p, element.placement.apply(c));
        }
    prune_to_largest_component(m);
    if (m.cell_count == 0) throw std::invalid_argument("rasterize_element: empty raster");
    return m;
}

std::vector<double> apply_neumann(const GridMask& mask, const std::vector<double>& u) {
    std::vector<int> index;
    SpMat A = assemble_neumann(mask, index);
    if ((size_t)A.rows() != u.size())
        throw std::invalid_argument("apply_neumann: field size mismatch");
    Eigen::Map<const Eigen::VectorXd> v(u.data(), (Eigen::Index)u.size());
    Eigen::VectorXd w = A * v;
    return {w.data(), w.data() + w.size()};
}

SpectralResult smallest_eigs(const GridMask& mask, int m, double tol) {
    if (m < 2) throw std::invalid_argument("smallest_eigs: m >= 2");
    if (!mask.connected) throw std::invalid_argument("smallest_eigs: disconnected mask");
    std::vector<int> index;
    SpMat A = assemble_neumann(mask, index);
    int n = (int)A.rows();
    if (n < m) throw std::invalid_argument("smallest_eigs: raster smaller than m");

    // ground the last unknown: solving the reduced system applies the inverse
    // of A on the mean-zero complement exactly (the grounded equation is the
    // negative sum of the others)
    SpMat Ared = A.topLeftCorner(n - 1, n - 1);
    Eigen::SimplicialLDLT<SpMat> solver(Ared);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("smallest_eigs: factorization failed");
    auto apply_inverse = [&](const Eigen::VectorXd& b) {
        Eigen::VectorXd x(n);
        x.head(n - 1) = solver.solve(b.head(n - 1));
        x[n - 1] = 0.0;
        x.array() -= x.mean();
        return x;
    };

    int want = m - 1;  // nonzero modes; the 0 mode is exact
    int budget = std::min(n - 1, (int)(50.0 * std::sqrt((double)n)));
    int maxit = std::min(budget, std::max(3 * want + 30, 60));
    Eigen::MatrixXd V(n, maxit + 1);
    std::vector<double> al, be;
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> g;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = g(rng);
    v.array() -= v.mean();
    v.normalize();
    V.col(0) = v;
    SpectralResult res;
    res.h = mask.h;
    int j = 0;
    Eigen::MatrixXd S;
    Eigen::VectorXd theta;
    while (j < maxit) {
        Eigen::VectorXd w = apply_inverse(V.col(j));
        double a = V.col(j).dot(w);
        al.push_back(a);
        w -= a * V.col(j);
        if (j > 0) w -= be[j - 1] * V.col(j - 1);
        // full reorthogonalization, twice for safety
        for (int pass = 0; pass < 2; ++pass)
            for (int i2 = 0; i2 <= j; ++i2) w -= V.col(i2).dot(w) * V.col(i2);
        w.array() -= w.mean();
        double b = w.norm();
        ++j;
        // Ritz values of the tridiagonal section
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(j, j);
        for (int i2 = 0; i2 < j; ++i2) {
            T(i2, i2) = al[i2];
            if (i2 + 1 < j) T(i2, i2 + 1) = T(i2 + 1, i2) = be[i2];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta = es.eigenvalues();
        S = es.eigenvectors();
        if (j >= want) {
            bool ok = true;  // largest `want` Ritz pairs of the inverse operator
            for (int i2 = 0; i2 < want; ++i2) {
                int col = j - 1 - i2;
                if (b * std::abs(S(j - 1, col)) > tol * std::abs(theta[col])) ok = false;
            }
            if (ok || b < 1e-14) break;
        }
        be.push_back(b);
        V.col(j) = w / b;
    }
    res.iterations = j;

    std::vector<std::pair<double, Eigen::VectorXd>> pairs;
    for (int i2 = 0; i2 < want && i2 < j; ++i2) {
        int col = j - 1 - i2;
        if (!(theta[col] > 0.0)) continue;
        Eigen::VectorXd x = V.leftCols(j) * S.col(col);
        x.array() -= x.mean();
        x.normalize();
        double lam = x.dot(A * x);  // Rayleigh polish
        pairs.push_back({lam, x});
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    res.eigenvalues.push_back(0.0);
    res.residuals.push_back(0.0);
    for (auto& [lam, x] : pairs) {
        res.eigenvalues.push_back(lam);
        res.residuals.push_back((A * x - lam * x).norm() / (std::abs(lam) + 1.0));
    }
    if ((int)res.eigenvalues.size() < m)
        throw std::runtime_error("smallest_eigs: iteration budget exhausted before convergence");
    res.eigenvalues.resize(m);
    res.residuals.resize(m);
    return res;
}

double lem32_lower_bound(const CoverElement& element, double alpha) {
    double l2E = element.lambda2_E, r = element.r, I = element.I_beta, L = element.L_up;
    double bi = element.beta_inf;
    if (!(l2E > 0.0 && r > 0.0 && I > 0.0 && L > 0.0 && bi > 0.0))
        throw std::domain_error("lem32_lower_bound: element constants must be positive");
    auto f = [&](double a) {
        return 1.0 / ((1.0 / l2E) * (1.0 + ((1.0 + a) / r) * I / bi) + (1.0 + 1.0 / a) * L * I / bi);
    };
    if (alpha > 0.0) return f(alpha);
    double lo = 1e-6, hi = 1e6;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = f(a), fb = f(b);
    while (hi - lo > 1e-10) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = f(a);
        }
    }
    return f(0.5 * (lo + hi));
}

PoincareResult poincare_check(const CoverElement& element, double p, int trials, uint64_t seed,
                              double h) {
    GridMask mask = rasterize_element(element, p, h);
    std::vector<size_t> cells, e_cells;
    for (int j = 0; j < mask.ny; ++j)
        for (int i = 0; i < mask.nx; ++i)
            if (mask.at(i, j)) {
                cells.push_back((size_t)j * mask.nx + i);
                if (mask.center(i, j).y < 0.0) e_cells.push_back(cells.size() - 1);
            }
    if (e_cells.empty()) throw std::invalid_argument("poincare_check: raster misses the E box");
    PoincareResult out;
    out.bound_C = 1.0 / lem32_lower_bound(element);
    out.trials = trials;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI), uamp(-1.0, 1.0);
    double kmax = M_PI / (8.0 * h);  // band limit: wavelengths >= 16 h
    std::uniform_real_distribution<double> uk(-kmax, kmax);
    std::vector<double> u(cells.size());
    for (int t = 0; t < trials; ++t) {
        struct Wave {
            double kx, ky, ph, a;
        };
        std::vector<Wave> waves(6);
        for (Wave& w : waves) w = {uk(rng), uk(rng), uphase(rng), uamp(rng)};
        for (size_t c = 0; c < cells.size(); ++c) {
            int i = (int)(cells[c] % mask.nx), j = (int)(cells[c] / mask.nx);
            Vec2 q = mask.center(i, j);
            double val = 0.0;
            for (const Wave& w : waves) val += w.a * std::cos(w.kx * q.x + w.ky * q.y + w.ph);
            u[c] = val;
        }
        double mean_e = 0.0;
        for (size_t e : e_cells) mean_e += u[e];
        mean_e /= (double)e_cells.size();
        double num = 0.0;
        for (double v : u) num += (v - mean_e) * (v - mean_e);
        num *= h * h;
        // sum over interior edges of (du)^2 approximates the Dirichlet energy
        std::vector<int> idx((size_t)mask.nx * mask.ny, -1);
        for (size_t c = 0; c < cells.size(); ++c) idx[cells[c]] = (int)c;
        double den = 0.0;
        for (size_t c = 0; c < cells.size(); ++c) {
            int i = (int)(cells[c] % mask.nx), j = (int)(cells[c] / mask.nx);
            if (mask.at(i + 1, j)) {
                double d = u[(size_t)idx[cells[c] + 1]] - u[c];
                den += d * d;
            }
            if (mask.at(i, j + 1)) {
                double d = u[(size_t)idx[cells[c] + mask.nx]] - u[c];
                den += d * d;
            }
        }
        if (den < 1e-300) continue;  // constant trial; excluded by construction
        out.worst_ratio = std::fmax(out.worst_ratio, num / den);
    }
    return out;
}

}  // namespace snowcount
