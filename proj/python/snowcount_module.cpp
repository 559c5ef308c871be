// pybind11 bindings for the snowcount core: snowflake construction, content
// and Whitney machinery, cover certificates, the constants ledger, exact
// counting, the two-sided bound report, and the Neumann eigensolver.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "snowcount/constants.hpp"
#include "snowcount/counting.hpp"
#include "snowcount/eigensolver.hpp"
#include "snowcount/foliation.hpp"
#include "snowcount/ifs.hpp"
#include "snowcount/minkowski.hpp"
#include "snowcount/whitney.hpp"

namespace py = pybind11;
using namespace snowcount;

namespace {

SnowflakeKind kind_from(const std::string& s) {
    if (s == "triangle") return SnowflakeKind::TriangleK;
    if (s == "square") return SnowflakeKind::SquareR;
    throw std::invalid_argument("kind must be 'triangle' or 'square'");
}

BoundaryCondition bc_from(const std::string& s) {
    if (s == "neumann") return BoundaryCondition::Neumann;
    if (s == "dirichlet") return BoundaryCondition::Dirichlet;
    throw std::invalid_argument("bc must be 'neumann' or 'dirichlet'");
}

std::vector<std::pair<double, double>> polygon_of(const SnowflakeDomain& d) {
    std::vector<std::pair<double, double>> out;
    out.reserve(d.polygon.size());
    for (const Vec2& v : d.polygon) out.emplace_back(v.x, v.y);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Explicit Neumann counting-function remainder bounds for snowflake domains";

    // ---- snowflake geometry
    py::class_<SnowflakeDomain>(m, "SnowflakeDomain")
        .def_readonly("p", &SnowflakeDomain::p)
        .def_readonly("level", &SnowflakeDomain::level)
        .def_readonly("area_exact", &SnowflakeDomain::area_exact)
        .def_readonly("hausdorff_error", &SnowflakeDomain::hausdorff_error)
        .def_property_readonly("polygon", &polygon_of)
        .def_property_readonly("sides", &SnowflakeDomain::sides);
    m.def(
        "build_snowflake",
        [](const std::string& kind, double p, int level) {
            return build_snowflake(kind_from(kind), p, level);
        },
        py::arg("kind"), py::arg("p"), py::arg("level"));
    m.def("minkowski_dimension", &minkowski_dimension, py::arg("p"));
    m.def(
        "snowflake_area_exact",
        [](const std::string& kind, double p) { return snowflake_area_exact(kind_from(kind), p); },
        py::arg("kind"), py::arg("p"));
    m.def(
        "snowflake_diameter",
        [](const std::string& kind, double p) { return snowflake_diameter(kind_from(kind), p); },
        py::arg("kind"), py::arg("p"));

    // ---- Minkowski content / Whitney
    m.def("lapidus_pearse_tube_koch", &lapidus_pearse_tube_koch, py::arg("epsilon"));
    m.def("content_upper_koch", &content_upper_koch);
    m.def("m_frak_koch", &m_frak_koch);
    m.def("a_omega", &a_omega, py::arg("n"), py::arg("delta"), py::arg("m_frak"));
    py::class_<WhitneyCover>(m, "WhitneyCover")
        .def_readonly("slice_counts", &WhitneyCover::slice_counts)
        .def_readonly("retained_counts", &WhitneyCover::retained_counts)
        .def_readonly("domain_volume", &WhitneyCover::domain_volume)
        .def_readonly("delta", &WhitneyCover::delta)
        .def_property_readonly("cube_count",
                               [](const WhitneyCover& c) { return c.cubes.size(); });
    m.def(
        "build_whitney",
        [](const SnowflakeDomain& d, int k_max) { return build_whitney(d, k_max); },
        py::arg("domain"), py::arg("k_max"));

    // ---- cover certificates
    py::class_<ConstantRange>(m, "ConstantRange")
        .def_readonly("lo", &ConstantRange::lo)
        .def_readonly("hi", &ConstantRange::hi);
    py::class_<WellCoveredCertificate>(m, "WellCoveredCertificate")
        .def_readonly("p", &WellCoveredCertificate::p)
        .def_readonly("epsilon", &WellCoveredCertificate::epsilon)
        .def_readonly("k", &WellCoveredCertificate::k)
        .def_readonly("cardinality", &WellCoveredCertificate::cardinality)
        .def_readonly("count_fr", &WellCoveredCertificate::count_fr)
        .def_readonly("count_sr", &WellCoveredCertificate::count_sr)
        .def_readonly("count_lr", &WellCoveredCertificate::count_lr)
        .def_readonly("multiplicity", &WellCoveredCertificate::multiplicity)
        .def_readonly("coverage_fraction", &WellCoveredCertificate::coverage_fraction)
        .def_readonly("C_of_Omega", &WellCoveredCertificate::C_of_Omega)
        .def_readonly("beta_inf", &WellCoveredCertificate::beta_inf)
        .def_readonly("c_r", &WellCoveredCertificate::c_r)
        .def_readonly("c_L", &WellCoveredCertificate::c_L)
        .def_readonly("c_I", &WellCoveredCertificate::c_I)
        .def_readonly("c_diam", &WellCoveredCertificate::c_diam)
        .def_readonly("c_vol", &WellCoveredCertificate::c_vol);
    m.def(
        "scale_interval",
        [](double p, int k) {
            ConstantRange r = scale_interval(p, k);
            return std::make_pair(r.lo, r.hi);
        },
        py::arg("p"), py::arg("k"));
    m.def(
        "build_cover",
        [](const SnowflakeDomain& d, double epsilon, uint64_t mc_points, uint64_t seed) {
            return build_cover(d, epsilon, mc_points, seed);
        },
        py::arg("domain"), py::arg("epsilon"), py::arg("mc_points") = 100000,
        py::arg("seed") = 2026);

    // ---- constants ledger
    py::class_<ConstantsLedger>(m, "ConstantsLedger")
        .def_readonly("n", &ConstantsLedger::n)
        .def_readonly("delta", &ConstantsLedger::delta)
        .def_readonly("mu", &ConstantsLedger::mu)
        .def_readonly("c_E", &ConstantsLedger::c_E)
        .def_readonly("C1", &ConstantsLedger::C1)
        .def_readonly("C2", &ConstantsLedger::C2)
        .def_readonly("C3", &ConstantsLedger::C3)
        .def_readonly("M_Omega", &ConstantsLedger::M_Omega)
        .def_readonly("M_frak", &ConstantsLedger::M_frak)
        .def_readonly("A_Omega", &ConstantsLedger::A_Omega)
        .def_readonly("s1_coefficient", &ConstantsLedger::s1_coefficient);
    m.def("weyl_constant", &weyl_constant, py::arg("n"));
    m.def("c_E_rohde", &c_E_rohde, py::arg("p"));
    m.def(
        "koch_ledger",
        [](const std::string& kind, double p, double m_frak_value) {
            WellCoveredCertificate cert;
            cert.p = p;
            cert.c_r = {1.0, 1.0};
            cert.beta_inf = 1.0;
            cert.c_L = {1.0, c_L_upper(p)};
            cert.c_I = {1.0, c_I_upper(p)};
            cert.c_diam = {1.0, c_diam_upper(p)};
            cert.C_of_Omega = C_of_omega(kind_from(kind), p);
            double delta = minkowski_dimension(p);
            return make_ledger(cert, m_frak_value, a_omega(2, delta, m_frak_value));
        },
        py::arg("kind"), py::arg("p"), py::arg("m_frak"),
        "Ledger from the closed-form element bounds (c_r = beta_inf = 1).");
    m.def("weinberger_upper", &weinberger_upper, py::arg("vol"), py::arg("n"));

    // ---- exact counting and the two-sided bound
    m.def(
        "count_cube",
        [](int n, double side, double t, const std::string& bc) {
            return count_cube(CountQuery{n, side, t, bc_from(bc)});
        },
        py::arg("n"), py::arg("side"), py::arg("t"), py::arg("bc") = "neumann");
    m.def(
        "count_rectangle",
        [](const std::vector<double>& sides, double t, const std::string& bc) {
            return count_rectangle(sides, t, bc_from(bc));
        },
        py::arg("sides"), py::arg("t"), py::arg("bc") = "neumann");
    m.def("bracketing_defect", &bracketing_defect, py::arg("n"), py::arg("side"), py::arg("t"));
    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("domain_id", &BoundReport::domain_id)
        .def_readonly("t0", &BoundReport::t0)
        .def_readonly("t0_certified", &BoundReport::t0_certified)
        .def_readonly("M_abs", &BoundReport::M_abs)
        .def_readonly("M_tilde", &BoundReport::M_tilde)
        .def_readonly("C_tilde", &BoundReport::C_tilde)
        .def_readonly("delta", &BoundReport::delta)
        .def_readonly("volume", &BoundReport::volume)
        .def_readonly("weyl_coefficient", &BoundReport::weyl_coefficient)
        .def(
            "upper",
            [](const BoundReport& r, double t) { return eval_terms(r.upper, t); },
            py::arg("t"))
        .def(
            "lower",
            [](const BoundReport& r, double t) { return eval_terms(r.lower, t); },
            py::arg("t"));
    m.def(
        "make_bound_report",
        [](const ConstantsLedger& lg, const std::string& id, double vol, double diam,
           double c_vol_upper, double eps0) {
            return make_bound_report(lg, id, vol, diam, c_vol_upper, eps0);
        },
        py::arg("ledger"), py::arg("domain_id"), py::arg("vol"), py::arg("diam"),
        py::arg("c_vol_upper"), py::arg("eps0"));
    m.def("scale_report", &scale_report, py::arg("report"), py::arg("alpha"));

    // ---- eigensolver
    m.def(
        "neumann_eigenvalues",
        [](const std::vector<std::pair<double, double>>& polygon, double h, int m_eigs) {
            std::vector<Vec2> poly;
            poly.reserve(polygon.size());
            for (auto& [x, y] : polygon) poly.push_back({x, y});
            return smallest_eigs(rasterize_polygon(poly, h), m_eigs).eigenvalues;
        },
        py::arg("polygon"), py::arg("h"), py::arg("m") = 2,
        "Smallest Neumann eigenvalues of the rasterized polygon (5-point stencil).");
    m.def("richardson", &richardson, py::arg("coarse"), py::arg("fine"));
}
