// snowcount -- command line front end.
//
// Subcommands: snowflake, whitney, cover, constants, bounds, verify.
// A structured config file (key-value with [sections]) can preload any option
// via --config; explicit flags win. All reports embed a schema version and a
// provenance tag {paper_formula | derived | measured} on every number.
// Identical config + seed produces byte-identical output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "snowcount/constants.hpp"
#include "snowcount/counting.hpp"
#include "snowcount/eigensolver.hpp"
#include "snowcount/foliation.hpp"
#include "snowcount/ifs.hpp"
#include "snowcount/minkowski.hpp"
#include "snowcount/threads.hpp"
#include "snowcount/whitney.hpp"

using json = nlohmann::ordered_json;
using namespace snowcount;

namespace {

const char* kSchema = "snowcount-report/1.0";

struct CliError : std::runtime_error {
    std::vector<std::string> violations;
    explicit CliError(std::vector<std::string> v)
        : std::runtime_error("config validation failed"), violations(std::move(v)) {}
};

json num(double value, const char* provenance) {
    return json{{"value", value}, {"provenance", provenance}};
}

json inum(uint64_t value, const char* provenance) {
    return json{{"value", value}, {"provenance", provenance}};
}

json range_json(const ConstantRange& r, const char* provenance) {
    return json{{"lo", num(r.lo, provenance)}, {"hi", num(r.hi, provenance)}};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

// Options shared across subcommands.
struct RunConfig {
    double p = 1.0 / 3.0;
    std::string kind = "triangle";
    int level = 7;
    double epsilon = 0.0;  // 0: derive from --k
    int k = 2;
    double t_min = 0.1, t_max = 1e4;
    int t_steps = 25;
    int grid = 6;  // raster cells per epsilon in the eigensolver
    uint64_t seed = 2026;
    uint64_t mc = 100000;
    std::string out;
    std::string format = "json";
};

SnowflakeKind parse_kind(const std::string& s) {
    return s == "square" ? SnowflakeKind::SquareR : SnowflakeKind::TriangleK;
}

void validate_common(const RunConfig& cfg, std::vector<std::string>& bad) {
    if (!(cfg.p > kPMin && cfg.p < kPMax))
        bad.push_back("p must lie in (1/4, (sqrt3-1)/2), got " + fmt(cfg.p));
    if (cfg.kind != "triangle" && cfg.kind != "square")
        bad.push_back("kind must be 'triangle' or 'square', got '" + cfg.kind + "'");
    if (cfg.level < 0 || cfg.level > 12)
        bad.push_back("level must lie in [0, 12], got " + std::to_string(cfg.level));
    if (cfg.format != "json" && cfg.format != "csv")
        bad.push_back("format must be 'json' or 'csv', got '" + cfg.format + "'");
}

void require(std::vector<std::string>& bad) {
    if (!bad.empty()) throw CliError(std::move(bad));
}

double resolve_epsilon(const RunConfig& cfg, std::vector<std::string>& bad) {
    if (cfg.epsilon > 0.0) {
        ConstantRange top = scale_interval(cfg.p, 1);
        if (!(cfg.epsilon <= top.hi))
            bad.push_back("epsilon exceeds the generation-1 scale interval (hi = " +
                          fmt(top.hi) + ")");
        return cfg.epsilon;
    }
    if (cfg.k < 1 || cfg.k > 12) {
        bad.push_back("k must lie in [1, 12], got " + std::to_string(cfg.k));
        return 0.0;
    }
    ConstantRange jk = scale_interval(cfg.p, cfg.k);
    return std::sqrt(jk.lo * jk.hi);  // geometric midpoint of J_k
}

// Closed-form certificate for the p-snowflake: measured ranges replaced by
// their proven bounds (c_r == 1 and beta_inf == 1 are exact).
WellCoveredCertificate closed_form_cert(SnowflakeKind kind, double p) {
    WellCoveredCertificate c;
    c.p = p;
    c.c_r = {1.0, 1.0};
    c.beta_inf = 1.0;
    c.c_L = {1.0, c_L_upper(p)};
    c.c_I = {1.0, c_I_upper(p)};
    c.c_diam = {1.0, c_diam_upper(p)};
    c.C_of_Omega = C_of_omega(kind, p);
    return c;
}

double m_frak_for(const RunConfig& cfg, SnowflakeKind kind, const char** provenance) {
    if (kind == SnowflakeKind::TriangleK && std::abs(cfg.p - 1.0 / 3.0) < 1e-12) {
        *provenance = "paper_formula";
        return m_frak_koch();
    }
    *provenance = "measured";
    SnowflakeDomain dom = build_snowflake(kind, cfg.p, cfg.level);
    ContentEstimate est = estimate_content(dom, 40, cfg.seed);
    return m_frak(dom, est);
}

ConstantsLedger ledger_for(const RunConfig& cfg, SnowflakeKind kind, double* mf_out,
                           const char** mf_prov) {
    WellCoveredCertificate cert = closed_form_cert(kind, cfg.p);
    double mf = m_frak_for(cfg, kind, mf_prov);
    if (mf_out) *mf_out = mf;
    double delta = minkowski_dimension(cfg.p);
    return make_ledger(cert, mf, a_omega(2, delta, mf));
}

json report_header(const std::string& command, const RunConfig& cfg) {
    json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["params"] = {{"p", cfg.p},    {"kind", cfg.kind}, {"level", cfg.level},
                   {"seed", cfg.seed}, {"threads", worker_count()}};
    return j;
}

// ---------------------------------------------------------------- snowflake

int cmd_snowflake(const RunConfig& cfg) {
    std::vector<std::string> bad;
    validate_common(cfg, bad);
    require(bad);
    SnowflakeKind kind = parse_kind(cfg.kind);
    SnowflakeDomain dom = build_snowflake(kind, cfg.p, cfg.level);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "x,y\n";
        for (const Vec2& v : dom.polygon) os << v.x << "," << v.y << "\n";
        emit(os.str(), cfg.out);
        return 0;
    }
    json j = report_header("snowflake", cfg);
    j["delta"] = num(minkowski_dimension(cfg.p), "paper_formula");
    j["area_exact"] = num(dom.area_exact, "derived");
    j["diameter"] = num(snowflake_diameter(kind, cfg.p), "derived");
    j["hausdorff_error"] = num(dom.hausdorff_error, "derived");
    j["vertex_count"] = inum(dom.polygon.size(), "derived");
    json verts = json::array();
    for (const Vec2& v : dom.polygon) verts.push_back({v.x, v.y});
    j["polygon"] = std::move(verts);
    emit(j.dump(2), cfg.out);
    return 0;
}

// ------------------------------------------------------------------ whitney

int cmd_whitney(const RunConfig& cfg) {
    std::vector<std::string> bad;
    validate_common(cfg, bad);
    if (cfg.k < 1 || cfg.k > 16)
        bad.push_back("k (deepest Whitney slice) must lie in [1, 16], got " +
                      std::to_string(cfg.k));
    require(bad);
    SnowflakeKind kind = parse_kind(cfg.kind);
    SnowflakeDomain dom = build_snowflake(kind, cfg.p, cfg.level);
    WhitneyCover cover = build_whitney(dom, cfg.k);
    const char* mf_prov = "paper_formula";
    double mf = m_frak_for(cfg, kind, &mf_prov);
    double delta = cover.delta;
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "k,raw_count,retained_count,slice_bound\n";
        for (auto& [k, cnt] : cover.slice_counts) {
            uint64_t kept = cover.retained_counts.count(k) ? cover.retained_counts.at(k) : 0;
            os << k << "," << cnt << "," << kept << "," << mf * std::pow(2.0, k * delta)
               << "\n";
        }
        emit(os.str(), cfg.out);
        return 0;
    }
    json j = report_header("whitney", cfg);
    j["delta"] = num(delta, "paper_formula");
    j["m_frak"] = num(mf, mf_prov);
    j["domain_volume"] = num(cover.domain_volume, "derived");
    j["distance_error"] = num(cover.distance_error, "derived");
    j["eps_trunc"] = num(cover.eps_trunc, "derived");
    j["cube_count"] = inum(cover.cubes.size(), "measured");
    json slices = json::array();
    for (auto& [k, cnt] : cover.slice_counts) {
        uint64_t kept = cover.retained_counts.count(k) ? cover.retained_counts.at(k) : 0;
        slices.push_back({{"k", k},
                          {"raw_count", inum(cnt, "measured")},
                          {"retained_count", inum(kept, "measured")},
                          {"slice_bound", num(mf * std::pow(2.0, k * delta), "derived")}});
    }
    j["slices"] = std::move(slices);
    if (cfg.epsilon > 0.0) {
        EpsRestriction res = restrict_eps(dom, cover, cfg.epsilon, mf);
        j["restriction"] = {{"epsilon", num(res.epsilon, "derived")},
                            {"cube_count", inum(res.cubes.size(), "measured")},
                            {"perimeter", num(res.perimeter, "measured")},
                            {"perimeter_bound", num(res.A_bound, "derived")}};
    }
    emit(j.dump(2), cfg.out);
    return 0;
}

// -------------------------------------------------------------------- cover

json certificate_json(const WellCoveredCertificate& cert) {
    json j;
    j["p"] = cert.p;
    j["epsilon"] = num(cert.epsilon, "derived");
    j["k"] = cert.k;
    j["cardinality"] = inum(cert.cardinality, "measured");
    j["count_fr"] = inum(cert.count_fr, "measured");
    j["count_sr"] = inum(cert.count_sr, "measured");
    j["count_lr"] = inum(cert.count_lr, "measured");
    j["C_of_Omega"] = num(cert.C_of_Omega, "paper_formula");
    j["multiplicity"] = inum((uint64_t)cert.multiplicity, "measured");
    j["coverage_fraction"] = num(cert.coverage_fraction, "measured");
    j["mc_points"] = inum(cert.mc_points, "measured");
    j["beta_inf"] = num(cert.beta_inf, "derived");
    j["c_r"] = range_json(cert.c_r, "derived");
    j["c_L"] = range_json(cert.c_L, "measured");
    j["c_I"] = range_json(cert.c_I, "measured");
    j["c_diam"] = range_json(cert.c_diam, "measured");
    j["c_vol"] = range_json(cert.c_vol, "measured");
    return j;
}

int cmd_cover(const RunConfig& cfg) {
    std::vector<std::string> bad;
    validate_common(cfg, bad);
    double eps = resolve_epsilon(cfg, bad);
    require(bad);
    SnowflakeKind kind = parse_kind(cfg.kind);
    SnowflakeDomain dom = build_snowflake(kind, cfg.p, cfg.level);
    WellCoveredCertificate cert = build_cover(dom, eps, cfg.mc, cfg.seed);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "kind,count\nfR," << cert.count_fr << "\nsR," << cert.count_sr << "\nlR,"
           << cert.count_lr << "\ntotal," << cert.cardinality << "\n";
        emit(os.str(), cfg.out);
        return 0;
    }
    json j = report_header("cover", cfg);
    j["certificate"] = certificate_json(cert);
    emit(j.dump(2), cfg.out);
    return 0;
}

// ---------------------------------------------------------------- constants

json ledger_json(const ConstantsLedger& lg, double mf, const char* mf_prov) {
    json j;
    j["n"] = lg.n;
    j["delta"] = num(lg.delta, "paper_formula");
    j["mu"] = lg.mu;
    j["c_E"] = num(lg.c_E, "paper_formula");
    j["C1"] = num(lg.C1, "derived");
    j["C2"] = num(lg.C2, "derived");
    j["C3"] = num(lg.C3, "derived");
    j["M_frak"] = num(lg.M_frak, mf_prov);
    j["A_Omega"] = num(lg.A_Omega, "derived");
    j["C_of_Omega"] = num(lg.C_of_Omega, "paper_formula");
    j["s1_coefficient"] = num(lg.s1_coefficient, "derived");
    j["M_Omega"] = num(lg.M_Omega, "derived");  // final asymptotic coefficient
    json weyl;
    for (auto& [n, cw] : lg.weyl) weyl[std::to_string(n)] = num(cw, "paper_formula");
    j["weyl"] = std::move(weyl);
    j["diagnostics"] = {{"C1_alpha_opt", num(lg.C1_alpha_opt, "derived")},
                        {"alpha_star", num(lg.alpha_star, "derived")},
                        {"C3_proof_variant", num(lg.C3_proof_variant, "derived")},
                        {"proof_variant_exceeds", lg.proof_variant_exceeds}};
    (void)mf;
    return j;
}

int cmd_constants(const RunConfig& cfg) {
    std::vector<std::string> bad;
    validate_common(cfg, bad);
    require(bad);
    SnowflakeKind kind = parse_kind(cfg.kind);
    double mf = 0.0;
    const char* mf_prov = "paper_formula";
    ConstantsLedger lg = ledger_for(cfg, kind, &mf, &mf_prov);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "name,value,provenance\n"
           << "delta," << lg.delta << ",paper_formula\n"
           << "c_E," << lg.c_E << ",paper_formula\n"
           << "C1," << lg.C1 << ",derived\n"
           << "C2," << lg.C2 << ",derived\n"
           << "C3," << lg.C3 << ",derived\n"
           << "M_frak," << lg.M_frak << "," << mf_prov << "\n"
           << "A_Omega," << lg.A_Omega << ",derived\n"
           << "C_of_Omega," << lg.C_of_Omega << ",paper_formula\n"
           << "s1_coefficient," << lg.s1_coefficient << ",derived\n"
           << "M_Omega," << lg.M_Omega << ",derived\n";
        emit(os.str(), cfg.out);
        return 0;
    }
    json j = report_header("constants", cfg);
    j["element_bounds"] = {{"c_L_upper", num(c_L_upper(cfg.p), "paper_formula")},
                           {"c_I_upper", num(c_I_upper(cfg.p), "paper_formula")},
                           {"c_diam_upper", num(c_diam_upper(cfg.p), "paper_formula")}};
    j["ledger"] = ledger_json(lg, mf, mf_prov);
    emit(j.dump(2), cfg.out);
    return 0;
}

// ------------------------------------------------------------------- bounds

int cmd_bounds(const RunConfig& cfg) {
    std::vector<std::string> bad;
    validate_common(cfg, bad);
    if (!(cfg.t_min > 0.0 && cfg.t_max > cfg.t_min))
        bad.push_back("need 0 < t-min < t-max, got [" + fmt(cfg.t_min) + ", " +
                      fmt(cfg.t_max) + "]");
    if (cfg.t_steps < 2 || cfg.t_steps > 100000)
        bad.push_back("t-steps must lie in [2, 100000], got " + std::to_string(cfg.t_steps));
    require(bad);
    SnowflakeKind kind = parse_kind(cfg.kind);
    double mf = 0.0;
    const char* mf_prov = "paper_formula";
    ConstantsLedger lg = ledger_for(cfg, kind, &mf, &mf_prov);
    double vol = snowflake_area_exact(kind, cfg.p);
    double diam = snowflake_diameter(kind, cfg.p);
    // c_vol^+ is measured on a real cover; eps0 is the top of the served range
    SnowflakeDomain dom = build_snowflake(kind, cfg.p, cfg.level);
    ConstantRange j3 = scale_interval(cfg.p, 3);
    WellCoveredCertificate cert = build_cover(dom, j3.lo * 1.0001, cfg.mc, cfg.seed);
    double eps0 = scale_interval(cfg.p, 1).hi;
    std::string domain_id =
        (kind == SnowflakeKind::TriangleK ? "K(" : "R(") + fmt(cfg.p) + ")";
    BoundReport rep = make_bound_report(lg, domain_id, vol, diam, cert.c_vol.hi, eps0);

    double lt0 = std::log(cfg.t_min), lt1 = std::log(cfg.t_max);
    auto t_at = [&](int i) { return std::exp(lt0 + (lt1 - lt0) * i / (cfg.t_steps - 1)); };
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "t,upper,lower,weyl_term\n";
        for (int i = 0; i < cfg.t_steps; ++i) {
            double t = t_at(i);
            os << t << "," << eval_terms(rep.upper, std::fmax(t, rep.t0)) << ","
               << eval_terms(rep.lower, t) << ","
               << rep.weyl_coefficient * std::pow(t, 0.5 * rep.n) << "\n";
        }
        emit(os.str(), cfg.out);
        return 0;
    }
    json j = report_header("bounds", cfg);
    j["domain_id"] = rep.domain_id;
    j["volume"] = num(rep.volume, "derived");
    j["diameter"] = num(diam, "derived");
    j["weyl_coefficient"] = num(rep.weyl_coefficient, "paper_formula");
    j["delta"] = num(rep.delta, "paper_formula");
    j["t0"] = num(rep.t0, "paper_formula");
    j["t0_certified"] = num(rep.t0_certified, "derived");
    j["M_abs"] = num(rep.M_abs, "derived");
    j["M_tilde"] = num(rep.M_tilde, "derived");
    j["C_tilde"] = num(rep.C_tilde, "measured");
    auto terms_json = [](const std::vector<PowerTerm>& terms) {
        json arr = json::array();
        for (const PowerTerm& pt : terms)
            arr.push_back({{"coefficient", num(pt.coefficient, "derived")},
                           {"exponent", num(pt.exponent, "paper_formula")}});
        return arr;
    };
    j["upper_terms"] = terms_json(rep.upper);
    j["lower_terms"] = terms_json(rep.lower);
    json rows = json::array();
    for (int i = 0; i < cfg.t_steps; ++i) {
        double t = t_at(i);
        rows.push_back({{"t", num(t, "derived")},
                        {"upper", num(eval_terms(rep.upper, std::fmax(t, rep.t0)), "derived")},
                        {"lower", num(eval_terms(rep.lower, t), "derived")}});
    }
    j["samples"] = std::move(rows);
    emit(j.dump(2), cfg.out);
    return 0;
}

// ------------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg) {
    std::vector<std::string> bad;
    validate_common(cfg, bad);
    double eps = resolve_epsilon(cfg, bad);
    if (cfg.grid < 2 || cfg.grid > 64)
        bad.push_back("grid (cells per epsilon) must lie in [2, 64], got " +
                      std::to_string(cfg.grid));
    require(bad);
    SnowflakeKind kind = parse_kind(cfg.kind);
    SnowflakeDomain dom = build_snowflake(kind, cfg.p, cfg.level);
    WellCoveredCertificate cert = build_cover(dom, eps, cfg.mc, cfg.seed);
    double c1 = c1_section5(cert, c_E_rohde(cfg.p));
    PKochSystem sys = make_p_koch(cfg.p);

    bool all_ok = true;
    json elements = json::array();
    for (ElementKind want :
         {ElementKind::FringedRect, ElementKind::ShortRect, ElementKind::LongRect}) {
        const CoverElement* el = nullptr;
        for (const CoverElement& e : cert.elements)
            if (e.kind == want) {
                el = &e;
                break;
            }
        if (!el) continue;
        double h = el->epsilon / cfg.grid;
        double lc = smallest_eigs(rasterize_element(*el, cfg.p, 2.0 * h), 2).eigenvalues[1];
        double lf = smallest_eigs(rasterize_element(*el, cfg.p, h), 2).eigenvalues[1];
        double l2 = richardson(lc, lf);
        double target = c1 / (el->epsilon * el->epsilon);
        double lem = lem32_lower_bound(*el);
        PoincareResult pr = poincare_check(*el, cfg.p, 100, cfg.seed, h);
        double area = change_of_variables_area(*el, sys);
        double area_err = std::abs(area - el->vol) / el->vol;
        bool ok = l2 >= 1.05 * target && l2 >= lem && pr.worst_ratio <= pr.bound_C &&
                  area_err <= 5e-3;
        all_ok = all_ok && ok;
        const char* name = want == ElementKind::FringedRect  ? "fR"
                           : want == ElementKind::ShortRect ? "sR"
                                                            : "lR";
        elements.push_back({{"kind", name},
                            {"epsilon", num(el->epsilon, "derived")},
                            {"lambda2", num(l2, "measured")},
                            {"lambda2_bound", num(target, "derived")},
                            {"headroom", num(l2 / target, "measured")},
                            {"lemma_lower_bound", num(lem, "derived")},
                            {"poincare_worst_ratio", num(pr.worst_ratio, "measured")},
                            {"poincare_bound", num(pr.bound_C, "derived")},
                            {"area_identity_rel_error", num(area_err, "measured")},
                            {"pass", ok}});
    }
    json j = report_header("verify", cfg);
    j["epsilon"] = num(eps, "derived");
    j["C1"] = num(c1, "derived");
    j["elements"] = std::move(elements);
    j["pass"] = all_ok;
    emit(j.dump(2), cfg.out);
    return all_ok ? 0 : 1;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--p", cfg.p, "similarity ratio of the p-Koch system");
    cmd->add_option("--kind", cfg.kind, "seed polygon: triangle (K) or square (R)");
    cmd->add_option("--level", cfg.level, "boundary refinement level");
    cmd->add_option("--seed", cfg.seed, "random seed for all sampling");
    cmd->add_option("--out", cfg.out, "output path ('-' or empty: stdout)");
    cmd->add_option("--format", cfg.format, "output format: json or csv");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"snowcount: explicit spectral remainder bounds for snowflake domains"};
    app.require_subcommand(1);
    app.set_config("--config", "", "config file (key-value with [subcommand] sections)");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    RunConfig cfg;
    CLI::App* c_snow = app.add_subcommand("snowflake", "emit the boundary polygon");
    CLI::App* c_whit = app.add_subcommand("whitney", "Whitney cover and slice report");
    CLI::App* c_cover = app.add_subcommand("cover", "well-covered certificate");
    CLI::App* c_const = app.add_subcommand("constants", "constants ledger");
    CLI::App* c_bound = app.add_subcommand("bounds", "two-sided counting bound report");
    CLI::App* c_verify = app.add_subcommand("verify", "eigensolver verification report");
    for (CLI::App* c : {c_snow, c_whit, c_cover, c_const, c_bound, c_verify}) {
        add_common(c, cfg);
        c->fallthrough();  // lets --config appear after the subcommand
    }
    for (CLI::App* c : {c_cover, c_verify}) {
        c->add_option("--epsilon", cfg.epsilon, "cover scale (overrides --k)");
        c->add_option("--k", cfg.k, "cover generation; epsilon = geometric mid of J_k");
        c->add_option("--mc", cfg.mc, "Monte-Carlo sample budget");
    }
    c_whit->add_option("--k", cfg.k, "deepest Whitney slice to build");
    c_whit->add_option("--epsilon", cfg.epsilon, "also emit the eps-restriction report");
    c_bound->add_option("--t-min", cfg.t_min, "lower end of the t sweep");
    c_bound->add_option("--t-max", cfg.t_max, "upper end of the t sweep");
    c_bound->add_option("--t-steps", cfg.t_steps, "geometric sample count");
    c_bound->add_option("--mc", cfg.mc, "Monte-Carlo budget for the c_vol measurement");
    c_verify->add_option("--grid", cfg.grid, "raster cells per epsilon");

    try {
        app.parse(argc, argv);
        if (c_snow->parsed()) return cmd_snowflake(cfg);
        if (c_whit->parsed()) return cmd_whitney(cfg);
        if (c_cover->parsed()) return cmd_cover(cfg);
        if (c_const->parsed()) return cmd_constants(cfg);
        if (c_bound->parsed()) return cmd_bounds(cfg);
        if (c_verify->parsed()) return cmd_verify(cfg);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        json err = {{"schema", kSchema},
                    {"error", {{"type", "cli_parse"}, {"violations", {e.what()}}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const CliError& e) {
        json err = {{"schema", kSchema},
                    {"error", {{"type", "config_validation"}, {"violations", e.violations}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err = {{"schema", kSchema},
                    {"error", {{"type", "runtime"}, {"violations", {e.what()}}}}};
        std::cerr << err.dump(2) << "\n";
        return 3;
    }
}
