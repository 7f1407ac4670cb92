// supercauchy CLI: load algebra documents, run named verification
// experiments, classify polynomials. Machine-readable JSON goes to stdout or
// --out; human summaries go to stderr.
//
// Exit codes: 0 pass, 1 tolerance fail, 2 input error, 3 (A0)/(A1) fail.

#include "supercauchy/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace supercauchy;

namespace {

struct RunConfig {
    std::string builtin;
    std::string algebra_path;
    std::string experiment;
    std::string out_path;
    std::string scheme = "auto";
    int64_t nodes = 0;  // 0 = experiment default
    int64_t volume_nodes = 100000;
    uint64_t seed = 1;
    double tol = 0.0;   // 0 = experiment default
    int dim = 2;        // divergence-selftest
};

AlgebraPtr load_algebra(const RunConfig& rc) {
    if (!rc.algebra_path.empty()) return algebra_from_file(rc.algebra_path);
    if (!rc.builtin.empty()) return Algebra::builtin(rc.builtin);
    throw Error("need --builtin NAME or --algebra PATH");
}

void emit(const Json& report, const RunConfig& rc) {
    if (rc.out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(rc.out_path);
        if (!out) throw Error("cannot write '" + rc.out_path + "'");
        out << report.dump(2) << "\n";
    }
}

QuadratureConfig quad_config(const RunConfig& rc, int64_t default_nodes,
                             double default_tol) {
    QuadratureConfig cfg;
    cfg.nodes = rc.nodes > 0 ? rc.nodes : default_nodes;
    cfg.volume_nodes = rc.volume_nodes;
    cfg.seed = rc.seed;
    cfg.tol = rc.tol > 0 ? rc.tol : default_tol;
    if (rc.scheme == "tensor") cfg.scheme = Scheme::tensor;
    else if (rc.scheme == "mc") cfg.scheme = Scheme::monte_carlo;
    return cfg;
}

// ---- experiments ----------------------------------------------------------

int run_reproduce_disk(const RunConfig& rc, AlgebraPtr alg) {
    const QuadratureConfig cfg = quad_config(rc, 4096, 1e-3);
    Shape shape(alg, 1, 0);
    const PolyFunction f = PolyFunction::coordinate(shape, 0).pow(2);
    SuperPoint x(shape);
    x.y(0, 0) = Rat(3, 10);
    x.y(0, 1) = Rat(1, 10);
    const Domain dom = Domain::ball(shape, VecD(shape.coords(), 0.0), 1.0);

    QuadReport rep;
    reproduce(f, dom, x, cfg, &rep);
    rep.experiment = "reproduce-disk";
    rep.finish_against(f.eval(x).to_doubles());
    emit(report_to_json(rep), rc);
    std::cerr << "reproduce-disk on " << alg->name() << ": rel_err = " << rep.rel_err
              << " (tol " << cfg.tol << ")\n";
    return rep.rel_err <= cfg.tol ? 0 : 1;
}

int run_reproduce_ball(const RunConfig& rc, AlgebraPtr alg) {
    const QuadratureConfig cfg = quad_config(rc, 4096, 1e-2);
    Shape shape(alg, 1, 0);
    // f = y^0 e_0 is never qS; exercises the d''f volume correction
    const PolyFunction f =
        PolyFunction::real_monomial(shape, 0, 1, alg->basis(0));
    SuperPoint x(shape, VecD(shape.coords(), 0.0));
    x.y(0, 0) = Rat(1, 5);
    const Domain dom = Domain::ball(shape, VecD(shape.coords(), 0.0), 1.0);

    QuadReport rep;
    reproduce(f, dom, x, cfg, &rep);
    rep.experiment = "reproduce-ball";
    rep.finish_against(f.eval(x).to_doubles());
    emit(report_to_json(rep), rc);
    std::cerr << "reproduce-ball on " << alg->name() << ": rel_err = " << rep.rel_err
              << ", boundary-only abs err = " << rep.extra["boundary_only_abs_err"]
              << "\n";
    return rep.rel_err <= cfg.tol ? 0 : 1;
}

int run_polydisk(const RunConfig& rc, AlgebraPtr alg) {
    QuadReport rep;
    QuadratureConfig cfg;
    if (alg->q() >= 1 && alg->a1()) {
        // mixed factor pair: f = y Z(pi_1 theta)
        cfg = quad_config(rc, 24576, 2e-2);
        Shape shape(alg, 1, 1);
        const PolyFunction f =
            PolyFunction::coordinate(shape, 0) * z_projection(shape, 0, 1);
        SuperPoint x(shape, VecD(shape.coords(), 0.0));
        x.y(0, 0) = Rat(3, 10);
        x.y(0, 1) = Rat(1, 10);
        x.theta(0, 1) = Rat(1, 5);
        x.theta(0, 2) = Rat(-1, 10);
        x.theta(0, 3) = Rat(3, 20);
        x.theta(0, 4) = Rat(1, 20);
        const Domain dom =
            Domain::polydisk(shape, VecD(shape.coords(), 0.0), {1.0, 1.0});
        polydisk_reproduce(f, dom, x, cfg, &rep);
        rep.finish_against(f.eval(x).to_doubles());
    } else {
        // two commutative factors: f = y_1 y_2
        cfg = quad_config(rc, 256, 1e-2);
        Shape shape(alg, 2, 0);
        const PolyFunction f =
            PolyFunction::coordinate(shape, 0) * PolyFunction::coordinate(shape, 1);
        SuperPoint x(shape, VecD(shape.coords(), 0.0));
        x.y(0, 0) = Rat(1, 5);
        x.y(1, 0) = Rat(3, 10);
        if (alg->p_plus_1() > 1) x.y(1, 1) = Rat(1, 10);
        const Domain dom =
            Domain::polydisk(shape, VecD(shape.coords(), 0.0), {1.0, 1.0});
        polydisk_reproduce(f, dom, x, cfg, &rep);
        rep.finish_against(f.eval(x).to_doubles());
    }
    emit(report_to_json(rep), rc);
    std::cerr << "polydisk on " << alg->name() << ": rel_err = " << rep.rel_err
              << " (tol " << cfg.tol << ")\n";
    return rep.rel_err <= cfg.tol ? 0 : 1;
}

int run_hartogs(const RunConfig& rc, AlgebraPtr alg) {
    QuadReport rep;
    QuadratureConfig cfg;
    double worst = 0.0;
    if (alg->q() >= 1 && alg->a1()) {
        cfg = quad_config(rc, 200000, 2e-2);
        Shape shape(alg, 1, 1);
        const PolyFunction f =
            PolyFunction::coordinate(shape, 0) * z_projection(shape, 0, 1);
        const CompiledPoly cf(f);
        const FlatFn fn = [&](const double* w, double* out) { cf.eval(w, out); };
        const Domain dom = Domain::ball(shape, VecD(shape.coords(), 0.0), 1.0);
        VecD x(shape.coords(), 0.0);
        x[0] = 0.2;
        x[shape.theta_index(0, 1)] = 0.15;
        hartogs_extend(fn, shape, dom, x, cfg, &rep);
        rep.finish_against(f.eval(SuperPoint(shape, x)).to_doubles());
        worst = rep.rel_err;
    } else {
        cfg = quad_config(rc, 65536, 1e-2);
        Shape shape(alg, 2, 0);
        const PolyFunction f = PolyFunction::coordinate(shape, 0).pow(2);
        const CompiledPoly cf(f);
        const FlatFn fn = [&](const double* w, double* out) { cf.eval(w, out); };
        const Domain dom = Domain::ball(shape, VecD(shape.coords(), 0.0), 1.0);
        const int p1 = alg->p_plus_1();
        std::vector<VecD> points;
        points.push_back(VecD(shape.coords(), 0.0));
        VecD b(shape.coords(), 0.0);
        b[0] = 0.4;
        if (p1 > 1) b[1] = 0.2;
        points.push_back(b);
        VecD c(shape.coords(), 0.0);
        c[0] = 0.1;
        c[p1] = 0.3;
        points.push_back(c);
        int idx = 0;
        for (const auto& x : points) {
            QuadReport prep;
            hartogs_extend(fn, shape, dom, x, cfg, &prep);
            const VecD oracle = f.eval(SuperPoint(shape, x)).to_doubles();
            prep.finish_against(oracle);
            double onorm = 0;
            for (double v : oracle) onorm += v * v;
            // relative error where the oracle is nonzero, absolute at zeros
            const double err =
                std::sqrt(onorm) < 1e-9 ? prep.abs_err : prep.rel_err;
            worst = std::max(worst, err);
            if (idx++ == 0) rep = prep;
            rep.extra["abs_err_point_" + std::to_string(idx)] = prep.abs_err;
        }
    }
    emit(report_to_json(rep), rc);
    std::cerr << "hartogs on " << alg->name() << ": worst err = " << worst << " (tol "
              << cfg.tol << ")\n";
    return worst <= cfg.tol ? 0 : 1;
}

int run_kernel_d2(const RunConfig& rc, AlgebraPtr alg) {
    const QuadratureConfig cfg = quad_config(rc, 100, 1e-6);
    const double h = 1e-5;
    double max_resid = 0.0;
    Json detail = Json::object();

    auto probe = [&](const Shape& shape, const std::string& label) {
        const Kernel ker(shape);
        SplitMix64 rng(cfg.seed ^ 0xD2u);
        double worst = 0.0;
        for (int64_t i = 0; i < cfg.nodes; ++i) {
            VecD x(shape.coords());
            double nrm = 0.0;
            for (auto& v : x) {
                double g0, g1;
                rng.gaussian_pair(g0, g1);
                v = g0;
                nrm += v * v;
            }
            nrm = std::sqrt(nrm);
            const double scale = 0.5 + 1.5 * rng.uniform();
            for (auto& v : x) v *= scale / nrm;  // radius in [0.5, 2]
            worst = std::max(worst, ker.d2_residual(x, h));
        }
        detail[label] = worst;
        max_resid = std::max(max_resid, worst);
    };

    probe(Shape(alg, 1, 0), "omega0");
    if (alg->q() >= 1 && alg->a1()) probe(Shape(alg, 0, 1), "omega1");
    probe(Shape(alg, 2, 0), "omega_general_n2");

    QuadReport rep;
    rep.experiment = "kernel-d2";
    rep.algebra = alg->name();
    rep.nodes = cfg.nodes;
    rep.seed = cfg.seed;
    rep.value = {max_resid};
    rep.rel_err = max_resid;
    Json out = report_to_json(rep);
    out["residuals"] = detail;
    emit(out, rc);
    std::cerr << "kernel-d2 on " << alg->name() << ": max residual = " << max_resid
              << " (tol " << cfg.tol << ")\n";
    return max_resid <= cfg.tol ? 0 : 1;
}

int run_divergence(const RunConfig& rc) {
    const double tol_default = rc.dim <= 4 ? 1e-3 : 1e-2;
    QuadratureConfig cfg = quad_config(rc, rc.dim <= 4 ? 16384 : 1000000, tol_default);
    QuadReport rep = divergence_selftest(rc.dim, cfg);
    Json out = report_to_json(rep);
    out["dim"] = rc.dim;
    emit(out, rc);
    std::cerr << "divergence-selftest dim " << rc.dim << ": rel_err = " << rep.rel_err
              << " (tol " << cfg.tol << ")\n";
    return rep.rel_err <= cfg.tol ? 0 : 1;
}

int run_weierstrass(const RunConfig& rc, AlgebraPtr alg) {
    const QuadratureConfig cfg = quad_config(rc, 4096, 1e-3);
    Shape shape(alg, 1, 0);
    const int dim = alg->dim();
    const Domain dom = Domain::ball(shape, VecD(shape.coords(), 0.0), 1.0);
    VecD x(shape.coords(), 0.0);
    x[0] = 0.3;
    if (alg->p_plus_1() > 1) x[1] = 0.1;

    // limit of the geometric series sum (y/2)^k = (e_0 - y/2)^{-1}
    const FlatFn f_lim = [&](const double* w, double* out) {
        VecD a(dim, 0.0);
        a[0] = 1.0;
        for (int k = 0; k < std::min<int>(dim, shape.coords()); ++k) a[k] -= 0.5 * w[k];
        auto inv = alg->invert_d(a.data());
        if (!inv) throw Error("e0 - y/2 not invertible on the boundary");
        std::copy(inv->begin(), inv->end(), out);
    };
    const VecD limit_val =
        reproduce_boundary(f_lim, shape, dom, x, cfg, nullptr);

    const PolyFunction y = PolyFunction::coordinate(shape, 0);
    PolyFunction partial_sum =
        PolyFunction::constant(shape, alg->basis(0));  // k = 0 term
    PolyFunction ypow = PolyFunction::constant(shape, alg->basis(0));
    Json errs = Json::array();
    VecD err_list;
    for (int k = 1; k <= 9; ++k) {
        const VecD got = reproduce(partial_sum, dom, SuperPoint(shape, x), cfg, nullptr);
        double e = 0;
        for (int t = 0; t < dim; ++t) e += (got[t] - limit_val[t]) * (got[t] - limit_val[t]);
        err_list.push_back(std::sqrt(e));
        errs.push_back(err_list.back());
        ypow = ypow * y;
        partial_sum = partial_sum + ypow.scaled(Rat(1, 1 << k));
    }

    const double final_err = err_list.back();
    const bool decreasing = err_list.back() < err_list[4] && err_list[4] < err_list[0];
    QuadReport rep;
    rep.experiment = "weierstrass";
    rep.algebra = alg->name();
    rep.nodes = sphere_node_count(shape.coords(), cfg);
    rep.seed = cfg.seed;
    rep.value = err_list;
    rep.rel_err = final_err;
    Json out = report_to_json(rep);
    out["truncation_errors"] = errs;
    emit(out, rc);
    std::cerr << "weierstrass on " << alg->name() << ": final truncation err = "
              << final_err << ", decreasing = " << (decreasing ? "yes" : "no") << "\n";
    return (final_err <= cfg.tol && decreasing) ? 0 : 1;
}

int cmd_check_algebra(const RunConfig& rc) {
    AlgebraPtr alg = load_algebra(rc);
    const ValidationReport val = alg->validate();
    const auto [s0, a0] = alg->check_A0();
    const A1Report a1 = alg->check_A1();
    const auto ann = alg->annihilator();

    Json out{{"algebra", alg->name()},
             {"p_plus_1", alg->p_plus_1()},
             {"q", alg->q()},
             {"validation", validation_to_json(val)},
             {"A0", Json{{"pass", a0}, {"sum_of_squares", element_to_json(s0)}}},
             {"A1", a1_report_to_json(a1)}};
    Json ann_json = Json::array();
    for (const auto& e : ann) ann_json.push_back(element_to_json(e));
    out["annihilator_basis"] = ann_json;
    emit(out, rc);
    std::cerr << "algebra " << alg->name() << ": csa_valid=" << val.valid()
              << " A0=" << a0 << " A1=" << a1.pass << " dim(ann)=" << ann.size()
              << "\n";
    return val.valid() ? 0 : 1;
}

int cmd_verify(const RunConfig& rc) {
    if (rc.experiment == "divergence-selftest") return run_divergence(rc);
    AlgebraPtr alg = load_algebra(rc);
    if (rc.experiment == "reproduce-disk") return run_reproduce_disk(rc, alg);
    if (rc.experiment == "reproduce-ball") return run_reproduce_ball(rc, alg);
    if (rc.experiment == "polydisk") return run_polydisk(rc, alg);
    if (rc.experiment == "hartogs") return run_hartogs(rc, alg);
    if (rc.experiment == "kernel-d2") return run_kernel_d2(rc, alg);
    if (rc.experiment == "weierstrass") return run_weierstrass(rc, alg);
    throw Error("unknown experiment '" + rc.experiment + "'");
}

int cmd_classify(const RunConfig& rc, const std::string& poly_path, int n, int m,
                 int series_degree) {
    AlgebraPtr alg = load_algebra(rc);
    std::ifstream in(poly_path);
    if (!in) throw Error("cannot open polynomial file '" + poly_path + "'");
    Json doc;
    try {
        in >> doc;
    } catch (const Json::parse_error& e) {
        throw Error(std::string("JSON parse error: ") + e.what());
    }
    const Shape shape(alg, n, m);
    const PolyFunction f = poly_from_json(doc, shape);

    const D2Result comp = d2(f);
    const bool qs = comp.all_zero();
    Json out{{"qS", qs}};
    if (!qs) {
        out["witness_coordinate"] = *comp.witness();
    } else {
        if (shape.m == 0 && shape.n == 1) {
            auto cs = classify_y(f);
            Json list = Json::array();
            for (const auto& c : *cs) list.push_back(element_to_json(c));
            out["canonical"] = Json{{"form", "sum c_k y^k"}, {"c", list}};
        } else if (shape.n == 0 && shape.m == 1) {
            auto bs = classify_theta(f);
            Json list = Json::array();
            for (const auto& [key, c] : *bs)
                list.push_back(Json{{"K", key}, {"coeff", element_to_json(c)}});
            out["canonical"] = Json{{"form", "sum b_K Z(pi_1)^{k_1}..Z(pi_r)^{k_r}"},
                                    {"terms", list}};
        } else if (shape.n == 1 && shape.m == 1) {
            auto as = classify_mixed(f);
            Json list = Json::array();
            for (const auto& [key, c] : *as)
                list.push_back(Json{{"K", key}, {"coeff", element_to_json(c)}});
            out["canonical"] =
                Json{{"form", "sum A_K y^{k_0} Z(pi_1)^{k_1}..Z(pi_r)^{k_r}"},
                     {"terms", list}};
        }
        if (series_degree >= 0)
            out["series"] =
                series_to_json(series_expand(f, SuperPoint(shape), series_degree));
    }
    emit(out, rc);
    std::cerr << "classify: qS=" << (qs ? "true" : "false") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational superanalysis toolkit"};
    app.require_subcommand(1);
    RunConfig rc;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--builtin", rc.builtin,
                        "builtin algebra: complex|hyperbolic|clifford(k)|example4");
        sub->add_option("--algebra", rc.algebra_path, "algebra JSON document");
        sub->add_option("--nodes", rc.nodes, "boundary node budget");
        sub->add_option("--volume-nodes", rc.volume_nodes, "volume sample budget");
        sub->add_option("--seed", rc.seed, "RNG seed");
        sub->add_option("--tol", rc.tol, "pass tolerance");
        sub->add_option("--scheme", rc.scheme, "auto|tensor|mc");
        sub->add_option("--out", rc.out_path, "write the JSON report here");
    };

    CLI::App* check = app.add_subcommand("check-algebra", "validate a CSA document");
    add_common(check);

    CLI::App* verify = app.add_subcommand("verify", "run a named experiment");
    verify->add_option("experiment", rc.experiment,
                       "reproduce-disk|reproduce-ball|polydisk|hartogs|kernel-d2|"
                       "divergence-selftest|weierstrass")
        ->required();
    verify->add_option("--dim", rc.dim, "ambient dimension (divergence-selftest)");
    add_common(verify);

    CLI::App* classify = app.add_subcommand("classify", "qS verdict + canonical form");
    std::string poly_path;
    int cls_n = 1, cls_m = 0, series_degree = -1;
    classify->add_option("polynomial", poly_path, "polynomial JSON file")->required();
    classify->add_option("--n", cls_n, "number of commutative variables");
    classify->add_option("--m", cls_m, "number of anticommutative variables");
    classify->add_option("--series-degree", series_degree,
                         "also emit the series expansion up to this degree");
    add_common(classify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check_algebra(rc);
        if (verify->parsed()) return cmd_verify(rc);
        if (classify->parsed())
            return cmd_classify(rc, poly_path, cls_n, cls_m, series_degree);
    } catch (const condition_error& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
