#include "supercauchy/analyticity.hpp"

#include "supercauchy/quadrature.hpp"

#include <algorithm>

namespace supercauchy {

namespace {

Element coeff_of(const PolyFunction& f, const std::vector<int>& exp) {
    auto it = f.terms().find(exp);
    if (it == f.terms().end()) return Element(f.shape().algebra->dim());
    return it->second;
}

bool depends_only_on_block(const PolyFunction& f, int lo, int len) {
    for (const auto& [exp, coeff] : f.terms())
        for (int c = 0; c < static_cast<int>(exp.size()); ++c)
            if (exp[c] != 0 && (c < lo || c >= lo + len)) return false;
    return true;
}

/// Multi-indices of length `len` with total degree <= deg, lexicographic.
std::vector<std::vector<int>> multi_indices(int len, int deg) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(len, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == len) {
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[pos] = k;
            rec(pos + 1, left - k);
        }
        cur[pos] = 0;
    };
    rec(0, deg);
    return out;
}

}  // namespace

std::optional<std::vector<Element>> classify_y(const PolyFunction& f) {
    const Shape& s = f.shape();
    if (s.n != 1) throw Error("classify_y expects a single y variable");
    if (!depends_only_on_block(f, 0, s.algebra->p_plus_1()))
        throw Error("classify_y expects no theta dependence");

    const int deg = f.degree();
    std::vector<Element> cs;
    PolyFunction candidate(s);
    const PolyFunction y = PolyFunction::coordinate(s, 0);
    PolyFunction ypow = PolyFunction::constant(s, s.algebra->basis(0));
    for (int k = 0; k <= deg; ++k) {
        std::vector<int> exp(s.coords(), 0);
        exp[s.y_index(0, 0)] = k;
        const Element ck = coeff_of(f, exp);
        cs.push_back(ck);
        candidate = candidate + ypow.ltimes(ck);
        ypow = ypow * y;
    }
    if (candidate == f) return cs;
    return std::nullopt;
}

std::optional<ZPolynomial> classify_theta(const PolyFunction& f) {
    const Shape& s = f.shape();
    const Algebra& alg = *s.algebra;
    if (s.m != 1 || !alg.a1())
        throw Error("classify_theta expects a single theta variable with a1 data");
    const int theta_lo = s.n * alg.p_plus_1();
    if (!depends_only_on_block(f, theta_lo, alg.q()))
        throw Error("classify_theta expects no y dependence");

    const auto& w = *alg.a1();
    const int r = w.r();
    const int deg = f.degree();

    std::vector<PolyFunction> z;
    for (int k = 1; k <= r; ++k) z.push_back(z_projection(s, 0, k));

    ZPolynomial bs;
    PolyFunction candidate(s);
    for (const auto& key : multi_indices(r, deg)) {
        std::vector<int> exp(s.coords(), 0);
        for (int k = 0; k < r; ++k) exp[s.theta_index(0, w.s[k])] = key[k];
        const Element b = coeff_of(f, exp);
        if (b.is_zero()) continue;
        bs.emplace(key, b);
        PolyFunction term = PolyFunction::constant(s, b);
        for (int k = 0; k < r; ++k) term = term * z[k].pow(key[k]);
        candidate = candidate + term;
    }
    if (candidate == f) return bs;
    return std::nullopt;
}

std::optional<ZPolynomial> classify_mixed(const PolyFunction& f) {
    const Shape& s = f.shape();
    const Algebra& alg = *s.algebra;
    if (s.n != 1 || s.m != 1 || !alg.a1())
        throw Error("classify_mixed expects n = m = 1 with a1 data");

    const auto& w = *alg.a1();
    const int r = w.r();
    const int deg = f.degree();

    const PolyFunction y = PolyFunction::coordinate(s, 0);
    std::vector<PolyFunction> z;
    for (int k = 1; k <= r; ++k) z.push_back(z_projection(s, 0, k));

    ZPolynomial as;
    PolyFunction candidate(s);
    for (const auto& key : multi_indices(r + 1, deg)) {
        std::vector<int> exp(s.coords(), 0);
        exp[s.y_index(0, 0)] = key[0];
        for (int k = 0; k < r; ++k) exp[s.theta_index(0, w.s[k])] = key[k + 1];
        const Element a = coeff_of(f, exp);
        if (a.is_zero()) continue;
        as.emplace(key, a);
        PolyFunction term = y.pow(key[0]).ltimes(a);
        for (int k = 0; k < r; ++k) term = term * z[k].pow(key[k + 1]);
        candidate = candidate + term;
    }
    if (candidate == f) return as;
    return std::nullopt;
}

SuperSeries series_expand(const PolyFunction& f, const SuperPoint& center,
                          int max_degree) {
    const Shape& s = f.shape();
    const Algebra& alg = *s.algebra;
    if (!is_qS(f)) throw Error("series_expand expects a qS function");
    if (!alg.check_A0().second) throw Error("series_expand requires (A0)");
    if (s.m >= 1 && !alg.check_A1().pass)
        throw Error("series_expand requires (A1)");

    const int r = s.m >= 1 ? alg.a1()->r() : 0;
    const int key_len = s.n + r * s.m;

    SuperSeries out{s, center, max_degree, {}};
    for (const auto& key : multi_indices(key_len, max_degree)) {
        PolyFunction g = f;
        Rat fact = 1;
        for (int i = 0; i < s.n; ++i) {
            for (int t = 0; t < key[i]; ++t) g = g.partial(s.y_index(i, 0));
            fact *= rat_factorial(key[i]);
        }
        for (int k = 0; k < r; ++k)
            for (int j = 0; j < s.m; ++j) {
                const int order = key[s.n + k * s.m + j];
                for (int t = 0; t < order; ++t)
                    g = g.partial(s.theta_index(j, alg.a1()->s[k]));
                fact *= rat_factorial(order);
            }
        Element a = g.eval(center);
        if (a.is_zero()) continue;
        a = Rat(1) / fact * a;
        out.coeffs.emplace(key, std::move(a));
    }
    return out;
}

PolyFunction SuperSeries::to_poly() const {
    const Algebra& alg = *shape.algebra;
    const int r = shape.m >= 1 ? alg.a1()->r() : 0;

    // shifted variable polynomials
    std::vector<PolyFunction> ys, zs;
    for (int i = 0; i < shape.n; ++i) {
        PolyFunction yi = PolyFunction::coordinate(shape, i);
        yi = yi - PolyFunction::constant(shape, center.variable(i));
        ys.push_back(std::move(yi));
    }
    for (int k = 1; k <= r; ++k)
        for (int j = 0; j < shape.m; ++j) {
            PolyFunction zj = z_projection(shape, j, k);
            zj = zj - PolyFunction::constant(shape, zj.eval(center));
            zs.push_back(std::move(zj));  // index (k-1)*m + j
        }

    PolyFunction out(shape);
    for (const auto& [key, a] : coeffs) {
        PolyFunction term = PolyFunction::constant(shape, a);
        for (int i = 0; i < shape.n; ++i) term = term * ys[i].pow(key[i]);
        for (int k = 0; k < r; ++k)
            for (int j = 0; j < shape.m; ++j)
                term = term * zs[k * shape.m + j].pow(key[shape.n + k * shape.m + j]);
        out = out + term;
    }
    return out;
}

CauchyReport cauchy_bound_report(const PolyFunction& f, const VecD& center,
                                 const VecD& radii, int max_order,
                                 int64_t sup_grid) {
    const Shape& s = f.shape();
    const Algebra& alg = *s.algebra;
    const int factors = s.n + s.m;
    if (static_cast<int>(radii.size()) != factors)
        throw Error("need one radius per polydisk factor");
    if (!is_qS(f)) throw Error("cauchy_bound_report expects a qS function");

    // sup ||f|| over a deterministic grid on the distinguished boundary
    const int per_factor = std::max<int>(
        8, static_cast<int>(std::llround(std::pow(double(sup_grid), 1.0 / factors))));
    QuadratureConfig grid_cfg;
    grid_cfg.nodes = per_factor;

    // factor layout
    struct Block { int offset, len; };
    std::vector<Block> blocks;
    for (int i = 0; i < s.n; ++i) blocks.push_back({s.y_index(i, 0), alg.p_plus_1()});
    for (int j = 0; j < s.m; ++j) blocks.push_back({s.theta_index(j, 1), alg.q()});

    double sup = 0.0;
    std::vector<SphereNodes> grids;
    int64_t total = 1;
    for (int j = 0; j < factors; ++j) {
        grids.emplace_back(blocks[j].len, grid_cfg);
        total *= grids[j].count();
    }
    const CompiledPoly cf(f);
    VecD w(center), val(alg.dim()), sigma;
    for (int64_t i = 0; i < total; ++i) {
        int64_t rest = i;
        for (int j = factors - 1; j >= 0; --j) {
            const int64_t sub = rest % grids[j].count();
            rest /= grids[j].count();
            sigma.resize(blocks[j].len);
            grids[j].point(sub, sigma.data());
            for (int k = 0; k < blocks[j].len; ++k)
                w[blocks[j].offset + k] =
                    center[blocks[j].offset + k] + radii[j] * sigma[k];
        }
        cf.eval(w.data(), val.data());
        double nrm = 0;
        for (double v : val) nrm += v * v;
        sup = std::max(sup, std::sqrt(nrm));
    }

    // derivative ratios at the center
    const int r = s.m >= 1 ? alg.a1()->r() : 0;
    const int key_len = s.n + r * s.m;
    SuperPoint a(s, center);
    CauchyReport rep;
    rep.sup_norm = sup;
    for (const auto& key : multi_indices(key_len, max_order)) {
        PolyFunction g = f;
        Rat fact = 1;
        double rpow = 1.0;
        for (int i = 0; i < s.n; ++i) {
            for (int t = 0; t < key[i]; ++t) g = g.partial(s.y_index(i, 0));
            fact *= rat_factorial(key[i]);
            rpow *= std::pow(radii[i], key[i]);
        }
        for (int k = 0; k < r; ++k)
            for (int j = 0; j < s.m; ++j) {
                const int order = key[s.n + k * s.m + j];
                for (int t = 0; t < order; ++t)
                    g = g.partial(s.theta_index(j, alg.a1()->s[k]));
                fact *= rat_factorial(order);
                rpow *= std::pow(radii[s.n + j], order);
            }
        const double dnorm = g.eval(a).norm();
        CauchyRatio cr;
        cr.key = key;
        cr.ratio = dnorm * rpow / (to_double(fact) * std::max(sup, 1e-300));
        rep.max_ratio = std::max(rep.max_ratio, cr.ratio);
        rep.ratios.push_back(std::move(cr));
    }
    return rep;
}

LiouvilleReport liouville_probe(const PolyFunction& f, const VecD& radii,
                                int64_t grid) {
    const Shape& s = f.shape();
    if (s.n != 1 || s.m != 0)
        throw Error("liouville_probe expects a single y variable");
    if (!is_qS(f)) throw Error("liouville_probe expects a qS function");

    LiouvilleReport rep;
    QuadratureConfig cfg;
    cfg.nodes = grid;
    const int len = s.algebra->p_plus_1();
    const CompiledPoly cf(f);
    const SphereNodes nodes(len, cfg);
    for (double radius : radii) {
        double sup = 0.0;
        VecD w(len), val(s.algebra->dim());
        for (int64_t i = 0; i < nodes.count(); ++i) {
            nodes.point(i, w.data());
            for (int k = 0; k < len; ++k) w[k] *= radius;
            cf.eval(w.data(), val.data());
            double nrm = 0;
            for (double v : val) nrm += v * v;
            sup = std::max(sup, std::sqrt(nrm));
        }
        rep.radii.push_back(radius);
        rep.sup_over_r.push_back(sup / radius);
    }

    const SuperSeries series =
        series_expand(f, SuperPoint(s), std::max(1, f.degree()));
    rep.higher_coeffs_vanish = true;
    for (const auto& [key, coeff] : series.coeffs) {
        int total = 0;
        for (int k : key) total += k;
        if (total >= 1 && !coeff.is_zero()) rep.higher_coeffs_vanish = false;
    }
    return rep;
}

}  // namespace supercauchy
