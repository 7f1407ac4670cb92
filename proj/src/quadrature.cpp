#include "supercauchy/quadrature.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace supercauchy {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int threads_of(const QuadratureConfig& cfg) {
    return cfg.threads > 0 ? cfg.threads : default_threads();
}

double vec_norm(const VecD& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// The exact boundary mass of the kernel density is e_0 (reproduction of
// constants), so dividing the sampled value by the sampled mass in the
// algebra cancels the noise the two share. Exact rules are unaffected up to
// rounding; Monte Carlo error drops by the correlated part.
VecD mass_normalized(const Algebra& alg, const VecD& value, const VecD& mass) {
    const auto inv = alg.invert_d(mass.data());
    if (!inv) return value;
    VecD out(value.size());
    alg.mul_d(value.data(), inv->data(), out.data());
    return out;
}

// Inverse standard-normal CDF (Acklam's rational approximation, ~1e-9).
double inv_normal_cdf(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    p = std::clamp(p, 1e-15, 1.0 - 1e-15);
    if (p < 0.02425) {
        const double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > 1 - 0.02425) {
        const double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    const double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

// Kronecker (R2-type) low-discrepancy stream with a seed-derived rotation;
// 64-bit fixed point keeps the mod-1 arithmetic exact at any index.
struct QmcStream {
    std::vector<uint64_t> alpha, shift;

    QmcStream(int dim, uint64_t seed) : alpha(dim), shift(dim) {
        double phi = 2.0;  // root of x^{dim+1} = x + 1
        for (int it = 0; it < 128; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
        double a = 1.0;
        SplitMix64 rng(seed ^ 0xC4A11CE5ull);
        for (int j = 0; j < dim; ++j) {
            a /= phi;
            alpha[j] = static_cast<uint64_t>(a * 0x1.0p64) | 1ull;  // odd: full period
            shift[j] = rng.next();
        }
    }

    // j-th uniform coordinate of the i-th point, in (0,1)
    double coord(int64_t i, int j) const {
        const uint64_t v = shift[j] + static_cast<uint64_t>(i) * alpha[j];
        return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
    }
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
void gauss_legendre(int n, VecD& nodes, VecD& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

struct SphereRule {
    // tensor data (empty when Monte Carlo)
    bool tensor = false;
    std::vector<VecD> axis_nodes;    // per axis
    std::vector<VecD> axis_weights;  // per axis
    int64_t count = 0;
    std::optional<QmcStream> qmc;    // seeded stream for the Monte Carlo path

    // writes the unit-sphere point and returns the weight for unit radius
    // (scale by radius^{N-1} outside)
    double node(int n_dim, int64_t i, double* sigma) const;
};

SphereRule make_sphere_rule(int n_dim, const QuadratureConfig& cfg) {
    SphereRule r;
    const bool want_tensor = cfg.scheme == Scheme::tensor ||
                             (cfg.scheme == Scheme::automatic && n_dim <= 4);
    if (want_tensor && n_dim <= 4) {
        r.tensor = true;
        const int64_t budget = std::max<int64_t>(cfg.nodes, 8);
        if (n_dim == 1) {
            r.axis_nodes.push_back({-1.0, 1.0});
            r.axis_weights.push_back({1.0, 1.0});
        } else if (n_dim == 2) {
            const int mphi = static_cast<int>(std::min<int64_t>(budget, 1 << 20));
            r.axis_nodes.push_back(VecD(mphi));
            r.axis_weights.push_back(VecD(mphi, kTwoPi / mphi));
            for (int k = 0; k < mphi; ++k)
                r.axis_nodes[0][k] = kTwoPi * (k + 0.5) / mphi;
        } else if (n_dim == 3) {
            int nz = std::clamp<int>(static_cast<int>(std::sqrt(double(budget) / 2.0)), 4, 512);
            int mphi = std::max<int>(8, static_cast<int>(budget / nz));
            VecD zn, zw;
            gauss_legendre(nz, zn, zw);
            r.axis_nodes.push_back(zn);
            r.axis_weights.push_back(zw);
            r.axis_nodes.push_back(VecD(mphi));
            r.axis_weights.push_back(VecD(mphi, kTwoPi / mphi));
            for (int k = 0; k < mphi; ++k)
                r.axis_nodes[1][k] = kTwoPi * (k + 0.5) / mphi;
        } else {  // n_dim == 4: psi (GL with sin^2 weight), z = cos(theta), phi
            int npsi = std::clamp<int>(static_cast<int>(std::cbrt(double(budget))), 4, 256);
            int nz = npsi;
            int mphi = std::max<int>(8, static_cast<int>(budget / (int64_t(npsi) * nz)));
            VecD gn, gw;
            gauss_legendre(npsi, gn, gw);
            VecD psin(npsi), psiw(npsi);
            for (int k = 0; k < npsi; ++k) {
                const double psi = 0.5 * 3.14159265358979323846 * (gn[k] + 1.0);
                psin[k] = psi;
                psiw[k] = gw[k] * 0.5 * 3.14159265358979323846 *
                          std::sin(psi) * std::sin(psi);
            }
            r.axis_nodes.push_back(psin);
            r.axis_weights.push_back(psiw);
            VecD zn, zw;
            gauss_legendre(nz, zn, zw);
            r.axis_nodes.push_back(zn);
            r.axis_weights.push_back(zw);
            r.axis_nodes.push_back(VecD(mphi));
            r.axis_weights.push_back(VecD(mphi, kTwoPi / mphi));
            for (int k = 0; k < mphi; ++k)
                r.axis_nodes[2][k] = kTwoPi * (k + 0.5) / mphi;
        }
        r.count = 1;
        for (const auto& ax : r.axis_nodes) r.count *= static_cast<int64_t>(ax.size());
    } else {
        r.tensor = false;
        r.count = std::max<int64_t>(1, cfg.nodes);
        r.qmc.emplace(n_dim, cfg.seed);
    }
    return r;
}

double SphereRule::node(int n_dim, int64_t i, double* sigma) const {
    if (tensor) {
        int64_t rest = i;
        int idx[4] = {0, 0, 0, 0};
        for (int a = static_cast<int>(axis_nodes.size()) - 1; a >= 0; --a) {
            const int64_t len = static_cast<int64_t>(axis_nodes[a].size());
            idx[a] = static_cast<int>(rest % len);
            rest /= len;
        }
        double w = 1.0;
        for (size_t a = 0; a < axis_nodes.size(); ++a) w *= axis_weights[a][idx[a]];
        if (n_dim == 1) {
            sigma[0] = axis_nodes[0][idx[0]];
        } else if (n_dim == 2) {
            const double t = axis_nodes[0][idx[0]];
            sigma[0] = std::cos(t);
            sigma[1] = std::sin(t);
        } else if (n_dim == 3) {
            const double z = axis_nodes[0][idx[0]];
            const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double t = axis_nodes[1][idx[1]];
            sigma[0] = z;
            sigma[1] = s * std::cos(t);
            sigma[2] = s * std::sin(t);
        } else {
            const double psi = axis_nodes[0][idx[0]];
            const double z = axis_nodes[1][idx[1]];
            const double t = axis_nodes[2][idx[2]];
            const double sp = std::sin(psi);
            const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            sigma[0] = std::cos(psi);
            sigma[1] = sp * z;
            sigma[2] = sp * s * std::cos(t);
            sigma[3] = sp * s * std::sin(t);
        }
        return w;
    }
    // Monte Carlo: low-discrepancy gaussian directions, normalized
    double nrm = 0.0;
    for (int k = 0; k < n_dim; ++k) {
        sigma[k] = inv_normal_cdf(qmc->coord(i, k));
        nrm += sigma[k] * sigma[k];
    }
    nrm = std::sqrt(nrm);
    for (int k = 0; k < n_dim; ++k) sigma[k] /= nrm;
    const double area = n_dim * unit_ball_volume(n_dim);
    return area / static_cast<double>(count);
}

}  // namespace

Domain Domain::ball(const Shape& s, VecD center, double radius) {
    if (radius <= 0) throw Error("ball radius must be positive");
    if (static_cast<int>(center.size()) != s.coords())
        throw Error("domain center has wrong dimension");
    Domain d;
    d.kind = Kind::ball;
    d.shape = s;
    d.center = std::move(center);
    d.radius = radius;
    return d;
}

Domain Domain::polydisk(const Shape& s, VecD center, VecD radii) {
    if (static_cast<int>(center.size()) != s.coords())
        throw Error("domain center has wrong dimension");
    if (static_cast<int>(radii.size()) != s.n + s.m)
        throw Error("polydisk needs one radius per super-variable");
    for (double r : radii)
        if (r <= 0) throw Error("polydisk radii must be positive");
    Domain d;
    d.kind = Kind::polydisk;
    d.shape = s;
    d.center = std::move(center);
    d.radii = std::move(radii);
    return d;
}

void QuadReport::finish_against(const VecD& oracle_value) {
    oracle = oracle_value;
    double err = 0, ref = 0;
    for (size_t k = 0; k < value.size(); ++k) {
        const double d = value[k] - oracle_value[k];
        err += d * d;
        ref += oracle_value[k] * oracle_value[k];
    }
    abs_err = std::sqrt(err);
    rel_err = abs_err / std::max(std::sqrt(ref), 1e-300);
}

int64_t sphere_node_count(int n_dim, const QuadratureConfig& cfg) {
    return make_sphere_rule(n_dim, cfg).count;
}

struct SphereNodes::Impl {
    int n_dim;
    SphereRule rule;
};

SphereNodes::SphereNodes(int n_dim, const QuadratureConfig& cfg)
    : impl_(new Impl{n_dim, make_sphere_rule(n_dim, cfg)}) {}

SphereNodes::~SphereNodes() = default;
SphereNodes::SphereNodes(SphereNodes&& o) noexcept = default;

int64_t SphereNodes::count() const { return impl_->rule.count; }

double SphereNodes::point(int64_t i, double* sigma) const {
    return impl_->rule.node(impl_->n_dim, i, sigma);
}

VecD sphere_integral(int n_dim, const VecD& center, double radius, int out_dim,
                     const FlatFn& fn, const QuadratureConfig& cfg) {
    const SphereRule rule = make_sphere_rule(n_dim, cfg);
    const double rpow = std::pow(radius, n_dim - 1);
    return integrate_nodes(rule.count, out_dim, threads_of(cfg),
                           [&](int64_t i, double* out) {
        thread_local VecD sigma, w, val;
        sigma.resize(n_dim);
        w.resize(n_dim);
        val.resize(out_dim);
        const double weight = rule.node(n_dim, i, sigma.data()) * rpow;
        for (int k = 0; k < n_dim; ++k) w[k] = center[k] + radius * sigma[k];
        fn(w.data(), val.data());
        for (int k = 0; k < out_dim; ++k) out[k] = weight * val[k];
    });
}

VecD ball_integral(int n_dim, const VecD& center, double radius, int out_dim,
                   const FlatFn& fn, const QuadratureConfig& cfg) {
    const int64_t count = std::max<int64_t>(2, cfg.volume_nodes);
    const double vol = unit_ball_volume(n_dim) * std::pow(radius, n_dim);
    return integrate_nodes(count, out_dim, threads_of(cfg),
                           [&](int64_t i, double* out) {
        thread_local VecD w, val;
        w.resize(n_dim);
        val.resize(out_dim);
        SplitMix64 rng = node_rng(cfg.seed ^ 0xB411u, i);
        double nrm = 0.0, g0, g1;
        for (int k = 0; k < n_dim; k += 2) {
            rng.gaussian_pair(g0, g1);
            w[k] = g0;
            if (k + 1 < n_dim) w[k + 1] = g1;
        }
        for (int k = 0; k < n_dim; ++k) nrm += w[k] * w[k];
        nrm = std::sqrt(nrm);
        const double r = radius * std::pow(rng.uniform(), 1.0 / n_dim);
        for (int k = 0; k < n_dim; ++k) w[k] = center[k] + r * w[k] / nrm;
        fn(w.data(), val.data());
        const double weight = vol / static_cast<double>(count);
        for (int k = 0; k < out_dim; ++k) out[k] = weight * val[k];
    });
}

VecD ball_integral_radial(int n_dim, const VecD& center, double radius,
                          const VecD& x, int out_dim, const FlatFn& fn,
                          const QuadratureConfig& cfg) {
    const int64_t count = std::max<int64_t>(2, cfg.volume_nodes);
    VecD v(n_dim);
    for (int k = 0; k < n_dim; ++k) v[k] = x[k] - center[k];
    double v_sq = 0;
    for (int k = 0; k < n_dim; ++k) v_sq += v[k] * v[k];
    if (std::sqrt(v_sq) >= radius)
        throw Error("singular point must be interior to the ball");
    const double area = n_dim * unit_ball_volume(n_dim);

    const int64_t pairs = (count + 1) / 2;
    return integrate_nodes(2 * pairs, out_dim, threads_of(cfg),
                           [&](int64_t i, double* out) {
        thread_local VecD sigma, w, val;
        sigma.resize(n_dim);
        w.resize(n_dim);
        val.resize(out_dim);
        // antithetic pairs share the draw; rho_max differs per direction
        SplitMix64 rng = node_rng(cfg.seed ^ 0x5D1Au, i / 2);
        double nrm = 0.0, g0, g1;
        for (int k = 0; k < n_dim; k += 2) {
            rng.gaussian_pair(g0, g1);
            sigma[k] = g0;
            if (k + 1 < n_dim) sigma[k + 1] = g1;
        }
        const double u = rng.uniform();
        for (int k = 0; k < n_dim; ++k) nrm += sigma[k] * sigma[k];
        nrm = std::sqrt(nrm);
        const double flip = (i % 2 == 0) ? 1.0 : -1.0;
        for (int k = 0; k < n_dim; ++k) sigma[k] *= flip / nrm;
        // distance from x to the sphere along sigma
        double dot = 0;
        for (int k = 0; k < n_dim; ++k) dot += v[k] * sigma[k];
        const double rho_max = -dot + std::sqrt(dot * dot + radius * radius - v_sq);
        const double rho = rho_max * u;
        for (int k = 0; k < n_dim; ++k) w[k] = x[k] + rho * sigma[k];
        fn(w.data(), val.data());
        const double weight = area * rho_max * std::pow(rho, n_dim - 1) /
                              static_cast<double>(2 * pairs);
        for (int k = 0; k < out_dim; ++k) out[k] = weight * val[k];
    });
}

VecD surface_integral(const FlatFn& g, const Domain& dom,
                      const QuadratureConfig& cfg) {
    if (dom.kind != Domain::Kind::ball)
        throw Error("surface_integral expects a ball domain");
    return sphere_integral(dom.shape.coords(), dom.center, dom.radius,
                           dom.shape.algebra->dim(), g, cfg);
}

VecD volume_integral(const FlatFn& g, const Domain& dom,
                     const QuadratureConfig& cfg, const VecD* singular_at) {
    if (dom.kind != Domain::Kind::ball)
        throw Error("volume_integral expects a ball domain");
    const int n = dom.shape.coords();
    const int dim = dom.shape.algebra->dim();
    if (singular_at)
        return ball_integral_radial(n, dom.center, dom.radius, *singular_at, dim, g,
                                    cfg);
    return ball_integral(n, dom.center, dom.radius, dim, g, cfg);
}

// ---------------------------------------------------------------------------

VecD reproduce(const PolyFunction& f, const Domain& dom, const SuperPoint& x,
               const QuadratureConfig& cfg, QuadReport* report) {
    const auto t0 = std::chrono::steady_clock::now();
    if (dom.kind != Domain::Kind::ball)
        throw Error("reproduce expects a ball domain");
    const Shape& shape = f.shape();
    const Algebra& alg = *shape.algebra;
    const int total = shape.coords();
    const int dim = alg.dim();

    const VecD xd = x.to_doubles();
    {
        VecD d(total);
        for (int k = 0; k < total; ++k) d[k] = xd[k] - dom.center[k];
        if (vec_norm(d) >= dom.radius * (1.0 - 1e-9))
            throw Error("reproduction point must be strictly interior");
    }

    const Kernel kernel(shape);  // enforces (A0)/(A1)
    const CompiledPoly cf(f);

    // first half: f * K density; second half: the density alone (its exact
    // integral is e_0, used to normalize away shared quadrature noise)
    const FlatFn boundary_fn = [&](const double* w, double* out) {
        thread_local VecD fw, dens, normal;
        fw.resize(dim);
        dens.resize(dim);
        normal.resize(total);
        for (int k = 0; k < total; ++k) normal[k] = (w[k] - dom.center[k]) / dom.radius;
        cf.eval(w, fw.data());
        kernel.density(w, xd.data(), normal.data(), dens.data());
        alg.mul_d(fw.data(), dens.data(), out);
        std::copy(dens.begin(), dens.end(), out + dim);
    };
    const VecD raw =
        sphere_integral(total, dom.center, dom.radius, 2 * dim, boundary_fn, cfg);
    VecD value = mass_normalized(alg, VecD(raw.begin(), raw.begin() + dim),
                                 VecD(raw.begin() + dim, raw.end()));
    VecD boundary_only = value;

    const D2Result df = d2(f);
    const bool qs = df.all_zero();
    if (!qs) {
        // compile the d''f component polynomials once
        std::vector<std::pair<int, CompiledPoly>> comp;
        for (const auto& [c, poly] : df.components)
            if (!poly.is_zero()) comp.emplace_back(c, CompiledPoly(poly));
        const FlatFn volume_fn = [&](const double* w, double* out) {
            thread_local std::vector<VecD> rows;
            thread_local std::vector<std::pair<int, const double*>> row_ptrs;
            rows.resize(comp.size());
            row_ptrs.resize(comp.size());
            for (size_t r = 0; r < comp.size(); ++r) {
                rows[r].resize(dim);
                comp[r].second.eval(w, rows[r].data());
                row_ptrs[r] = {comp[r].first, rows[r].data()};
            }
            kernel.volume_term(w, xd.data(), row_ptrs, out);
        };
        VecD corr = ball_integral_radial(total, dom.center, dom.radius, xd, dim,
                                         volume_fn, cfg);
        for (int k = 0; k < dim; ++k) value[k] += corr[k];
    }

    if (report) {
        report->experiment = "reproduce";
        report->algebra = alg.name();
        report->nodes = sphere_node_count(total, cfg) + (qs ? 0 : cfg.volume_nodes);
        report->seed = cfg.seed;
        report->value = value;
        double bo_err = 0;
        const VecD fx = f.eval(x).to_doubles();
        for (int k = 0; k < dim; ++k) {
            const double d = boundary_only[k] - fx[k];
            bo_err += d * d;
        }
        report->extra["boundary_only_abs_err"] = std::sqrt(bo_err);
        report->runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
    }
    return value;
}

VecD reproduce_boundary(const FlatFn& f, const Shape& shape, const Domain& dom,
                        const VecD& x, const QuadratureConfig& cfg,
                        QuadReport* report) {
    const auto t0 = std::chrono::steady_clock::now();
    const Algebra& alg = *shape.algebra;
    const int total = shape.coords();
    const int dim = alg.dim();
    const Kernel kernel(shape);

    const FlatFn boundary_fn = [&](const double* w, double* out) {
        thread_local VecD fw, dens, normal;
        fw.resize(dim);
        dens.resize(dim);
        normal.resize(total);
        for (int k = 0; k < total; ++k) normal[k] = (w[k] - dom.center[k]) / dom.radius;
        f(w, fw.data());
        kernel.density(w, x.data(), normal.data(), dens.data());
        alg.mul_d(fw.data(), dens.data(), out);
        std::copy(dens.begin(), dens.end(), out + dim);
    };
    const VecD raw =
        sphere_integral(total, dom.center, dom.radius, 2 * dim, boundary_fn, cfg);
    VecD value = mass_normalized(alg, VecD(raw.begin(), raw.begin() + dim),
                                 VecD(raw.begin() + dim, raw.end()));
    if (report) {
        report->experiment = "reproduce-boundary";
        report->algebra = alg.name();
        report->nodes = sphere_node_count(total, cfg);
        report->seed = cfg.seed;
        report->value = value;
        report->runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
    }
    return value;
}

VecD polydisk_reproduce(const PolyFunction& f, const Domain& dom,
                        const SuperPoint& x, const QuadratureConfig& cfg,
                        QuadReport* report) {
    const auto t0 = std::chrono::steady_clock::now();
    if (dom.kind != Domain::Kind::polydisk)
        throw Error("polydisk_reproduce expects a polydisk domain");
    const Shape& shape = f.shape();
    const Algebra& alg = *shape.algebra;
    const int dim = alg.dim();
    const int factors = shape.n + shape.m;
    const VecD xd = x.to_doubles();

    // factor blocks are contiguous in the flat order
    struct Factor {
        int offset, len;
        double radius;
        Kernel kernel;
        SphereRule rule;
        double rpow;
    };
    std::vector<Factor> fs;
    fs.reserve(factors);
    for (int j = 0; j < factors; ++j) {
        const bool is_y = j < shape.n;
        const int len = is_y ? alg.p_plus_1() : alg.q();
        const int offset = is_y ? j * alg.p_plus_1()
                                : shape.n * alg.p_plus_1() + (j - shape.n) * alg.q();
        Shape factor_shape(shape.algebra, is_y ? 1 : 0, is_y ? 0 : 1);
        // tensor factors converge fast; cap them so the Monte Carlo factor can
        // take the bulk of the node budget
        QuadratureConfig fac_cfg = cfg;
        fac_cfg.seed = cfg.seed + 0x9E37u * static_cast<uint64_t>(j);
        const bool tensor_factor = cfg.scheme != Scheme::monte_carlo && len <= 4;
        if (tensor_factor && factors > 1)
            fac_cfg.nodes = std::min(cfg.nodes, cfg.tensor_cap);
        Factor fac{offset, len, dom.radii[j], Kernel(factor_shape),
                   make_sphere_rule(len, fac_cfg), 0.0};
        fac.rpow = std::pow(fac.radius, len - 1);
        fs.push_back(std::move(fac));
    }

    int64_t count = 1;
    for (const auto& fac : fs) count *= fac.rule.count;
    const CompiledPoly cf(f);

    const VecD raw = integrate_nodes(count, 2 * dim, threads_of(cfg),
                                     [&](int64_t i, double* out) {
        thread_local VecD w, sigma, fw, dens, acc, tmp;
        w.assign(dom.center.begin(), dom.center.end());
        sigma.resize(shape.coords());
        fw.resize(dim);
        dens.resize(dim);
        acc.resize(dim);
        tmp.resize(dim);

        // decode the node index factor by factor (last factor fastest)
        int64_t rest = i;
        double weight = 1.0;
        for (int j = factors - 1; j >= 0; --j) {
            const auto& fac = fs[j];
            const int64_t sub = rest % fac.rule.count;
            rest /= fac.rule.count;
            weight *= fac.rule.node(fac.len, sub, sigma.data() + fac.offset) *
                      fac.rpow;
            for (int k = 0; k < fac.len; ++k)
                w[fac.offset + k] = dom.center[fac.offset + k] +
                                    fac.radius * sigma[fac.offset + k];
        }

        // product of the factor densities, then f * product
        bool first = true;
        for (const auto& fac : fs) {
            thread_local VecD normal;
            normal.resize(fac.len);
            for (int k = 0; k < fac.len; ++k)
                normal[k] = (w[fac.offset + k] - dom.center[fac.offset + k]) / fac.radius;
            fac.kernel.density(w.data() + fac.offset, xd.data() + fac.offset,
                               normal.data(), first ? acc.data() : dens.data());
            if (!first) {
                alg.mul_d(acc.data(), dens.data(), tmp.data());
                std::swap(acc, tmp);
            }
            first = false;
        }
        cf.eval(w.data(), fw.data());
        alg.mul_d(fw.data(), acc.data(), tmp.data());
        for (int k = 0; k < dim; ++k) {
            out[k] = weight * tmp[k];
            out[dim + k] = weight * acc[k];
        }
    });
    VecD value = mass_normalized(alg, VecD(raw.begin(), raw.begin() + dim),
                                 VecD(raw.begin() + dim, raw.end()));

    if (report) {
        report->experiment = "polydisk";
        report->algebra = alg.name();
        report->nodes = count;
        report->seed = cfg.seed;
        report->value = value;
        report->runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
    }
    return value;
}

VecD hartogs_extend(const FlatFn& f, const Shape& shape, const Domain& d2_domain,
                    const VecD& x, const QuadratureConfig& cfg, QuadReport* report) {
    if (shape.n + shape.m < 2)
        throw Error("hartogs extension requires n + m >= 2");
    VecD value = reproduce_boundary(f, shape, d2_domain, x, cfg, report);
    if (report) report->experiment = "hartogs";
    return value;
}

QuadReport divergence_selftest(int n_dim, const QuadratureConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    QuadReport rep;
    rep.experiment = "divergence-selftest";
    rep.algebra = "-";
    rep.seed = cfg.seed;

    // off-center sphere so the integrand w . nu actually varies over nodes
    VecD center(n_dim, 0.0);
    center[0] = 0.3;
    if (n_dim > 1) center[1] = -0.1;
    const double radius = 1.0;

    const FlatFn fn = [&](const double* w, double* out) {
        double dot = 0;
        for (int k = 0; k < n_dim; ++k) dot += w[k] * (w[k] - center[k]) / radius;
        out[0] = dot;
    };
    rep.value = sphere_integral(n_dim, center, radius, 1, fn, cfg);
    rep.nodes = sphere_node_count(n_dim, cfg);
    rep.finish_against({n_dim * unit_ball_volume(n_dim) * std::pow(radius, n_dim)});
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

}  // namespace supercauchy
