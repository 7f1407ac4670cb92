#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supercauchy/kernels.hpp"
#include "supercauchy/quadrature.hpp"

#include "generators.hpp"

using namespace supercauchy;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

VecD random_direction(int n, SplitMix64& rng, double lo = 0.5, double hi = 2.0) {
    VecD x(n);
    double nrm = 0;
    for (auto& v : x) {
        double g0, g1;
        rng.gaussian_pair(g0, g1);
        v = g0;
        nrm += v * v;
    }
    nrm = std::sqrt(nrm);
    const double scale = lo + (hi - lo) * rng.uniform();
    for (auto& v : x) v *= scale / nrm;
    return x;
}

}  // namespace

TEST_CASE("Omega_0 on C: closed form at (1,0) and on random points") {
    const Shape s(Algebra::builtin("complex"), 1, 0);
    const Kernel ker(s);

    // at x = (1,0): the only coefficient sits on the hatted form omitting y^1
    auto coeffs = ker.omega_coefficients({1.0, 0.0});
    REQUIRE(coeffs.size() == 1);
    CHECK(coeffs[0].first == 1);
    CHECK(coeffs[0].second[0] == doctest::Approx(0.0));
    CHECK(coeffs[0].second[1] == doctest::Approx(1.0 / (2 * kPi)));

    // independent oracle: -(x^0 e_j + x^j e_0)(-1)^j / ((p+1) Vol(B) ||x||^{p+1})
    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const VecD x = random_direction(2, rng);
        const double r2 = x[0] * x[0] + x[1] * x[1];
        auto got = ker.omega_coefficients(x);
        const double want_e0 = x[1] / (2 * kPi * r2);
        const double want_e1 = x[0] / (2 * kPi * r2);
        CHECK(got[0].second[0] == doctest::Approx(want_e0).epsilon(1e-12));
        CHECK(got[0].second[1] == doctest::Approx(want_e1).epsilon(1e-12));
    }
}

TEST_CASE("Omega_0 scaling degree -p") {
    for (const char* name : {"complex", "example4"}) {
        const Shape s(Algebra::builtin(name), 1, 0);
        const Kernel ker(s);
        const int p = s.algebra->p();
        SplitMix64 rng(9);
        const VecD x = random_direction(s.coords(), rng);
        const double t = 1.7;
        VecD tx = x;
        for (auto& v : tx) v *= t;
        const auto a = ker.omega_coefficients(x);
        const auto b = ker.omega_coefficients(tx);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t k = 0; k < a[i].second.size(); ++k)
                CHECK(b[i].second[k] ==
                      doctest::Approx(std::pow(t, -p) * a[i].second[k]).epsilon(1e-12));
    }
}

TEST_CASE("Omega_1 on example4: closed form from eq.-(16) data") {
    const Shape s(Algebra::builtin("example4"), 0, 1);
    const Algebra& alg = *s.algebra;
    const Kernel ker(s);
    const double vol_b4 = unit_ball_volume(4);

    // theta = eps_1: non-leading coordinates are t = 2 and t = 4
    VecD theta = {1.0, 0.0, 0.0, 0.0};
    auto coeffs = ker.omega_coefficients(theta);
    REQUIRE(coeffs.size() == 2);
    // t = 2 block leader s_1 = 1, a_2 = e_1:
    // -(th^2 e_0 + th^1 a_2)(-1)^{t-1}/(q Vol(B) ||th||^q) = +e_1/(4 Vol(B4))
    CHECK(coeffs[0].first == s.theta_index(0, 2));
    CHECK(coeffs[0].second[1] == doctest::Approx(1.0 / (4 * vol_b4)).epsilon(1e-12));
    for (int k = 0; k < alg.dim(); ++k)
        if (k != 1) CHECK(coeffs[0].second[k] == doctest::Approx(0.0));
    // t = 4 block leader s_2 = 3: theta^4 = theta^3 = 0 there
    CHECK(coeffs[1].first == s.theta_index(0, 4));
    for (int k = 0; k < alg.dim(); ++k)
        CHECK(coeffs[1].second[k] == doctest::Approx(0.0));

    // homogeneity degree 1 - q
    SplitMix64 rng(13);
    const VecD th = random_direction(4, rng);
    VecD th2 = th;
    for (auto& v : th2) v *= 2.0;
    const auto a = ker.omega_coefficients(th);
    const auto b = ker.omega_coefficients(th2);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < a[i].second.size(); ++k)
            CHECK(b[i].second[k] ==
                  doctest::Approx(std::pow(2.0, 1 - alg.q()) * a[i].second[k])
                      .epsilon(1e-12));
}

TEST_CASE("general Omega specializes to Omega_0 / Omega_1 and is homogeneous") {
    const AlgebraPtr e4 = Algebra::builtin("example4");
    SplitMix64 rng(21);

    // n=1, m=0 and n=0, m=1 shapes already are the special cases; check that
    // the mixed kernel restricted to pure blocks agrees with the factors
    const Shape mixed(e4, 1, 1);
    const Kernel km(mixed);
    const Shape s0(e4, 1, 0);
    const Shape s1(e4, 0, 1);
    const Kernel k0(s0);
    const Kernel k1(s1);

    // homogeneity 1 - N for the mixed kernel, N = (p+1) + q = 10
    const VecD x = random_direction(mixed.coords(), rng);
    VecD x3 = x;
    for (auto& v : x3) v *= 3.0;
    const auto a = km.omega_coefficients(x);
    const auto b = km.omega_coefficients(x3);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < a[i].second.size(); ++k)
            CHECK(b[i].second[k] ==
                  doctest::Approx(std::pow(3.0, 1 - mixed.coords()) * a[i].second[k])
                      .epsilon(1e-11));

    // C with n = 2: homogeneity -(2*2 - 1) = -3
    const Shape c2(Algebra::builtin("complex"), 2, 0);
    const Kernel kc2(c2);
    const VecD z = random_direction(4, rng);
    VecD z2 = z;
    for (auto& v : z2) v *= 2.0;
    const auto ca = kc2.omega_coefficients(z);
    const auto cb = kc2.omega_coefficients(z2);
    for (size_t i = 0; i < ca.size(); ++i)
        for (size_t k = 0; k < ca[i].second.size(); ++k)
            CHECK(cb[i].second[k] ==
                  doctest::Approx(std::pow(2.0, -3) * ca[i].second[k]).epsilon(1e-12));
}

TEST_CASE("kernel construction refuses algebras failing the conditions") {
    CHECK_THROWS_AS(Kernel(Shape(Algebra::builtin("hyperbolic"), 1, 0)),
                    condition_error);
    CHECK_THROWS_AS(Kernel(Shape(Algebra::builtin("clifford(4)"), 1, 0)),
                    condition_error);
    CHECK_NOTHROW(Kernel(Shape(Algebra::builtin("clifford(2)"), 1, 0)));
}

TEST_CASE("finite-difference d'' residual vanishes off the origin") {
    const double h = 1e-5;
    SplitMix64 rng(33);
    auto probe = [&](const Shape& s) {
        const Kernel ker(s);
        double worst = 0;
        for (int t = 0; t < 100; ++t)
            worst = std::max(worst, ker.d2_residual(random_direction(s.coords(), rng), h));
        return worst;
    };
    CHECK(probe(Shape(Algebra::builtin("complex"), 1, 0)) < 1e-6);
    CHECK(probe(Shape(Algebra::builtin("example4"), 1, 0)) < 1e-6);
    CHECK(probe(Shape(Algebra::builtin("example4"), 0, 1)) < 1e-6);
    CHECK(probe(Shape(Algebra::builtin("complex"), 2, 0)) < 1e-6);
    CHECK(probe(Shape(Algebra::builtin("example4"), 1, 1)) < 1e-6);
}

TEST_CASE("boundary density: translation invariance and decay") {
    const Shape s(Algebra::builtin("example4"), 1, 1);
    const Kernel ker(s);
    const int dim = s.algebra->dim();
    SplitMix64 rng(43);
    for (int t = 0; t < 30; ++t) {
        const VecD w = random_direction(s.coords(), rng);
        const VecD x = random_direction(s.coords(), rng, 0.05, 0.4);
        VecD nu(s.coords());
        double nn = 0;
        for (int k = 0; k < s.coords(); ++k) {
            nu[k] = w[k];
            nn += nu[k] * nu[k];
        }
        nn = std::sqrt(nn);
        for (auto& v : nu) v /= nn;

        VecD d1(dim), d2v(dim);
        ker.density(w.data(), x.data(), nu.data(), d1.data());

        VecD wt = w, xt = x;
        for (int k = 0; k < s.coords(); ++k) {
            wt[k] += 0.37;
            xt[k] += 0.37;
        }
        ker.density(wt.data(), xt.data(), nu.data(), d2v.data());
        for (int k = 0; k < dim; ++k)
            CHECK(d1[k] == doctest::Approx(d2v[k]).epsilon(1e-9));

        // || density || <= C ||w - x||^{-(N-1)}
        double dist2 = 0, dn = 0;
        for (int k = 0; k < s.coords(); ++k)
            dist2 += (w[k] - x[k]) * (w[k] - x[k]);
        for (int k = 0; k < dim; ++k) dn += d1[k] * d1[k];
        const double bound = std::sqrt(dn) *
                             std::pow(std::sqrt(dist2), s.coords() - 1);
        CHECK(bound < 1.0);  // comfortably above the observed constant
    }
}

TEST_CASE("K^(0) equals the plain density for function integrands") {
    const Shape s(Algebra::builtin("complex"), 2, 0);
    const Kernel ker(s);
    SplitMix64 rng(61);
    for (int t = 0; t < 20; ++t) {
        const VecD w = random_direction(4, rng);
        const VecD x = random_direction(4, rng, 0.05, 0.4);
        VecD nu = w;
        double nn = 0;
        for (double v : nu) nn += v * v;
        nn = std::sqrt(nn);
        for (auto& v : nu) v /= nn;
        VecD a(2), b(2);
        ker.density(w.data(), x.data(), nu.data(), a.data());
        ker.bidegree0_density(w.data(), x.data(), nu.data(), b.data());
        CHECK(a == b);
    }
}

TEST_CASE("finite-difference residual shrinks with the step (O(h^2))") {
    const Shape s(Algebra::builtin("example4"), 1, 1);
    const Kernel ker(s);
    SplitMix64 rng(71);
    const VecD x = random_direction(s.coords(), rng, 0.9, 1.1);
    const double coarse = ker.d2_residual(x, 1e-2);
    const double fine = ker.d2_residual(x, 1e-4);
    CHECK(fine < coarse / 100);  // second-order stencil
    CHECK(ker.d2_residual(x, 1e-5) < 1e-6);
}

TEST_CASE("reproduction of constants: circle closed form") {
    // C: density of K_0(w, 0) on the unit circle must integrate to e_0;
    // manual trapezoid (independent of the quadrature module)
    const Shape s(Algebra::builtin("complex"), 1, 0);
    const Kernel ker(s);
    const int n = 20000;
    double acc0 = 0, acc1 = 0;
    const VecD x = {0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * (i + 0.5) / n;
        const VecD w = {std::cos(t), std::sin(t)};
        VecD out(2);
        ker.density(w.data(), x.data(), w.data(), out.data());
        acc0 += out[0];
        acc1 += out[1];
    }
    acc0 *= 2 * kPi / n;
    acc1 *= 2 * kPi / n;
    CHECK(acc0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(acc1) < 1e-10);
}

TEST_CASE("reproduction of constants on example4 spheres (Lambda_0 and mixed)") {
    QuadratureConfig cfg;
    cfg.nodes = 400000;
    cfg.seed = 12;

    for (auto [n, m] : {std::pair{1, 0}, std::pair{1, 1}}) {
        const Shape s(Algebra::builtin("example4"), n, m);
        const Kernel ker(s);
        const int dim = s.algebra->dim();
        const VecD x(s.coords(), 0.0);
        const VecD center(s.coords(), 0.0);
        const FlatFn fn = [&](const double* w, double* out) {
            thread_local VecD nu;
            nu.resize(s.coords());
            for (int k = 0; k < s.coords(); ++k) nu[k] = w[k];
            ker.density(w, x.data(), nu.data(), out);
        };
        const VecD got = sphere_integral(s.coords(), center, 1.0, dim, fn, cfg);
        CHECK(got[0] == doctest::Approx(1.0).epsilon(2e-2));
        for (int k = 1; k < dim; ++k) CHECK(std::abs(got[k]) < 2e-2);
    }
}
