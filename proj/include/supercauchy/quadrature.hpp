#pragma once

#include "supercauchy/cr_operator.hpp"
#include "supercauchy/kernels.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace supercauchy {

enum class Scheme { automatic, tensor, monte_carlo };

struct QuadratureConfig {
    Scheme scheme = Scheme::automatic;
    int64_t nodes = 4096;          // boundary nodes (per sphere factor)
    int64_t volume_nodes = 100000; // volume correction samples
    int64_t tensor_cap = 384;      // per-factor cap for tensor factors of a polydisk
    uint64_t seed = 1;
    double tol = 1e-3;
    int threads = 0;               // 0 -> SUPERCAUCHY_THREADS / hardware
};

struct Domain {
    enum class Kind { ball, polydisk };
    Kind kind = Kind::ball;
    Shape shape;
    VecD center;   // flat coordinates
    double radius = 1.0;
    VecD radii;    // polydisk: one radius per super-variable (n+m of them)

    static Domain ball(const Shape& s, VecD center, double radius);
    static Domain polydisk(const Shape& s, VecD center, VecD radii);
};

struct QuadReport {
    std::string experiment;
    std::string algebra;
    int64_t nodes = 0;
    uint64_t seed = 0;
    VecD value;
    std::optional<VecD> oracle;
    double abs_err = 0.0;
    double rel_err = 0.0;
    int64_t runtime_ms = 0;
    std::map<std::string, double> extra;

    void finish_against(const VecD& oracle_value);
};

/// Integrand on flat coordinates writing `out_dim` doubles.
using FlatFn = std::function<void(const double* w, double* out)>;

/// Integral of a vector density over the sphere S^{N-1}(center, radius).
/// Tensor product grids for N <= 4 (spectral in the periodic angle,
/// Gauss-Legendre elsewhere), antithetic Monte Carlo with surface-area weight
/// above. Deterministic for a fixed seed and node budget at any thread count.
VecD sphere_integral(int n_dim, const VecD& center, double radius, int out_dim,
                     const FlatFn& fn, const QuadratureConfig& cfg);

/// Plain Monte Carlo volume integral over a ball.
VecD ball_integral(int n_dim, const VecD& center, double radius, int out_dim,
                   const FlatFn& fn, const QuadratureConfig& cfg);

/// Volume integral with an integrable ||w-x||^{1-N} singularity at x: radial
/// substitution around x (Jacobian rho^{N-1}) with Monte Carlo shells.
VecD ball_integral_radial(int n_dim, const VecD& center, double radius,
                          const VecD& x, int out_dim, const FlatFn& fn,
                          const QuadratureConfig& cfg);

/// Integral of a Lambda-valued density over the boundary sphere of a ball
/// domain.
VecD surface_integral(const FlatFn& g, const Domain& dom, const QuadratureConfig& cfg);

/// Integral of a Lambda-valued function over a ball domain; pass the singular
/// point when g carries a kernel-type singularity there.
VecD volume_integral(const FlatFn& g, const Domain& dom, const QuadratureConfig& cfg,
                     const VecD* singular_at = nullptr);

/// Number of nodes the sphere rule will actually use for a requested budget.
int64_t sphere_node_count(int n_dim, const QuadratureConfig& cfg);

/// The deterministic unit-sphere node set behind sphere_integral, exposed for
/// boundary grids (sup norms, max-principle spot checks).
class SphereNodes {
public:
    SphereNodes(int n_dim, const QuadratureConfig& cfg);
    ~SphereNodes();
    SphereNodes(SphereNodes&& o) noexcept;

    int64_t count() const;
    /// Writes the i-th unit node into sigma; returns its unit-sphere weight.
    double point(int64_t i, double* sigma) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

/// Boundary representation of f at interior x; for non-qS f the d''f volume
/// correction is added (for qS f the volume term is skipped entirely).
VecD reproduce(const PolyFunction& f, const Domain& dom, const SuperPoint& x,
               const QuadratureConfig& cfg, QuadReport* report = nullptr);

/// Boundary-only reproduction of a black-box function assumed qS.
VecD reproduce_boundary(const FlatFn& f, const Shape& shape, const Domain& dom,
                        const VecD& x, const QuadratureConfig& cfg,
                        QuadReport* report = nullptr);

/// Iterated representation over the distinguished boundary of a polydisk:
/// nested one-variable sphere integrals in fixed factor order.
VecD polydisk_reproduce(const PolyFunction& f, const Domain& dom,
                        const SuperPoint& x, const QuadratureConfig& cfg,
                        QuadReport* report = nullptr);

/// Hartogs extension candidate F_2(x) = int_{dD2} f(w) K^(0)(w,x) dS.
VecD hartogs_extend(const FlatFn& f, const Shape& shape, const Domain& d2_domain,
                    const VecD& x, const QuadratureConfig& cfg,
                    QuadReport* report = nullptr);

/// Integral of w . nu over an off-center sphere against N Vol(B_N) R^N; pins
/// node weights and the orientation conventions.
QuadReport divergence_selftest(int n_dim, const QuadratureConfig& cfg);

}  // namespace supercauchy
