#pragma once

#include "supercauchy/superspace.hpp"

#include <utility>
#include <vector>

namespace supercauchy {

/// Closed-form fundamental-solution kernels for d'' on Lambda_0^n x Lambda_1^m
/// and their boundary densities.
///
/// Sign conventions. With N = n(p+1) + qm and c0 = -1/(N Vol(B_N)), the kernel
/// form carries, on the hatted form omitting coordinate c (a non-leading one),
/// the coefficient (-1)^{pos(c)} G_c(x) where
///     G_c(x) = c0 (x_c e_0 + x_lead(c) M_c) / ||x||^N,
/// pos(c) is the position of c in the flat coordinate order and M_c is e_k or
/// a_t. The current pairing of the form against d'' additionally produces
/// hatted-leading-coordinate terms, so the scalar boundary density against
/// surface measure with outward unit normal nu is
///     density(w, x) = -sum_c G_c(w - x) (nu_c(w) - M_c nu_lead(c)(w)),
/// the convention validated by the divergence and reproduction self-tests
/// (constants integrate to e_0 exactly in the closed-form circle case).
class Kernel {
public:
    /// Throws condition_error when (A_0) fails, or (A_1) fails while m >= 1.
    explicit Kernel(Shape shape);

    const Shape& shape() const { return shape_; }
    int total_dim() const { return shape_.coords(); }
    double normalization() const { return c0_; }  // c(n,m,p,q)

    /// Displayed kernel coefficients: for each non-leading coordinate c the
    /// Element on the hatted form omitting c, evaluated at x (which must be
    /// nonzero). For n=1,m=0 this is Omega_0, for n=0,m=1 Omega_1.
    std::vector<std::pair<int, VecD>> omega_coefficients(const VecD& x) const;

    /// Pairing rows G_c(x) for every non-leading c (the volume-term kernel).
    std::vector<std::pair<int, VecD>> pairing_rows(const VecD& x) const;

    /// Scalar boundary density of K^(0)(w, x) against surface measure.
    void density(const double* w, const double* x, const double* normal,
                 double* out) const;

    /// The K^(0) component (degree 0 in dx). K carries no dx differentials in
    /// its written form, so for function-valued integrands this is the same
    /// density; exposed under its own name so the Hartogs experiment cites the
    /// right object.
    void bidegree0_density(const double* w, const double* x, const double* normal,
                           double* out) const {
        density(w, x, normal, out);
    }

    /// Volume-term integrand sum_c G_c(w - x) g_c(w) for given d''f rows.
    void volume_term(const double* w, const double* x,
                     const std::vector<std::pair<int, const double*>>& d2f_rows,
                     double* out) const;

    /// Finite-difference residual of d''Omega at x: the single top-degree
    /// coefficient sum_c (d/dx_c - M_c d/dx_lead) G_c, relative to the local
    /// coefficient magnitude.
    double d2_residual(const VecD& x, double h) const;

private:
    struct Row {
        int coord;             // non-leading flat index
        int lead;              // its block leader
        int sign;              // (-1)^{pos(coord)}
        VecD mult;             // M_c as doubles
    };

    void g_row(const Row& row, const double* x, double inv_norm_pow, double* out) const;

    Shape shape_;
    std::vector<Row> rows_;
    double c0_ = 0.0;
    int dim_ = 0;
};

}  // namespace supercauchy
