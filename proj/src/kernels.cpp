#include "supercauchy/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace supercauchy {

namespace {

double norm(const double* x, int n) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

}  // namespace

Kernel::Kernel(Shape shape) : shape_(std::move(shape)) {
    const Algebra& alg = *shape_.algebra;
    dim_ = alg.dim();

    auto [s0, a0_ok] = alg.check_A0();
    if (!a0_ok)
        throw condition_error("(A0) fails for algebra '" + alg.name() +
                              "': sum of squares = " + s0.str());
    if (shape_.m >= 1) {
        const auto a1 = alg.check_A1();
        if (!a1.pass)
            throw condition_error("(A1) fails for algebra '" + alg.name() + "'");
    }

    const int total = shape_.coords();
    c0_ = -1.0 / (total * unit_ball_volume(total));

    for (int c : shape_.non_leading()) {
        Row r;
        r.coord = c;
        r.lead = shape_.leading_of(c);
        r.sign = (c % 2 == 0) ? 1 : -1;  // (-1)^{pos}, pos = flat index
        r.mult = shape_.multiplier(c).to_doubles();
        rows_.push_back(std::move(r));
    }
}

void Kernel::g_row(const Row& row, const double* x, double inv_norm_pow,
                   double* out) const {
    // G_c(x) = c0 (x_c e_0 + x_lead M_c) / ||x||^N
    const double xc = x[row.coord] * c0_ * inv_norm_pow;
    const double xl = x[row.lead] * c0_ * inv_norm_pow;
    for (int k = 0; k < dim_; ++k) out[k] = xl * row.mult[k];
    out[0] += xc;
}

std::vector<std::pair<int, VecD>> Kernel::omega_coefficients(const VecD& x) const {
    const int total = total_dim();
    const double r = norm(x.data(), total);
    if (r == 0.0) throw Error("kernel evaluated at its singularity");
    const double inv = std::pow(r, -total);
    std::vector<std::pair<int, VecD>> out;
    VecD g(dim_);
    for (const auto& row : rows_) {
        g_row(row, x.data(), inv, g.data());
        VecD coeff(dim_);
        for (int k = 0; k < dim_; ++k) coeff[k] = row.sign * g[k];
        out.emplace_back(row.coord, std::move(coeff));
    }
    return out;
}

std::vector<std::pair<int, VecD>> Kernel::pairing_rows(const VecD& x) const {
    const int total = total_dim();
    const double r = norm(x.data(), total);
    if (r == 0.0) throw Error("kernel evaluated at its singularity");
    const double inv = std::pow(r, -total);
    std::vector<std::pair<int, VecD>> out;
    VecD g(dim_);
    for (const auto& row : rows_) {
        g_row(row, x.data(), inv, g.data());
        out.emplace_back(row.coord, g);
    }
    return out;
}

void Kernel::density(const double* w, const double* x, const double* normal,
                     double* out) const {
    thread_local VecD delta, g, gm;
    const int total = total_dim();
    delta.resize(total);
    g.resize(dim_);
    gm.resize(dim_);
    for (int i = 0; i < total; ++i) delta[i] = w[i] - x[i];
    const double r = norm(delta.data(), total);
    if (r == 0.0) throw Error("kernel evaluated at its singularity");
    const double inv = std::pow(r, -total);

    std::fill(out, out + dim_, 0.0);
    for (const auto& row : rows_) {
        g_row(row, delta.data(), inv, g.data());
        const double nc = normal[row.coord];
        const double nl = normal[row.lead];
        shape_.algebra->mul_d(g.data(), row.mult.data(), gm.data());
        for (int k = 0; k < dim_; ++k) out[k] += gm[k] * nl - g[k] * nc;
    }
}

void Kernel::volume_term(const double* w, const double* x,
                         const std::vector<std::pair<int, const double*>>& d2f_rows,
                         double* out) const {
    thread_local VecD delta, g, prod;
    const int total = total_dim();
    delta.resize(total);
    g.resize(dim_);
    prod.resize(dim_);
    for (int i = 0; i < total; ++i) delta[i] = w[i] - x[i];
    const double r = norm(delta.data(), total);
    const double inv = std::pow(r, -total);

    std::fill(out, out + dim_, 0.0);
    for (const auto& row : rows_) {
        const double* fc = nullptr;
        for (const auto& [c, ptr] : d2f_rows)
            if (c == row.coord) { fc = ptr; break; }
        if (!fc) continue;
        g_row(row, delta.data(), inv, g.data());
        shape_.algebra->mul_d(g.data(), fc, prod.data());
        for (int k = 0; k < dim_; ++k) out[k] += prod[k];
    }
}

double Kernel::d2_residual(const VecD& x, double h) const {
    const int total = total_dim();
    VecD resid(dim_, 0.0);
    VecD gp(dim_), gm(dim_), diff(dim_), prod(dim_);
    double scale = 0.0;

    auto eval_row = [&](const Row& row, const VecD& at, double* out) {
        const double r = norm(at.data(), total);
        g_row(row, at.data(), std::pow(r, -total), out);
    };

    for (const auto& row : rows_) {
        VecD xp = x, xm = x;
        xp[row.coord] += h;
        xm[row.coord] -= h;
        eval_row(row, xp, gp.data());
        eval_row(row, xm, gm.data());
        for (int k = 0; k < dim_; ++k) diff[k] = (gp[k] - gm[k]) / (2 * h);
        for (int k = 0; k < dim_; ++k) resid[k] += diff[k];

        xp = x; xm = x;
        xp[row.lead] += h;
        xm[row.lead] -= h;
        eval_row(row, xp, gp.data());
        eval_row(row, xm, gm.data());
        for (int k = 0; k < dim_; ++k) diff[k] = (gp[k] - gm[k]) / (2 * h);
        if (shape_.is_y(row.coord))
            shape_.algebra->mul_d(row.mult.data(), diff.data(), prod.data());
        else
            shape_.algebra->mul_d(diff.data(), row.mult.data(), prod.data());
        for (int k = 0; k < dim_; ++k) resid[k] -= prod[k];

        eval_row(row, x, gp.data());
        for (int k = 0; k < dim_; ++k) scale = std::max(scale, std::abs(gp[k]));
    }

    double rnorm = 0.0;
    for (int k = 0; k < dim_; ++k) rnorm += resid[k] * resid[k];
    rnorm = std::sqrt(rnorm);
    const double x_norm = norm(x.data(), total);
    // coefficients scale like ||x||^{1-N}; compare the residual (which picks up
    // an extra 1/||x|| from differentiation) against scale/||x||
    return rnorm / (scale / x_norm + 1e-300);
}

}  // namespace supercauchy
