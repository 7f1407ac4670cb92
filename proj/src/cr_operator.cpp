#include "supercauchy/cr_operator.hpp"

namespace supercauchy {

D2Result d2(const PolyFunction& f) {
    const Shape& s = f.shape();
    D2Result out;
    for (int c : s.non_leading()) {
        const int lead = s.leading_of(c);
        const Element mult = s.multiplier(c);
        // e_k multiplies from the left on y blocks, a_t from the right on theta
        PolyFunction dl = f.partial(lead);
        PolyFunction comp =
            f.partial(c) - (s.is_y(c) ? dl.ltimes(mult) : dl.times(mult));
        out.components.emplace(c, std::move(comp));
    }
    return out;
}

std::map<int, PolyFunction> d_prime(const PolyFunction& f) {
    const Shape& s = f.shape();
    std::map<int, PolyFunction> out;
    for (int c = 0; c < s.coords(); ++c) {
        const int lead = s.leading_of(c);
        const Element mult = s.multiplier(c);  // e_0 / a_{s_k} = e_0 on leaders
        out.emplace(c, f.partial(lead).ltimes(mult));
    }
    return out;
}

bool is_qS(const PolyFunction& f) { return d2(f).all_zero(); }

SAtResult is_S_at(const PolyFunction& f, const SuperPoint& x) {
    const Shape& s = f.shape();
    const Algebra& alg = *s.algebra;
    SAtResult res;
    res.s_differentiable = true;

    // eq. (2): df/dy_i^k (x) = df/dy_i^0 (x) e_k for k = 1..p
    for (int i = 0; i < s.n && res.s_differentiable; ++i) {
        const Element base = f.partial(s.y_index(i, 0)).eval(x);
        for (int k = 1; k < alg.p_plus_1(); ++k) {
            const Element got = f.partial(s.y_index(i, k)).eval(x);
            if (!(got == alg.mul(base, alg.basis(k)))) {
                res.s_differentiable = false;
                res.eq2_witness = s.y_index(i, k);
                break;
            }
        }
    }

    // eq. (3): (df/dth_j^1, ..., df/dth_j^q)(x) = (a eps_1, ..., a eps_q)
    const int d = alg.dim();
    for (int j = 0; j < s.m; ++j) {
        RatMat stacked(static_cast<size_t>(alg.q()) * d, RatVec(d, Rat(0)));
        RatVec rhs(static_cast<size_t>(alg.q()) * d, Rat(0));
        for (int l = 1; l <= alg.q(); ++l) {
            const Element eps = alg.basis(alg.p_plus_1() + l - 1);
            for (int col = 0; col < d; ++col) {
                const Element prod = alg.mul(alg.basis(col), eps);
                for (int k = 0; k < d; ++k) stacked[(l - 1) * d + k][col] = prod.c[k];
            }
            const Element g = f.partial(s.theta_index(j, l)).eval(x);
            for (int k = 0; k < d; ++k) rhs[(l - 1) * d + k] = g.c[k];
        }
        auto sol = solve_consistent(stacked, rhs);
        if (!sol) {
            res.s_differentiable = false;
            if (!res.unsolvable_theta) res.unsolvable_theta = j;
        } else {
            res.theta_slopes.push_back(
                alg.min_norm_mod_annihilator(Element(std::move(*sol))));
        }
    }
    return res;
}

PolyFunction laplacian(const PolyFunction& f) {
    const Shape& s = f.shape();
    PolyFunction out(s);
    for (int c = 0; c < s.coords(); ++c) out = out + f.partial(c).partial(c);
    return out;
}

SecondOrderReport second_order_identity_check(const PolyFunction& f) {
    if (!is_qS(f)) throw Error("second_order_identity_check requires a qS function");
    const Shape& s = f.shape();
    const Algebra& alg = *s.algebra;
    SecondOrderReport rep;
    for (int c = 0; c < s.coords(); ++c) {
        const int lead = s.leading_of(c);
        const Element mult = s.multiplier(c);
        const Element mult_sq = alg.mul(mult, mult);
        PolyFunction lhs = f.partial(c).partial(c);
        PolyFunction rhs = f.partial(lead).partial(lead).times(mult_sq);
        if (!(lhs == rhs)) {
            rep.pass = false;
            rep.failures.push_back("second-order identity fails at coordinate " +
                                   std::to_string(c));
        }
    }
    return rep;
}

std::map<int, VecD> sampled_d2(const ExactFn& fn, const Shape& shape,
                               const SuperPoint& x, double h) {
    const NumericFn wrapped = [&](const VecD& at) {
        return fn(SuperPoint(shape, at)).to_doubles();
    };
    return sampled_d2(wrapped, shape, x.to_doubles(), h);
}

std::map<int, VecD> sampled_d2(const NumericFn& fn, const Shape& shape,
                               const VecD& x, double h) {
    const Algebra& alg = *shape.algebra;
    const int d = alg.dim();
    auto central = [&](int c) {
        VecD xp = x, xm = x;
        xp[c] += h;
        xm[c] -= h;
        const VecD fp = fn(xp), fm = fn(xm);
        VecD g(d);
        for (int k = 0; k < d; ++k) g[k] = (fp[k] - fm[k]) / (2 * h);
        return g;
    };

    std::map<int, VecD> out;
    // cache leading-coordinate differences per block leader
    std::map<int, VecD> lead_cache;
    for (int c : shape.non_leading()) {
        const int lead = shape.leading_of(c);
        if (!lead_cache.count(lead)) lead_cache[lead] = central(lead);
        const VecD gc = central(c);
        const VecD mult = shape.multiplier(c).to_doubles();
        VecD prod(d);
        if (shape.is_y(c))
            alg.mul_d(mult.data(), lead_cache[lead].data(), prod.data());
        else
            alg.mul_d(lead_cache[lead].data(), mult.data(), prod.data());
        VecD comp(d);
        for (int k = 0; k < d; ++k) comp[k] = gc[k] - prod[k];
        out.emplace(c, std::move(comp));
    }
    return out;
}

}  // namespace supercauchy
