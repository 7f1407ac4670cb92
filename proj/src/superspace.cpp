#include "supercauchy/superspace.hpp"

#include <algorithm>

namespace supercauchy {

bool Shape::is_leading(int c) const {
    if (is_y(c)) return coord_component(c) == 0;
    const int l = coord_component(c);
    const auto& s = algebra->a1()->s;
    return std::find(s.begin(), s.end() - 1, l) != s.end() - 1;
}

int Shape::leading_of(int c) const {
    if (is_y(c)) return c - coord_component(c);
    const int l = coord_component(c);
    const auto& s = algebra->a1()->s;
    int lead = s.front();
    for (size_t k = 0; k + 1 < s.size(); ++k)
        if (s[k] <= l) lead = s[k];
    return theta_index(coord_variable(c), lead);
}

Element Shape::multiplier(int c) const {
    if (is_y(c)) return algebra->basis(coord_component(c));
    return algebra->a1()->a[coord_component(c) - 1];
}

std::vector<int> Shape::non_leading() const {
    std::vector<int> out;
    for (int c = 0; c < coords(); ++c)
        if (!is_leading(c)) out.push_back(c);
    return out;
}

SuperPoint::SuperPoint(Shape s, RatVec coords) : shape(std::move(s)), x(std::move(coords)) {
    if (static_cast<int>(x.size()) != shape.coords())
        throw Error("point coordinate count mismatch");
}

SuperPoint::SuperPoint(Shape s, const VecD& coords) : shape(std::move(s)) {
    if (static_cast<int>(coords.size()) != shape.coords())
        throw Error("point coordinate count mismatch");
    x.reserve(coords.size());
    for (double v : coords) x.emplace_back(v);
}

Element SuperPoint::variable(int which) const {
    const auto& a = *shape.algebra;
    Element e(a.dim());
    if (which < shape.n) {
        for (int k = 0; k < a.p_plus_1(); ++k) e.c[k] = y(which, k);
    } else {
        const int j = which - shape.n;
        for (int l = 1; l <= a.q(); ++l) e.c[a.p_plus_1() + l - 1] = theta(j, l);
    }
    return e;
}

double SuperPoint::norm() const {
    double s = 0;
    for (const auto& v : x) {
        const double d = to_double(v);
        s += d * d;
    }
    return std::sqrt(s);
}

PolyFunction PolyFunction::constant(Shape s, const Element& value) {
    PolyFunction f(std::move(s));
    f.set_term(std::vector<int>(f.shape_.coords(), 0), value);
    return f;
}

PolyFunction PolyFunction::coordinate(Shape s, int which) {
    PolyFunction f(s);
    const auto& a = *s.algebra;
    if (which < s.n) {
        for (int k = 0; k < a.p_plus_1(); ++k) {
            std::vector<int> exp(s.coords(), 0);
            exp[s.y_index(which, k)] = 1;
            f.set_term(exp, a.basis(k));
        }
    } else {
        const int j = which - s.n;
        if (j >= s.m) throw Error("variable index out of range");
        for (int l = 1; l <= a.q(); ++l) {
            std::vector<int> exp(s.coords(), 0);
            exp[s.theta_index(j, l)] = 1;
            f.set_term(exp, a.basis(a.p_plus_1() + l - 1));
        }
    }
    return f;
}

PolyFunction PolyFunction::real_monomial(Shape s, int c, int power, const Element& coeff) {
    PolyFunction f(s);
    if (c < 0 || c >= s.coords()) throw Error("coordinate index out of range");
    std::vector<int> exp(s.coords(), 0);
    exp[c] = power;
    f.set_term(exp, coeff);
    return f;
}

int PolyFunction::degree() const {
    int d = 0;
    for (const auto& [exp, coeff] : terms_) {
        int t = 0;
        for (int e : exp) t += e;
        d = std::max(d, t);
    }
    return d;
}

void PolyFunction::set_term(const std::vector<int>& exp, const Element& coeff) {
    if (coeff.is_zero())
        terms_.erase(exp);
    else
        terms_[exp] = coeff;
}

void PolyFunction::add_term(const std::vector<int>& exp, const Element& coeff) {
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        if (!coeff.is_zero()) terms_.emplace(exp, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

PolyFunction PolyFunction::operator+(const PolyFunction& o) const {
    if (!(shape_ == o.shape_)) throw Error("polynomial shape mismatch");
    PolyFunction out = *this;
    for (const auto& [exp, coeff] : o.terms_) out.add_term(exp, coeff);
    return out;
}

PolyFunction PolyFunction::operator-(const PolyFunction& o) const {
    return *this + (-o);
}

PolyFunction PolyFunction::operator-() const {
    PolyFunction out(shape_);
    for (const auto& [exp, coeff] : terms_) out.terms_.emplace(exp, -coeff);
    return out;
}

PolyFunction PolyFunction::scaled(const Rat& s) const {
    PolyFunction out(shape_);
    if (s == 0) return out;
    for (const auto& [exp, coeff] : terms_) out.terms_.emplace(exp, s * coeff);
    return out;
}

PolyFunction PolyFunction::times(const Element& e) const {
    PolyFunction out(shape_);
    const auto& alg = *shape_.algebra;
    for (const auto& [exp, coeff] : terms_) out.add_term(exp, alg.mul(coeff, e));
    return out;
}

PolyFunction PolyFunction::ltimes(const Element& e) const {
    PolyFunction out(shape_);
    const auto& alg = *shape_.algebra;
    for (const auto& [exp, coeff] : terms_) out.add_term(exp, alg.mul(e, coeff));
    return out;
}

PolyFunction PolyFunction::operator*(const PolyFunction& o) const {
    if (!(shape_ == o.shape_)) throw Error("polynomial shape mismatch");
    PolyFunction out(shape_);
    const auto& alg = *shape_.algebra;
    std::vector<int> exp(shape_.coords());
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < shape_.coords(); ++i) exp[i] = ea[i] + eb[i];
            out.add_term(exp, alg.mul(ca, cb));
        }
    return out;
}

PolyFunction PolyFunction::pow(int k) const {
    if (k < 0) throw Error("negative power");
    PolyFunction out = constant(shape_, shape_.algebra->basis(0));
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

PolyFunction PolyFunction::partial(int c) const {
    if (c < 0 || c >= shape_.coords()) throw Error("coordinate index out of range");
    PolyFunction out(shape_);
    for (const auto& [exp, coeff] : terms_) {
        if (exp[c] == 0) continue;
        std::vector<int> e = exp;
        const Rat k = e[c]--;
        out.add_term(e, k * coeff);
    }
    return out;
}

Element PolyFunction::eval(const SuperPoint& at) const {
    if (!(at.shape == shape_)) throw Error("point/polynomial shape mismatch");
    Element out(shape_.algebra->dim());
    for (const auto& [exp, coeff] : terms_) {
        Rat mono = 1;
        for (int i = 0; i < shape_.coords(); ++i)
            for (int e = 0; e < exp[i]; ++e) mono *= at.x[i];
        out += mono * coeff;
    }
    return out;
}

VecD PolyFunction::eval_d(const double* coords) const {
    const int d = shape_.algebra->dim();
    VecD out(d, 0.0);
    for (const auto& [exp, coeff] : terms_) {
        double mono = 1.0;
        for (int i = 0; i < shape_.coords(); ++i)
            for (int e = 0; e < exp[i]; ++e) mono *= coords[i];
        for (int k = 0; k < d; ++k) out[k] += mono * to_double(coeff.c[k]);
    }
    return out;
}

PolyFunction PolyFunction::translated(const RatVec& shift) const {
    if (static_cast<int>(shift.size()) != shape_.coords())
        throw Error("shift length mismatch");
    PolyFunction out(shape_);
    // expand each monomial prod (x_c - s_c)^{e_c} ... substitution x -> x - s
    for (const auto& [exp, coeff] : terms_) {
        PolyFunction term = constant(shape_, coeff);
        for (int c = 0; c < shape_.coords(); ++c) {
            if (exp[c] == 0) continue;
            PolyFunction lin = real_monomial(shape_, c, 1, shape_.algebra->basis(0));
            lin = lin - constant(shape_, shift[c] * shape_.algebra->basis(0));
            term = term * lin.pow(exp[c]);
        }
        out = out + term;
    }
    return out;
}

PolyFunction z_projection(const Shape& shape, int j, int k) {
    const auto& alg = *shape.algebra;
    if (!alg.a1()) throw Error("z_projection requires a1 data");
    const auto& w = *alg.a1();
    if (k < 1 || k > w.r()) throw Error("block index out of range");
    if (j < 0 || j >= shape.m) throw Error("theta variable index out of range");
    PolyFunction f(shape);
    for (int i = w.s[k - 1]; i < w.s[k]; ++i) {
        std::vector<int> exp(shape.coords(), 0);
        exp[shape.theta_index(j, i)] = 1;
        f.add_term(exp, w.a[i - 1]);
    }
    return f;
}

CompiledPoly::CompiledPoly(const PolyFunction& f)
    : coords(f.shape().coords()), dim(f.shape().algebra->dim()) {
    for (const auto& [exp, coeff] : f.terms()) {
        exps.push_back(exp);
        coeffs.push_back(coeff.to_doubles());
    }
}

void CompiledPoly::eval(const double* x, double* out) const {
    std::fill(out, out + dim, 0.0);
    for (size_t t = 0; t < exps.size(); ++t) {
        double mono = 1.0;
        const auto& exp = exps[t];
        for (int c = 0; c < coords; ++c)
            for (int e = 0; e < exp[c]; ++e) mono *= x[c];
        const double* cf = coeffs[t].data();
        for (int k = 0; k < dim; ++k) out[k] += mono * cf[k];
    }
}

}  // namespace supercauchy
