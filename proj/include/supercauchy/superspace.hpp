#pragma once

#include "supercauchy/algebra.hpp"

#include <map>
#include <memory>
#include <vector>

namespace supercauchy {

/// Real-coordinate layout of Lambda_0^n x Lambda_1^m over a fixed algebra.
/// Flat order: y_1^0..y_1^p, ..., y_n^0..y_n^p, th_1^1..th_1^q, ..., th_m^q
/// (the volume-form order of the hatted-form notation).
struct Shape {
    AlgebraPtr algebra;
    int n = 1, m = 0;

    Shape() = default;
    Shape(AlgebraPtr a, int n_, int m_) : algebra(std::move(a)), n(n_), m(m_) {
        if (n < 0 || m < 0 || (m > 0 && algebra->q() == 0))
            throw Error("invalid superspace shape");
        if (m > 0 && !algebra->a1())
            throw Error("theta variables require a1 data on the algebra");
    }

    int coords() const { return n * algebra->p_plus_1() + m * algebra->q(); }
    int y_index(int i, int k) const { return i * algebra->p_plus_1() + k; }  // i in [0,n)
    int theta_index(int j, int l) const {                                    // l in [1..q]
        return n * algebra->p_plus_1() + j * algebra->q() + (l - 1);
    }
    bool is_y(int c) const { return c < n * algebra->p_plus_1(); }

    /// For a y coordinate returns k, for a theta coordinate returns l.
    int coord_component(int c) const {
        if (is_y(c)) return c % algebra->p_plus_1();
        return (c - n * algebra->p_plus_1()) % algebra->q() + 1;
    }
    int coord_variable(int c) const {  // which super-variable it belongs to
        if (is_y(c)) return c / algebra->p_plus_1();
        return (c - n * algebra->p_plus_1()) / algebra->q();
    }

    /// Leading coordinates carry the d' data: y_i^0 and th_j^{s_k}.
    bool is_leading(int c) const;
    /// Flat index of the block leader of c (c itself if leading).
    int leading_of(int c) const;
    /// Multiplier element tied to a non-leading coordinate: e_k or a_t.
    Element multiplier(int c) const;

    std::vector<int> non_leading() const;

    bool operator==(const Shape& o) const {
        return algebra == o.algebra && n == o.n && m == o.m;
    }
};

/// A point of Lambda_0^n x Lambda_1^m; coordinates held exactly so that
/// polynomial identities can be tested literally.
struct SuperPoint {
    Shape shape;
    RatVec x;  // flat, length shape.coords()

    SuperPoint() = default;
    explicit SuperPoint(Shape s) : shape(std::move(s)), x(shape.coords(), Rat(0)) {}
    SuperPoint(Shape s, RatVec coords);
    SuperPoint(Shape s, const VecD& coords);

    Rat& y(int i, int k) { return x[shape.y_index(i, k)]; }
    Rat& theta(int j, int l) { return x[shape.theta_index(j, l)]; }
    const Rat& y(int i, int k) const { return x[shape.y_index(i, k)]; }
    const Rat& theta(int j, int l) const { return x[shape.theta_index(j, l)]; }

    /// The i-th super-variable as an algebra element (theta vars are padded).
    Element variable(int which) const;

    VecD to_doubles() const { return to_double(x); }
    double norm() const;
};

/// Exact polynomial in the real coordinates with Element coefficients.
/// Keys are exponent vectors over the flat coordinate order; zero
/// coefficients are never stored.
class PolyFunction {
public:
    using Terms = std::map<std::vector<int>, Element>;

    PolyFunction() = default;
    explicit PolyFunction(Shape s) : shape_(std::move(s)) {}

    static PolyFunction constant(Shape s, const Element& value);
    /// Embedding of super-variable `which`: y_i = sum_k y_i^k e_k or
    /// th_j = sum_l th_j^l eps_l.
    static PolyFunction coordinate(Shape s, int which);
    /// Monomial in a single real coordinate: coeff * x_c^power.
    static PolyFunction real_monomial(Shape s, int c, int power, const Element& coeff);

    const Shape& shape() const { return shape_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    bool operator==(const PolyFunction& o) const { return terms_ == o.terms_; }

    PolyFunction operator+(const PolyFunction& o) const;
    PolyFunction operator-(const PolyFunction& o) const;
    PolyFunction operator*(const PolyFunction& o) const;
    PolyFunction operator-() const;
    PolyFunction scaled(const Rat& s) const;
    PolyFunction times(const Element& e) const;   // coefficient * e
    PolyFunction ltimes(const Element& e) const;  // e * coefficient
    PolyFunction pow(int k) const;

    /// Exact formal partial derivative in flat coordinate c.
    PolyFunction partial(int c) const;

    Element eval(const SuperPoint& at) const;
    VecD eval_d(const double* coords) const;

    /// f(x) -> f(x - shift), exact binomial expansion.
    PolyFunction translated(const RatVec& shift) const;

    void set_term(const std::vector<int>& exp, const Element& coeff);
    void add_term(const std::vector<int>& exp, const Element& coeff);

private:
    Shape shape_;
    Terms terms_;
};

/// Z(pi_k(theta_j)) = sum_{i=s_k}^{s_{k+1}-1} a_i th_j^i, the block-collapsed
/// variable in which qS functions are genuinely analytic.
PolyFunction z_projection(const Shape& shape, int j, int k);  // j in [0,m), k in [1..r]

/// Double-precision view of a polynomial for quadrature inner loops.
struct CompiledPoly {
    int coords = 0, dim = 0;
    std::vector<std::vector<int>> exps;
    std::vector<VecD> coeffs;

    explicit CompiledPoly(const PolyFunction& f);
    void eval(const double* x, double* out) const;
};

}  // namespace supercauchy
