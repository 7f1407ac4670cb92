#include "supercauchy/algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace supercauchy {

Element& Element::operator+=(const Element& o) {
    if (c.size() != o.c.size()) throw Error("element length mismatch");
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

Element& Element::operator-=(const Element& o) {
    if (c.size() != o.c.size()) throw Error("element length mismatch");
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

Rat Element::norm_sq() const {
    Rat s = 0;
    for (const auto& x : c) s += x * x;
    return s;
}

std::string Element::str() const {
    std::ostringstream os;
    bool first = true;
    const int d = dim();
    for (int i = 0; i < d; ++i) {
        if (c[i] == 0) continue;
        Rat v = c[i];
        if (first) {
            if (v < 0) { os << "-"; v = -v; }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        if (v != 1) os << rat_to_string(v) << "*";
        os << "b" << i;  // caller knows the basis split; generic label
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Algebra::Algebra(std::string name, int p_plus_1, int q, const RatVec& gamma,
                 std::optional<A1Data> a1)
    : name_(std::move(name)), p_plus_1_(p_plus_1), q_(q), a1_(std::move(a1)) {
    if (p_plus_1_ < 1) throw Error("p_plus_1 must be >= 1");
    if (q_ < 0) throw Error("q must be >= 0");
    const int d = dim();
    if (static_cast<int64_t>(gamma.size()) != static_cast<int64_t>(d) * d * d)
        throw Error("gamma has wrong size: expected " + std::to_string(d * d * d) +
                         " entries, got " + std::to_string(gamma.size()));

    // unit axiom is structural: gamma[0,j,k] = gamma[j,0,k] = delta_jk
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            const Rat want = (j == k) ? 1 : 0;
            if (gamma[(0 * d + j) * d + k] != want)
                throw Error("unit axiom violated at (0," + std::to_string(j) + ")");
            if (gamma[(j * d + 0) * d + k] != want)
                throw Error("unit axiom violated at (" + std::to_string(j) + ",0)");
        }

    table_.resize(static_cast<size_t>(d) * d);
    table_d_.resize(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto& lst = table_[i * d + j];
            auto& lst_d = table_d_[i * d + j];
            for (int k = 0; k < d; ++k) {
                const Rat& g = gamma[(i * d + j) * d + k];
                if (g != 0) {
                    lst.emplace_back(k, g);
                    lst_d.emplace_back(k, to_double(g));
                }
            }
        }

    if (a1_) {
        const auto& w = *a1_;
        if (w.s.empty() || w.s.front() != 1)
            throw Error("a1 witness: s must start at 1");
        for (size_t i = 1; i < w.s.size(); ++i)
            if (w.s[i] <= w.s[i - 1]) throw Error("a1 witness: s not increasing");
        if (w.s.back() != q_ + 1)
            throw Error("a1 witness: s must end at q+1");
        if (static_cast<int>(w.a.size()) != q_)
            throw Error("a1 witness: need q coefficient elements");
        for (const auto& e : w.a)
            if (e.dim() != d) throw Error("a1 witness: element length mismatch");
    }
}

Rat Algebra::gamma(int i, int j, int k) const {
    for (const auto& [kk, g] : products(i, j))
        if (kk == k) return g;
    return Rat(0);
}

Element Algebra::basis(int k) const {
    Element e(dim());
    e.c[k] = 1;
    return e;
}

Element Algebra::scalar(const Rat& r) const {
    Element e(dim());
    e.c[0] = r;
    return e;
}

Element Algebra::mul(const Element& a, const Element& b) const {
    const int d = dim();
    if (a.dim() != d || b.dim() != d) throw Error("element length mismatch");
    Element out(d);
    for (int i = 0; i < d; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b.c[j] == 0) continue;
            const Rat ab = a.c[i] * b.c[j];
            for (const auto& [k, g] : table_[i * d + j]) out.c[k] += ab * g;
        }
    }
    return out;
}

Element Algebra::supercommutator(const Element& a, const Element& b) const {
    const int d = dim();
    // split into homogeneous parts and extend the bracket bilinearly
    Element parts_a[2] = {Element(d), Element(d)};
    Element parts_b[2] = {Element(d), Element(d)};
    for (int i = 0; i < d; ++i) {
        parts_a[parity(i)].c[i] = a.c[i];
        parts_b[parity(i)].c[i] = b.c[i];
    }
    Element out(d);
    for (int pa = 0; pa < 2; ++pa)
        for (int pb = 0; pb < 2; ++pb) {
            Element ab = mul(parts_a[pa], parts_b[pb]);
            Element ba = mul(parts_b[pb], parts_a[pa]);
            if (pa == 1 && pb == 1)
                out += ab + ba;
            else
                out += ab - ba;
        }
    return out;
}

void Algebra::mul_d(const double* a, const double* b, double* out) const {
    const int d = dim();
    std::fill(out, out + d, 0.0);
    for (int i = 0; i < d; ++i) {
        if (a[i] == 0.0) continue;
        const size_t row = static_cast<size_t>(i) * d;
        for (int j = 0; j < d; ++j) {
            if (b[j] == 0.0) continue;
            const double ab = a[i] * b[j];
            for (const auto& [k, g] : table_d_[row + j]) out[k] += ab * g;
        }
    }
}

RatMat Algebra::mult_matrix(const Element& a) const {
    const int d = dim();
    RatMat m(d, RatVec(d, Rat(0)));
    for (int j = 0; j < d; ++j) {
        Element col = mul(a, basis(j));
        for (int k = 0; k < d; ++k) m[k][j] = col.c[k];
    }
    return m;
}

ValidationReport Algebra::validate() const {
    ValidationReport rep;
    const int d = dim();

    CheckItem unit{"unit", true, ""};  // enforced by the constructor
    rep.checks.push_back(unit);

    CheckItem par{"parity_closure", true, ""};
    for (int i = 0; i < d && par.pass; ++i)
        for (int j = 0; j < d && par.pass; ++j)
            for (const auto& [k, g] : products(i, j))
                if ((parity(i) + parity(j)) % 2 != parity(k)) {
                    par.pass = false;
                    par.witness = "gamma(" + std::to_string(i) + "," + std::to_string(j) +
                                  "," + std::to_string(k) + ") breaks parity";
                    break;
                }
    rep.checks.push_back(par);

    CheckItem sym{"supercommutativity", true, ""};
    for (int i = 0; i < d && sym.pass; ++i)
        for (int j = i; j < d && sym.pass; ++j) {
            const bool anti = parity(i) == 1 && parity(j) == 1;
            for (int k = 0; k < d; ++k) {
                const Rat gij = gamma(i, j, k);
                const Rat gji = gamma(j, i, k);
                if ((anti && gij != -gji) || (!anti && gij != gji)) {
                    sym.pass = false;
                    sym.witness = std::string(anti ? "antisymmetry" : "symmetry") +
                                  " fails at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")";
                    break;
                }
            }
        }
    rep.checks.push_back(sym);

    CheckItem assoc{"associativity", true, ""};
    for (int i = 0; i < d && assoc.pass; ++i)
        for (int j = 0; j < d && assoc.pass; ++j)
            for (int k = 0; k < d && assoc.pass; ++k) {
                RatVec lhs(d, Rat(0)), rhs(d, Rat(0));
                for (const auto& [l, g1] : products(i, j))
                    for (const auto& [m, g2] : products(l, k)) lhs[m] += g1 * g2;
                for (const auto& [l, g1] : products(j, k))
                    for (const auto& [m, g2] : products(i, l)) rhs[m] += g1 * g2;
                if (lhs != rhs) {
                    assoc.pass = false;
                    assoc.witness = "(e" + std::to_string(i) + " e" + std::to_string(j) +
                                    ") e" + std::to_string(k) + " != e" + std::to_string(i) +
                                    " (e" + std::to_string(j) + " e" + std::to_string(k) + ")";
                }
            }
    rep.checks.push_back(assoc);
    return rep;
}

std::pair<Element, bool> Algebra::check_A0() const {
    Element s(dim());
    for (int k = 0; k < p_plus_1_; ++k) s += mul(basis(k), basis(k));
    const bool zero = s.is_zero();
    return {std::move(s), zero};
}

A1Report Algebra::check_A1() const {
    A1Report rep;
    if (q_ == 0) {  // vacuous
        rep.present = true;
        rep.pass = true;
        return rep;
    }
    if (!a1_) {
        rep.error = "a1 witness missing";
        return rep;
    }
    rep.present = true;
    const auto& w = *a1_;
    rep.pass = true;
    for (int k = 0; k < w.r(); ++k) {
        const int lo = w.s[k], hi = w.s[k + 1];
        const Element& a_lead = w.a[lo - 1];
        Element e0 = basis(0);
        if (!(a_lead == e0)) {
            rep.error = "a_{s_" + std::to_string(k + 1) + "} != e0";
            rep.pass = false;
        }
        Element sum(dim());
        for (int j = lo; j < hi; ++j) sum += mul(w.a[j - 1], w.a[j - 1]);
        if (!sum.is_zero()) rep.pass = false;
        rep.block_sums.push_back(std::move(sum));
        for (int j = lo; j < hi; ++j) {
            Element got = mul(basis(p_plus_1_ + lo - 1), w.a[j - 1]);
            Element want = basis(p_plus_1_ + j - 1);
            if (!(got == want)) {
                rep.pass = false;
                rep.relation_fails.push_back("eps_" + std::to_string(j) +
                                             " != eps_" + std::to_string(lo) + " * a_" +
                                             std::to_string(j));
            }
        }
    }
    return rep;
}

std::vector<Element> Algebra::annihilator() const {
    const int d = dim();
    if (q_ == 0) {
        std::vector<Element> whole;
        for (int k = 0; k < d; ++k) whole.push_back(basis(k));
        return whole;
    }
    // stack the maps lambda -> lambda * eps_l
    RatMat stacked(static_cast<size_t>(q_) * d, RatVec(d, Rat(0)));
    for (int l = 0; l < q_; ++l) {
        const Element eps = basis(p_plus_1_ + l);
        for (int j = 0; j < d; ++j) {
            Element col = mul(basis(j), eps);
            for (int k = 0; k < d; ++k) stacked[l * d + k][j] = col.c[k];
        }
    }
    std::vector<Element> out;
    for (auto& row : nullspace(stacked)) out.push_back(Element(std::move(row)));
    return out;
}

Element Algebra::min_norm_mod_annihilator(const Element& x) const {
    const auto ann = annihilator();
    if (ann.empty()) return x;
    const int r = static_cast<int>(ann.size());
    // project x onto span(ann) and subtract: solve the Gram system exactly
    RatMat gram(r, RatVec(r, Rat(0)));
    RatVec rhs(r, Rat(0));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < dim(); ++k) gram[i][j] += ann[i].c[k] * ann[j].c[k];
        for (int k = 0; k < dim(); ++k) rhs[i] += ann[i].c[k] * x.c[k];
    }
    const RatVec coef = solve_square(gram, rhs);
    Element out = x;
    for (int i = 0; i < r; ++i) out -= coef[i] * ann[i];
    return out;
}

std::optional<VecD> Algebra::invert_d(const double* a) const {
    const int d = dim();
    std::vector<double> m(static_cast<size_t>(d) * d, 0.0);
    VecD col(d, 0.0), unit(d, 0.0), basis_j(d, 0.0);
    for (int j = 0; j < d; ++j) {
        std::fill(basis_j.begin(), basis_j.end(), 0.0);
        basis_j[j] = 1.0;
        mul_d(a, basis_j.data(), col.data());
        for (int k = 0; k < d; ++k) m[k * d + j] = col[k];
    }
    unit[0] = 1.0;
    VecD out;
    if (!lu_solve(std::move(m), unit, d, out)) return std::nullopt;
    return out;
}

Element Algebra::from_doubles(const VecD& v) const {
    if (static_cast<int>(v.size()) != dim()) throw Error("element length mismatch");
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return Element(std::move(r));
}

// ---------------------------------------------------------------------------
// builtins
// ---------------------------------------------------------------------------

namespace {

RatVec dense_gamma(int d) { return RatVec(static_cast<size_t>(d) * d * d, Rat(0)); }

void set_product(RatVec& g, int d, int i, int j, int k, int sign) {
    g[(static_cast<size_t>(i) * d + j) * d + k] = sign;
}

AlgebraPtr make_dim2(const std::string& name, int e1_sq_sign) {
    const int d = 2;
    RatVec g = dense_gamma(d);
    set_product(g, d, 0, 0, 0, 1);
    set_product(g, d, 0, 1, 1, 1);
    set_product(g, d, 1, 0, 1, 1);
    set_product(g, d, 1, 1, 0, e1_sq_sign);
    return std::make_shared<Algebra>(name, 2, 0, g);
}

AlgebraPtr make_example4() {
    const int d = 10;
    // rows/cols: e0..e5 = 0..5, eps1..eps4 = 6..9; {target, sign}, target -1 = 0
    static const int tbl[10][10][2] = {
        {{0,1},{1,1},{2,1},{3,1},{4,1},{5,1},{6,1},{7,1},{8,1},{9,1}},
        {{1,1},{0,-1},{3,1},{2,-1},{5,1},{4,-1},{7,1},{6,-1},{9,1},{8,-1}},
        {{2,1},{3,1},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0}},
        {{3,1},{2,-1},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0}},
        {{4,1},{5,1},{-1,0},{-1,0},{4,1},{5,1},{-1,0},{-1,0},{-1,0},{-1,0}},
        {{5,1},{4,-1},{-1,0},{-1,0},{5,1},{4,-1},{-1,0},{-1,0},{-1,0},{-1,0}},
        {{6,1},{7,1},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{3,-1},{2,1}},
        {{7,1},{6,-1},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{-1,0},{2,1},{3,1}},
        {{8,1},{9,1},{-1,0},{-1,0},{-1,0},{-1,0},{3,1},{2,-1},{-1,0},{-1,0}},
        {{9,1},{8,-1},{-1,0},{-1,0},{-1,0},{-1,0},{2,-1},{3,-1},{-1,0},{-1,0}},
    };
    RatVec g = dense_gamma(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (tbl[i][j][0] >= 0) set_product(g, d, i, j, tbl[i][j][0], tbl[i][j][1]);

    A1Data a1;
    a1.s = {1, 3, 5};
    Element e0(d), e1(d);
    e0.c[0] = 1;
    e1.c[1] = 1;
    a1.a = {e0, e1, e0, e1};  // eps2 = eps1*e1, eps4 = eps3*e1
    return std::make_shared<Algebra>("example4", 6, 4, g, a1);
}

// Clifford algebra with e_i e_j + e_j e_i = -2 delta_ij, graded by |I| mod 2.
// Basis masks sorted: even-popcount ascending, then odd-popcount ascending.
AlgebraPtr make_clifford(int k) {
    const int n = 1 << k;
    std::vector<int> order;  // position -> mask
    for (int pass = 0; pass < 2; ++pass)
        for (int mask = 0; mask < n; ++mask)
            if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 == pass)
                order.push_back(mask);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    const int half = n / 2;

    auto product = [&](int a, int b, int& mask_out) -> int {
        // sign from moving each generator of b into the sorted product of a
        int sign = 1;
        int acc = a;
        for (int bit = 0; bit < k; ++bit) {
            if (!(b & (1 << bit))) continue;
            // transpositions past generators of acc greater than `bit`
            const unsigned greater = static_cast<unsigned>(acc) >> (bit + 1);
            if (__builtin_popcount(greater) % 2) sign = -sign;
            if (acc & (1 << bit)) sign = -sign;  // e_bit^2 = -1
            acc ^= 1 << bit;
        }
        mask_out = acc;
        return sign;
    };

    RatVec g = dense_gamma(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int mask;
            const int sign = product(order[i], order[j], mask);
            set_product(g, n, i, j, pos[mask], sign);
        }
    return std::make_shared<Algebra>("clifford(" + std::to_string(k) + ")", half,
                                     half, g);
}

}  // namespace

namespace {

AlgebraPtr builtin_uncached(const std::string& name, int clifford_limit) {
    if (name == "complex") return make_dim2("complex", -1);
    if (name == "hyperbolic") return make_dim2("hyperbolic", 1);
    if (name == "example4") return make_example4();
    if (name.rfind("clifford", 0) == 0) {
        std::string arg = name.substr(8);
        if (!arg.empty() && arg.front() == '(' && arg.back() == ')')
            arg = arg.substr(1, arg.size() - 2);
        int k = -1;
        try {
            k = std::stoi(arg);
        } catch (const std::exception&) {
            throw Error("unknown builtin algebra '" + name + "'");
        }
        if (k < 1 || k > clifford_limit)
            throw Error("clifford(k): k must be in [1," +
                             std::to_string(clifford_limit) + "]");
        return make_clifford(k);
    }
    throw Error("unknown builtin algebra '" + name + "'");
}

}  // namespace

AlgebraPtr Algebra::builtin(const std::string& name, int clifford_limit) {
    // cached so that repeated lookups share one instance (shapes compare by
    // algebra identity)
    static std::mutex mu;
    static std::map<std::string, AlgebraPtr> cache;
    const std::string key = name + "#" + std::to_string(clifford_limit);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    AlgebraPtr made = builtin_uncached(name, clifford_limit);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(made)).first->second;
}

}  // namespace supercauchy
