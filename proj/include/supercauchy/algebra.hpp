#pragma once

#include "supercauchy/common.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace supercauchy {

class Algebra;

/// Coefficient vector over the algebra basis (e_0..e_p, eps_1..eps_q),
/// held exactly. The norm is the Euclidean one of this orthonormal basis.
struct Element {
    RatVec c;

    Element() = default;
    explicit Element(int dim) : c(dim, Rat(0)) {}
    explicit Element(RatVec v) : c(std::move(v)) {}

    int dim() const { return static_cast<int>(c.size()); }
    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }
    bool operator==(const Element& o) const { return c == o.c; }

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rat& s, Element a) {
        for (auto& x : a.c) x *= s;
        return a;
    }
    Element operator-() const {
        Element r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }

    Rat norm_sq() const;
    double norm() const { return std::sqrt(to_double(norm_sq())); }

    VecD to_doubles() const { return to_double(c); }
    std::string str() const;  // e.g. "e0 - 2/3*eps1"
};

struct A1Data {
    std::vector<int> s;        // 1 = s_1 < ... < s_r < s_{r+1} = q+1
    std::vector<Element> a;    // q elements of Lambda_0, a[s_k - 1] = e_0
    int r() const { return static_cast<int>(s.size()) - 1; }
};

struct CheckItem {
    std::string name;
    bool pass = true;
    std::string witness;  // offending indices / residual, empty when passing
};

struct ValidationReport {
    std::vector<CheckItem> checks;
    bool valid() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckItem* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct A1Report {
    bool present = false;
    bool pass = false;
    std::vector<Element> block_sums;         // sum_{j=s_k}^{s_{k+1}-1} a_j^2 per block
    std::vector<std::string> relation_fails; // eps_j != eps_{s_k} a_j witnesses
    std::string error;                       // precondition problems
};

/// A finite-dimensional real algebra given by structure constants over a
/// graded basis. Immutable after construction; shareable across threads.
class Algebra {
public:
    /// `gamma` is dense rank-3, gamma[(i*dim + j)*dim + k], e_i e_j = sum_k gamma e_k.
    /// Throws Error on dimension mismatch or unit-axiom failure; the
    /// remaining CSA axioms are reported by validate(), not enforced here.
    Algebra(std::string name, int p_plus_1, int q, const RatVec& gamma,
            std::optional<A1Data> a1 = std::nullopt);

    static std::shared_ptr<const Algebra> builtin(const std::string& name,
                                                  int clifford_limit = 8);

    const std::string& name() const { return name_; }
    int p_plus_1() const { return p_plus_1_; }
    int p() const { return p_plus_1_ - 1; }
    int q() const { return q_; }
    int dim() const { return p_plus_1_ + q_; }
    int parity(int basis_index) const { return basis_index < p_plus_1_ ? 0 : 1; }
    const std::optional<A1Data>& a1() const { return a1_; }

    Rat gamma(int i, int j, int k) const;
    /// Nonzero products of basis pair (i,j) as (k, coefficient).
    const std::vector<std::pair<int, Rat>>& products(int i, int j) const {
        return table_[i * dim() + j];
    }

    Element zero() const { return Element(dim()); }
    Element basis(int k) const;
    Element scalar(const Rat& r) const;  // r * e_0

    Element mul(const Element& a, const Element& b) const;
    Element supercommutator(const Element& a, const Element& b) const;

    /// Fast double-precision product; a, b, out have length dim().
    void mul_d(const double* a, const double* b, double* out) const;

    /// Matrix of left multiplication x -> a x in the basis (column-major action).
    RatMat mult_matrix(const Element& a) const;

    /// Exhaustive unit / parity / (anti)symmetry / associativity report.
    ValidationReport validate() const;

    /// S = sum_k e_k^2 over the Lambda_0 basis and whether S == 0 exactly.
    std::pair<Element, bool> check_A0() const;

    A1Report check_A1() const;

    /// Basis of the annihilator {lambda : lambda * Lambda_1 = 0}; exact.
    std::vector<Element> annihilator() const;

    /// Minimum-norm representative of x modulo the annihilator of Lambda_1.
    Element min_norm_mod_annihilator(const Element& x) const;

    /// Inverse via the multiplication matrix (double precision); nullopt if singular.
    std::optional<VecD> invert_d(const double* a) const;

    Element from_doubles(const VecD& v) const;

private:
    std::string name_;
    int p_plus_1_ = 1, q_ = 0;
    std::optional<A1Data> a1_;
    std::vector<std::vector<std::pair<int, Rat>>> table_;     // [i*dim+j] -> nnz list
    std::vector<std::vector<std::pair<int, double>>> table_d_;  // double mirror
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

}  // namespace supercauchy
