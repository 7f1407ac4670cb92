#pragma once

#include "supercauchy/superspace.hpp"

#include <functional>
#include <map>
#include <optional>

namespace supercauchy {

/// Coefficients of d''f, keyed by the non-leading flat coordinate carrying
/// the differential: dy_i^k (k>=1) and dth_j^t (t not a block leader).
struct D2Result {
    std::map<int, PolyFunction> components;

    bool all_zero() const {
        for (const auto& [c, f] : components)
            if (!f.is_zero()) return false;
        return true;
    }
    /// First coordinate whose component is nonzero, if any.
    std::optional<int> witness() const {
        for (const auto& [c, f] : components)
            if (!f.is_zero()) return c;
        return std::nullopt;
    }
};

/// d''f: components[y_i^k] = df/dy_i^k - e_k df/dy_i^0,
///       components[th_j^t] = df/dth_j^t - a_t df/dth_j^{s_k}.
D2Result d2(const PolyFunction& f);

/// d'f on every coordinate: e_k df/dy_i^0 on dy_i^k, a_t df/dth_j^{s_k} on dth_j^t.
std::map<int, PolyFunction> d_prime(const PolyFunction& f);

bool is_qS(const PolyFunction& f);

struct SAtResult {
    bool s_differentiable = false;
    std::optional<int> eq2_witness;      // y coordinate violating eq. (2)
    std::vector<Element> theta_slopes;   // min-norm a per theta variable when solvable
    std::optional<int> unsolvable_theta; // theta variable with no slope
};

/// S-differentiability at a point: eq. (2) on the y block plus membership of
/// the theta gradient in {(a eps_1, ..., a eps_q)}, decided by an exact rank test.
SAtResult is_S_at(const PolyFunction& f, const SuperPoint& x);

/// Sum of all second real-coordinate partials, exact.
PolyFunction laplacian(const PolyFunction& f);

struct SecondOrderReport {
    bool pass = true;
    std::vector<std::string> failures;
};

/// For qS f verifies d^2f/d(y_j^k)^2 = e_k^2 d^2f/d(y_j^0)^2 and the theta
/// analogue with a_t^2, exactly.
SecondOrderReport second_order_identity_check(const PolyFunction& f);

/// Black-box numeric function on flat double coordinates.
using NumericFn = std::function<VecD(const VecD&)>;
/// Black-box function in point/element terms.
using ExactFn = std::function<Element(const SuperPoint&)>;

/// Centered finite-difference d'' components at a point, step h.
std::map<int, VecD> sampled_d2(const NumericFn& fn, const Shape& shape,
                               const VecD& x, double h);
std::map<int, VecD> sampled_d2(const ExactFn& fn, const Shape& shape,
                               const SuperPoint& x, double h);

}  // namespace supercauchy
