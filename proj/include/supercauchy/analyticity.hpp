#pragma once

#include "supercauchy/cr_operator.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supercauchy {

/// If f (one Lambda_0 variable, no theta dependence) is qS, the coefficients
/// c_k with f = sum c_k y^k as an exact polynomial identity; otherwise nullopt.
/// c_k is read off the pure (y^0)^k monomial.
std::optional<std::vector<Element>> classify_y(const PolyFunction& f);

/// Multi-index over the r blocks -> Element coefficient.
using ZPolynomial = std::map<std::vector<int>, Element>;

/// If f (one Lambda_1 variable, no y dependence) is qS, coefficients b_K with
/// f = sum b_K Z(pi_1 th)^{k_1} ... Z(pi_r th)^{k_r} exactly; else nullopt.
std::optional<ZPolynomial> classify_theta(const PolyFunction& f);

/// n = m = 1: coefficients A_K over y^{k_0} Z(pi_1 th)^{k_1} ... Z(pi_r th)^{k_r}.
/// Key layout: (k_0, k_1, ..., k_r).
std::optional<ZPolynomial> classify_mixed(const PolyFunction& f);

/// Power series in y_1..y_n and the Z block variables of th_1..th_m.
/// Key layout: (I_1..I_n, J_1[1..m], ..., J_r[1..m]).
struct SuperSeries {
    Shape shape;
    SuperPoint center;
    int max_degree = 0;
    std::map<std::vector<int>, Element> coeffs;

    PolyFunction to_poly() const;
};

/// Taylor-type coefficients A_{I,J} f from leading-coordinate partials at the
/// center: I! J_1! ... J_r! A_{I,J} = d^{..} f / dy^I d(Z_1 th)^{J_1} ...,
/// where d/dy_i means d/dy_i^0 and d/d(Z_k th_j) means d/dth_j^{s_k}.
SuperSeries series_expand(const PolyFunction& f, const SuperPoint& center,
                          int max_degree);

struct CauchyRatio {
    std::vector<int> key;  // (I, J) flattened as in SuperSeries
    double ratio = 0.0;    // ||d^{..}f(a)|| r^{[I,J]} / (I!J!.. sup||f||)
};

struct CauchyReport {
    double sup_norm = 0.0;
    std::vector<CauchyRatio> ratios;
    double max_ratio = 0.0;
};

/// Empirical Cauchy-inequality table on a polydisk; the constant is reported,
/// not asserted.
CauchyReport cauchy_bound_report(const PolyFunction& f, const VecD& center,
                                 const VecD& radii, int max_order,
                                 int64_t sup_grid = 10000);

struct LiouvilleReport {
    std::vector<double> radii;
    std::vector<double> sup_over_r;    // sup_{||y||=R} ||f|| / R
    bool higher_coeffs_vanish = false; // all series coefficients of order >= 1
};

/// Diagnostics behind the Liouville-type corollary: nonconstant qS f has
/// sup/R bounded away from 0; constant f has no higher series coefficients.
LiouvilleReport liouville_probe(const PolyFunction& f, const VecD& radii,
                                int64_t grid = 4096);

}  // namespace supercauchy
