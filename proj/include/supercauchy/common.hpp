#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercauchy {

using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major
using VecD = std::vector<double>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline VecD to_double(const RatVec& v) {
    VecD out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

/// Parses "n", "n/d" or a decimal like "-0.25" into an exact rational.
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& r);

inline Rat rat_factorial(int n) {
    Rat f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// ---------------------------------------------------------------------------
// Exact linear algebra (small dense systems over Q)
// ---------------------------------------------------------------------------

/// In-place reduced row echelon form; returns the rank, records pivot columns.
int rref(RatMat& m, std::vector<int>& pivot_cols);

/// Basis of the right null space {x : m x = 0}, one vector per row.
RatMat nullspace(const RatMat& m);

/// Particular solution of m x = b, or nullopt if inconsistent.
std::optional<RatVec> solve_consistent(const RatMat& m, const RatVec& b);

/// Solves a square nonsingular system exactly.
RatVec solve_square(RatMat a, RatVec b);

// ---------------------------------------------------------------------------
// Float linear algebra
// ---------------------------------------------------------------------------

/// Gaussian elimination with partial pivoting; returns false if singular.
bool lu_solve(std::vector<double> a, VecD b, int n, VecD& out);

// ---------------------------------------------------------------------------
// Deterministic RNG (counter-based, thread- and platform-independent)
// ---------------------------------------------------------------------------

struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in (0,1]; never returns 0 so it is safe under log().
    double uniform() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Box-Muller pair of standard normals.
    void gaussian_pair(double& g0, double& g1) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        g0 = r * std::cos(t);
        g1 = r * std::sin(t);
    }
};

/// RNG for the i-th quadrature node of a run: a pure function of (seed, i).
inline SplitMix64 node_rng(uint64_t seed, int64_t node) {
    SplitMix64 mix(seed ^ (0x9E3779B97F4A7C15ull * static_cast<uint64_t>(node + 1)));
    mix.next();
    return mix;
}

// ---------------------------------------------------------------------------
// Compensated (Neumaier) summation
// ---------------------------------------------------------------------------

struct Neumaier {
    double sum = 0.0, comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

/// Deterministic parallel reduction over `count` nodes producing a vector of
/// size `dim`. `term(i, out)` writes node i's weighted contribution into out.
/// Nodes are summed compensated within fixed-size blocks in index order and
/// block partials are combined in block order, so the result is identical for
/// any thread count.
VecD integrate_nodes(int64_t count, int dim, int threads,
                     const std::function<void(int64_t, double*)>& term);

/// Worker count from SUPERCAUCHY_THREADS, clamped to [1, hardware].
int default_threads();

// ---------------------------------------------------------------------------

inline double unit_ball_volume(int n) {
    // pi^(n/2) / Gamma(n/2 + 1)
    return std::pow(3.14159265358979323846264338327950288, 0.5 * n) /
           std::tgamma(0.5 * n + 1.0);
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// (A0)/(A1) precondition failures; the CLI maps these to exit code 3.
struct condition_error : Error {
    using Error::Error;
};

}  // namespace supercauchy
