#include "supercauchy/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace supercauchy {

namespace {

// Strict base-10 integer parse; cpp_int's own string constructor would treat
// a leading 0 as an octal prefix.
boost::multiprecision::cpp_int decimal_int(std::string digits, bool& ok) {
    ok = false;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        neg = digits[0] == '-';
        digits.erase(0, 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        return 0;
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    ok = true;
    const boost::multiprecision::cpp_int v(digits);
    return neg ? -v : v;
}

}  // namespace

Rat rat_from_string(const std::string& s) {
    auto bad = [&] { throw Error("cannot parse rational '" + s + "'"); };
    if (s.empty()) bad();
    bool ok1 = false, ok2 = false;
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const auto num = decimal_int(s.substr(0, slash), ok1);
        const auto den = decimal_int(s.substr(slash + 1), ok2);
        if (!ok1 || !ok2 || den == 0) bad();
        return Rat(num, den);
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const size_t frac_len = s.size() - dot - 1;
        const auto num = decimal_int(digits, ok1);
        if (!ok1) bad();
        boost::multiprecision::cpp_int den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rat(num, den);
    }
    const auto v = decimal_int(s, ok1);
    if (!ok1) bad();
    return Rat(v);
}

std::string rat_to_string(const Rat& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

int rref(RatMat& m, std::vector<int>& pivot_cols) {
    pivot_cols.clear();
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const Rat inv = m[rank][col];
        for (int c = col; c < cols; ++c) m[rank][c] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const Rat f = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    return rank;
}

RatMat nullspace(const RatMat& m_in) {
    if (m_in.empty()) return {};
    RatMat m = m_in;
    std::vector<int> pivots;
    const int rank = rref(m, pivots);
    const int cols = static_cast<int>(m_in[0].size());
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    RatMat basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        RatVec v(cols, Rat(0));
        v[fc] = 1;
        for (int r = 0; r < rank; ++r) v[pivots[r]] = -m[r][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve_consistent(const RatMat& m, const RatVec& b) {
    if (m.empty()) return RatVec{};
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    RatMat aug(rows, RatVec(cols + 1));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) aug[r][c] = m[r][c];
        aug[r][cols] = b[r];
    }
    std::vector<int> pivots;
    const int rank = rref(aug, pivots);
    for (int r = 0; r < rank; ++r)
        if (pivots[r] == cols) return std::nullopt;  // pivot in the rhs column
    RatVec x(cols, Rat(0));
    for (int r = 0; r < rank; ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

RatVec solve_square(RatMat a, RatVec b) {
    const int n = static_cast<int>(a.size());
    for (int r = 0; r < n; ++r) a[r].push_back(b[r]);
    std::vector<int> pivots;
    const int rank = rref(a, pivots);
    if (rank != n) throw Error("singular exact system");
    RatVec x(n);
    for (int r = 0; r < n; ++r) x[pivots[r]] = a[r][n];
    return x;
}

bool lu_solve(std::vector<double> a, VecD b, int n, VecD& out) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (std::abs(a[pivot * n + col]) < 1e-14) return false;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * out[c];
        out[r] = s / a[r * n + r];
    }
    return true;
}

namespace {
constexpr int64_t kBlock = 4096;
}

VecD integrate_nodes(int64_t count, int dim, int threads,
                     const std::function<void(int64_t, double*)>& term) {
    const int64_t nblocks = (count + kBlock - 1) / kBlock;
    // sum and compensation per block, laid out [block][dim]
    std::vector<double> partial(static_cast<size_t>(nblocks) * dim * 2, 0.0);

    auto run_block = [&](int64_t blk) {
        std::vector<Neumaier> acc(dim);
        VecD t(dim);
        const int64_t lo = blk * kBlock;
        const int64_t hi = std::min(count, lo + kBlock);
        for (int64_t i = lo; i < hi; ++i) {
            std::fill(t.begin(), t.end(), 0.0);
            term(i, t.data());
            for (int d = 0; d < dim; ++d) acc[d].add(t[d]);
        }
        double* out = &partial[static_cast<size_t>(blk) * dim * 2];
        for (int d = 0; d < dim; ++d) {
            out[2 * d] = acc[d].sum;
            out[2 * d + 1] = acc[d].comp;
        }
    };

    threads = std::max(1, std::min<int>(threads, static_cast<int>(nblocks)));
    if (threads == 1) {
        for (int64_t blk = 0; blk < nblocks; ++blk) run_block(blk);
    } else {
        std::atomic<int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int64_t blk = next.fetch_add(1); blk < nblocks; blk = next.fetch_add(1))
                    run_block(blk);
            });
        for (auto& th : pool) th.join();
    }

    // combine block partials in fixed block order
    VecD out(dim);
    for (int d = 0; d < dim; ++d) {
        Neumaier acc;
        for (int64_t blk = 0; blk < nblocks; ++blk) {
            const double* p = &partial[static_cast<size_t>(blk) * dim * 2];
            acc.add(p[2 * d]);
            acc.add(p[2 * d + 1]);
        }
        out[d] = acc.value();
    }
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("SUPERCAUCHY_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(std::min(hw, 8u)) : 1;
}

}  // namespace supercauchy
