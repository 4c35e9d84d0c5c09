#pragma once

#include "slt/rational.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slt {

using IntMatrix = std::vector<std::vector<Integer>>;
using IntVector = std::vector<Integer>;

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Integer dot(const IntVector& x, const IntVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: dimension mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    IntMatrix c(n, IntVector(m, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw std::invalid_argument("multiply: dimension mismatch");
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    }
    return c;
}

inline IntMatrix transpose(const IntMatrix& a) {
    if (a.empty()) return {};
    IntMatrix t(a[0].size(), IntVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

/// Gram matrix of the rows of `basis`.
inline IntMatrix gram_of_rows(const IntMatrix& basis) { return multiply(basis, transpose(basis)); }

/// Bareiss fraction-free elimination.
inline Integer determinant(IntMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline bool is_symmetric(const IntMatrix& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].size() != g.size()) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (g[i][j] != g[j][i]) return false;
    }
    return true;
}

/// Sylvester's criterion on leading minors.
inline bool is_positive_definite(const IntMatrix& g) {
    if (!is_symmetric(g)) return false;
    for (std::size_t k = 1; k <= g.size(); ++k) {
        IntMatrix lead(k, IntVector(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead[i][j] = g[i][j];
        if (determinant(lead) <= 0) return false;
    }
    return true;
}

/// Integral basis (as rows) of {x in Z^N : A x = 0}, via unimodular row operations on [A^T | I].
inline IntMatrix integer_kernel(const IntMatrix& a, std::size_t ambient) {
    const std::size_t m = a.size();
    for (const auto& row : a)
        if (row.size() != ambient) throw std::invalid_argument("integer_kernel: dimension mismatch");
    // rows[j] = (A e_j | e_j)
    std::vector<IntVector> rows(ambient, IntVector(m + ambient, 0));
    for (std::size_t j = 0; j < ambient; ++j) {
        for (std::size_t i = 0; i < m; ++i) rows[j][i] = a[i][j];
        rows[j][m + j] = 1;
    }
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m && pivot_row < ambient; ++col) {
        // Euclid down the column until a single nonzero entry remains at pivot_row.
        while (true) {
            std::size_t best = ambient;
            for (std::size_t r = pivot_row; r < ambient; ++r)
                if (rows[r][col] != 0 && (best == ambient || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
            if (best == ambient) break;
            std::swap(rows[pivot_row], rows[best]);
            bool done = true;
            for (std::size_t r = pivot_row + 1; r < ambient; ++r) {
                if (rows[r][col] == 0) continue;
                Integer q = rows[r][col] / rows[pivot_row][col];
                for (std::size_t c = 0; c < rows[r].size(); ++c) rows[r][c] -= q * rows[pivot_row][c];
                if (rows[r][col] != 0) done = false;
            }
            if (done) {
                ++pivot_row;
                break;
            }
        }
    }
    IntMatrix kernel;
    for (std::size_t r = pivot_row; r < ambient; ++r) kernel.emplace_back(rows[r].begin() + static_cast<std::ptrdiff_t>(m), rows[r].end());
    return kernel;
}

struct LLLResult {
    IntMatrix gram;       // H G H^T
    IntMatrix transform;  // H, unimodular
};

/// Exact LLL (delta = 3/4) driven by a positive definite Gram matrix, following the integral
/// variant that keeps all Gram-Schmidt data as integers (d_i and lambda_ij).
inline LLLResult lll_reduce_gram(const IntMatrix& g0) {
    const std::size_t n = g0.size();
    if (!is_symmetric(g0)) throw std::invalid_argument("LLL: Gram matrix is not symmetric");
    IntMatrix h = identity_matrix(n);
    if (n == 0) return {{}, {}};
    IntMatrix g = g0;  // current Gram, kept in sync with h
    std::vector<Integer> d(n + 1, 0);
    IntMatrix lam(n, IntVector(n, 0));
    d[0] = 1;

    auto red = [&](std::size_t k, std::size_t l) {  // 0-based, l < k
        const Integer& dl = d[l + 1];
        if (abs(2 * lam[k][l]) <= dl) return;
        Integer q = floor_div(2 * lam[k][l] + dl, 2 * dl);
        for (std::size_t c = 0; c < n; ++c) h[k][c] -= q * h[l][c];
        // g <- E g E^T with E = I - q e_k e_l^T
        for (std::size_t c = 0; c < n; ++c) g[k][c] -= q * g[l][c];
        for (std::size_t r = 0; r < n; ++r) g[r][k] -= q * g[r][l];
        lam[k][l] -= q * dl;
        for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };
    auto swp = [&](std::size_t k, std::size_t kmax) {  // swaps k and k-1
        std::swap(h[k], h[k - 1]);
        std::swap(g[k], g[k - 1]);
        for (auto& row : g) std::swap(row[k], row[k - 1]);
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Integer l = lam[k][k - 1];
        Integer b = (d[k - 1] * d[k + 1] + l * l) / d[k];
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Integer t = lam[i][k];
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - l * t) / d[k];
            lam[i][k - 1] = (b * t + l * lam[i][k]) / d[k + 1];
        }
        d[k] = b;
    };

    d[1] = g[0][0];
    if (d[1] <= 0) throw std::invalid_argument("LLL: Gram matrix is not positive definite");
    std::size_t k = 1, kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 0; j <= k; ++j) {
                Integer u = g[k][j];
                for (std::size_t i = 0; i < j; ++i) u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
                if (j < k)
                    lam[k][j] = u;
                else
                    d[k + 1] = u;
            }
            if (d[k + 1] <= 0) throw std::invalid_argument("LLL: Gram matrix is not positive definite");
        }
        red(k, k - 1);
        if (4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
            swp(k, kmax);
            if (k > 1) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
    return {g, h};
}

/// Calls `visit(coeffs, norm)` for every nonzero x with x G x^T <= bound, one of each +-x pair.
/// Pruning uses a floating Cholesky factor with slack; every reported norm is exact.
inline void enumerate_short_vectors(const IntMatrix& g, const Integer& bound,
                                    const std::function<bool(const std::vector<std::int64_t>&, const Integer&)>& visit) {
    const std::size_t n = g.size();
    if (n == 0) return;
    // q_ii and mu_ij (j > i) of the quadratic form sum_i q_ii (x_i + sum_{j>i} mu_ij x_j)^2.
    std::vector<std::vector<long double>> q(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[i][j] = static_cast<long double>(g[i][j]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    const long double slack = 1e-9L * (1 + static_cast<long double>(bound));
    const long double c = static_cast<long double>(bound) + slack;
    std::vector<std::int64_t> x(n, 0);
    std::vector<long double> remaining(n + 1, 0);
    remaining[n] = c;
    bool stop = false;

    auto exact_norm = [&]() {
        Integer s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            Integer row = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (x[j]) row += g[i][j] * x[j];
            s += row * x[i];
        }
        return s;
    };

    std::function<void(std::size_t, bool)> rec = [&](std::size_t i1, bool all_zero_above) {
        if (stop) return;
        const std::size_t i = i1 - 1;
        long double centre = 0;
        for (std::size_t j = i + 1; j < n; ++j) centre -= q[i][j] * static_cast<long double>(x[j]);
        const long double radius = std::sqrt(std::max<long double>(0, remaining[i1] / q[i][i]));
        auto lo = static_cast<std::int64_t>(std::ceil(centre - radius - 1e-9L));
        auto hi = static_cast<std::int64_t>(std::floor(centre + radius + 1e-9L));
        // Keep one of +-x: the last nonzero coordinate (highest index) is positive.
        if (all_zero_above) lo = std::max<std::int64_t>(lo, 0);
        for (std::int64_t v = lo; v <= hi && !stop; ++v) {
            const long double t = static_cast<long double>(v) - centre;
            const long double used = q[i][i] * t * t;
            if (used > remaining[i1]) continue;
            x[i] = v;
            remaining[i] = remaining[i1] - used;
            const bool zero_now = all_zero_above && v == 0;
            if (i == 0) {
                if (zero_now) continue;
                Integer nrm = exact_norm();
                if (nrm <= bound && !visit(x, nrm)) stop = true;
            } else {
                rec(i, zero_now);
            }
        }
        x[i] = 0;
    };
    rec(n, true);
}

}  // namespace slt
