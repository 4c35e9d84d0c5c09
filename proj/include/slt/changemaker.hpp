#pragma once

#include "slt/continued_fraction.hpp"
#include "slt/int_matrix.hpp"
#include "slt/knot_invariants.hpp"
#include "slt/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slt {

using Sigma = std::vector<std::int64_t>;

inline std::string sigma_str(const Sigma& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

/// 0 <= s1 <= 1 and s_{i-1} <= s_i <= s_1 + ... + s_{i-1} + 1.
inline bool is_changemaker(const Sigma& sigma) {
    std::int64_t prefix = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] < 0) return false;
        if (i == 0 && sigma[0] > 1) return false;
        if (i > 0 && (sigma[i] < sigma[i - 1] || sigma[i] > prefix + 1)) return false;
        prefix += sigma[i];
    }
    return true;
}

inline std::int64_t sum_of_squares(const Sigma& s) {
    std::int64_t n = 0;
    for (auto x : s) n += x * x;
    return n;
}

inline Sigma stable_coefficients(const Sigma& sigma) {
    Sigma out;
    for (auto x : sigma)
        if (x > 1) out.push_back(x);
    return out;
}

/// g = (1/2) sum sigma_i (sigma_i - 1).
inline std::int64_t changemaker_genus(const Sigma& sigma) {
    std::int64_t twice = 0;
    for (auto x : sigma) twice += x * (x - 1);
    return twice / 2;
}

/// L = <w_0, ..., w_l>^perp in Z^N. Ambient coordinates are ordered f_1..f_t, then e_0..e_s
/// (the e-block only exists for non-integral slopes).
struct ChangemakerLattice {
    PosRational slope{1, 1};
    NegCF cf;
    Sigma sigma;
    bool non_integral = false;
    std::int64_t n = 0;      // |w_0|
    std::size_t N = 0;       // ambient rank
    std::size_t s_index = 0; // m_l, so the e-block is e_0..e_s
    IntMatrix w;             // rows w_0..w_l
    IntMatrix basis;         // LLL-reduced integral basis of the complement, as rows in Z^N
    IntMatrix gram;          // Gram matrix of `basis`
    Sigma stable;

    std::size_t rank() const { return basis.size(); }

    /// Coefficient of w_0 on each ambient coordinate.
    std::vector<std::int64_t> w0_weights() const {
        std::vector<std::int64_t> out(N);
        for (std::size_t j = 0; j < N; ++j) out[j] = static_cast<std::int64_t>(w[0][j]);
        return out;
    }
};

inline ChangemakerLattice build_changemaker(const PosRational& slope, const Sigma& sigma) {
    if (!is_changemaker(sigma)) throw std::invalid_argument("not a changemaker vector: " + sigma_str(sigma));
    ChangemakerLattice cm;
    cm.slope = slope;
    cm.cf = expand_neg_cf(slope);
    cm.sigma = sigma;
    cm.non_integral = !slope.is_integer();
    cm.n = to_i64(split_slope(slope).n);
    cm.stable = stable_coefficients(sigma);
    const std::size_t t = sigma.size();
    const std::int64_t norm_w0 = sum_of_squares(sigma) + (cm.non_integral ? 1 : 0);
    if (norm_w0 != cm.n)
        throw std::invalid_argument("|w0| = " + std::to_string(norm_w0) + " but the slope needs " + std::to_string(cm.n));

    std::vector<std::size_t> m{0};  // m_k = sum_{i<=k} a_i - k
    if (cm.non_integral) {
        if (!cm.cf.is_canonical()) throw std::invalid_argument("slope expansion is not canonical");
        for (std::size_t k = 1; k < cm.cf.size(); ++k) m.push_back(m.back() + static_cast<std::size_t>(to_i64(cm.cf[k])) - 1);
        cm.s_index = m.back();
        cm.N = t + cm.s_index + 1;
    } else {
        cm.N = t;
    }
    if (cm.N == 0) throw std::invalid_argument("empty changemaker vector");

    auto e = [&](std::size_t i) { return t + i; };
    IntVector w0(cm.N, 0);
    for (std::size_t j = 0; j < t; ++j) w0[j] = sigma[j];
    if (cm.non_integral) w0[e(0)] = 1;
    cm.w.push_back(w0);
    for (std::size_t k = 1; cm.non_integral && k < cm.cf.size(); ++k) {
        IntVector wk(cm.N, 0);
        wk[e(m[k - 1])] = -1;
        for (std::size_t i = m[k - 1] + 1; i <= m[k]; ++i) wk[e(i)] = 1;
        cm.w.push_back(wk);
    }

    // The w_i must pair like the linear lattice of the slope.
    const std::size_t l1 = cm.w.size();
    for (std::size_t i = 0; i < l1; ++i)
        for (std::size_t j = 0; j < l1; ++j) {
            Integer expect = i == j ? Integer(cm.cf[j]) : ((i + 1 == j || j + 1 == i) ? Integer(-1) : Integer(0));
            if (dot(cm.w[i], cm.w[j]) != expect) throw std::logic_error("changemaker vectors do not pair as the linear lattice");
        }

    IntMatrix kernel = integer_kernel(cm.w, cm.N);
    if (kernel.size() + l1 != cm.N) throw std::logic_error("complement has the wrong rank");
    if (!kernel.empty()) {
        LLLResult red = lll_reduce_gram(gram_of_rows(kernel));
        cm.basis = multiply(red.transform, kernel);
        cm.gram = red.gram;
    }
    return cm;
}

/// t_i for 0 <= i <= floor(n/2) from min over characteristic c of |c|, with c.w0 = n + 2i mod 2n.
///
/// Dynamic program over residues mod 2n. A coordinate of weight w takes odd values c; since
/// c and c + 2n/gcd(w, n) give the same residue, the cheapest representative of every residue
/// lies in |c| <= n/gcd(w, n). Coordinates of weight 0 cost 1 each.
inline TorsionSeq recover_torsion(const ChangemakerLattice& cm) {
    const std::int64_t n = cm.n;
    if (n < 1) throw std::invalid_argument("recover_torsion needs n >= 1");
    const std::int64_t mod = 2 * n;
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> dist(static_cast<std::size_t>(mod), kInf);
    dist[0] = 0;
    std::int64_t unit_cost = 0;
    for (std::int64_t wj : cm.w0_weights()) {
        if (wj == 0) {
            ++unit_cost;
            continue;
        }
        const std::int64_t reach = n / std::gcd(wj, n);
        std::vector<std::int64_t> next(static_cast<std::size_t>(mod), kInf);
        for (std::int64_t r = 0; r < mod; ++r) {
            if (dist[static_cast<std::size_t>(r)] == kInf) continue;
            const std::int64_t top = (reach % 2) ? reach : reach - 1;
            for (std::int64_t c = -top; c <= top; c += 2) {
                std::int64_t to = ((r + c * wj) % mod + mod) % mod;
                std::int64_t cost = dist[static_cast<std::size_t>(r)] + c * c;
                if (cost < next[static_cast<std::size_t>(to)]) next[static_cast<std::size_t>(to)] = cost;
            }
        }
        dist = std::move(next);
    }
    std::vector<std::int64_t> t;
    const std::int64_t N = static_cast<std::int64_t>(cm.N);
    for (std::int64_t i = 0; i <= n / 2; ++i) {
        const std::int64_t best = dist[static_cast<std::size_t>(((n + 2 * i) % mod + mod) % mod)];
        if (best == kInf) throw std::logic_error("residue unreachable");
        const std::int64_t excess = best + unit_cost - N;
        if (excess % 8 != 0 || excess < 0)
            throw std::domain_error("minimum norm minus N is not a non-negative multiple of 8: invalid changemaker input");
        t.push_back(excess / 8);
    }
    return TorsionSeq(std::move(t));
}

/// Exhaustive minimisation over odd vectors with |c_j| <= 2 sigma_j + 3 on weighted coordinates.
inline TorsionSeq recover_torsion_brute(const ChangemakerLattice& cm) {
    const std::int64_t n = cm.n, mod = 2 * n;
    const auto weights = cm.w0_weights();
    std::vector<std::int64_t> active;
    for (auto w : weights)
        if (w != 0) active.push_back(w);
    const std::int64_t fixed = static_cast<std::int64_t>(weights.size() - active.size());
    std::vector<std::int64_t> best(static_cast<std::size_t>(mod), std::numeric_limits<std::int64_t>::max());
    std::vector<std::int64_t> c(active.size(), 0);
    std::function<void(std::size_t, std::int64_t, std::int64_t)> rec = [&](std::size_t j, std::int64_t res, std::int64_t cost) {
        if (j == active.size()) {
            auto& b = best[static_cast<std::size_t>(((res % mod) + mod) % mod)];
            b = std::min(b, cost + fixed);
            return;
        }
        const std::int64_t lim = 2 * active[j] + 3;
        for (std::int64_t v = -lim; v <= lim; ++v) {
            if (v % 2 == 0) continue;
            rec(j + 1, res + v * active[j], cost + v * v);
        }
    };
    rec(0, 0, 0);
    std::vector<std::int64_t> t;
    for (std::int64_t i = 0; i <= n / 2; ++i) {
        const std::int64_t b = best[static_cast<std::size_t>((n + 2 * i) % mod)];
        const std::int64_t excess = b - static_cast<std::int64_t>(cm.N);
        if (excess % 8 != 0) throw std::domain_error("brute-force minimum not congruent to N mod 8");
        t.push_back(excess / 8);
    }
    return TorsionSeq(std::move(t));
}

struct GenusBound {
    std::int64_t B = 0;
    std::int64_t genus = 0;
    bool empty_stable = false;  // B = 0 by convention
    bool chain_holds = false;   // B <= 4g - (rho_t - 2)^2 + 4 <= 4g + 4
};

inline GenusBound genus_bound_B(const Sigma& sigma) {
    GenusBound gb;
    gb.genus = changemaker_genus(sigma);
    Sigma rho = stable_coefficients(sigma);
    if (rho.empty()) {
        gb.empty_stable = true;
        gb.chain_holds = true;
        return gb;
    }
    for (auto x : rho) gb.B += x * x;
    gb.B += 2 * rho.back();
    const std::int64_t mid = 4 * gb.genus - (rho.back() - 2) * (rho.back() - 2) + 4;
    gb.chain_holds = gb.B <= mid && mid <= 4 * gb.genus + 4;
    return gb;
}

// ---------------------------------------------------------------------------------------------
// Isometry of positive definite lattices given by Gram matrices.

enum class Isometry { Yes, No, Undecided };

inline const char* to_string(Isometry i) {
    switch (i) {
        case Isometry::Yes: return "isometric";
        case Isometry::No: return "not isometric";
        default: return "undecided";
    }
}

namespace detail {

using I64Mat = std::vector<std::vector<std::int64_t>>;

inline I64Mat to_i64_matrix(const IntMatrix& m) {
    I64Mat out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& x : m[i]) out[i].push_back(to_i64(x));
    return out;
}

struct ShortVectors {
    std::vector<std::vector<std::int64_t>> vecs;  // both signs
    std::vector<std::int64_t> norms;
    std::map<std::int64_t, std::size_t> theta;  // norm -> count (both signs)
};

inline ShortVectors collect_short(const IntMatrix& gram, std::int64_t bound, std::size_t cap, bool& overflow) {
    ShortVectors sv;
    overflow = false;
    enumerate_short_vectors(gram, bound, [&](const std::vector<std::int64_t>& x, const Integer& nrm) {
        const std::int64_t v = to_i64(nrm);
        sv.vecs.push_back(x);
        sv.norms.push_back(v);
        auto neg = x;
        for (auto& c : neg) c = -c;
        sv.vecs.push_back(neg);
        sv.norms.push_back(v);
        sv.theta[v] += 2;
        if (sv.vecs.size() > cap) {
            overflow = true;
            return false;
        }
        return true;
    });
    return sv;
}

inline std::vector<std::int64_t> apply(const I64Mat& g, const std::vector<std::int64_t>& x) {
    std::vector<std::int64_t> y(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) y[i] += g[i][j] * x[j];
    return y;
}

inline std::int64_t dot64(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

struct IsometryOptions {
    std::size_t node_limit = 20'000'000;
    std::size_t short_vector_cap = 400'000;
};

/// Decides whether two positive definite Gram matrices describe isometric lattices. Both are LLL
/// reduced; images of the first reduced basis are searched among short vectors of the second.
/// Equal determinants make any Gram-preserving image set a basis, so no index check is needed.
inline Isometry is_isometric(const IntMatrix& g1, const IntMatrix& g2, const IsometryOptions& opt = {}) {
    const std::size_t n = g1.size();
    if (g2.size() != n) return Isometry::No;
    if (n == 0) return Isometry::Yes;
    if (!is_positive_definite(g1) || !is_positive_definite(g2)) throw std::invalid_argument("isometry test needs positive definite Gram matrices");
    if (determinant(g1) != determinant(g2)) return Isometry::No;

    const LLLResult r1 = lll_reduce_gram(g1), r2 = lll_reduce_gram(g2);
    const auto a = detail::to_i64_matrix(r1.gram), b = detail::to_i64_matrix(r2.gram);
    std::int64_t bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, a[i][i]);

    bool over1 = false, over2 = false;
    const auto sv1 = detail::collect_short(r1.gram, bound, opt.short_vector_cap, over1);
    const auto sv2 = detail::collect_short(r2.gram, bound, opt.short_vector_cap, over2);
    if (over1 || over2) return Isometry::Undecided;
    if (sv1.theta != sv2.theta) return Isometry::No;

    // Fingerprint of a vector: how many minimal vectors it meets with each inner product.
    const std::int64_t min_norm = sv1.theta.begin()->first;
    auto fingerprint = [&](const detail::ShortVectors& sv, const std::vector<std::int64_t>& gx) {
        std::map<std::int64_t, std::size_t> fp;
        for (std::size_t k = 0; k < sv.vecs.size(); ++k)
            if (sv.norms[k] == min_norm) ++fp[detail::dot64(gx, sv.vecs[k])];
        return fp;
    };
    const bool use_fp = sv1.theta.at(min_norm) <= 4000;

    // Candidates for basis vector i: vectors of the right norm (one sign for i = 0).
    std::vector<std::vector<std::size_t>> cand(n);
    std::vector<std::vector<std::int64_t>> gy(sv2.vecs.size());
    for (std::size_t k = 0; k < sv2.vecs.size(); ++k) gy[k] = detail::apply(b, sv2.vecs[k]);
    std::vector<std::map<std::int64_t, std::size_t>> fp2;
    if (use_fp)
        for (std::size_t k = 0; k < sv2.vecs.size(); ++k) fp2.push_back(fingerprint(sv2, gy[k]));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::int64_t> ei(n, 0);
        ei[i] = 1;
        const auto fpi = use_fp ? fingerprint(sv1, detail::apply(a, ei)) : std::map<std::int64_t, std::size_t>{};
        for (std::size_t k = 0; k < sv2.vecs.size(); ++k) {
            if (sv2.norms[k] != a[i][i]) continue;
            if (i == 0 && (k % 2) == 1) continue;  // odd slots hold the negatives
            if (use_fp && fp2[k] != fpi) continue;
            cand[i].push_back(k);
        }
        if (cand[i].empty()) return Isometry::No;
    }

    std::vector<std::size_t> chosen(n);
    std::size_t nodes = 0;
    bool exhausted = false;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t k : cand[i]) {
            if (++nodes > opt.node_limit) {
                exhausted = true;
                return false;
            }
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = detail::dot64(gy[k], sv2.vecs[chosen[j]]) == a[i][j];
            if (!ok) continue;
            chosen[i] = k;
            if (rec(i + 1)) return true;
            if (exhausted) return false;
        }
        return false;
    };
    if (rec(0)) return Isometry::Yes;
    return exhausted ? Isometry::Undecided : Isometry::No;
}

// ---------------------------------------------------------------------------------------------

/// Non-decreasing changemaker tuples of length `len` (zeros allowed) with sum of squares `target`.
inline std::vector<Sigma> enumerate_changemakers(std::size_t len, std::int64_t target) {
    std::vector<Sigma> out;
    Sigma cur;
    std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t left, std::int64_t prefix) {
        const std::size_t slots = len - cur.size();
        if (slots == 0) {
            if (left == 0) out.push_back(cur);
            return;
        }
        const std::int64_t lo = cur.empty() ? 0 : cur.back();
        const std::int64_t hi = cur.empty() ? 1 : prefix + 1;
        for (std::int64_t v = lo; v <= hi; ++v) {
            // Remaining entries are >= v, so they need at least slots * v^2.
            if (v * v * static_cast<std::int64_t>(slots) > left) break;
            cur.push_back(v);
            rec(left - v * v, prefix + v);
            cur.pop_back();
        }
    };
    rec(target, 0);
    return out;
}

struct UniquenessOptions {
    std::size_t max_ambient = 8;
    IsometryOptions isometry;
};

struct UniquenessResult {
    std::vector<ChangemakerLattice> structures;  // one per sigma multiset, isometric complements
    std::size_t candidates = 0;                  // changemaker tuples examined
    std::size_t undecided = 0;                   // isometry tests that hit the node limit
};

/// All p/q-changemaker structures whose complement is isometric to `gram`.
inline UniquenessResult uniqueness_search(const PosRational& slope, const IntMatrix& gram, const UniquenessOptions& opt = {}) {
    if (gram.empty()) throw std::invalid_argument("uniqueness_search needs a lattice of positive rank");
    if (!is_positive_definite(gram)) throw std::invalid_argument("Gram matrix is not positive definite");
    const NegCF cf = expand_neg_cf(slope);
    const std::size_t l1 = cf.size();
    const std::size_t N = gram.size() + l1;
    if (N > opt.max_ambient)
        throw std::out_of_range("ambient rank " + std::to_string(N) + " exceeds the search bound " + std::to_string(opt.max_ambient));
    const std::int64_t n = to_i64(split_slope(slope).n);
    std::size_t t = N;
    std::int64_t target = n;
    if (!slope.is_integer()) {
        std::size_t s = 0;
        for (std::size_t k = 1; k < cf.size(); ++k) s += static_cast<std::size_t>(to_i64(cf[k])) - 1;
        if (N < s + 1) return {};
        t = N - s - 1;
        target = n - 1;
    }
    UniquenessResult res;
    for (const Sigma& sigma : enumerate_changemakers(t, target)) {
        ++res.candidates;
        ChangemakerLattice cm = build_changemaker(slope, sigma);
        Isometry iso = is_isometric(gram, cm.gram, opt.isometry);
        if (iso == Isometry::Yes) res.structures.push_back(std::move(cm));
        if (iso == Isometry::Undecided) ++res.undecided;
    }
    return res;
}

}  // namespace slt
