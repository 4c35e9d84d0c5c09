#pragma once

#include "slt/continued_fraction.hpp"
#include "slt/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace slt {

/// Integer tuple (c0, ..., cl) standing for a characteristic covector of a linear lattice,
/// written in the dual basis of the 2-handles.
class CharVec {
public:
    CharVec() = default;
    explicit CharVec(std::vector<std::int64_t> c) : c_(std::move(c)) {}
    CharVec(std::initializer_list<std::int64_t> c) : c_(c) {}

    std::size_t size() const { return c_.size(); }
    std::int64_t operator[](std::size_t i) const { return c_[i]; }
    std::int64_t& operator[](std::size_t i) { return c_[i]; }
    const std::vector<std::int64_t>& values() const { return c_; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    CharVec operator-() const {
        CharVec out = *this;
        for (auto& x : out.c_) x = -x;
        return out;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[i]);
        }
        return s + ")";
    }

    friend bool operator==(const CharVec&, const CharVec&) = default;
    friend auto operator<=>(const CharVec&, const CharVec&) = default;

private:
    std::vector<std::int64_t> c_;
};

/// The lattice H_2 of the linear plumbing attached to [a0, ..., al]^-: tridiagonal intersection
/// matrix with diagonal a_i and off-diagonal -1. Immutable after construction.
class LinearLattice {
public:
    static constexpr std::int64_t kMaxDeterminant = 1'000'000;

    explicit LinearLattice(const NegCF& cf) : cf_(cf) {
        if (!cf.is_relaxed()) throw std::invalid_argument("not a valid continued fraction for a plumbing: " + cf.str());
        for (const auto& t : cf.terms()) a_.push_back(to_i64(t));
        const std::size_t n = a_.size();

        // prefix_[i] = K(a0..a_{i-1}), suffix_[j] = K(aj..al); K = continuant (leading minor).
        prefix_.assign(n + 1, 0);
        suffix_.assign(n + 2, 0);
        prefix_[0] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            Integer next = Integer(a_[i]) * prefix_[i] - (i ? Integer(prefix_[i - 1]) : Integer(0));
            if (next <= 0) throw std::invalid_argument("intersection form is not positive definite: " + cf.str());
            if (next > kMaxDeterminant) throw std::domain_error("lattice too large for enumeration: " + cf.str());
            prefix_[i + 1] = static_cast<std::int64_t>(next);
        }
        suffix_[n] = 1;
        suffix_[n + 1] = 0;
        for (std::size_t j = n; j-- > 0;) suffix_[j] = a_[j] * suffix_[j + 1] - suffix_[j + 2];

        p_ = prefix_[n];
        q_ = suffix_[1];
        r_ = suffix_[2];
        if (suffix_[0] != p_) throw std::logic_error("continuant mismatch");

        adj_.assign(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) adj_[i][j] = prefix_[std::min(i, j)] * suffix_[std::max(i, j) + 1];
    }

    const NegCF& cf() const { return cf_; }
    const std::vector<std::int64_t>& a() const { return a_; }
    std::int64_t a(std::size_t i) const { return a_[i]; }
    /// Number of 2-handles, l + 1 = b2(W).
    std::size_t rank() const { return a_.size(); }
    std::size_t l() const { return a_.size() - 1; }
    /// |det M|, also the order of H^2 of the boundary.
    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    /// q/r = [a1, ..., al]^-, so p/q = a0 - r/q.
    std::int64_t r() const { return r_; }

    std::int64_t M(std::size_t i, std::size_t j) const {
        if (i == j) return a_[i];
        if (i + 1 == j || j + 1 == i) return -1;
        return 0;
    }

    std::vector<std::vector<std::int64_t>> matrix() const {
        std::vector<std::vector<std::int64_t>> m(rank(), std::vector<std::int64_t>(rank()));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) m[i][j] = M(i, j);
        return m;
    }

    /// p * M^{-1}, an integer matrix.
    const std::vector<std::vector<std::int64_t>>& adjugate() const { return adj_; }

    std::vector<std::vector<Rational>> inverse() const {
        std::vector<std::vector<Rational>> inv(rank(), std::vector<Rational>(rank()));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) inv[i][j] = Rational(adj_[i][j], p_);
        return inv;
    }

    /// K(a0, ..., a_{i-1}); entry i of the last row of adj(M).
    std::int64_t prefix_continuant(std::size_t i) const { return prefix_[i]; }

    bool is_characteristic(const CharVec& s) const {
        if (s.size() != rank()) return false;
        for (std::size_t i = 0; i < rank(); ++i)
            if (((s[i] - a_[i]) % 2) != 0) return false;
        return true;
    }

    void require_characteristic(const CharVec& s) const {
        if (s.size() != rank())
            throw std::invalid_argument("dimension mismatch: vector " + s.str() + " for lattice " + cf_.str());
        if (!is_characteristic(s)) throw std::invalid_argument("not characteristic: " + s.str() + " for " + cf_.str());
    }

private:
    NegCF cf_;
    std::vector<std::int64_t> a_;
    std::vector<std::int64_t> prefix_;
    std::vector<std::int64_t> suffix_;
    std::vector<std::vector<std::int64_t>> adj_;
    std::int64_t p_ = 0, q_ = 0, r_ = 0;
};

/// s M^{-1} s^T, exactly.
inline Rational norm(const LinearLattice& lat, const CharVec& s) {
    if (s.size() != lat.rank()) throw std::invalid_argument("dimension mismatch in norm");
    Integer acc = 0;
    const auto& adj = lat.adjugate();
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        if (s[i] == 0) continue;
        Integer row = 0;
        for (std::size_t j = 0; j < lat.rank(); ++j) row += Integer(adj[i][j]) * s[j];
        acc += row * s[i];
    }
    return Rational(acc, lat.p());
}

/// [s1] == [s2] in Char/2PD(H_2): (s1 - s2)/2 must solve M x = v with x integral.
inline bool same_class(const LinearLattice& lat, const CharVec& s1, const CharVec& s2) {
    if (s1.size() != lat.rank() || s2.size() != lat.rank()) throw std::invalid_argument("dimension mismatch in same_class");
    std::vector<std::int64_t> half(lat.rank());
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        std::int64_t d = s1[i] - s2[i];
        if (d % 2 != 0) throw std::invalid_argument("difference is odd; inputs are not both characteristic");
        half[i] = d / 2;
    }
    const auto& adj = lat.adjugate();
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        Integer x = 0;
        for (std::size_t j = 0; j < lat.rank(); ++j) x += Integer(adj[i][j]) * half[j];
        if (x % lat.p() != 0) return false;
    }
    return true;
}

/// Class invariant in Z/2p: the last coordinate of M^{-1} s scaled by p. Integrality of the last
/// coordinate of M^{-1}v forces integrality of the rest (back-substitution along the chain),
/// so two characteristic vectors share a class iff their keys agree.
inline std::int64_t class_key(const LinearLattice& lat, const CharVec& s) {
    __int128 z = 0;
    for (std::size_t j = 0; j < lat.rank(); ++j) z += static_cast<__int128>(lat.prefix_continuant(j)) * s[j];
    const __int128 m = 2 * static_cast<__int128>(lat.p());
    __int128 k = z % m;
    if (k < 0) k += m;
    return static_cast<std::int64_t>(k);
}

/// s + coef * PD(h_i); PD(h_i) is row i of M.
inline CharVec add_pd(const LinearLattice& lat, CharVec s, std::size_t i, std::int64_t coef) {
    s[i] += coef * lat.a(i);
    if (i > 0) s[i - 1] -= coef;
    if (i + 1 < lat.rank()) s[i + 1] -= coef;
    return s;
}

inline bool full_tank(const LinearLattice& lat, const CharVec& s) {
    bool open = false;  // seen c_i = a_i followed only by a_k - 2 entries
    for (std::size_t j = 0; j < lat.rank(); ++j) {
        if (s[j] == lat.a(j)) {
            if (open) return true;
            open = true;
        } else if (s[j] != lat.a(j) - 2) {
            open = false;
        }
    }
    return false;
}

/// The k > 0 with c_k = a_k and c_j = a_j - 2 for 0 < j < k, if any.
inline std::optional<std::size_t> left_full_index(const LinearLattice& lat, const CharVec& s) {
    for (std::size_t k = 1; k < lat.rank(); ++k) {
        if (s[k] == lat.a(k)) return k;
        if (s[k] != lat.a(k) - 2) return std::nullopt;
    }
    return std::nullopt;
}

inline bool left_full(const LinearLattice& lat, const CharVec& s) { return left_full_index(lat, s).has_value(); }

namespace detail {

// Depth-first enumeration over per-coordinate ranges [lo_i, a_i] (step 2), pruning any prefix
// that already contains a full tank in s (and in -s when `symmetric`).
inline void enumerate_tankless(const LinearLattice& lat, bool symmetric, const std::function<std::int64_t(std::size_t)>& lo,
                               const std::function<void(const CharVec&)>& emit) {
    const std::size_t n = lat.rank();
    CharVec s(std::vector<std::int64_t>(n, 0));
    std::function<void(std::size_t, bool, bool)> rec = [&](std::size_t i, bool open_pos, bool open_neg) {
        if (i == n) {
            emit(s);
            return;
        }
        const std::int64_t a = lat.a(i);
        for (std::int64_t c = lo(i); c <= a; c += 2) {
            bool np = open_pos, nn = open_neg;
            if (c == a) {
                if (open_pos) continue;
                np = true;
            } else if (c != a - 2) {
                np = false;
            }
            if (symmetric) {
                if (-c == a) {
                    if (open_neg) continue;
                    nn = true;
                } else if (-c != a - 2) {
                    nn = false;
                }
            }
            s[i] = c;
            rec(i + 1, np, nn);
        }
    };
    rec(0, false, false);
}

}  // namespace detail

/// The set C: characteristic s with 2 - a_i <= c_i <= a_i and no full tank in s or -s.
/// Returned in lexicographic order; |C| = p.
inline std::vector<CharVec> enumerate_C(const LinearLattice& lat) {
    std::vector<CharVec> out;
    out.reserve(static_cast<std::size_t>(lat.p()));
    // -s cannot contain a full tank inside this box: -c_i = a_i would need c_i = -a_i < 2 - a_i.
    detail::enumerate_tankless(
        lat, false, [&](std::size_t i) { return 2 - lat.a(i); }, [&](const CharVec& s) { out.push_back(s); });
    return out;
}

/// The set M of short characteristic vectors: |c_i| <= a_i and no full tank in s or -s.
/// Exponential in l for chains of 2s; callers bound the lattice size.
inline void for_each_M(const LinearLattice& lat, const std::function<void(const CharVec&)>& visit) {
    detail::enumerate_tankless(
        lat, true, [&](std::size_t i) { return -lat.a(i); }, visit);
}

inline bool is_short(const LinearLattice& lat, const CharVec& s) {
    lat.require_characteristic(s);
    for (std::size_t i = 0; i < lat.rank(); ++i)
        if (std::abs(s[i]) > lat.a(i)) return false;
    return !full_tank(lat, s) && !full_tank(lat, -s);
}

inline bool in_C(const LinearLattice& lat, const CharVec& s) {
    if (!is_short(lat, s)) return false;
    for (std::size_t i = 0; i < lat.rank(); ++i)
        if (s[i] < 2 - lat.a(i)) return false;
    return true;
}

/// The representative set F: left-full elements of C with c0 >= 0 are moved by
/// -2 (PD(h_1) + ... + PD(h_k)); everything else is kept.
inline std::vector<CharVec> build_F(const LinearLattice& lat) {
    std::vector<CharVec> out;
    for (const CharVec& s : enumerate_C(lat)) {
        auto k = left_full_index(lat, s);
        if (k && s[0] >= 0) {
            CharVec t = s;
            for (std::size_t i = 1; i <= *k; ++i) t = add_pd(lat, t, i, -2);
            out.push_back(std::move(t));
        } else {
            out.push_back(s);
        }
    }
    return out;
}

/// Moves an element of M into C without changing its class or norm by repeatedly clearing the
/// smallest trough (an index with c_k = -a_k).
inline CharVec remove_troughs(const LinearLattice& lat, CharVec s) {
    if (!is_short(lat, s)) throw std::invalid_argument("remove_troughs needs an element of M, got " + s.str());
    const std::size_t n = lat.rank();
    // Each pass raises the smallest trough or the start of the run before it; n^2 + n bounds both.
    const std::size_t max_passes = n * n + n + 1;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        std::optional<std::size_t> trough;
        for (std::size_t k = 0; k < n; ++k)
            if (s[k] == -lat.a(k)) {
                trough = k;
                break;
            }
        if (!trough) return s;
        const std::size_t k = *trough;
        std::size_t j = k;
        while (j > 0 && s[j - 1] == 2 - lat.a(j - 1)) --j;
        for (std::size_t i = j; i <= k; ++i) s = add_pd(lat, s, i, 2);
    }
    throw std::logic_error("remove_troughs did not terminate");
}

/// One representative per spin^c structure of the boundary, keyed by class.
/// The canonical representative of a class is its unique member of C.
class SpincTable {
public:
    explicit SpincTable(const LinearLattice& lat) : lat_(&lat), reps_(enumerate_C(lat)) {
        for (std::size_t i = 0; i < reps_.size(); ++i) {
            auto [it, fresh] = index_.emplace(class_key(lat, reps_[i]), i);
            if (!fresh) throw std::logic_error("two elements of C share a class: " + reps_[it->second].str() + " " + reps_[i].str());
        }
        if (static_cast<std::int64_t>(reps_.size()) != lat.p()) throw std::logic_error("|C| != p");
    }

    const std::vector<CharVec>& representatives() const { return reps_; }
    std::size_t size() const { return reps_.size(); }

    std::size_t index_of(const CharVec& s) const {
        lat_->require_characteristic(s);
        auto it = index_.find(class_key(*lat_, s));
        if (it == index_.end()) throw std::logic_error("class has no representative in C: " + s.str());
        return it->second;
    }

    const CharVec& canonical(const CharVec& s) const { return reps_[index_of(s)]; }

private:
    const LinearLattice* lat_;
    std::vector<CharVec> reps_;
    std::unordered_map<std::int64_t, std::size_t> index_;
};

/// Exact minimum norm in every class over the box |c_i| <= a_i.
///
/// Writes s M^{-1} s^T = sum_i Z_i^2 / (K_{i-1} K_i) with Z_i = sum_{j<=i} K_{j-1} c_j and K_i the
/// leading minors, so a left-to-right pass with state Z_i enumerates the whole box. The partial
/// sum times K_i is an integer and is what the table stores. The class of s is Z_l mod 2p.
/// Every short vector lies in M, hence in this box, so the result is the true coset minimum.
inline std::map<std::int64_t, Rational> coset_minimum_norms(const LinearLattice& lat, std::int64_t max_p = 200) {
    if (lat.p() > max_p)
        throw std::out_of_range("brute-force bound exceeded: p = " + std::to_string(lat.p()) + " > " + std::to_string(max_p));
    const std::size_t n = lat.rank();
    std::unordered_map<std::int64_t, std::int64_t> layer{{0, 0}};  // Z -> min scaled partial norm
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t k_prev = lat.prefix_continuant(i);      // K_{i-1}
        const std::int64_t k_cur = lat.prefix_continuant(i + 1);   // K_i
        std::unordered_map<std::int64_t, std::int64_t> next;
        for (const auto& [z, scaled] : layer) {
            for (std::int64_t c = -lat.a(i); c <= lat.a(i); c += 2) {
                const std::int64_t zn = z + k_prev * c;
                const std::int64_t num = k_cur * scaled + zn * zn;
                if (num % k_prev != 0) throw std::logic_error("non-integral partial norm");
                const std::int64_t val = num / k_prev;
                auto [it, fresh] = next.emplace(zn, val);
                if (!fresh && val < it->second) it->second = val;
            }
        }
        layer = std::move(next);
    }
    std::map<std::int64_t, Rational> best;
    const std::int64_t mod = 2 * lat.p();
    for (const auto& [z, scaled] : layer) {
        std::int64_t key = ((z % mod) + mod) % mod;
        Rational v(scaled, lat.p());
        auto [it, fresh] = best.emplace(key, v);
        if (!fresh && v < it->second) it->second = v;
    }
    return best;
}

inline Rational brute_min_norm_in_class(const LinearLattice& lat, const CharVec& s, std::int64_t max_p = 200) {
    lat.require_characteristic(s);
    auto table = coset_minimum_norms(lat, max_p);
    return table.at(class_key(lat, s));
}

}  // namespace slt
