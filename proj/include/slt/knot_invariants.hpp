#pragma once

#include "slt/continued_fraction.hpp"
#include "slt/linear_lattice.hpp"
#include "slt/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slt {

/// Symmetrized Alexander polynomial a0 + sum_{i=1}^g a_i (t^i + t^-i), stored as a0..ag.
class AlexPoly {
public:
    AlexPoly() : a_{1} {}
    explicit AlexPoly(std::vector<std::int64_t> a) : a_(std::move(a)) {
        if (a_.empty()) throw std::invalid_argument("empty Alexander polynomial");
        while (a_.size() > 1 && a_.back() == 0) a_.pop_back();
    }

    std::size_t genus() const { return a_.size() - 1; }
    std::int64_t coeff(std::int64_t i) const {
        std::size_t k = static_cast<std::size_t>(i < 0 ? -i : i);
        return k < a_.size() ? a_[k] : 0;
    }
    const std::vector<std::int64_t>& coeffs() const { return a_; }

    std::int64_t value_at_one() const {
        std::int64_t v = a_[0];
        for (std::size_t i = 1; i < a_.size(); ++i) v += 2 * a_[i];
        return v;
    }

    /// Nonzero coefficients in {+-1}, alternating in sign, top coefficient +1.
    bool is_lspace_form() const {
        if (a_.back() != 1) return false;
        std::int64_t prev = 0;
        for (std::size_t i = a_.size(); i-- > 0;) {
            if (a_[i] == 0) continue;
            if (a_[i] != 1 && a_[i] != -1) return false;
            if (prev != 0 && a_[i] == prev) return false;
            prev = a_[i];
        }
        return true;
    }

    std::string str() const {
        // Laurent polynomial from the top degree down, e.g. "t - 1 + t^-1".
        std::string out;
        auto term = [&](std::int64_t c, std::int64_t e) {
            if (c == 0) return;
            std::string mono = e == 0 ? "" : (e == 1 ? "t" : "t^" + std::to_string(e));
            std::int64_t mag = c < 0 ? -c : c;
            std::string body = (mag == 1 && e != 0) ? mono : std::to_string(mag) + mono;
            if (out.empty())
                out = (c < 0 ? "-" : "") + body;
            else
                out += (c < 0 ? " - " : " + ") + body;
        };
        const auto g = static_cast<std::int64_t>(genus());
        for (std::int64_t e = g; e >= -g; --e) term(coeff(e), e);
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const AlexPoly&, const AlexPoly&) = default;

private:
    std::vector<std::int64_t> a_;
};

/// Torsion coefficients t_0, t_1, ...; zero beyond the stored range, symmetric in i.
class TorsionSeq {
public:
    TorsionSeq() = default;
    explicit TorsionSeq(std::vector<std::int64_t> t) : t_(std::move(t)) {
        while (!t_.empty() && t_.back() == 0) t_.pop_back();
    }
    std::int64_t operator()(std::int64_t i) const {
        std::size_t k = static_cast<std::size_t>(i < 0 ? -i : i);
        return k < t_.size() ? t_[k] : 0;
    }
    /// Values t_0 .. t_{g-1}, trailing zeros dropped.
    const std::vector<std::int64_t>& values() const { return t_; }
    std::size_t support() const { return t_.size(); }

    bool is_valid() const {
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (t_[i] < 0) return false;
            if (i && t_[i] > t_[i - 1]) return false;
        }
        return true;
    }

    friend bool operator==(const TorsionSeq&, const TorsionSeq&) = default;

private:
    std::vector<std::int64_t> t_;
};

/// The V sequence (non-negative, non-increasing, eventually zero). H_{-i} = V_i.
class VHSeq {
public:
    VHSeq() = default;
    explicit VHSeq(std::vector<std::int64_t> v) : v_(std::move(v)) {
        while (!v_.empty() && v_.back() == 0) v_.pop_back();
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (v_[i] < 0) throw std::invalid_argument("V sequence must be non-negative");
            if (i && v_[i] > v_[i - 1]) throw std::invalid_argument("V sequence must be non-increasing");
        }
    }
    std::int64_t V(std::int64_t i) const {
        if (i < 0) throw std::out_of_range("V index must be non-negative");
        return static_cast<std::size_t>(i) < v_.size() ? v_[static_cast<std::size_t>(i)] : 0;
    }
    /// Only the non-positive half is needed by the surgery formula.
    std::int64_t H(std::int64_t j) const {
        if (j > 0) throw std::out_of_range("H is only tabulated for non-positive indices");
        return V(-j);
    }
    const std::vector<std::int64_t>& values() const { return v_; }
    /// Least i with V_i = 0.
    std::int64_t first_zero() const { return static_cast<std::int64_t>(v_.size()); }

    friend bool operator==(const VHSeq&, const VHSeq&) = default;

private:
    std::vector<std::int64_t> v_;
};

inline TorsionSeq torsion_from_alex(const AlexPoly& poly) {
    const auto g = static_cast<std::int64_t>(poly.genus());
    std::vector<std::int64_t> t(static_cast<std::size_t>(g), 0);
    for (std::int64_t i = 0; i < g; ++i)
        for (std::int64_t j = 1; i + j <= g; ++j) t[static_cast<std::size_t>(i)] += j * poly.coeff(i + j);
    return TorsionSeq(std::move(t));
}

inline AlexPoly alex_from_torsion(const TorsionSeq& t) {
    const auto g = static_cast<std::int64_t>(t.support());
    std::vector<std::int64_t> a(static_cast<std::size_t>(g) + 1, 0);
    for (std::int64_t j = 0; j + 1 <= g; ++j) a[static_cast<std::size_t>(j) + 1] = t(j) - 2 * t(j + 1) + t(j + 2);
    // a0 is the opposite sign of the lowest nonzero a_i, i >= 1 (or 1 for the unknot).
    a[0] = 1;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) {
            a[0] = -a[i];
            break;
        }
    AlexPoly poly(std::move(a));
    if (!poly.is_lspace_form() || poly.value_at_one() != 1)
        throw std::invalid_argument("torsion sequence is not realised by an L-space-form polynomial");
    return poly;
}

/// (t^{rs} - 1)(t - 1) / ((t^r - 1)(t^s - 1)), symmetrized.
inline AlexPoly torus_alexander(std::int64_t r, std::int64_t s) {
    if (!(r > s && s > 1)) throw std::invalid_argument("torus knot needs r > s > 1");
    if (std::gcd(r, s) != 1) throw std::invalid_argument("torus knot parameters must be coprime");
    using Poly = std::vector<std::int64_t>;  // ascending powers
    auto mul = [](const Poly& x, const Poly& y) {
        Poly z(x.size() + y.size() - 1, 0);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
        return z;
    };
    auto binom = [](std::int64_t d) {
        Poly x(static_cast<std::size_t>(d) + 1, 0);
        x[0] = -1;
        x.back() = 1;
        return x;
    };
    Poly num = mul(binom(r * s), binom(1));
    Poly den = mul(binom(r), binom(s));
    // Long division by a monic divisor.
    Poly quo(num.size() - den.size() + 1, 0);
    for (std::size_t k = quo.size(); k-- > 0;) {
        std::int64_t c = num[k + den.size() - 1];
        quo[k] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    if (std::any_of(num.begin(), num.end(), [](std::int64_t c) { return c != 0; }))
        throw std::logic_error("torus Alexander division left a remainder");
    const std::size_t deg = quo.size() - 1;
    if (deg % 2 != 0) throw std::logic_error("torus Alexander polynomial has odd degree");
    const std::size_t g = deg / 2;
    std::vector<std::int64_t> a(g + 1);
    for (std::size_t i = 0; i <= g; ++i) a[i] = quo[g + i];
    return AlexPoly(std::move(a));
}

inline VHSeq v_from_torsion(const TorsionSeq& t) { return VHSeq(t.values()); }

/// Ni-Wu in the V-only form, index i in 0..p-1. Asserts agreement with the max{V, H} form.
inline std::vector<Rational> d_tilde(const PosRational& slope, const VHSeq& v) {
    const std::int64_t p = to_i64(slope.num());
    const std::int64_t q = to_i64(slope.den());
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) {
        const std::int64_t via_min = -2 * v.V(std::min(floor_div(i, q), ceil_div(p - i, q)));
        const std::int64_t via_max = -2 * std::max(v.V(floor_div(i, q)), v.H(floor_div(i - p, q)));
        if (via_min != via_max) throw std::logic_error("surgery formula routes disagree at i = " + std::to_string(i));
        out.emplace_back(via_min);
    }
    return out;
}

/// d of the lens space side for a short representative: (|s| - b2)/4.
inline Rational lens_d(const LinearLattice& lat, const CharVec& s) {
    if (!is_short(lat, s)) throw std::invalid_argument("lens_d needs a short representative, got " + s.str());
    return (norm(lat, s) - Rational(static_cast<std::int64_t>(lat.rank()))) / 4;
}

struct ClassValue {
    CharVec rep;  // the element of C in this class
    Rational value;
};

/// D of the class of s in C: -2V_{(a0-2-c0)/2} when 0 <= c0 < a0 and s is left-full,
/// -2V_{(a0-|c0|)/2} otherwise.
inline Rational d_of_C_element(const LinearLattice& lat, const VHSeq& v, const CharVec& s) {
    const std::int64_t a0 = lat.a(0), c0 = s[0];
    const std::int64_t idx = (0 <= c0 && c0 < a0 && left_full(lat, s)) ? (a0 - 2 - c0) / 2 : (a0 - std::abs(c0)) / 2;
    return Rational(-2 * v.V(idx));
}

/// D over the classes, computed on C.
inline std::vector<ClassValue> d_by_class(const LinearLattice& lat, const VHSeq& v) {
    std::vector<ClassValue> out;
    for (const CharVec& s : enumerate_C(lat)) out.push_back({s, d_of_C_element(lat, v, s)});
    return out;
}

/// Same table computed on F with the uniform formula, reported in C order. Used as a cross-check.
inline std::vector<ClassValue> d_by_class_via_F(const LinearLattice& lat, const VHSeq& v) {
    SpincTable table(lat);
    std::vector<std::optional<Rational>> vals(table.size());
    for (const CharVec& s : build_F(lat)) {
        auto& slot = vals[table.index_of(s)];
        if (slot) throw std::logic_error("F has two elements in one class");
        slot = Rational(-2 * v.V((lat.a(0) - std::abs(s[0])) / 2));
    }
    std::vector<ClassValue> out;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!vals[i]) throw std::logic_error("F misses a class");
        out.push_back({table.representatives()[i], *vals[i]});
    }
    return out;
}

struct DTable {
    PosRational slope;
    std::vector<Rational> by_residue;
    std::vector<ClassValue> by_class;

    std::vector<Rational> residue_multiset() const {
        auto m = by_residue;
        std::sort(m.begin(), m.end());
        return m;
    }
    std::vector<Rational> class_multiset() const {
        std::vector<Rational> m;
        for (const auto& cv : by_class) m.push_back(cv.value);
        std::sort(m.begin(), m.end());
        return m;
    }
    bool multisets_agree() const { return residue_multiset() == class_multiset(); }
};

inline DTable build_dtable(const PosRational& slope, const VHSeq& v) {
    LinearLattice lat(expand_neg_cf(slope));
    return {slope, d_tilde(slope, v), d_by_class(lat, v)};
}

struct SumIdentity {
    Rational lhs;
    Rational rhs;
    bool ok() const { return lhs == rhs; }
};

/// sum_i D~^{p/q}(i) against 2 r V_{floor(n/2)} + q sum_j D~^n(j), with p/q = n - r/q.
inline SumIdentity check_sum_identity(const PosRational& slope, const VHSeq& v) {
    const SlopeSplit sp = split_slope(slope);
    Rational lhs = 0, integral = 0;
    for (const auto& x : d_tilde(slope, v)) lhs += x;
    for (const auto& x : d_tilde(PosRational(sp.n, Integer(1)), v)) integral += x;
    const std::int64_t n = to_i64(sp.n);
    Rational rhs = Rational(2 * sp.rem * v.V(n / 2)) + Rational(sp.q) * integral;
    return {lhs, rhs};
}

/// A knot as seen by the surgery formulas: V sequence plus, when known, its Alexander polynomial.
struct KnotModel {
    std::string name;
    VHSeq v;
    std::optional<AlexPoly> alex;

    static KnotModel unknot() { return {"unknot", VHSeq{}, AlexPoly{}}; }
    static KnotModel torus(std::int64_t r, std::int64_t s) {
        AlexPoly a = torus_alexander(r, s);
        return {"T(" + std::to_string(r) + "," + std::to_string(s) + ")", v_from_torsion(torsion_from_alex(a)), a};
    }
    static KnotModel from_alex(const AlexPoly& a) {
        if (!a.is_lspace_form()) throw std::invalid_argument("Alexander polynomial is not of L-space form");
        if (a.value_at_one() != 1 && a.value_at_one() != -1) throw std::invalid_argument("Alexander polynomial must satisfy |Delta(1)| = 1");
        return {"alex", v_from_torsion(torsion_from_alex(a)), a};
    }
    static KnotModel from_v(std::vector<std::int64_t> v) { return {"v", VHSeq(std::move(v)), std::nullopt}; }
};

}  // namespace slt
