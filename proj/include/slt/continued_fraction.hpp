#pragma once

#include "slt/rational.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slt {

/// Negative continued fraction [a0, ..., al]^- = a0 - 1/(a1 - 1/(... - 1/al)).
///
/// Two validity modes are distinguished:
///  - canonical: a0 >= 1 and ai >= 2 for every i > 0. This is what expand_neg_cf produces.
///  - relaxed:   a0 >= 1, interior terms >= 2, last term >= 1. Extension and interpolation
///               code consumes these (e.g. [a0, ..., al + 1, 1]).
class NegCF {
public:
    NegCF() = default;
    explicit NegCF(std::vector<Integer> terms) : terms_(std::move(terms)) {}
    NegCF(std::initializer_list<long long> terms) {
        for (long long t : terms) terms_.emplace_back(t);
    }

    const std::vector<Integer>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const Integer& operator[](std::size_t i) const { return terms_[i]; }
    /// Index of the last term (the l in [a0, ..., al]).
    std::size_t length_index() const { return terms_.size() - 1; }

    bool is_canonical() const {
        if (terms_.empty() || terms_[0] < 1) return false;
        return std::all_of(terms_.begin() + 1, terms_.end(), [](const Integer& a) { return a >= 2; });
    }

    bool is_relaxed() const {
        if (terms_.empty() || terms_[0] < 1) return false;
        for (std::size_t i = 1; i < terms_.size(); ++i) {
            const Integer& lo = (i + 1 == terms_.size()) ? Integer(1) : Integer(2);
            if (terms_[i] < lo) return false;
        }
        return true;
    }

    /// True if this expansion begins with every term of `prefix`.
    bool extends(const NegCF& prefix) const {
        return prefix.size() <= size() && std::equal(prefix.terms_.begin(), prefix.terms_.end(), terms_.begin());
    }

    NegCF appended(const std::vector<Integer>& tail) const {
        NegCF out = *this;
        out.terms_.insert(out.terms_.end(), tail.begin(), tail.end());
        return out;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) s += ",";
            s += terms_[i].str();
        }
        return s + "]";
    }

    friend bool operator==(const NegCF&, const NegCF&) = default;
    friend std::ostream& operator<<(std::ostream& os, const NegCF& cf) { return os << cf.str(); }

private:
    std::vector<Integer> terms_;
};

/// Canonical expansion: a0 = ceil(p/q), then recurse on q/(a0 q - p).
inline NegCF expand_neg_cf(const PosRational& r) {
    std::vector<Integer> terms;
    Integer p = r.num();
    Integer q = r.den();
    while (q != 0) {
        Integer a = ceil_div(p, q);
        terms.push_back(a);
        Integer rem = a * q - p;
        p = q;
        q = rem;
    }
    return NegCF(std::move(terms));
}

/// Exact value of an expansion in either validity mode. Throws std::domain_error when an
/// intermediate tail evaluates to zero or when the total is not positive.
inline PosRational evaluate_neg_cf(const NegCF& cf) {
    if (cf.empty()) throw std::invalid_argument("empty continued fraction");
    Rational v(cf.terms().back());
    for (std::size_t i = cf.size() - 1; i-- > 0;) {
        if (v == 0) throw std::domain_error("continued fraction tail evaluates to zero: " + cf.str());
        v = Rational(cf[i]) - 1 / v;
    }
    if (v <= 0) throw std::domain_error("continued fraction is not positive: " + cf.str());
    return PosRational(v);
}

struct SlopeSplit {
    Integer n;    // ceil(p/q)
    Integer rem;  // nq - p, 0 <= rem < q
    Integer q;
};

/// p/q = n - rem/q with 0 <= rem < q.
inline SlopeSplit split_slope(const PosRational& r) {
    Integer n = ceil_div(r.num(), r.den());
    return {n, n * r.den() - r.num(), r.den()};
}

/// One step of the slope-interpolation chain: `ext` and `base` are nested expansions with
/// ext = base ++ tail, value(ext) < value(base), `base` canonical, tail interior terms >= 2
/// and last tail term >= 1.
struct InterpolationMove {
    NegCF ext;
    NegCF base;
};

struct Interpolation {
    std::vector<NegCF> sequence;  // r_0 = r, ..., r_M = r2, every entry canonical
    std::vector<InterpolationMove> moves;  // moves[i] takes sequence[i] to sequence[i+1]
};

/// Increasing chain r = r_0 < r_1 < ... < r_M = r2 in which consecutive slopes are related by
/// dropping a continued fraction tail. The chain truncates r at the first term where the two
/// canonical expansions differ, then raises the last term one unit at a time, using
/// [.., a] = [.., a+1, 1] to step into the next position of r2's expansion.
inline Interpolation interpolate_slopes(const PosRational& r, const PosRational& r2) {
    if (!(r < r2)) throw std::invalid_argument("interpolation needs r < r2, got " + r.str() + " and " + r2.str());
    const NegCF a = expand_neg_cf(r);
    const NegCF b = expand_neg_cf(r2);

    std::size_t m = 0;
    while (m < a.size() && m < b.size() && a[m] == b[m]) ++m;

    Interpolation out;
    out.sequence.push_back(a);

    if (m == b.size()) {
        // b is a proper prefix of a: a single truncation.
        out.moves.push_back({a, b});
        out.sequence.push_back(b);
        return out;
    }
    if (m == a.size()) throw std::logic_error("expansion of the smaller slope is a prefix of the larger one");

    std::vector<Integer> prefix(b.terms().begin(), b.terms().begin() + static_cast<std::ptrdiff_t>(m));
    auto state = [&](const Integer& last) {
        std::vector<Integer> t = prefix;
        t.push_back(last);
        return NegCF(std::move(t));
    };

    std::size_t j = m;
    Integer x = a[m];
    NegCF truncated = state(x);
    if (!(truncated == a)) {
        out.moves.push_back({a, truncated});
        out.sequence.push_back(truncated);
    }

    const std::size_t last = b.size() - 1;
    while (!(j == last && x == b[j])) {
        if (j < last && x == b[j] - 1) {
            // [.., b_j - 1] = [.., b_j, 1]: same value, move to the next position.
            prefix.push_back(b[j]);
            ++j;
            x = 1;
            continue;
        }
        ++x;
        NegCF next = state(x);
        out.moves.push_back({next.appended({Integer(1)}), next});
        out.sequence.push_back(std::move(next));
    }
    return out;
}

inline std::vector<NegCF> interpolation_sequence(const PosRational& r, const PosRational& r2) {
    return interpolate_slopes(r, r2).sequence;
}

}  // namespace slt
