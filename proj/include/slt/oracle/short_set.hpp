#pragma once

// Counting and sampling the short set M without listing it. M is a regular language over the
// coordinates (the only memory needed is whether a tank is open in s and in -s), so suffix
// counts per automaton state give exact sizes and unbiased draws.

#include "slt/linear_lattice.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace slt::oracle {

using Count = unsigned __int128;

namespace detail {

struct Step {
    bool ok;
    int pos, neg;
};

inline Step step(std::int64_t a, std::int64_t c, int pos, int neg) {
    Step st{true, pos, neg};
    if (c == a) {
        if (pos) st.ok = false;
        st.pos = 1;
    } else if (c != a - 2) {
        st.pos = 0;
    }
    if (-c == a) {
        if (neg) st.ok = false;
        st.neg = 1;
    } else if (-c != a - 2) {
        st.neg = 0;
    }
    return st;
}

// suffix[i][state] = number of completions of coordinates i..l from `state` (pos*2 + neg).
inline std::vector<std::array<Count, 4>> suffix_counts(const LinearLattice& lat) {
    const std::size_t n = lat.rank();
    std::vector<std::array<Count, 4>> suf(n + 1);
    suf[n] = {1, 1, 1, 1};
    for (std::size_t i = n; i-- > 0;) {
        for (int st = 0; st < 4; ++st) {
            Count total = 0;
            for (std::int64_t c = -lat.a(i); c <= lat.a(i); c += 2) {
                Step s = step(lat.a(i), c, st >> 1, st & 1);
                if (s.ok) total += suf[i + 1][static_cast<std::size_t>(s.pos * 2 + s.neg)];
            }
            suf[i][static_cast<std::size_t>(st)] = total;
        }
    }
    return suf;
}

}  // namespace detail

inline Count count_M(const LinearLattice& lat) { return detail::suffix_counts(lat)[0][0]; }

inline double to_double(Count c) { return static_cast<double>(c); }

/// Draws `how_many` elements of M, each uniformly (up to 2^-64 bias from the 128-bit draw).
inline std::vector<CharVec> sample_M(const LinearLattice& lat, std::size_t how_many, std::mt19937_64& rng) {
    const auto suf = detail::suffix_counts(lat);
    std::vector<CharVec> out;
    for (std::size_t d = 0; d < how_many; ++d) {
        const Count r0 = (static_cast<Count>(rng()) << 64) | rng();
        Count pick = r0 % suf[0][0];
        std::vector<std::int64_t> c;
        int st = 0;
        for (std::size_t i = 0; i < lat.rank(); ++i) {
            for (std::int64_t v = -lat.a(i); v <= lat.a(i); v += 2) {
                auto s = detail::step(lat.a(i), v, st >> 1, st & 1);
                if (!s.ok) continue;
                const Count here = suf[i + 1][static_cast<std::size_t>(s.pos * 2 + s.neg)];
                if (pick < here) {
                    c.push_back(v);
                    st = s.pos * 2 + s.neg;
                    break;
                }
                pick -= here;
            }
        }
        if (c.size() != lat.rank()) throw std::logic_error("sampling walked off the automaton");
        out.emplace_back(std::move(c));
    }
    return out;
}

}  // namespace slt::oracle
