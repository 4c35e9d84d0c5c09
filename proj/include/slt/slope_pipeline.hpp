#pragma once

#include "slt/changemaker.hpp"
#include "slt/knot_invariants.hpp"
#include "slt/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace slt {

class TorusKnot {
public:
    TorusKnot(std::int64_t r, std::int64_t s) : r_(r), s_(s) {
        if (!(r > s && s > 1)) throw std::invalid_argument("torus knot needs r > s > 1");
        if (std::gcd(r, s) != 1) throw std::invalid_argument("torus knot parameters must be coprime");
    }
    std::int64_t r() const { return r_; }
    std::int64_t s() const { return s_; }
    std::int64_t genus() const { return (r_ - 1) * (s_ - 1) / 2; }
    std::string str() const { return "T(" + std::to_string(r_) + "," + std::to_string(s_) + ")"; }

private:
    std::int64_t r_, s_;
};

struct Thresholds {
    Rational charslope;          // 43/4 (rs - r - s)
    std::int64_t two_g_minus_1;  // rs - r - s
    std::int64_t four_g_plus_4;
};

/// The hyperbolic-slope constant 10.75 enters only as the exact rational 43/4.
inline const Rational kHyperbolicConstant{43, 4};

inline Thresholds charslope_threshold(const TorusKnot& tk) {
    const std::int64_t m = tk.r() * tk.s() - tk.r() - tk.s();
    return {kHyperbolicConstant * m, m, 4 * tk.genus() + 4};
}

inline Rational ni_zhang_threshold(const TorusKnot& tk) {
    return Rational(30 * (tk.r() * tk.r() - 1) * (tk.s() * tk.s() - 1), 67);
}

inline bool lspace_zone(const TorusKnot& tk, const PosRational& slope) { return slope.value() >= Rational(2 * tk.genus() - 1); }

/// slope >= 4g + 4 and slope > rs - 1 (beyond the lens space surgery).
inline bool thm_A_zone(const TorusKnot& tk, const PosRational& slope) {
    return slope.value() >= Rational(4 * tk.genus() + 4) && slope.value() > Rational(tk.r() * tk.s() - 1);
}

struct SatelliteChain {
    std::vector<Rational> lines;  // p - rsq, then the four right-hand sides
    std::vector<bool> steps;      // lines[i] >= lines[i+1] (the third step is an equality)
    bool auxiliary = false;       // rs - r - s >= max{r,s} - 2, r + s <= 2 max{r,s} - 1, q >= 1
    int first_failure = -1;       // index into steps, or -1
    bool conclusion = false;      // p - rsq >= max{r,s}
};

/// Checks the exceptional-fibre inequality chain line by line for p/q >= 43/4 (2g - 1).
inline SatelliteChain satellite_chain(const TorusKnot& tk, const PosRational& slope) {
    const Thresholds th = charslope_threshold(tk);
    if (slope.value() < th.charslope)
        throw std::invalid_argument("satellite chain needs p/q >= " + to_string(th.charslope) + ", got " + slope.str());
    const Rational p(slope.num()), q(slope.den());
    const std::int64_t r = tk.r(), s = tk.s(), mx = std::max(r, s);
    const Rational nine_75(39, 4), seven_75(31, 4), eighteen_5(37, 2);
    SatelliteChain out;
    out.lines = {
        p - Rational(r * s) * q,
        nine_75 * q * (r * s - r - s) - q * (r + s),
        nine_75 * (mx - 2) - (2 * mx - 1),
        seven_75 * mx - eighteen_5,
        Rational(mx),
    };
    out.steps = {out.lines[0] >= out.lines[1], out.lines[1] >= out.lines[2], out.lines[2] == out.lines[3], out.lines[3] >= out.lines[4]};
    for (std::size_t i = 0; i < out.steps.size(); ++i)
        if (!out.steps[i]) {
            out.first_failure = static_cast<int>(i);
            break;
        }
    out.auxiliary = (r * s - r - s >= mx - 2) && (r + s <= 2 * mx - 1) && q >= 1;
    out.conclusion = out.lines[0] >= out.lines[4];
    return out;
}

/// Changemaker tuples with positive entries and sum of squares p, any length.
inline std::vector<Sigma> positive_changemakers(std::int64_t p) {
    std::vector<Sigma> out;
    Sigma cur;
    std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t left, std::int64_t prefix) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        const std::int64_t lo = cur.empty() ? 1 : cur.back();
        const std::int64_t hi = cur.empty() ? 1 : prefix + 1;
        for (std::int64_t v = lo; v <= hi && v * v <= left; ++v) {
            cur.push_back(v);
            rec(left - v * v, prefix + v);
            cur.pop_back();
        }
    };
    rec(p, 0);
    return out;
}

struct PipelineRun {
    Sigma seed;                      // a changemaker vector whose recovered torsion is that of the knot
    std::vector<Sigma> structures;   // every changemaker structure on the same lattice
    std::vector<bool> torsion_match; // per structure: recovered torsion equals the knot's
    std::size_t undecided = 0;
    bool ok() const {
        return undecided == 0 && !structures.empty() && std::all_of(torsion_match.begin(), torsion_match.end(), [](bool b) { return b; });
    }
};

/// Integer-slope shadow of the Alexander-polynomial uniqueness argument: every changemaker
/// structure on a complement that reproduces the knot's torsion must reproduce it again.
inline std::vector<PipelineRun> thm_A_pipeline(const TorusKnot& tk, std::int64_t p, const UniquenessOptions& opt) {
    const TorsionSeq target = torsion_from_alex(torus_alexander(tk.r(), tk.s()));
    const PosRational slope(p, 1);
    std::vector<PipelineRun> runs;
    for (const Sigma& sigma : positive_changemakers(p)) {
        ChangemakerLattice cm = build_changemaker(slope, sigma);
        if (!(recover_torsion(cm) == target) || cm.gram.empty()) continue;
        PipelineRun run;
        run.seed = sigma;
        UniquenessResult u = uniqueness_search(slope, cm.gram, opt);
        run.undecided = u.undecided;
        for (const auto& found : u.structures) {
            run.structures.push_back(found.sigma);
            run.torsion_match.push_back(recover_torsion(found) == target);
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

}  // namespace slt
