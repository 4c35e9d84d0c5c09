#pragma once

#include "slt/changemaker.hpp"
#include "slt/knot_invariants.hpp"
#include "slt/linear_lattice.hpp"
#include "slt/oracle/short_set.hpp"
#include "slt/sharp_extension.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace slt::suites {

struct Bounds {
    std::int64_t pmax = 0;  // 0: suite default
    std::int64_t qmax = 0;
    bool quick = false;
    std::uint64_t seed = 1;
    std::int64_t cap = 0;  // SLT_MAX_P, 0 when unset
};

struct Result {
    explicit Result(std::string n) : name(std::move(n)) {}

    std::string name;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures;  // first few only

    void check(bool ok, const std::function<std::string()>& what) {
        ++checked;
        if (ok) return;
        ++failed;
        if (failures.size() < 10) failures.push_back(what());
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["suite"] = name;
        j["params"] = params;
        j["checked"] = checked;
        j["failed"] = failed;
        j["failures"] = failures;
        j["pass"] = failed == 0 && checked > 0;
        return j;
    }
};

inline std::vector<std::pair<std::int64_t, std::int64_t>> slope_grid(std::int64_t pmax, std::int64_t qmax) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t p = 1; p <= pmax; ++p)
        for (std::int64_t q = 1; q <= std::min(p, qmax); ++q)
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    return out;
}

inline std::int64_t pick(std::int64_t given, std::int64_t full, std::int64_t quick, const Bounds& b) {
    std::int64_t v = given > 0 ? given : (b.quick ? quick : full);
    if (b.cap > 0) v = std::min(v, b.cap);
    return v;
}

inline std::string slope_str(std::int64_t p, std::int64_t q) { return std::to_string(p) + "/" + std::to_string(q); }

inline Result counts(const Bounds& b) {
    Result r{"counts"};
    const std::int64_t pmax = pick(b.pmax, 150, 40, b), qmax = pick(b.qmax, 20, 10, b);
    r.params = {{"pmax", pmax}, {"qmax", qmax}};
    for (auto [p, q] : slope_grid(pmax, qmax)) {
        LinearLattice lat(expand_neg_cf(PosRational(p, q)));
        const auto C = enumerate_C(lat);
        r.check(static_cast<std::int64_t>(C.size()) == p, [&] { return slope_str(p, q) + ": |C| != p"; });
        std::map<std::int64_t, std::int64_t> all, lf, fc;
        for (const auto& s : C) {
            ++all[s[0]];
            if (left_full(lat, s)) ++lf[s[0]];
        }
        for (const auto& s : build_F(lat)) ++fc[s[0]];
        const std::int64_t a0 = lat.a(0), rr = lat.r();
        for (std::int64_t c = 2 - a0; c <= a0; c += 2) {
            const bool ok = all[c] == (c < a0 ? q : q - rr) && lf[c] == (c < a0 ? rr : 0) &&
                            fc[c] == ((c == 0 || c == 1) ? q - rr : q);
            r.check(ok, [&] { return slope_str(p, q) + ": count table at c0 = " + std::to_string(c); });
        }
    }
    return r;
}

inline Result shortness(const Bounds& b) {
    Result r{"shortness"};
    const std::int64_t pmax = pick(b.pmax, 60, 25, b), qmax = pick(b.qmax, pmax, pmax, b);
    constexpr double kExhaustive = 1e6;
    constexpr std::size_t kSamples = 500;
    r.params = {{"pmax", pmax}, {"qmax", qmax}, {"seed", b.seed}, {"exhaustive_M_up_to", kExhaustive}, {"samples", kSamples}};
    std::mt19937_64 rng(b.seed);
    std::size_t sampled = 0;
    for (auto [p, q] : slope_grid(pmax, qmax)) {
        LinearLattice lat(expand_neg_cf(PosRational(p, q)));
        const auto best = coset_minimum_norms(lat, std::max<std::int64_t>(pmax, 200));
        const auto C = enumerate_C(lat), F = build_F(lat);
        for (const auto* set : {&C, &F})
            for (const auto& s : *set)
                r.check(norm(lat, s) == best.at(class_key(lat, s)), [&] { return slope_str(p, q) + ": not minimal " + s.str(); });
        SpincTable table(lat);
        auto visit = [&](const CharVec& m) {
            const CharVec t = remove_troughs(lat, m);
            r.check(in_C(lat, t) && class_key(lat, t) == class_key(lat, m) && norm(lat, t) == norm(lat, m) && t == table.canonical(m),
                    [&] { return slope_str(p, q) + ": remove_troughs " + m.str(); });
        };
        if (oracle::to_double(oracle::count_M(lat)) <= kExhaustive) {
            for_each_M(lat, visit);
        } else {
            ++sampled;
            for (const auto& m : oracle::sample_M(lat, kSamples, rng)) visit(m);
        }
    }
    r.params["sampled_lattices"] = sampled;
    return r;
}

inline std::vector<KnotModel> standard_knots() {
    return {KnotModel::unknot(), KnotModel::torus(3, 2), KnotModel::torus(4, 3), KnotModel::torus(5, 2), KnotModel::torus(5, 4)};
}

inline Result multiset(const Bounds& b) {
    Result r{"multiset"};
    const std::int64_t pmax = pick(b.pmax, 120, 40, b), qmax = pick(b.qmax, 6, 4, b);
    r.params = {{"pmax", pmax}, {"qmax", qmax}};
    for (const auto& k : standard_knots())
        for (auto [p, q] : slope_grid(pmax, qmax))
            r.check(build_dtable(PosRational(p, q), k.v).multisets_agree(), [&] { return k.name + " at " + slope_str(p, q); });
    return r;
}

inline Result sum(const Bounds& b) {
    Result r{"sum"};
    const std::int64_t pmax = pick(b.pmax, 120, 40, b), qmax = pick(b.qmax, 6, 4, b);
    r.params = {{"pmax", pmax}, {"qmax", qmax}};
    for (const auto& k : standard_knots())
        for (auto [p, q] : slope_grid(pmax, qmax))
            r.check(check_sum_identity(PosRational(p, q), k.v).ok(), [&] { return k.name + " at " + slope_str(p, q); });
    return r;
}

// Integral slopes n <= nmax with ambient rank <= 6, plus non-integral slopes whose ambient rank fits.
inline Result dp_oracle(const Bounds& b) {
    Result r{"dp-oracle"};
    const std::int64_t nmax = pick(b.pmax, 30, 15, b);
    constexpr std::size_t kAmbient = 6;
    r.params = {{"nmax", nmax}, {"max_ambient", kAmbient}};
    for (std::size_t len = 1; len <= kAmbient; ++len)
        for (std::int64_t n = 1; n <= nmax; ++n)
            for (const Sigma& s : enumerate_changemakers(len, n)) {
                auto cm = build_changemaker(PosRational(n, 1), s);
                r.check(recover_torsion(cm) == recover_torsion_brute(cm), [&] { return std::to_string(n) + " " + sigma_str(s); });
            }
    for (auto [p, q] : slope_grid(nmax, nmax)) {
        if (q == 1) continue;
        PosRational slope(p, q);
        const auto cf = expand_neg_cf(slope);
        std::size_t sidx = 0;
        for (std::size_t k = 1; k < cf.size(); ++k) sidx += static_cast<std::size_t>(to_i64(cf[k])) - 1;
        const std::int64_t n = to_i64(split_slope(slope).n);
        for (std::size_t len = 1; len + sidx + 1 <= kAmbient; ++len)
            for (const Sigma& s : enumerate_changemakers(len, n - 1)) {
                auto cm = build_changemaker(slope, s);
                r.check(recover_torsion(cm) == recover_torsion_brute(cm), [&] { return slope.str() + " " + sigma_str(s); });
            }
    }
    return r;
}

// Every move of every interpolation chain from rs - 1 up to targets p/q <= rs + span.
inline void for_each_move(const Bounds& b, Result& r, const std::function<void(const KnotModel&, const ExtensionPair&)>& f) {
    const std::int64_t span = pick(b.pmax, 10, 4, b), qmax = pick(b.qmax, 4, 3, b);
    r.params = {{"knots", {"T(3,2)", "T(4,3)"}}, {"span", span}, {"qmax", qmax}};
    std::size_t moves = 0;
    for (auto [rr, ss] : {std::pair{3, 2}, std::pair{4, 3}}) {
        const KnotModel k = KnotModel::torus(rr, ss);
        const std::int64_t lo = rr * ss - 1, hi = rr * ss + span;
        std::set<std::pair<std::string, std::string>> seen;
        for (std::int64_t q = 1; q <= qmax; ++q)
            for (std::int64_t p = lo * q + 1; p <= hi * q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                for (const auto& mv : interpolate_slopes(PosRational(lo, 1), PosRational(p, q)).moves) {
                    if (!seen.emplace(mv.base.str(), mv.ext.str()).second) continue;
                    ++moves;
                    f(k, ExtensionPair(mv.base, mv.ext));
                }
            }
    }
    r.params["moves"] = moves;
}

inline Result extension(const Bounds& b) {
    Result r{"extension"};
    for_each_move(b, r, [&](const KnotModel& k, const ExtensionPair& pair) {
        for (const auto& rec : check_extension_d_equality(pair, k.v))
            r.check(rec.ok, [&] { return k.name + " " + pair.ext().cf().str() + " s = " + rec.extension.s.str(); });
    });
    return r;
}

inline Result identity(const Bounds& b) {
    Result r{"identity"};
    for_each_move(b, r, [&](const KnotModel& k, const ExtensionPair& pair) {
        for (const auto& rec : sharpness_identity_check(pair, k.v))
            r.check(rec.ok, [&] { return k.name + " " + pair.ext().cf().str() + " s = " + rec.s.str(); });
    });
    return r;
}

inline const std::vector<std::pair<std::string, Result (*)(const Bounds&)>>& registry() {
    static const std::vector<std::pair<std::string, Result (*)(const Bounds&)>> all{
        {"counts", counts}, {"shortness", shortness}, {"multiset", multiset}, {"sum", sum},
        {"dp-oracle", dp_oracle}, {"extension", extension}, {"identity", identity}};
    return all;
}

}  // namespace slt::suites
