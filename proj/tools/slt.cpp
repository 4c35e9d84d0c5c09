#include "suites.hpp"

#include "slt/changemaker.hpp"
#include "slt/continued_fraction.hpp"
#include "slt/knot_invariants.hpp"
#include "slt/linear_lattice.hpp"
#include "slt/slope_pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdlib>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace slt;
using json = nlohmann::ordered_json;

namespace {

// Thrown for malformed arguments that CLI11 itself cannot see; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: " + text);
        }
        if (used != item.size()) throw UsageError("not an integer list: " + text);
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

KnotModel parse_knot(const std::string& spec) {
    if (spec == "unknot") return KnotModel::unknot();
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("knot spec must be torus:r,s | alex:a0,a1,... | v:v0,v1,... | unknot");
    const std::string kind = spec.substr(0, colon), body = spec.substr(colon + 1);
    const auto xs = parse_list(body);
    if (kind == "torus") {
        if (xs.size() != 2) throw UsageError("torus:r,s takes two integers");
        return KnotModel::torus(xs[0], xs[1]);
    }
    if (kind == "alex") return KnotModel::from_alex(AlexPoly(xs));
    if (kind == "v") return KnotModel::from_v(xs);
    throw UsageError("unknown knot kind: " + kind);
}

std::int64_t max_p() {
    const char* env = std::getenv("SLT_MAX_P");
    if (!env || !*env) return 0;
    try {
        const long long v = std::stoll(env);
        if (v <= 0) throw UsageError("SLT_MAX_P must be positive");
        return v;
    } catch (const std::logic_error&) {
        throw UsageError(std::string("SLT_MAX_P is not an integer: ") + env);
    }
}

LinearLattice capped_lattice(const PosRational& slope) {
    const std::int64_t cap = max_p();
    if (cap > 0 && slope.num() > cap)
        throw UsageError("p = " + slope.num().str() + " exceeds SLT_MAX_P = " + std::to_string(cap));
    return LinearLattice(expand_neg_cf(slope));
}

json rats(const std::vector<Rational>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
}

json ints(const std::vector<std::int64_t>& xs) { return json(xs); }

json cf_json(const NegCF& cf) {
    json a = json::array();
    for (const auto& t : cf.terms()) a.push_back(to_i64(t));
    return a;
}

void print(const json& j, bool as_json) {
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

int cmd_contfrac(const PosRational& slope, bool as_json) {
    const NegCF cf = expand_neg_cf(slope);
    const SlopeSplit sp = split_slope(slope);
    std::vector<Integer> bumped = cf.terms();
    bumped.back() += 1;
    const NegCF trailing = NegCF(bumped).appended({Integer(1)});
    json j;
    j["slope"] = slope.str();
    j["cf"] = cf.str();
    j["terms"] = cf_json(cf);
    j["split"] = {{"n", sp.n.str()}, {"rem", sp.rem.str()}, {"q", sp.q.str()}};
    j["trailing_one"] = {{"expansion", trailing.str()}, {"value", evaluate_neg_cf(trailing).str()},
                         {"equal", evaluate_neg_cf(trailing) == slope}};
    print(j, as_json);
    return evaluate_neg_cf(cf) == slope && evaluate_neg_cf(trailing) == slope ? 0 : 1;
}

int cmd_spinc(const PosRational& slope, bool check, bool as_json) {
    const LinearLattice lat = capped_lattice(slope);
    const auto C = enumerate_C(lat), F = build_F(lat);
    json rows = json::array();
    std::map<std::int64_t, std::array<std::int64_t, 3>> tally;  // c0 -> (C, left-full, F)
    for (std::size_t i = 0; i < C.size(); ++i) {
        const bool lf = left_full(lat, C[i]);
        rows.push_back({{"C", C[i].str()}, {"F", F[i].str()}, {"left_full", lf}, {"class", class_key(lat, C[i])}});
        ++tally[C[i][0]][0];
        if (lf) ++tally[C[i][0]][1];
        ++tally[F[i][0]][2];
    }
    const std::int64_t a0 = lat.a(0), q = lat.q(), r = lat.r();
    json counts = json::array();
    bool ok = static_cast<std::int64_t>(C.size()) == lat.p();
    for (std::int64_t c = 2 - a0; c <= a0; c += 2) {
        const auto& t = tally[c];
        counts.push_back({{"c0", c}, {"C", t[0]}, {"left_full", t[1]}, {"F", t[2]}});
        ok = ok && t[0] == (c < a0 ? q : q - r) && t[1] == (c < a0 ? r : 0) && t[2] == ((c == 0 || c == 1) ? q - r : q);
    }
    json j;
    j["slope"] = slope.str();
    j["cf"] = lat.cf().str();
    j["p"] = lat.p();
    j["q"] = q;
    j["r"] = r;
    j["rows"] = rows;
    j["counts"] = counts;
    if (check) j["check"] = ok ? "pass" : "fail";
    print(j, as_json);
    return check && !ok ? 1 : 0;
}

int cmd_dinv(const PosRational& slope, const KnotModel& knot, bool as_json) {
    const LinearLattice lat = capped_lattice(slope);
    const DTable t = build_dtable(slope, knot.v);
    const SumIdentity id = check_sum_identity(slope, knot.v);
    json by_class = json::array();
    for (const auto& cv : t.by_class) by_class.push_back({{"rep", cv.rep.str()}, {"D", to_string(cv.value)}});
    json j;
    j["slope"] = slope.str();
    j["knot"] = knot.name;
    j["V"] = ints(knot.v.values());
    j["by_residue"] = rats(t.by_residue);
    j["by_class"] = by_class;
    j["multisets_equal"] = t.multisets_agree();
    j["sum_identity"] = {{"lhs", to_string(id.lhs)}, {"rhs", to_string(id.rhs)}, {"ok", id.ok()}};
    print(j, as_json);
    return t.multisets_agree() && id.ok() ? 0 : 1;
}

Sigma parse_sigma(const std::string& text) {
    Sigma s = parse_list(text);
    if (!is_changemaker(s)) throw UsageError("not a changemaker vector: " + sigma_str(s));
    return s;
}

int cmd_recover(const PosRational& slope, const Sigma& sigma, bool as_json) {
    const ChangemakerLattice cm = build_changemaker(slope, sigma);
    const TorsionSeq t = recover_torsion(cm);
    const GenusBound gb = genus_bound_B(sigma);
    json j;
    j["slope"] = slope.str();
    j["sigma"] = ints(sigma);
    j["torsion"] = ints(t.values());
    j["torsion_valid"] = t.is_valid();
    if (t.is_valid()) j["alexander"] = alex_from_torsion(t).str();
    j["genus"] = gb.genus;
    j["B"] = gb.B;
    j["B_chain"] = gb.chain_holds;
    print(j, as_json);
    return t.is_valid() && gb.chain_holds ? 0 : 1;
}

int cmd_uniq(const PosRational& slope, const Sigma& sigma, std::size_t max_ambient, bool as_json) {
    const ChangemakerLattice cm = build_changemaker(slope, sigma);
    if (cm.rank() == 0) throw UsageError("complement has rank 0; nothing to compare");
    UniquenessOptions opt;
    opt.max_ambient = max_ambient;
    const UniquenessResult res = uniqueness_search(slope, cm.gram, opt);
    const GenusBound gb = genus_bound_B(sigma);
    json structures = json::array();
    for (const auto& s : res.structures) structures.push_back(ints(s.sigma));
    json j;
    j["slope"] = slope.str();
    j["sigma"] = ints(sigma);
    j["count"] = res.structures.size();
    j["structures"] = structures;
    j["candidates"] = res.candidates;
    j["undecided"] = res.undecided;
    j["B"] = gb.B;
    const bool met = slope.value() >= Rational(gb.B);
    j["hypothesis_met"] = met;
    if (!met) j["note"] = "uniqueness hypothesis not met: " + slope.str() + " < B = " + std::to_string(gb.B);
    print(j, as_json);
    return res.undecided == 0 ? 0 : 1;
}

int cmd_charslope(std::int64_t r, std::int64_t s, const PosRational& slope, bool as_json) {
    const TorusKnot tk(r, s);
    const Thresholds th = charslope_threshold(tk);
    const Rational nz = ni_zhang_threshold(tk);
    json j;
    j["knot"] = tk.str();
    j["slope"] = slope.str();
    j["genus"] = tk.genus();
    j["charslope_threshold"] = to_string(th.charslope);
    j["four_g_plus_4"] = th.four_g_plus_4;
    j["ni_zhang_threshold"] = to_string(nz);
    j["linear_below_quadratic"] = th.charslope < nz;
    j["lspace"] = lspace_zone(tk, slope);
    j["thmA"] = thm_A_zone(tk, slope);
    const bool above = slope.value() >= th.charslope;
    j["characterizing"] = above;
    if (above) {
        const SatelliteChain ch = satellite_chain(tk, slope);
        j["chain"] = {{"lines", rats(ch.lines)}, {"first_failure", ch.first_failure},
                      {"auxiliary", ch.auxiliary}, {"conclusion", ch.conclusion}};
    }
    print(j, as_json);
    return 0;
}

int cmd_verify(const std::string& suite, suites::Bounds b, bool as_json) {
    b.cap = max_p();
    const auto& reg = suites::registry();
    std::vector<std::pair<std::string, suites::Result (*)(const suites::Bounds&)>> run;
    for (const auto& e : reg)
        if (suite == "all" || suite == e.first) run.push_back(e);
    if (run.empty()) throw UsageError("unknown suite: " + suite);
    json results = json::array();
    bool ok = true;
    for (const auto& [name, fn] : run) {
        const suites::Result res = fn(b);
        ok = ok && res.failed == 0 && res.checked > 0;
        results.push_back(res.to_json());
    }
    json j;
    j["suite"] = suite;
    j["quick"] = b.quick;
    j["seed"] = b.seed;
    if (b.cap > 0) j["SLT_MAX_P"] = b.cap;
    j["results"] = results;
    j["pass"] = ok;
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : results)
            std::cout << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << r["suite"].get<std::string>() << "  checked " << r["checked"]
                      << "  failed " << r["failed"] << "  " << r["params"].dump() << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact d-invariant, changemaker and surgery-slope computations."};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    std::string slope_text, knot_text = "unknot", sigma_text, suite;
    bool check = false;
    std::int64_t r = 0, s = 0;
    std::size_t max_ambient = 12;
    suites::Bounds bounds;

    auto* contfrac = app.add_subcommand("contfrac", "Negative continued fraction of p/q");
    contfrac->add_option("slope", slope_text, "p/q")->required();

    auto* spinc = app.add_subcommand("spinc", "Characteristic representatives C and F with count tables");
    spinc->add_option("slope", slope_text, "p/q")->required();
    spinc->add_flag("--check", check, "Assert the count tables");

    auto* dinv = app.add_subcommand("dinv", "Correction terms of p/q surgery, by residue and by class");
    dinv->add_option("slope", slope_text, "p/q")->required();
    dinv->add_option("--knot", knot_text, "torus:r,s | alex:a0,a1,... | v:v0,v1,... | unknot")->capture_default_str();

    auto* recover = app.add_subcommand("recover", "Torsion coefficients from a changemaker vector");
    recover->add_option("slope", slope_text, "p/q")->required();
    recover->add_option("--sigma", sigma_text, "Comma separated changemaker vector")->required();

    auto* uniq = app.add_subcommand("uniq", "All changemaker structures on the complement lattice");
    uniq->add_option("slope", slope_text, "p/q")->required();
    uniq->add_option("--sigma", sigma_text, "Comma separated changemaker vector")->required();
    uniq->add_option("--max-ambient", max_ambient, "Largest ambient rank searched")->capture_default_str();

    auto* charslope = app.add_subcommand("charslope", "Characterizing-slope thresholds for T(r,s)");
    charslope->add_option("r", r)->required();
    charslope->add_option("s", s)->required();
    charslope->add_option("slope", slope_text, "p/q")->required();

    auto* verify = app.add_subcommand("verify", "Run a property suite: counts shortness multiset sum dp-oracle extension identity all");
    verify->add_option("suite", suite)->required();
    verify->add_option("--pmax", bounds.pmax, "Override the suite's main bound");
    verify->add_option("--qmax", bounds.qmax, "Override the suite's denominator bound");
    verify->add_option("--seed", bounds.seed, "Sampling seed")->capture_default_str();
    verify->add_flag("--quick", bounds.quick, "Smaller default bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const bool as_json = format == "json";
    try {
        if (*contfrac) return cmd_contfrac(parse_slope(slope_text), as_json);
        if (*spinc) return cmd_spinc(parse_slope(slope_text), check, as_json);
        if (*dinv) return cmd_dinv(parse_slope(slope_text), parse_knot(knot_text), as_json);
        if (*recover) return cmd_recover(parse_slope(slope_text), parse_sigma(sigma_text), as_json);
        if (*uniq) return cmd_uniq(parse_slope(slope_text), parse_sigma(sigma_text), max_ambient, as_json);
        if (*charslope) return cmd_charslope(r, s, parse_slope(slope_text), as_json);
        if (*verify) return cmd_verify(suite, bounds, as_json);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
