#pragma once

#include "indcat/caterpoly.hpp"
#include "indcat/indpoly.hpp"
#include "indcat/serialize.hpp"
#include "indcat/shape.hpp"
#include "indcat/tree.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace indcat {

class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Three-valued outcome: nonconform means predicted and observed disagree,
// hypothesis-not-met means the claim's preconditions fail on this input and
// the comparison was skipped.  Only nonconform counts as a failure.
enum class Verdict { conform, nonconform, hypothesis_not_met };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::conform: return "conform";
        case Verdict::nonconform: return "nonconform";
        case Verdict::hypothesis_not_met: return "hypothesis-not-met";
    }
    throw std::logic_error("verdict_name: unknown value");
}

inline Verdict worst_of(Verdict a, Verdict b) {
    if (a == Verdict::nonconform || b == Verdict::nonconform) return Verdict::nonconform;
    if (a == Verdict::hypothesis_not_met || b == Verdict::hypothesis_not_met)
        return Verdict::hypothesis_not_met;
    return Verdict::conform;
}

struct ConformanceRecord {
    std::string check_name;
    Json inputs;
    Json predicted;
    Json observed;
    Verdict verdict = Verdict::conform;
    std::optional<std::uint64_t> seed;
};

inline Json to_json(const ConformanceRecord& r) {
    Json j;
    j["check_name"] = r.check_name;
    j["inputs"] = r.inputs;
    j["predicted"] = r.predicted;
    j["observed"] = r.observed;
    j["verdict"] = verdict_name(r.verdict);
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

// splitmix64: tiny deterministic generator with a portable definition, so
// seeded fixtures are identical on every platform and standard library.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform enough over [lo, hi] for fixture generation; inclusive bounds.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + next() % (hi - lo + 1);
    }
};

// Deterministically builds a strictly unimodal polynomial whose shape report
// shows exactly the requested dominance side, strictness, and balance.
// Values are assigned along the dominance chain in descending order; for the
// weak classes one adjacent chain pair is tied, which needs a window of
// half-width at least 2.  Indices outside the window continue the descent
// away from it, keeping strict unimodality without touching dominance.
inline Polynomial gen_dominant_poly(std::uint64_t seed, Dom cls, int d, bool balanced) {
    if (d < 2) throw parameter_error("gen_dominant_poly: degree must be at least 2");
    const bool ld = (cls == Dom::strict_ld || cls == Dom::weak_ld);
    const bool strict = (cls == Dom::strict_ld || cls == Dom::strict_rd);
    const int bal_mu = ld ? (d + 1) / 2 : d / 2;
    const int min_half_width = strict ? 1 : 2;
    int mu = -1;
    if (balanced) {
        if (std::min(bal_mu, d - bal_mu) >= min_half_width) mu = bal_mu;
    } else {
        for (int delta = 1; delta <= d && mu < 0; ++delta) {
            for (int cand : {bal_mu - delta, bal_mu + delta}) {
                if (cand < 1 || cand > d - 1) continue;
                if (std::min(cand, d - cand) >= min_half_width) {
                    mu = cand;
                    break;
                }
            }
        }
    }
    if (mu < 0)
        throw parameter_error("gen_dominant_poly: no feasible mode for class with degree " +
                              std::to_string(d));
    const int S = std::min(mu, d - mu);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(d) + 1);
    order.push_back(mu);
    for (int s = 1; s < S; ++s) {
        if (ld) {
            order.push_back(mu - s);
            order.push_back(mu + s);
        } else {
            order.push_back(mu + s);
            order.push_back(mu - s);
        }
    }
    if (ld) {
        order.push_back(mu - S);
        order.push_back(mu + S);
    } else {
        order.push_back(mu + S);
        order.push_back(mu - S);
    }
    for (int i = mu - S - 1; i >= 0; --i) order.push_back(i);
    for (int i = mu + S + 1; i <= d; ++i) order.push_back(i);

    SplitMix64 rng(seed);
    std::vector<BigInt> coeffs(static_cast<std::size_t>(d) + 1);
    long long v = 9LL * (d + 2) + static_cast<long long>(rng.range(1, 5));
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        if (idx > 0 && !(idx == 3 && !strict))
            v -= static_cast<long long>(rng.range(1, 9));
        coeffs[static_cast<std::size_t>(order[idx])] = v;
    }
    Polynomial out{std::move(coeffs)};

    ShapeReport r = analyze_shape(out);
    const Dom weak_side = ld ? Dom::weak_ld : Dom::weak_rd;
    const Dom strict_side = ld ? Dom::strict_ld : Dom::strict_rd;
    const Dom other_weak = ld ? Dom::weak_rd : Dom::weak_ld;
    const bool ok = r.strictly_unimodal && r.modes == std::vector<int>{mu} && r.has(weak_side) &&
                    r.has(strict_side) == strict && !r.has(other_weak) &&
                    r.balanced == (balanced ? Balanced::yes : Balanced::no);
    if (!ok) throw std::logic_error("gen_dominant_poly: self-check failed");
    return out;
}

namespace detail {

struct LemmaHypotheses {
    bool met = false;
    int mu = 0;
    Json failures = Json::array();
};

// Shared preconditions of the product checks: strictly unimodal, balanced,
// at least one weak dominance side, and t no larger than the mode.
inline LemmaHypotheses lemma_hypotheses(const ShapeReport& qs, int t) {
    LemmaHypotheses h;
    if (!qs.strictly_unimodal) h.failures.push_back("q not strictly unimodal");
    if (qs.balanced != Balanced::yes) h.failures.push_back("q not balanced");
    if (!qs.weakly_ld() && !qs.weakly_rd()) h.failures.push_back("q has no weak dominance side");
    if (h.failures.empty()) {
        h.mu = qs.modes[0];
        if (t > h.mu) h.failures.push_back("t exceeds mode");
    }
    h.met = h.failures.empty();
    return h;
}

}  // namespace detail

// Multiplying by (1+x)^t shifts the mode by t/2 and, for odd t, swaps the
// dominance side.  Predicted per source side: even t keeps the side with mode
// mu + t/2; odd t sends LD to RD at mu + (t-1)/2 and RD to LD at
// mu + (t+1)/2.  Strict dominance of q demands strict dominance of the
// product; weak demands weak.
inline ConformanceRecord check_shift_lemma(const Polynomial& q, int t,
                                           std::optional<std::uint64_t> seed = {}) {
    if (t < 1) throw std::invalid_argument("check_shift_lemma: t must be positive");
    ConformanceRecord rec;
    rec.check_name = "shift_lemma";
    rec.seed = seed;
    ShapeReport qs = analyze_shape(q);
    rec.inputs = Json{{"q", to_json(q)}, {"t", t}, {"q_shape", to_json(qs)}};
    auto hyp = detail::lemma_hypotheses(qs, t);
    if (!hyp.met) {
        rec.verdict = Verdict::hypothesis_not_met;
        rec.predicted = Json::object();
        rec.observed = Json{{"hypothesis_failures", hyp.failures}};
        return rec;
    }
    const int mu = hyp.mu;
    Polynomial prod = mul_binomial_power(q, t);
    ShapeReport ps = analyze_shape(prod);

    struct Claim {
        std::string source;
        Dom target;
        int mode;
        bool strict_required;
    };
    std::vector<Claim> claims;
    if (qs.weakly_ld()) {
        Dom target = (t % 2 == 0) ? (qs.strictly_ld() ? Dom::strict_ld : Dom::weak_ld)
                                  : (qs.strictly_ld() ? Dom::strict_rd : Dom::weak_rd);
        int mode = (t % 2 == 0) ? mu + t / 2 : mu + (t - 1) / 2;
        claims.push_back({"LD", target, mode, qs.strictly_ld()});
    }
    if (qs.weakly_rd()) {
        Dom target = (t % 2 == 0) ? (qs.strictly_rd() ? Dom::strict_rd : Dom::weak_rd)
                                  : (qs.strictly_rd() ? Dom::strict_ld : Dom::weak_ld);
        int mode = (t % 2 == 0) ? mu + t / 2 : mu + (t + 1) / 2;
        claims.push_back({"RD", target, mode, qs.strictly_rd()});
    }

    Json pred_claims = Json::array();
    Json obs_claims = Json::array();
    bool all_hold = ps.strictly_unimodal && ps.balanced == Balanced::yes;
    for (const auto& c : claims) {
        Json pc;
        pc["source_side"] = c.source;
        pc["target_class"] = dom_name(c.target);
        pc["mode"] = c.mode;
        pred_claims.push_back(pc);
        const bool holds = ps.has(c.target) && ps.modes == std::vector<int>{c.mode};
        Json oc = pc;
        oc["holds"] = holds;
        obs_claims.push_back(oc);
        all_hold = all_hold && holds;
    }
    rec.predicted = Json{{"balanced", true}, {"strictly_unimodal", true}, {"claims", pred_claims}};
    rec.observed = Json{{"product", to_json(prod)},
                        {"product_shape", to_json(ps)},
                        {"claims", obs_claims}};
    rec.verdict = all_hold ? Verdict::conform : Verdict::nonconform;
    return rec;
}

// Coefficient-difference bounds for the product P = (1+x)^t q, with nu the
// smallest observed mode of P and mu the mode of q.
//   Part (1), k in [mu+1, nu-1]: P_{k+1}-P_k >= q_{k+1}-q_{k+2} and, for
//     j in [k-ceil(t/2)+1, k], >= (C(t,k-j+1)-C(t,k-j))(q_j - q_{j+1}).
//   Part (2), k in [nu, deg(q)-1]: P_k-P_{k+1} >= q_k-q_{k+1} and, for
//     j in [k-floor(t/2), k-1], >= (C(t,k-j)-C(t,k-j-1))(q_j - q_{j+1}).
// Every inequality is evaluated and recorded.  The verdict counts an entry at
// the mode-adjacent edge (Part 1 at k = nu-1, Part 2 at k = nu) only when the
// product's dominance backs that direction of comparison: weak-RD for the
// Part 1 edge, weak-LD for the Part 2 edge.  At the unbacked edge the stated
// bound can fail by exactly a tie amount while everything else holds; such
// entries stay in the report flagged as exempt, never silently dropped.
inline ConformanceRecord check_diff_bounds(const Polynomial& q, int t,
                                           std::optional<std::uint64_t> seed = {}) {
    if (t < 1) throw std::invalid_argument("check_diff_bounds: t must be positive");
    ConformanceRecord rec;
    rec.check_name = "diff_bounds";
    rec.seed = seed;
    ShapeReport qs = analyze_shape(q);
    rec.inputs = Json{{"q", to_json(q)}, {"t", t}, {"q_shape", to_json(qs)}};
    auto hyp = detail::lemma_hypotheses(qs, t);
    if (!hyp.met) {
        rec.verdict = Verdict::hypothesis_not_met;
        rec.predicted = Json::object();
        rec.observed = Json{{"hypothesis_failures", hyp.failures}};
        return rec;
    }
    const int mu = hyp.mu;
    const int dq = q.degree();
    Polynomial prod = mul_binomial_power(q, t);
    ShapeReport ps = analyze_shape(prod);
    const int nu = ps.modes[0];
    const bool nu_expected = (nu == mu + t / 2) || (nu == mu + (t + 1) / 2);

    const auto crow = binomial_row(t);
    auto choose = [&](int i) -> BigInt {
        return (i < 0 || i > t) ? BigInt(0) : crow[static_cast<std::size_t>(i)];
    };

    Json pred_ineqs = Json::array();
    Json obs_ineqs = Json::array();
    bool counted_all_hold = true;
    int exempt_failures = 0;
    const bool part1_edge_backed = ps.strictly_unimodal && ps.weakly_rd();
    const bool part2_edge_backed = ps.strictly_unimodal && ps.weakly_ld();

    auto record_entry = [&](int part, int k, const char* kind, std::optional<int> j,
                            const BigInt& lhs, const BigInt& rhs, bool edge, bool backed) {
        const bool holds = lhs >= rhs;
        const bool counted = !edge || backed;
        Json pe;
        pe["part"] = part;
        pe["k"] = k;
        pe["kind"] = kind;
        if (j) pe["j"] = *j;
        pe["rhs"] = rhs.str();
        pred_ineqs.push_back(pe);
        Json oe = pe;
        oe["lhs"] = lhs.str();
        oe["holds"] = holds;
        oe["edge"] = edge;
        oe["counted"] = counted;
        obs_ineqs.push_back(oe);
        if (counted && !holds) counted_all_hold = false;
        if (!counted && !holds) ++exempt_failures;
    };

    for (int k = mu + 1; k <= nu - 1; ++k) {
        const bool edge = (k == nu - 1);
        const BigInt lhs = prod.coeff(k + 1) - prod.coeff(k);
        record_entry(1, k, "simple", {}, lhs, q.coeff(k + 1) - q.coeff(k + 2), edge,
                     part1_edge_backed);
        for (int j = k - (t + 1) / 2 + 1; j <= k; ++j)
            record_entry(1, k, "binomial", j, lhs,
                         (choose(k - j + 1) - choose(k - j)) * (q.coeff(j) - q.coeff(j + 1)),
                         edge, part1_edge_backed);
    }
    for (int k = nu; k <= dq - 1; ++k) {
        const bool edge = (k == nu);
        const BigInt lhs = prod.coeff(k) - prod.coeff(k + 1);
        record_entry(2, k, "simple", {}, lhs, q.coeff(k) - q.coeff(k + 1), edge,
                     part2_edge_backed);
        for (int j = k - t / 2; j <= k - 1; ++j)
            record_entry(2, k, "binomial", j, lhs,
                         (choose(k - j) - choose(k - j - 1)) * (q.coeff(j) - q.coeff(j + 1)),
                         edge, part2_edge_backed);
    }

    std::vector<int> nu_set{mu + t / 2};
    if (t % 2 == 1) nu_set.push_back(mu + (t + 1) / 2);
    rec.predicted = Json{{"nu_expected", nu_set},
                         {"part1_range", Json::array({mu + 1, nu - 1})},
                         {"part2_range", Json::array({nu, dq - 1})},
                         {"inequalities", pred_ineqs}};
    rec.observed = Json{{"product", to_json(prod)},
                        {"product_shape", to_json(ps)},
                        {"nu", nu},
                        {"nu_in_expected_window", nu_expected},
                        {"inequalities", obs_ineqs},
                        {"exempt_failures", exempt_failures}};
    rec.verdict = counted_all_hold ? Verdict::conform : Verdict::nonconform;
    return rec;
}

// A symmetric unimodal multiplier of even degree t is predicted to act like
// (1+x)^t with even t.  Two separate claims, each checked when its own
// hypotheses hold: (1) for strictly unimodal balanced weakly one-sided q with
// t <= mu, the product keeps the side, is balanced and strictly unimodal with
// mode mu + t/2, strict staying strict; (2) for symmetric unimodal q, the
// product is symmetric and unimodal.
inline ConformanceRecord check_symmetric_multiplier(const Polynomial& q, const Polynomial& p_sym,
                                                    std::optional<std::uint64_t> seed = {}) {
    ConformanceRecord rec;
    rec.check_name = "symmetric_multiplier";
    rec.seed = seed;
    ShapeReport qs = analyze_shape(q);
    ShapeReport ms = analyze_shape(p_sym);
    rec.inputs = Json{{"q", to_json(q)},
                      {"p_sym", to_json(p_sym)},
                      {"q_shape", to_json(qs)},
                      {"p_sym_shape", to_json(ms)}};
    Json failures = Json::array();
    if (!ms.symmetric) failures.push_back("multiplier not symmetric");
    if (!ms.unimodal) failures.push_back("multiplier not unimodal");
    if (ms.degree % 2 != 0) failures.push_back("multiplier degree odd");
    const int t = ms.degree;
    bool claim1 = false;
    if (failures.empty()) {
        claim1 = qs.strictly_unimodal && qs.balanced == Balanced::yes &&
                 (qs.weakly_ld() || qs.weakly_rd()) && t <= qs.modes[0];
    }
    const bool claim2 = failures.empty() && qs.symmetric && qs.unimodal;
    if (!claim1 && !claim2) {
        if (failures.empty()) failures.push_back("q fits neither claim's hypotheses");
        rec.verdict = Verdict::hypothesis_not_met;
        rec.predicted = Json::object();
        rec.observed = Json{{"hypothesis_failures", failures}};
        return rec;
    }

    Polynomial prod = mul(q, p_sym);
    ShapeReport ps = analyze_shape(prod);
    Json pred = Json::object();
    Json obs = Json{{"product", to_json(prod)}, {"product_shape", to_json(ps)}};
    bool all_hold = true;
    if (claim1) {
        const int mu = qs.modes[0];
        const int mode = mu + t / 2;
        Json sides = Json::array();
        bool holds = ps.strictly_unimodal && ps.balanced == Balanced::yes &&
                     ps.modes == std::vector<int>{mode};
        if (qs.weakly_ld()) {
            Dom need = qs.strictly_ld() ? Dom::strict_ld : Dom::weak_ld;
            sides.push_back(dom_name(need));
            holds = holds && ps.has(need);
        }
        if (qs.weakly_rd()) {
            Dom need = qs.strictly_rd() ? Dom::strict_rd : Dom::weak_rd;
            sides.push_back(dom_name(need));
            holds = holds && ps.has(need);
        }
        pred["claim1"] = Json{{"balanced", true},
                              {"strictly_unimodal", true},
                              {"mode", mode},
                              {"classes", sides}};
        obs["claim1_holds"] = holds;
        all_hold = all_hold && holds;
    }
    if (claim2) {
        pred["claim2"] = Json{{"symmetric", true}, {"unimodal", true}};
        const bool holds = ps.symmetric && ps.unimodal;
        obs["claim2_holds"] = holds;
        all_hold = all_hold && holds;
    }
    rec.predicted = pred;
    rec.observed = obs;
    rec.verdict = all_hold ? Verdict::conform : Verdict::nonconform;
    return rec;
}

// All pipelines on one spec: the recursion, the rooted DP, the deletion
// recursion, and exhaustive enumeration when the tree fits under the cap
// (cap 0 disables enumeration entirely).
// Conform needs exact agreement of every computed polynomial plus the
// multiplicity of (1+x) matching the min-recurrence (and the closed formula
// for non-decreasing m).  Branch ties in the min-recurrence can cancel at -1,
// so a mismatch there is a reportable finding, not an arithmetic bug.
inline ConformanceRecord cross_validate_instance(const CaterpillarSpec& spec,
                                                 int cap = default_brute_cap) {
    ConformanceRecord rec;
    rec.check_name = "cross_validate";
    rec.inputs = Json{{"spec", to_json(spec)}, {"cap", cap}};
    CaterpillarPolySequence seq = caterpillar_polys(spec);
    const Polynomial& pn = seq.p.back();
    Tree tree = build_caterpillar(spec);
    Polynomial dp = indpoly_treedp(tree);
    Polynomial del = indpoly_deletion(tree);
    std::optional<Polynomial> brute;
    if (tree.vertex_count <= cap) brute = indpoly_bruteforce(tree, cap);

    bool agree = pn == dp && pn == del && (!brute || pn == *brute);
    auto [mult, cof] = remove_binomial_factor(pn);
    const int minrec = k_exponent_min_recurrence(spec.m).back();
    const bool mult_matches_minrec = (mult == minrec);
    std::optional<int> closed_k;
    bool mult_matches_closed = true;
    if (seq.monotone) {
        closed_k = seq.k[static_cast<std::size_t>(spec.n()) - 1];
        mult_matches_closed = (mult == *closed_k);
    }

    rec.predicted = Json{{"all_methods_agree", true},
                         {"multiplicity_equals_min_recurrence", true},
                         {"multiplicity_equals_closed_k",
                          seq.monotone ? Json(true) : Json(nullptr)}};
    Json methods;
    methods["recursion"] = "computed";
    methods["treedp"] = "computed";
    methods["deletion"] = "computed";
    methods["brute"] = brute ? "computed" : "skipped";
    Json obs;
    obs["vertex_count"] = tree.vertex_count;
    obs["methods"] = methods;
    obs["agree"] = agree;
    obs["polynomial"] = to_json(pn);
    if (!agree) {
        Json mism;
        mism["treedp"] = to_json(dp);
        mism["deletion"] = to_json(del);
        if (brute) mism["brute"] = to_json(*brute);
        obs["mismatches"] = mism;
    }
    obs["multiplicity"] = mult;
    obs["min_recurrence"] = minrec;
    obs["closed_k"] = closed_k ? Json(*closed_k) : Json(nullptr);
    rec.observed = obs;
    rec.verdict = (agree && mult_matches_minrec && mult_matches_closed) ? Verdict::conform
                                                                        : Verdict::nonconform;
    return rec;
}

namespace detail {

struct MaybeShape {
    std::optional<ShapeReport> shape;
    std::string error;
};

inline MaybeShape try_shape(const Polynomial& p) {
    MaybeShape out;
    try {
        out.shape = analyze_shape(p);
    } catch (const std::domain_error& e) {
        out.error = e.what();
    }
    return out;
}

}  // namespace detail

// Full hypothesis-and-conclusion check for one spec.  When the conditions
// fail the verdict is hypothesis-not-met with all shape data still attached.
// When they pass, every q_j must be balanced, strictly unimodal, and weakly
// dominant on some side, except the documented degenerate q_2 (m_1 even,
// m_1 >= 6, m_2 = m_1+1) which must instead be unimodal with consecutive
// modes at (m_2-1)/2 and (m_2+1)/2; p_n must be unimodal with its modes
// inside {floor(d/2), ceil(d/2)}.  The per-step t <= mu flags and the
// (t-1)(t'-1) values are recorded as diagnostics, not scored.
inline ConformanceRecord verify_theorem_instance(const CaterpillarSpec& spec, int cond3_lo = 3,
                                                 int cond3_hi = -1) {
    ConformanceRecord rec;
    rec.check_name = "theorem_instance";
    CaterpillarPolySequence seq = caterpillar_polys(spec);
    ConditionReport conds = check_conditions(spec, cond3_lo, cond3_hi);
    rec.inputs = Json{{"spec", to_json(spec)},
                      {"cond3_range", Json::array({conds.cond3_range.first,
                                                   conds.cond3_range.second})}};
    const int n = spec.n();
    std::vector<Polynomial> q;
    std::vector<int> k;
    if (seq.monotone) {
        q = seq.q;
        k.assign(seq.k.begin(), seq.k.begin() + n);
    } else {
        for (const auto& pj : seq.p) {
            auto [mult, cof] = remove_binomial_factor(pj);
            k.push_back(mult);
            q.push_back(cof);
        }
    }

    const int d = seq.p.back().degree();
    std::vector<int> mode_set{d / 2};
    if (d % 2 == 1) mode_set.push_back(d / 2 + 1);

    Json pred_q = Json::array();
    Json obs_q = Json::array();
    bool q_claims_hold = true;
    for (int j = 1; j <= n; ++j) {
        const bool degenerate = (j == 2) && spec.m[0] % 2 == 0 && spec.m[0] >= 6 &&
                                spec.m[1] == spec.m[0] + 1;
        Json pc;
        pc["j"] = j;
        if (degenerate) {
            const int m2 = spec.m[1];
            pc["degenerate"] = true;
            pc["unimodal"] = true;
            pc["modes"] = std::vector<int>{(m2 - 1) / 2, (m2 + 1) / 2};
        } else {
            pc["degenerate"] = false;
            pc["balanced"] = true;
            pc["strictly_unimodal"] = true;
            pc["weakly_dominant"] = true;
        }
        pred_q.push_back(pc);

        auto ms = detail::try_shape(q[static_cast<std::size_t>(j) - 1]);
        bool holds = false;
        Json oc;
        oc["j"] = j;
        if (!ms.shape) {
            oc["error"] = ms.error;
        } else {
            const ShapeReport& s = *ms.shape;
            oc["shape"] = to_json(s);
            if (degenerate) {
                const int m2 = spec.m[1];
                holds = s.unimodal &&
                        s.modes == std::vector<int>{(m2 - 1) / 2, (m2 + 1) / 2};
            } else {
                holds = s.balanced == Balanced::yes && s.strictly_unimodal &&
                        (s.weakly_ld() || s.weakly_rd());
            }
        }
        oc["holds"] = holds;
        obs_q.push_back(oc);
        q_claims_hold = q_claims_hold && holds;
    }

    ShapeReport pshape = analyze_shape(seq.p.back());
    bool p_claim = pshape.unimodal;
    for (int m : pshape.modes)
        p_claim = p_claim && (m == mode_set.front() || m == mode_set.back());

    Json t_checks = Json::array();
    if (seq.monotone) {
        for (int j = 3; j <= n; ++j) {
            const int t = seq.t_steps[static_cast<std::size_t>(j) - 1];
            const int tp = seq.tprime_steps[static_cast<std::size_t>(j) - 1];
            const int mu_prev = modes_of(q[static_cast<std::size_t>(j) - 2]).front();
            Json c;
            c["step"] = j;
            c["t"] = t;
            c["tprime"] = tp;
            c["mu_prev"] = mu_prev;
            c["t_le_mu"] = (t <= mu_prev);
            c["tt_bound"] = (t - 1) * (tp - 1);
            c["tt_bound_ge_1"] = (t - 1) * (tp - 1) >= 1;
            t_checks.push_back(c);
        }
    }

    rec.predicted = Json{{"conditions_all_pass", true},
                         {"q_claims", pred_q},
                         {"p_claim", Json{{"unimodal", true}, {"modes_subset_of", mode_set}}}};
    rec.observed = Json{{"conditions", to_json(conds)},
                        {"k", k},
                        {"d", d},
                        {"q_claims", obs_q},
                        {"p_shape", to_json(pshape)},
                        {"p_claim_holds", p_claim},
                        {"t_checks", t_checks}};
    if (!conds.all_pass) rec.verdict = Verdict::hypothesis_not_met;
    else rec.verdict = (q_claims_hold && p_claim) ? Verdict::conform : Verdict::nonconform;
    return rec;
}

// q_1 = (1+x)^{m_1} + x against the stated base-case shape: strictly
// unimodal and weakly LD.  Both fail on documented subfamilies: odd m_1 >= 5
// gives tied modes, and m_1 = 3 satisfies the RD window rather than LD.
// Those records carry explicit finding notes instead of being suppressed.
inline std::vector<ConformanceRecord> probe_base_case(int m1_lo = 3, int m1_hi = 12) {
    std::vector<ConformanceRecord> out;
    for (int m1 = m1_lo; m1 <= m1_hi; ++m1) {
        ConformanceRecord rec;
        rec.check_name = "base_case_probe";
        Polynomial q1 = add(Polynomial(binomial_row(m1)), Polynomial{0, 1});
        ShapeReport s = analyze_shape(q1);
        rec.inputs = Json{{"m1", m1}, {"q1", to_json(q1)}};
        rec.predicted = Json{{"strictly_unimodal", true}, {"weakly_LD", true}};
        Json findings = Json::array();
        if (!s.strictly_unimodal)
            findings.push_back("tied modes " + Json(s.modes).dump() +
                               "; claimed strictly unimodal");
        if (s.strictly_unimodal && !s.weakly_ld())
            findings.push_back("satisfies the RD window rule, not LD; claimed weakly LD");
        rec.observed = Json{{"shape", to_json(s)}, {"findings", findings}};
        rec.verdict = (s.strictly_unimodal && s.weakly_ld()) ? Verdict::conform
                                                             : Verdict::nonconform;
        out.push_back(std::move(rec));
    }
    return out;
}

// The seeded pair family used by the product-lemma suites: alternating
// strict sides, degrees 4..12, t drawn in [1, mu].
struct LemmaPair {
    Polynomial q;
    int t = 0;
    std::uint64_t seed = 0;
    Dom cls = Dom::strict_ld;
};

inline LemmaPair make_suite_pair(std::uint64_t seed) {
    LemmaPair p;
    p.seed = seed;
    p.cls = (seed % 2 == 1) ? Dom::strict_rd : Dom::strict_ld;
    const int d = 4 + static_cast<int>(seed % 9);
    p.q = gen_dominant_poly(seed, p.cls, d, true);
    const int mu = modes_of(p.q).front();
    p.t = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(mu));
    return p;
}

struct SweepConfig {
    int m_min = 1;
    int m_max = 4;
    int n_min = 1;
    int n_max = 4;
    bool monotone_only = false;
    int cap = default_brute_cap;
    int cond3_lo = 3;
    int cond3_hi = -1;
    bool use_brute = true;
    int jobs = 1;
    std::string out_path;
    std::string csv_path;
    std::vector<std::vector<int>> explicit_specs;
};

struct SweepRecord {
    std::vector<int> m;
    ConformanceRecord cross;
    ConformanceRecord theorem;
    int mode = 0;   // smallest mode of p_n
    int k = 0;      // multiplicity of (1+x) in p_n
    int d = 0;      // degree of p_n
};

struct SweepResult {
    std::vector<SweepRecord> records;
    Json summary;
};

inline std::vector<std::vector<int>> enumerate_sweep_specs(const SweepConfig& cfg) {
    std::vector<std::vector<int>> specs;
    auto keep = [&](const std::vector<int>& m) {
        return !cfg.monotone_only || std::is_sorted(m.begin(), m.end());
    };
    if (!cfg.explicit_specs.empty()) {
        for (const auto& m : cfg.explicit_specs)
            if (keep(m)) specs.push_back(m);
        return specs;
    }
    if (cfg.m_min > cfg.m_max) return specs;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        std::vector<int> cur(static_cast<std::size_t>(n), cfg.m_min);
        for (;;) {
            if (keep(cur)) specs.push_back(cur);
            int pos = n - 1;
            while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == cfg.m_max) --pos;
            if (pos < 0) break;
            ++cur[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < n; ++i) cur[static_cast<std::size_t>(i)] = cfg.m_min;
        }
    }
    return specs;
}

// Runs cross-validation and the instance check over a spec family.  Workers
// fill a preallocated slot per spec, so record order and the summary are
// independent of the parallelism degree.
inline SweepResult sweep_family(const SweepConfig& cfg) {
    if (cfg.m_min < 1 || cfg.n_min < 1)
        throw std::invalid_argument("sweep_family: bounds must be positive");
    if (cfg.jobs < 1) throw std::invalid_argument("sweep_family: jobs must be positive");
    if (cfg.cap < 1 || cfg.cap > brute_hard_ceiling)
        throw std::invalid_argument("sweep_family: cap out of range");
    std::vector<std::vector<int>> specs = enumerate_sweep_specs(cfg);
    if (cfg.use_brute) {
        int bound = 0;
        for (const auto& m : specs) {
            int vc = static_cast<int>(m.size());
            for (int v : m) vc += v;
            bound = std::max(bound, vc);
        }
        if (bound > cfg.cap)
            throw std::invalid_argument(
                "sweep_family: brute-force oracle selected but vertex bound " +
                std::to_string(bound) + " exceeds cap " + std::to_string(cfg.cap));
    }

    SweepResult result;
    result.records.resize(specs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) return;
            try {
                CaterpillarSpec spec(specs[i]);
                SweepRecord r;
                r.m = specs[i];
                r.cross = cross_validate_instance(spec, cfg.use_brute ? cfg.cap : 0);
                r.theorem = verify_theorem_instance(spec, cfg.cond3_lo, cfg.cond3_hi);
                Polynomial pn = caterpillar_polys(spec).p.back();
                auto [mult, cof] = remove_binomial_factor(pn);
                r.mode = modes_of(pn).front();
                r.k = mult;
                r.d = pn.degree();
                result.records[i] = std::move(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    const int jobs = std::min<std::size_t>(cfg.jobs, std::max<std::size_t>(specs.size(), 1));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    auto tally = [&](auto getter) {
        Json t;
        int conform = 0, nonconform = 0, hnm = 0;
        for (const auto& r : result.records) {
            switch (getter(r).verdict) {
                case Verdict::conform: ++conform; break;
                case Verdict::nonconform: ++nonconform; break;
                case Verdict::hypothesis_not_met: ++hnm; break;
            }
        }
        t["conform"] = conform;
        t["nonconform"] = nonconform;
        t["hypothesis-not-met"] = hnm;
        return t;
    };
    result.summary = Json{{"instances", specs.size()},
                          {"cross_validate",
                           tally([](const SweepRecord& r) -> const ConformanceRecord& {
                               return r.cross;
                           })},
                          {"theorem", tally([](const SweepRecord& r) -> const ConformanceRecord& {
                               return r.theorem;
                           })}};

    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("sweep_family: cannot open " + cfg.out_path);
        for (const auto& r : result.records) {
            Json line = Json{{"spec", Json{{"m", r.m}, {"n", r.m.size()}}},
                             {"cross_validate", to_json(r.cross)},
                             {"theorem", to_json(r.theorem)}};
            out << line.dump() << "\n";
        }
        out << Json{{"summary", result.summary}}.dump() << "\n";
    }
    if (!cfg.csv_path.empty()) {
        std::ofstream csv(cfg.csv_path);
        if (!csv) throw std::runtime_error("sweep_family: cannot open " + cfg.csv_path);
        csv << "spec,verdict,mode,k,d\n";
        for (const auto& r : result.records) {
            std::string spec_text;
            for (std::size_t i = 0; i < r.m.size(); ++i) {
                if (i) spec_text += ',';
                spec_text += std::to_string(r.m[i]);
            }
            csv << '"' << spec_text << '"' << ','
                << verdict_name(worst_of(r.cross.verdict, r.theorem.verdict)) << ',' << r.mode
                << ',' << r.k << ',' << r.d << "\n";
        }
    }
    return result;
}

}  // namespace indcat
