#pragma once

#include "indcat/caterpoly.hpp"
#include "indcat/polynomial.hpp"
#include "indcat/shape.hpp"
#include "indcat/tree.hpp"

#include <json.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace indcat {

// ordered_json keeps insertion order, so identical inputs serialize to
// byte-identical text.
using Json = nlohmann::ordered_json;

// Coefficients travel as decimal strings; JSON numbers would silently lose
// precision past 2^53 in common consumers.
inline Json to_json(const Polynomial& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.str());
    return arr;
}

inline Polynomial polynomial_from_json(const Json& arr) {
    std::vector<BigInt> coeffs;
    for (const auto& el : arr) {
        if (el.is_string()) coeffs.emplace_back(el.get<std::string>());
        else coeffs.emplace_back(el.get<long long>());
    }
    return Polynomial(std::move(coeffs));
}

inline Json to_json(const Tree& t) {
    Json j;
    j["vertex_count"] = t.vertex_count;
    Json edges = Json::array();
    for (auto [u, v] : t.edges) edges.push_back(Json::array({u, v}));
    j["edges"] = std::move(edges);
    return j;
}

inline Json to_json(const CaterpillarSpec& s) {
    Json j;
    j["m"] = s.m;
    j["n"] = s.n();
    return j;
}

inline Json to_json(const ShapeReport& r) {
    Json j;
    j["degree"] = r.degree;
    j["modes"] = r.modes;
    j["unimodal"] = r.unimodal;
    j["strictly_unimodal"] = r.strictly_unimodal;
    Json dom = Json::array();
    for (Dom d : r.dominance) dom.push_back(dom_name(d));
    j["dominance"] = std::move(dom);
    switch (r.balanced) {
        case Balanced::yes: j["balanced"] = true; break;
        case Balanced::no: j["balanced"] = false; break;
        case Balanced::not_applicable: j["balanced"] = nullptr; break;
    }
    j["symmetric"] = r.symmetric;
    return j;
}

inline Json to_json(const Cond3Entry& e) {
    Json j;
    j["lhs"] = e.lhs;
    j["rhs"] = e.rhs;
    j["pass"] = e.pass;
    return j;
}

inline Json to_json(const ConditionReport& r) {
    Json j;
    j["cond1_nondecreasing"] = r.cond1_nondecreasing;
    j["cond2_base"] = r.cond2_base;
    Json c3 = Json::object();
    for (const auto& [k, e] : r.cond3_results) c3[std::to_string(k)] = to_json(e);
    j["cond3_results"] = std::move(c3);
    j["cond3_range"] = Json::array({r.cond3_range.first, r.cond3_range.second});
    Json suff = Json::object();
    for (const auto& [k, ok] : r.sufficient_variant) suff[std::to_string(k)] = ok;
    j["sufficient_variant"] = std::move(suff);
    j["all_pass"] = r.all_pass;
    return j;
}

inline Json to_json(const TStepCheck& c) {
    Json j;
    j["step"] = c.step;
    j["t"] = c.t;
    j["tprime"] = c.tprime;
    j["mu_prev"] = c.mu_prev;
    j["ok"] = c.ok;
    return j;
}

inline Json to_json(const TheoremPrediction& p) {
    Json j;
    j["d"] = p.d;
    j["mode_set"] = p.mode_set;
    return j;
}

// Full instance report for one spec.  For non-decreasing m, k and q come from
// the recursion (already cross-checked against factoring); otherwise they are
// recovered by factoring p_j directly.
inline Json instance_report_json(const CaterpillarSpec& spec, int cond3_lo = 3, int cond3_hi = -1) {
    CaterpillarPolySequence seq = caterpillar_polys(spec);
    Json j;
    j["spec"] = to_json(spec);
    std::vector<int> k;
    std::vector<Polynomial> q;
    if (seq.monotone) {
        k.assign(seq.k.begin(), seq.k.begin() + spec.n());
        q = seq.q;
    } else {
        for (const auto& pj : seq.p) {
            auto [mult, cof] = remove_binomial_factor(pj);
            k.push_back(mult);
            q.push_back(cof);
        }
    }
    j["k"] = k;
    Json parr = Json::array();
    for (const auto& pj : seq.p) parr.push_back(to_json(pj));
    j["p"] = std::move(parr);
    Json qarr = Json::array();
    for (const auto& qj : q) qarr.push_back(to_json(qj));
    j["q"] = std::move(qarr);
    j["conditions"] = to_json(check_conditions(spec, cond3_lo, cond3_hi));
    const int d = std::accumulate(spec.m.begin(), spec.m.end(), 0);
    Json pred;
    pred["d"] = d;
    std::vector<int> mode_set{d / 2};
    if (d % 2 == 1) mode_set.push_back(d / 2 + 1);
    pred["mode_set"] = mode_set;
    j["prediction"] = std::move(pred);
    return j;
}

namespace detail {

inline std::string trim_token(const std::string& tok) {
    std::size_t b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = tok.find_last_not_of(" \t");
    return tok.substr(b, e - b + 1);
}

}  // namespace detail

// "3,4,5" -> {3,4,5}; used for m-vectors and mode lists on the command line.
// Whitespace around elements is ignored.
inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = detail::trim_token(text.substr(pos, comma - pos));
        if (tok.empty()) throw std::invalid_argument("empty element in integer list");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer: " + tok);
        }
        if (used != tok.size()) throw std::invalid_argument("bad integer: " + tok);
        out.push_back(v);
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

// Arbitrary-precision variant for coefficient input.
inline std::vector<BigInt> parse_bigint_list(const std::string& text) {
    std::vector<BigInt> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = detail::trim_token(text.substr(pos, comma - pos));
        if (tok.empty()) throw std::invalid_argument("empty element in coefficient list");
        try {
            out.emplace_back(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coefficient: " + tok);
        }
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

}  // namespace indcat
