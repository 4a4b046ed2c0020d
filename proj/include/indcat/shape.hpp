#pragma once

#include "indcat/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace indcat {

enum class Dom { strict_ld, weak_ld, strict_rd, weak_rd };

inline std::string dom_name(Dom d) {
    switch (d) {
        case Dom::strict_ld: return "strict-LD";
        case Dom::weak_ld: return "weak-LD";
        case Dom::strict_rd: return "strict-RD";
        case Dom::weak_rd: return "weak-RD";
    }
    throw std::logic_error("dom_name: unknown value");
}

enum class Balanced { no, yes, not_applicable };

struct ShapeReport {
    int degree = 0;
    std::vector<int> modes;             // ascending argmax indices
    bool unimodal = false;
    bool strictly_unimodal = false;
    std::vector<Dom> dominance;         // empty unless strictly unimodal
    Balanced balanced = Balanced::not_applicable;
    bool symmetric = false;

    bool has(Dom d) const {
        for (Dom x : dominance)
            if (x == d) return true;
        return false;
    }
    bool weakly_ld() const { return has(Dom::weak_ld); }
    bool weakly_rd() const { return has(Dom::weak_rd); }
    bool strictly_ld() const { return has(Dom::strict_ld); }
    bool strictly_rd() const { return has(Dom::strict_rd); }
};

// Argmax indices of the coefficient sequence, ascending.
inline std::vector<int> modes_of(const Polynomial& p) {
    if (p.is_zero())
        throw std::domain_error("modes_of: zero polynomial has no mode");
    for (const auto& c : p.coeffs())
        if (c < 0)
            throw std::domain_error("modes_of: negative coefficient");
    BigInt mx = p.coeffs()[0];
    for (const auto& c : p.coeffs())
        if (c > mx) mx = c;
    std::vector<int> modes;
    for (int i = 0; i <= p.degree(); ++i)
        if (p.coeff(i) == mx) modes.push_back(i);
    return modes;
}

namespace detail {

// One dominance side of the interlacing chain around the mode, written as a
// pairwise window walk.  With S = min(mu, d - mu) the near side at offset s
// must dominate the far side, then the far side must dominate the next near
// term; the closing far-vs-far comparison is non-strict even in the strict
// variant.  S = 0 leaves every comparison vacuous.
inline bool dominance_chain(const Polynomial& b, int mu, int d, bool ld, bool strict) {
    const int S = std::min(mu, d - mu);
    auto near = [&](int s) { return ld ? b.coeff(mu - s) : b.coeff(mu + s); };
    auto far = [&](int s) { return ld ? b.coeff(mu + s) : b.coeff(mu - s); };
    auto ge = [&](const BigInt& x, const BigInt& y) { return strict ? x > y : x >= y; };
    for (int s = 1; s < S; ++s) {
        if (!ge(near(s), far(s))) return false;
        if (!ge(far(s), near(s + 1))) return false;
    }
    if (S >= 1 && !(near(S) >= far(S))) return false;
    return true;
}

}  // namespace detail

// Full classification of a nonnegative coefficient sequence.  Dominance and
// balance are only meaningful for strictly unimodal sequences; for the rest,
// dominance stays empty and balanced reads not_applicable.
inline ShapeReport analyze_shape(const Polynomial& p) {
    ShapeReport r;
    r.degree = p.degree();
    r.modes = modes_of(p);
    const int d = r.degree;

    bool descended = false;
    r.unimodal = true;
    for (int i = 0; i < d; ++i) {
        if (p.coeff(i) > p.coeff(i + 1)) descended = true;
        else if (p.coeff(i) < p.coeff(i + 1) && descended) {
            r.unimodal = false;
            break;
        }
    }

    r.strictly_unimodal = r.modes.size() == 1;
    if (r.strictly_unimodal) {
        const int mu = r.modes[0];
        for (int i = 0; i < mu; ++i)
            if (!(p.coeff(i) < p.coeff(i + 1))) r.strictly_unimodal = false;
        for (int i = mu; i < d; ++i)
            if (!(p.coeff(i) > p.coeff(i + 1))) r.strictly_unimodal = false;
    }

    r.symmetric = true;
    for (int i = 0; i <= d; ++i)
        if (p.coeff(i) != p.coeff(d - i)) {
            r.symmetric = false;
            break;
        }

    if (r.strictly_unimodal) {
        const int mu = r.modes[0];
        const bool sld = detail::dominance_chain(p, mu, d, true, true);
        const bool wld = detail::dominance_chain(p, mu, d, true, false);
        const bool srd = detail::dominance_chain(p, mu, d, false, true);
        const bool wrd = detail::dominance_chain(p, mu, d, false, false);
        if (sld) r.dominance.push_back(Dom::strict_ld);
        if (wld) r.dominance.push_back(Dom::weak_ld);
        if (srd) r.dominance.push_back(Dom::strict_rd);
        if (wrd) r.dominance.push_back(Dom::weak_rd);
        if (r.dominance.empty()) {
            r.balanced = Balanced::not_applicable;
        } else {
            const bool bal_ld = wld && mu == (d + 1) / 2;
            const bool bal_rd = wrd && mu == d / 2;
            r.balanced = (bal_ld || bal_rd) ? Balanced::yes : Balanced::no;
        }
    }
    return r;
}

}  // namespace indcat
