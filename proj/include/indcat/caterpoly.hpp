#pragma once

#include "indcat/polynomial.hpp"
#include "indcat/shape.hpp"
#include "indcat/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace indcat {

// Raised when the recursion output and independent factoring disagree; this
// would falsify the closed formulas, so it is a hard error, not a verdict.
class integrity_error : public std::logic_error {
public:
    explicit integrity_error(const std::string& what) : std::logic_error(what) {}
};

// p_1 = (1+x)^{m_1} + x
// p_2 = (1+x)^{m_1+m_2} + x((1+x)^{m_1} + (1+x)^{m_2})
// p_j = (1+x)^{m_j} p_{j-1} + x(1+x)^{m_{j-1}} p_{j-2}
// Valid for arbitrary positive m, monotone or not.
inline std::vector<Polynomial> p_sequence(const CaterpillarSpec& spec) {
    const auto& m = spec.m;
    const int n = spec.n();
    std::vector<Polynomial> p;
    p.reserve(static_cast<std::size_t>(n));
    p.push_back(add(Polynomial(binomial_row(m[0])), Polynomial{0, 1}));
    if (n >= 2) {
        Polynomial pair_sum = add(Polynomial(binomial_row(m[0])), Polynomial(binomial_row(m[1])));
        p.push_back(add(Polynomial(binomial_row(m[0] + m[1])), mul_x_power(pair_sum)));
    }
    for (int j = 3; j <= n; ++j) {
        Polynomial grow = mul_binomial_power(p[static_cast<std::size_t>(j) - 2], m[static_cast<std::size_t>(j) - 1]);
        Polynomial back = mul_x_power(mul_binomial_power(p[static_cast<std::size_t>(j) - 3], m[static_cast<std::size_t>(j) - 2]));
        p.push_back(add(grow, back));
    }
    return p;
}

// Closed multiplicity formula for non-decreasing m.  Entry j-1 holds k_j for
// j = 1..n+1; k_{n+1} only needs m_1..m_n, so the extra entry is well defined
// and supplies the t-step at the top of the recursion.
// k_1 = 0; k_j = m_1+m_3+... (j even) or m_2+m_4+... (j odd), summing below j.
inline std::vector<int> k_closed_sequence(const CaterpillarSpec& spec) {
    const auto& m = spec.m;
    const int n = spec.n();
    std::vector<int> k(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 2; j <= n + 1; ++j) {
        int start = (j % 2 == 0) ? 1 : 2;
        int sum = 0;
        for (int i = start; i <= j - 1; i += 2) sum += m[static_cast<std::size_t>(i) - 1];
        k[static_cast<std::size_t>(j) - 1] = sum;
    }
    return k;
}

// k_1 = 0, k_2 = min(m_1, m_2), k_j = min(k_{j-1}+m_j, k_{j-2}+m_{j-1}).
// Heuristic for arbitrary m; each branch is the multiplicity contributed by
// one term of the p-recursion, so equality with the true multiplicity can
// fail only through cancellation at -1.
inline std::vector<int> k_exponent_min_recurrence(const std::vector<int>& m) {
    if (m.empty())
        throw std::invalid_argument("k_exponent_min_recurrence: empty sequence");
    std::vector<int> k(m.size(), 0);
    if (m.size() >= 2) k[1] = std::min(m[0], m[1]);
    for (std::size_t j = 3; j <= m.size(); ++j)
        k[j - 1] = std::min(k[j - 2] + m[j - 1], k[j - 3] + m[j - 2]);
    return k;
}

// The full recursion state for one spec.  k, q and the step vectors are
// populated only when m is non-decreasing; the q-recursion and the closed k
// formula are not defined otherwise and callers fall back to
// remove_binomial_factor on p.
struct CaterpillarPolySequence {
    CaterpillarSpec spec;
    bool monotone = false;
    std::vector<Polynomial> p;      // p[j-1] = p_j, j = 1..n
    std::vector<int> k;             // k[j-1] = k_j, j = 1..n+1
    std::vector<Polynomial> q;      // q[j-1] = q_j, j = 1..n
    std::vector<int> t_steps;       // t_steps[j-1] = k_{j+1} - k_j, j = 1..n
    std::vector<int> tprime_steps;  // tprime_steps[j-1] = k_j - k_{j-1}, j = 2..n; entry 0 is 0
};

// q_1 = p_1
// q_2 = (1+x)^{m_2} + x(1+x)^{m_2-m_1} + x
// q_j = (1+x)^{k_{j+1}-k_j} q_{j-1} + x q_{j-2}
// Every q_j is cross-checked against exact factoring of p_j.
inline CaterpillarPolySequence caterpillar_polys(const CaterpillarSpec& spec) {
    CaterpillarPolySequence out{spec, spec.is_monotone(), p_sequence(spec), {}, {}, {}, {}};
    if (!out.monotone) return out;
    const auto& m = spec.m;
    const int n = spec.n();
    out.k = k_closed_sequence(spec);
    out.q.reserve(static_cast<std::size_t>(n));
    out.q.push_back(out.p[0]);
    if (n >= 2) {
        Polynomial mid = mul_x_power(Polynomial(binomial_row(m[1] - m[0])));
        out.q.push_back(add(add(Polynomial(binomial_row(m[1])), mid), Polynomial{0, 1}));
    }
    for (int j = 3; j <= n; ++j) {
        const int t = out.k[static_cast<std::size_t>(j)] - out.k[static_cast<std::size_t>(j) - 1];
        out.q.push_back(add(mul_binomial_power(out.q[static_cast<std::size_t>(j) - 2], t),
                            mul_x_power(out.q[static_cast<std::size_t>(j) - 3])));
    }
    out.t_steps.assign(static_cast<std::size_t>(n), 0);
    out.tprime_steps.assign(static_cast<std::size_t>(n), 0);
    for (int j = 1; j <= n; ++j)
        out.t_steps[static_cast<std::size_t>(j) - 1] =
            out.k[static_cast<std::size_t>(j)] - out.k[static_cast<std::size_t>(j) - 1];
    for (int j = 2; j <= n; ++j)
        out.tprime_steps[static_cast<std::size_t>(j) - 1] =
            out.k[static_cast<std::size_t>(j) - 1] - out.k[static_cast<std::size_t>(j) - 2];
    for (int j = 1; j <= n; ++j) {
        auto [mult, cof] = remove_binomial_factor(out.p[static_cast<std::size_t>(j) - 1]);
        if (mult != out.k[static_cast<std::size_t>(j) - 1] ||
            !(cof == out.q[static_cast<std::size_t>(j) - 1])) {
            throw integrity_error(
                "caterpillar_polys: factoring p_" + std::to_string(j) + " gives multiplicity " +
                std::to_string(mult) + ", closed formula gives " +
                std::to_string(out.k[static_cast<std::size_t>(j) - 1]));
        }
    }
    return out;
}

struct Cond3Entry {
    int lhs = 0;
    int rhs = 0;
    bool pass = false;
};

struct ConditionReport {
    bool cond1_nondecreasing = false;
    bool cond2_base = false;
    std::map<int, Cond3Entry> cond3_results;
    std::pair<int, int> cond3_range{3, 0};   // inclusive; empty when first > second
    std::map<int, bool> sufficient_variant;
    bool all_pass = false;
};

// Hypotheses under which the mode of p_n is predicted central.
//   (1) m_k <= m_{k+1} throughout.
//   (2) 3 <= m_1 < m_2 and m_3 < m_4, parts vacuous when the index exceeds n.
//   (3) per k in range: odd k needs 2(m_1+m_3+...+m_k) < 3(m_2+...+m_{k-1}),
//       even k mirrors the parities.
// The sufficient_variant records m_k <= (opposite-parity sum below k), a
// simpler test implying (3) for large k; both are reported side by side.
// cond3_hi < 0 selects the default upper bound n.
inline ConditionReport check_conditions(const CaterpillarSpec& spec, int cond3_lo = 3, int cond3_hi = -1) {
    const auto& m = spec.m;
    const int n = spec.n();
    if (cond3_hi < 0) cond3_hi = n;
    ConditionReport r;
    r.cond1_nondecreasing = spec.is_monotone();
    bool c2 = m[0] >= 3;
    if (n >= 2) c2 = c2 && m[0] < m[1];
    if (n >= 4) c2 = c2 && m[2] < m[3];
    r.cond2_base = c2;
    const int lo = std::max(cond3_lo, 1);
    const int hi = std::min(cond3_hi, n);
    r.cond3_range = {lo, hi};
    bool c3 = true;
    for (int kk = lo; kk <= hi; ++kk) {
        int odd_sum = 0, even_sum = 0;
        for (int i = 1; i <= kk; i += 2) odd_sum += m[static_cast<std::size_t>(i) - 1];
        for (int i = 2; i <= kk; i += 2) even_sum += m[static_cast<std::size_t>(i) - 1];
        Cond3Entry e;
        if (kk % 2 == 1) {
            e.lhs = 2 * odd_sum;
            e.rhs = 3 * even_sum;
        } else {
            e.lhs = 2 * even_sum;
            e.rhs = 3 * odd_sum;
        }
        e.pass = e.lhs < e.rhs;
        c3 = c3 && e.pass;
        r.cond3_results[kk] = e;
        const int suff_rhs = (kk % 2 == 0) ? odd_sum : even_sum;
        r.sufficient_variant[kk] = m[static_cast<std::size_t>(kk) - 1] <= suff_rhs;
    }
    r.all_pass = r.cond1_nondecreasing && r.cond2_base && c3;
    return r;
}

struct TStepCheck {
    int step = 0;       // recursion index j >= 3
    int t = 0;          // k_{j+1} - k_j
    int tprime = 0;     // k_j - k_{j-1}
    int mu_prev = 0;    // smallest mode of q_{j-1}
    bool ok = false;    // t <= mu_prev
};

struct TheoremPrediction {
    int d = 0;
    std::vector<int> mode_set;       // {floor(d/2), ceil(d/2)}, collapsed when equal
    std::vector<TStepCheck> t_checks;
};

// Predicted degree and mode location for p_n, plus the per-step t <= mu
// hypothesis the shift argument needs at each recursion level.
inline TheoremPrediction predict_theorem(const CaterpillarPolySequence& seq) {
    if (!seq.monotone)
        throw std::invalid_argument("predict_theorem: requires non-decreasing m");
    TheoremPrediction out;
    out.d = std::accumulate(seq.spec.m.begin(), seq.spec.m.end(), 0);
    out.mode_set.push_back(out.d / 2);
    if (out.d % 2 == 1) out.mode_set.push_back(out.d / 2 + 1);
    for (int j = 3; j <= seq.spec.n(); ++j) {
        TStepCheck c;
        c.step = j;
        c.t = seq.t_steps[static_cast<std::size_t>(j) - 1];
        c.tprime = seq.tprime_steps[static_cast<std::size_t>(j) - 1];
        c.mu_prev = modes_of(seq.q[static_cast<std::size_t>(j) - 2]).front();
        c.ok = c.t <= c.mu_prev;
        out.t_checks.push_back(c);
    }
    return out;
}

inline TheoremPrediction predict_theorem(const CaterpillarSpec& spec) {
    return predict_theorem(caterpillar_polys(spec));
}

}  // namespace indcat
