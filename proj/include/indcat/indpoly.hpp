#pragma once

#include "indcat/polynomial.hpp"
#include "indcat/tree.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace indcat {

// Exhaustive enumeration is opt-in above this size and refused above the
// hard ceiling regardless of configuration.
inline constexpr int default_brute_cap = 22;
inline constexpr int brute_hard_ceiling = 30;

class size_error : public std::runtime_error {
public:
    explicit size_error(const std::string& what) : std::runtime_error(what) {}
};

// Enumerates all 2^n vertex subsets with an incremental independence check:
// a set s is independent iff s minus its lowest vertex v is independent and
// v has no neighbour in the remainder.  Memory is one bit plus one popcount
// tick per subset.
inline Polynomial indpoly_bruteforce(const Tree& t, int cap = default_brute_cap) {
    const int n = t.vertex_count;
    if (cap < 1 || cap > brute_hard_ceiling)
        throw std::invalid_argument("indpoly_bruteforce: cap out of range");
    if (n > cap)
        throw size_error("indpoly_bruteforce: " + std::to_string(n) +
                         " vertices exceeds cap " + std::to_string(cap));
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : t.edges) {
        adj[static_cast<std::size_t>(u)] |= std::uint32_t{1} << v;
        adj[static_cast<std::size_t>(v)] |= std::uint32_t{1} << u;
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<char> indep(static_cast<std::size_t>(total), 0);
    indep[0] = 1;
    std::vector<BigInt> counts(static_cast<std::size_t>(n) + 1, BigInt(0));
    counts[0] = 1;
    for (std::uint64_t s = 1; s < total; ++s) {
        const int v = std::countr_zero(s);
        const std::uint64_t rest = s & (s - 1);
        if (indep[rest] && (adj[static_cast<std::size_t>(v)] & rest) == 0) {
            indep[s] = 1;
            counts[static_cast<std::size_t>(std::popcount(s))] += 1;
        }
    }
    return Polynomial(std::move(counts));
}

namespace detail {

struct Subgraph {
    std::vector<int> verts;                 // original labels, ascending
    std::vector<std::pair<int, int>> edges; // original labels
};

inline std::vector<Subgraph> split_components(const std::vector<int>& verts,
                                              const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> order(verts);
    std::sort(order.begin(), order.end());
    std::vector<int> comp_of(order.empty() ? 0 : order.back() + 1, -1);
    std::vector<std::vector<int>> adj(comp_of.size());
    for (auto [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    int ncomp = 0;
    for (int root : order) {
        if (comp_of[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<int> stack{root};
        comp_of[static_cast<std::size_t>(root)] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(u)]) {
                if (comp_of[static_cast<std::size_t>(w)] == -1) {
                    comp_of[static_cast<std::size_t>(w)] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<Subgraph> comps(static_cast<std::size_t>(ncomp));
    for (int v : order)
        comps[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(v)])].verts.push_back(v);
    for (auto [u, v] : edges)
        comps[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(u)])].edges.emplace_back(u, v);
    return comps;
}

inline Polynomial indpoly_deletion_rec(const Subgraph& g) {
    const std::size_t n = g.verts.size();
    if (g.edges.empty()) {
        // n isolated vertices: (1+x)^n.
        return Polynomial(binomial_row(static_cast<int>(n)));
    }
    // Pivot on a maximum-degree vertex, smallest label on ties.
    std::vector<int> deg(static_cast<std::size_t>(g.verts.back()) + 1, 0);
    for (auto [u, v] : g.edges) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    int pivot = g.verts.front();
    for (int v : g.verts)
        if (deg[static_cast<std::size_t>(v)] > deg[static_cast<std::size_t>(pivot)]) pivot = v;

    std::vector<char> drop_without(static_cast<std::size_t>(g.verts.back()) + 1, 0);
    std::vector<char> drop_with(drop_without);
    drop_without[static_cast<std::size_t>(pivot)] = 1;
    drop_with[static_cast<std::size_t>(pivot)] = 1;
    for (auto [u, v] : g.edges) {
        if (u == pivot) drop_with[static_cast<std::size_t>(v)] = 1;
        if (v == pivot) drop_with[static_cast<std::size_t>(u)] = 1;
    }

    auto restrict = [&](const std::vector<char>& drop) {
        std::vector<int> verts;
        std::vector<std::pair<int, int>> edges;
        for (int v : g.verts)
            if (!drop[static_cast<std::size_t>(v)]) verts.push_back(v);
        for (auto [u, v] : g.edges)
            if (!drop[static_cast<std::size_t>(u)] && !drop[static_cast<std::size_t>(v)])
                edges.emplace_back(u, v);
        return Subgraph{std::move(verts), std::move(edges)};
    };

    auto poly_of = [&](const Subgraph& sg) {
        if (sg.verts.empty()) return Polynomial{1};
        Polynomial acc{1};
        for (const auto& comp : split_components(sg.verts, sg.edges))
            acc = mul(acc, indpoly_deletion_rec(comp));
        return acc;
    };

    // I(G) = I(G - v) + x * I(G - N[v]).
    return add(poly_of(restrict(drop_without)),
               mul_x_power(poly_of(restrict(drop_with))));
}

}  // namespace detail

// Vertex deletion recursion; exponential in general but exercises a code
// path independent of both enumeration and the tree DP.
inline Polynomial indpoly_deletion(const Tree& t) {
    std::vector<int> verts(static_cast<std::size_t>(t.vertex_count));
    for (int i = 0; i < t.vertex_count; ++i) verts[static_cast<std::size_t>(i)] = i;
    Polynomial acc{1};
    for (const auto& comp : detail::split_components(verts, t.edges))
        acc = mul(acc, detail::indpoly_deletion_rec(comp));
    return acc;
}

// Rooted DP at vertex 0: A_v counts independent sets of the subtree with v
// excluded permitted, restricted to v not chosen is B-complement; concretely
// A_v = prod(A_c + B_c) over children (v not in the set) and
// B_v = x * prod(A_c) (v in the set, children excluded).
inline Polynomial indpoly_treedp(const Tree& t) {
    const int n = t.vertex_count;
    auto adj = t.adjacency();
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<int> stack{0};
    parent[0] = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (int w : adj[static_cast<std::size_t>(u)])
            if (parent[static_cast<std::size_t>(w)] == -1) {
                parent[static_cast<std::size_t>(w)] = u;
                stack.push_back(w);
            }
    }
    std::vector<Polynomial> a(static_cast<std::size_t>(n), Polynomial{1});
    std::vector<Polynomial> b(static_cast<std::size_t>(n), Polynomial{0, 1});
    for (std::size_t i = order.size(); i-- > 0;) {
        int v = order[i];
        if (v == 0) break;
        int p = parent[static_cast<std::size_t>(v)];
        a[static_cast<std::size_t>(p)] =
            mul(a[static_cast<std::size_t>(p)],
                add(a[static_cast<std::size_t>(v)], b[static_cast<std::size_t>(v)]));
        b[static_cast<std::size_t>(p)] =
            mul(b[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(v)]);
    }
    return add(a[0], b[0]);
}

}  // namespace indcat
