#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace indcat {

// Undirected tree on vertices 0..vertex_count-1.  Construction validates the
// tree axioms: exactly vertex_count-1 edges, endpoints in range, no loops or
// parallel edges, connected.
struct Tree {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    Tree(int vc, std::vector<std::pair<int, int>> es)
        : vertex_count(vc), edges(std::move(es)) {
        validate();
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
        for (auto [u, v] : edges) {
            adj[static_cast<std::size_t>(u)].push_back(v);
            adj[static_cast<std::size_t>(v)].push_back(u);
        }
        return adj;
    }

private:
    void validate() const {
        if (vertex_count <= 0)
            throw std::invalid_argument("Tree: vertex_count must be positive");
        if (edges.size() != static_cast<std::size_t>(vertex_count) - 1)
            throw std::invalid_argument("Tree: a tree on n vertices has exactly n-1 edges");
        std::set<std::pair<int, int>> seen;
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
                throw std::invalid_argument("Tree: edge endpoint out of range");
            if (u == v) throw std::invalid_argument("Tree: self-loop");
            auto key = std::minmax(u, v);
            if (!seen.insert({key.first, key.second}).second)
                throw std::invalid_argument("Tree: duplicate edge");
        }
        // Edge count plus acyclicity-by-count means a single BFS settles
        // connectivity.
        std::vector<int> stack{0};
        std::vector<char> visited(static_cast<std::size_t>(vertex_count), 0);
        visited[0] = 1;
        auto adj = adjacency_unchecked();
        int reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(u)]) {
                if (!visited[static_cast<std::size_t>(w)]) {
                    visited[static_cast<std::size_t>(w)] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != vertex_count)
            throw std::invalid_argument("Tree: graph is not connected");
    }

    std::vector<std::vector<int>> adjacency_unchecked() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
        for (auto [u, v] : edges) {
            adj[static_cast<std::size_t>(u)].push_back(v);
            adj[static_cast<std::size_t>(v)].push_back(u);
        }
        return adj;
    }
};

// Leaf-count vector for a caterpillar: m[i] >= 1 leaves hang off spine
// vertex i.  Spine length n is m.size().
struct CaterpillarSpec {
    std::vector<int> m;

    explicit CaterpillarSpec(std::vector<int> counts) : m(std::move(counts)) {
        if (m.empty())
            throw std::invalid_argument("CaterpillarSpec: spine must be nonempty");
        for (int v : m)
            if (v < 1)
                throw std::invalid_argument("CaterpillarSpec: each spine vertex needs at least one leaf");
    }

    int n() const { return static_cast<int>(m.size()); }

    int vertex_count() const {
        return n() + std::accumulate(m.begin(), m.end(), 0);
    }

    bool is_monotone() const { return std::is_sorted(m.begin(), m.end()); }

    // Spec for the caterpillar on the first j spine vertices.
    CaterpillarSpec prefix(int j) const {
        if (j < 1 || j > n())
            throw std::invalid_argument("CaterpillarSpec: prefix length out of range");
        return CaterpillarSpec(std::vector<int>(m.begin(), m.begin() + j));
    }
};

// Vertices 0..n-1 are the spine in path order; leaves follow, grouped by
// spine vertex in ascending order.
inline Tree build_caterpillar(const CaterpillarSpec& spec) {
    const int n = spec.n();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(spec.vertex_count()) - 1);
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    int next = n;
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < spec.m[static_cast<std::size_t>(i)]; ++l)
            edges.emplace_back(i, next++);
    return Tree(spec.vertex_count(), std::move(edges));
}

}  // namespace indcat
