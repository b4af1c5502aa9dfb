#pragma once

#include <numeric>
#include <queue>
#include <set>

#include "types.hpp"

namespace kaleido {

// A finite G-space given by a transitive action: `points` indices acted on by
// the group generated by `generators` (each an image array of a bijection).
struct GSpace {
    int points = 0;
    std::vector<std::vector<int>> generators;
};

inline bool is_permutation(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// Validates bijectivity of every generator and transitivity of the action.
inline GSpace make_space(int points, std::vector<std::vector<int>> generators) {
    require(points >= 1, "space needs at least one point");
    for (const auto& g : generators)
        require(is_permutation(g, points), "generator is not a bijection on the points");
    // transitivity: the orbit of point 0 must exhaust the space
    std::vector<char> vis(points, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& g : generators) {
            if (!vis[g[x]]) {
                vis[g[x]] = 1;
                ++reached;
                stack.push_back(g[x]);
            }
        }
    }
    require(reached == points, "action is not transitive");
    return GSpace{points, std::move(generators)};
}

// Orbit of a configuration under the generated group, sorted lexicographically.
inline std::vector<Configuration> set_orbit(const GSpace& space, const Configuration& start) {
    Configuration s = normalized(start);
    require(!s.empty(), "configuration must be non-empty");
    require(s.front() >= 0 && s.back() < space.points, "configuration point out of range");
    std::set<Configuration> seen{s};
    std::vector<Configuration> todo{s};
    while (!todo.empty()) {
        Configuration cur = std::move(todo.back());
        todo.pop_back();
        for (const auto& g : space.generators) {
            Configuration img(cur.size());
            for (std::size_t i = 0; i < cur.size(); ++i) img[i] = g[cur[i]];
            std::sort(img.begin(), img.end());
            if (seen.insert(img).second) todo.push_back(img);
        }
    }
    return {seen.begin(), seen.end()};
}

struct GroupOrderResult {
    long long order = 0;
    long long stabilizer = 0;  // order of the stabilizer of point 0
};

// Order of the permutation group generated by the space's generators, by
// breadth-first closure under composition.  Throws CapExceeded past the cap.
inline GroupOrderResult group_order(const GSpace& space, long long cap = Caps{}.group_order_cap) {
    std::vector<int> identity(space.points);
    std::iota(identity.begin(), identity.end(), 0);
    std::set<std::vector<int>> elems{identity};
    std::queue<std::vector<int>> todo;
    todo.push(identity);
    while (!todo.empty()) {
        std::vector<int> cur = std::move(todo.front());
        todo.pop();
        for (const auto& g : space.generators) {
            std::vector<int> prod(space.points);
            for (int x = 0; x < space.points; ++x) prod[x] = g[cur[x]];
            if (elems.insert(prod).second) {
                if (static_cast<long long>(elems.size()) > cap)
                    throw CapExceeded("group closure exceeds element cap");
                todo.push(std::move(prod));
            }
        }
    }
    GroupOrderResult r;
    r.order = static_cast<long long>(elems.size());
    for (const auto& p : elems)
        if (p[0] == 0) ++r.stabilizer;
    // orbit-stabilizer check for a transitive action
    if (r.order != r.stabilizer * space.points)
        throw std::logic_error("orbit-stabilizer mismatch in group closure");
    return r;
}

}  // namespace kaleido
