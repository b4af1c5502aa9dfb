#pragma once

#include <bit>

#include "types.hpp"

namespace kaleido {

// A coloring of the points of a space with colors [0, palette).
struct Coloring {
    int palette = 0;
    std::vector<int> color_of;
    bool operator==(const Coloring&) const = default;
};

// Re-checks a claimed strong coloring against an edge family: right palette,
// every point colored in range, every edge showing each color exactly once.
inline VerifyResult verify_strong_coloring(int n, const std::vector<Configuration>& edges,
                                           int palette, const Coloring& chi) {
    if (chi.palette != palette) return {false, "palette size differs from the required one"};
    if (static_cast<int>(chi.color_of.size()) != n)
        return {false, "coloring does not cover every point"};
    for (int c : chi.color_of)
        if (c < 0 || c >= chi.palette) return {false, "color out of palette range"};
    for (const auto& edge : edges) {
        Mask seen = 0;
        for (int x : edge) {
            if (x < 0 || x >= n) return {false, "edge point out of range"};
            Mask bit = Mask{1} << chi.color_of[x];
            if (seen & bit) return {false, "a translate repeats a color"};
            seen |= bit;
        }
        if (std::popcount(seen) != chi.palette) return {false, "a translate misses a color"};
    }
    return {true, ""};
}

// Strong (rainbow) coloring search: color n points so that every edge of the
// uniform hypergraph receives all `palette` colors injectively.
//
// Points are assigned in index order, smallest color first, and a color k is
// admissible only if k <= number of colors used so far.  That cap enumerates
// exactly one representative per palette permutation — the canonical one —
// so the first complete assignment is the lexicographically least solution
// over all solutions.  A budget of 0 is unlimited; exhausting a positive
// budget yields Status::unknown.
inline Outcome<Coloring> strong_coloring(int n, const std::vector<Configuration>& edges,
                                         int palette, long long budget = 0) {
    require(n >= 1 && n <= 64, "coloring engine supports 1..64 points");
    require(palette >= 1 && palette <= 64, "palette must be in 1..64");
    for (const auto& e : edges)
        require(static_cast<int>(e.size()) == palette, "edge size must equal palette");

    struct EdgeState {
        Mask used = 0;
        int unassigned = 0;
    };
    std::vector<EdgeState> es(edges.size());
    std::vector<std::vector<int>> incident(n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        es[i].unassigned = palette;
        for (int x : edges[i]) {
            require(0 <= x && x < n, "edge point out of range");
            incident[x].push_back(static_cast<int>(i));
        }
    }

    Outcome<Coloring> out;
    std::vector<int> chi(n, -1);
    long long nodes = 0;
    bool exhausted_budget = false;

    auto rec = [&](auto&& self, int p, int used_colors) -> bool {
        if (p == n) {
            out.value = Coloring{palette, chi};
            return true;
        }
        Mask blocked = 0;
        for (int e : incident[p]) blocked |= es[e].used;
        int top = std::min(palette - 1, used_colors);
        for (int c = 0; c <= top; ++c) {
            if (blocked >> c & 1) continue;
            ++nodes;
            if (budget > 0 && nodes > budget) {
                exhausted_budget = true;
                return false;
            }
            bool ok = true;
            for (int e : incident[p]) {
                es[e].used |= Mask{1} << c;
                --es[e].unassigned;
                // an edge must keep enough open points for its missing colors
                if (es[e].unassigned < palette - std::popcount(es[e].used)) ok = false;
            }
            chi[p] = c;
            if (ok && self(self, p + 1, std::max(used_colors, c + 1))) return true;
            chi[p] = -1;
            for (int e : incident[p]) {
                es[e].used &= ~(Mask{1} << c);
                ++es[e].unassigned;
            }
            if (exhausted_budget) return false;
        }
        return false;
    };

    bool found = rec(rec, 0, 0);
    out.nodes = nodes;
    out.status = found ? Status::found : exhausted_budget ? Status::unknown : Status::absent;
    return out;
}

}  // namespace kaleido
