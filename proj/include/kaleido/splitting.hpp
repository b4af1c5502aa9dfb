#pragma once

#include <set>

#include "partition.hpp"

namespace kaleido {

enum class RelPosition { parallel, orthogonal, neither };

inline const char* to_string(RelPosition p) {
    switch (p) {
        case RelPosition::parallel: return "parallel";
        case RelPosition::orthogonal: return "orthogonal";
        default: return "neither";
    }
}

// Position of configuration k against a refinement pair e <= f (e the finer):
// with [k]_e the union of e-classes meeting k,
//   parallel:    [k]_e meets every f-class of a point of k fully,
//   orthogonal:  [k]_e cuts it down to exactly the e-class.
// When both hold (degenerate cases such as e == f) parallel is reported.
inline RelPosition relative_position(const Configuration& k, const Partition& e,
                                     const Partition& f) {
    require(e.points() == f.points(), "partitions live on different spaces");
    require(e.refines(f), "first partition must refine the second");
    Configuration ks = normalized(k);
    require(!ks.empty(), "configuration must be non-empty");
    require(ks.front() >= 0 && ks.back() < e.points(), "configuration point out of range");

    std::vector<char> in_ke(e.points(), 0);  // [k]_e as a point set
    {
        std::vector<char> kblock(e.block_count, 0);
        for (int x : ks) kblock[e.block_of[x]] = 1;
        for (int x = 0; x < e.points(); ++x) in_ke[x] = kblock[e.block_of[x]];
    }
    bool parallel = true, orthogonal = true;
    for (int x : ks) {
        for (int y = 0; y < e.points(); ++y) {
            if (f.block_of[y] != f.block_of[x]) continue;  // y ranges over [x]_f
            bool inter = in_ke[y];
            if (inter != true) parallel = false;
            if (inter != (e.block_of[y] == e.block_of[x])) orthogonal = false;
        }
        if (!parallel && !orthogonal) return RelPosition::neither;
    }
    return parallel ? RelPosition::parallel : RelPosition::orthogonal;
}

// An increasing chain of invariant equivalences from discrete to full, with
// the relative position of the configuration at every step.
struct SplittingChain {
    std::vector<Partition> levels;
    std::vector<RelPosition> steps;
};

// Searches the congruence lattice for a chain witnessing that k is splittable:
// consecutive levels strictly refine and k is parallel or orthogonal at each
// step.  Returns the shortest chain, and the lexicographically least one
// (successive levels compared in canonical partition order) among those.
inline std::optional<SplittingChain> is_splittable(const GSpace& space, const Configuration& k,
                                                   const std::vector<Partition>& lattice) {
    const int m = static_cast<int>(lattice.size());
    const int INF = 1 << 29;
    Partition full = Partition::full(space.points);
    std::vector<int> dist(m, INF);
    // lattice is sorted fine-to-coarse, so successors always lie to the right
    for (int i = m - 1; i >= 0; --i) {
        if (lattice[i] == full) {
            dist[i] = 0;
            continue;
        }
        for (int j = i + 1; j < m; ++j) {
            if (dist[j] == INF || !lattice[i].refines(lattice[j])) continue;
            if (relative_position(k, lattice[i], lattice[j]) == RelPosition::neither) continue;
            dist[i] = std::min(dist[i], 1 + dist[j]);
        }
    }
    int start = -1;
    Partition discrete = Partition::discrete(space.points);
    for (int i = 0; i < m; ++i)
        if (lattice[i] == discrete) start = i;
    if (start < 0 || dist[start] >= INF) return std::nullopt;

    SplittingChain chain;
    chain.levels.push_back(lattice[start]);
    int cur = start;
    while (dist[cur] > 0) {
        for (int j = cur + 1; j < m; ++j) {  // canonical order makes this lexicographically least
            if (dist[j] != dist[cur] - 1 || !lattice[cur].refines(lattice[j])) continue;
            RelPosition pos = relative_position(k, lattice[cur], lattice[j]);
            if (pos == RelPosition::neither) continue;
            chain.steps.push_back(pos);
            chain.levels.push_back(lattice[j]);
            cur = j;
            break;
        }
    }
    return chain;
}

inline std::optional<SplittingChain> is_splittable(const GSpace& space, const Configuration& k) {
    return is_splittable(space, k, congruences(space));
}

namespace detail {

// maximal chains of the lattice from full down to discrete (each step a cover)
inline std::vector<std::vector<int>> maximal_chains(const std::vector<Partition>& lattice) {
    const int m = static_cast<int>(lattice.size());
    // covers[i]: indices j with lattice[j] strictly refining lattice[i], nothing between
    std::vector<std::vector<int>> covers(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j || !lattice[j].refines(lattice[i])) continue;
            bool covered = true;
            for (int t = 0; t < m && covered; ++t)
                if (t != i && t != j && lattice[j].refines(lattice[t]) &&
                    lattice[t].refines(lattice[i]))
                    covered = false;
            if (covered) covers[i].push_back(j);
        }
    int top = -1, bottom = -1;
    for (int i = 0; i < m; ++i) {
        if (lattice[i].block_count == 1) top = i;
        if (lattice[i].block_count == lattice[i].points()) bottom = i;
    }
    std::vector<std::vector<int>> chains;
    std::vector<int> cur{top};
    auto rec = [&](auto&& self, int at) -> void {
        if (at == bottom) {
            chains.push_back(cur);
            return;
        }
        for (int j : covers[at]) {
            cur.push_back(j);
            self(self, j);
            cur.pop_back();
        }
    };
    if (top >= 0 && bottom >= 0) rec(rec, top);
    return chains;
}

}  // namespace detail

// Generates every splittable configuration by walking all maximal chains of
// the congruence lattice top-down.  Starting from the whole space, each step
// to a finer level either keeps the full preimage (parallel) or picks one
// finer class inside every current class (orthogonal), over all sections.
inline std::vector<Configuration> generate_splittable(const GSpace& space,
                                                      int cap = Caps{}.congruence_cap) {
    auto lattice = congruences(space);
    if (static_cast<int>(lattice.size()) > cap)
        throw CapExceeded("congruence lattice exceeds the chain enumeration cap");
    std::set<Configuration> out;
    for (const auto& chain : detail::maximal_chains(lattice)) {
        std::set<Configuration> configs;
        Configuration whole(space.points);
        std::iota(whole.begin(), whole.end(), 0);
        configs.insert(whole);
        for (std::size_t step = 1; step < chain.size(); ++step) {
            const Partition& fine = lattice[chain[step]];
            std::set<Configuration> next;
            for (const auto& s : configs) {
                next.insert(s);  // parallel: keep the full preimage
                // orthogonal: one fine block per current block, all sections
                std::map<int, std::vector<int>> fine_blocks;  // fine block id -> points
                const Partition& coarse = lattice[chain[step - 1]];
                std::map<int, std::vector<int>> by_coarse;    // coarse block -> fine block ids
                for (int x : s) fine_blocks[fine.block_of[x]].push_back(x);
                for (const auto& [fb, pts] : fine_blocks)
                    by_coarse[coarse.block_of[pts.front()]].push_back(fb);
                std::vector<std::vector<int>> choices;
                for (auto& [cb, fbs] : by_coarse) choices.push_back(fbs);
                auto emit = [&](auto&& self, std::size_t d, Configuration acc) -> void {
                    if (d == choices.size()) {
                        std::sort(acc.begin(), acc.end());
                        next.insert(std::move(acc));
                        return;
                    }
                    for (int fb : choices[d]) {
                        Configuration acc2 = acc;
                        for (int x : fine_blocks[fb]) acc2.push_back(x);
                        self(self, d + 1, std::move(acc2));
                    }
                };
                emit(emit, 0, {});
            }
            configs = std::move(next);
        }
        out.insert(configs.begin(), configs.end());
    }
    return {out.begin(), out.end()};
}

}  // namespace kaleido
