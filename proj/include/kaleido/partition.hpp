#pragma once

#include "gspace.hpp"
#include "types.hpp"

namespace kaleido {

// Small union-find over [0, n).
struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // returns true if two distinct classes were merged
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep least element as root
        parent[b] = a;
        return true;
    }
};

// A partition of [0, n) in canonical form: block ids are assigned in order of
// first appearance, so equal partitions have equal `block_of` vectors.
struct Partition {
    std::vector<int> block_of;
    int block_count = 0;

    static Partition from_block_of(const std::vector<int>& raw) {
        Partition p;
        p.block_of.assign(raw.size(), -1);
        std::vector<int> relabel;
        for (std::size_t x = 0; x < raw.size(); ++x) {
            int id = -1;
            for (std::size_t j = 0; j < x; ++j)
                if (raw[j] == raw[x]) {
                    id = p.block_of[j];
                    break;
                }
            if (id < 0) id = p.block_count++;
            p.block_of[x] = id;
        }
        return p;
    }

    static Partition discrete(int n) {
        Partition p;
        p.block_of.resize(n);
        std::iota(p.block_of.begin(), p.block_of.end(), 0);
        p.block_count = n;
        return p;
    }

    static Partition full(int n) {
        Partition p;
        p.block_of.assign(n, 0);
        p.block_count = n > 0 ? 1 : 0;
        return p;
    }

    int points() const { return static_cast<int>(block_of.size()); }

    std::vector<Configuration> blocks() const {
        std::vector<Configuration> bs(block_count);
        for (int x = 0; x < points(); ++x) bs[block_of[x]].push_back(x);
        return bs;
    }

    bool same_block(int x, int y) const { return block_of[x] == block_of[y]; }

    // true iff every block of *this lies inside a block of `coarser`
    bool refines(const Partition& coarser) const {
        std::vector<int> image(block_count, -1);
        for (int x = 0; x < points(); ++x) {
            int& im = image[block_of[x]];
            if (im < 0) im = coarser.block_of[x];
            else if (im != coarser.block_of[x]) return false;
        }
        return true;
    }

    // finest common coarsening
    Partition join(const Partition& other) const {
        DisjointSet ds(points());
        for (int x = 1; x < points(); ++x)
            for (int y = 0; y < x; ++y)
                if (same_block(x, y) || other.same_block(x, y)) ds.unite(x, y);
        std::vector<int> raw(points());
        for (int x = 0; x < points(); ++x) raw[x] = ds.find(x);
        return from_block_of(raw);
    }

    // coarsest common refinement
    Partition meet(const Partition& other) const {
        std::vector<int> raw(points());
        for (int x = 0; x < points(); ++x)
            raw[x] = block_of[x] * (other.block_count + 1) + other.block_of[x];
        return from_block_of(raw);
    }

    // invariance of the induced equivalence under every generator
    bool invariant_under(const GSpace& space) const {
        for (const auto& g : space.generators)
            for (int x = 0; x < points(); ++x)
                for (int y = x + 1; y < points(); ++y)
                    if (same_block(x, y) != same_block(g[x], g[y])) return false;
        return true;
    }

    bool operator==(const Partition&) const = default;
};

// Canonical order: block count descending (discrete first, full last), then
// lexicographic on the canonical block_of vector.
inline bool partition_less(const Partition& a, const Partition& b) {
    if (a.block_count != b.block_count) return a.block_count > b.block_count;
    return a.block_of < b.block_of;
}

// The finest invariant equivalence identifying x and y: closure of the seed
// pair under the generators, with transitivity maintained by union-find.
inline Partition principal_congruence(const GSpace& space, int x, int y) {
    DisjointSet ds(space.points);
    std::vector<std::pair<int, int>> todo;
    if (ds.unite(x, y)) todo.emplace_back(x, y);
    while (!todo.empty()) {
        auto [a, b] = todo.back();
        todo.pop_back();
        for (const auto& g : space.generators)
            if (ds.unite(g[a], g[b])) todo.emplace_back(g[a], g[b]);
    }
    std::vector<int> raw(space.points);
    for (int p = 0; p < space.points; ++p) raw[p] = ds.find(p);
    return Partition::from_block_of(raw);
}

// All invariant equivalence relations of the space, canonically sorted.
// Every congruence is a join of principal ones, so closing the principal
// congruences under pairwise joins enumerates the whole lattice.
inline std::vector<Partition> congruences(const GSpace& space) {
    std::vector<Partition> lattice{Partition::discrete(space.points)};
    auto add = [&lattice](const Partition& p) {
        if (std::find(lattice.begin(), lattice.end(), p) == lattice.end()) {
            lattice.push_back(p);
            return true;
        }
        return false;
    };
    for (int x = 0; x < space.points; ++x)
        for (int y = x + 1; y < space.points; ++y) add(principal_congruence(space, x, y));
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < lattice.size(); ++i)
            for (std::size_t j = i + 1; j < lattice.size(); ++j)
                if (add(lattice[i].join(lattice[j]))) grew = true;
    }
    std::sort(lattice.begin(), lattice.end(), partition_less);
    return lattice;
}

}  // namespace kaleido
