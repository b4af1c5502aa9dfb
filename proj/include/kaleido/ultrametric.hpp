#pragma once

#include "rational.hpp"
#include "splitting.hpp"
#include "transversal.hpp"

namespace kaleido {

// A finite ultrametric space presented as a leveled tree: branching[d] children
// at depth d, leaves at the bottom, distance between leaves given by the scale
// value of their lowest common ancestor's level (deeper = closer).
struct UltrametricSpec {
    std::vector<int> branching;
    std::vector<Rat> scale;  // optional; defaults to 1, 2, ..., depth

    int leaves() const {
        int n = 1;
        for (int b : branching) n *= b;
        return n;
    }

    std::vector<Rat> scale_or_default() const {
        if (!scale.empty()) return scale;
        std::vector<Rat> s(branching.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = Rat(i + 1);
        return s;
    }
};

inline void validate(const UltrametricSpec& spec) {
    require(!spec.branching.empty(), "branching vector must be non-empty");
    long long total = 1;
    for (int b : spec.branching) {
        require(b >= 2, "branching factors must be >= 2");
        total *= b;
        if (total > Caps{}.group_order_cap)
            throw CapExceeded("leaf count exceeds the construction cap");
    }
    if (!spec.scale.empty()) {
        require(spec.scale.size() == spec.branching.size(),
                "scale must have one value per level");
        Rat prev = 0;
        for (const Rat& e : spec.scale) {
            require(e > prev, "scale must be positive and strictly increasing");
            prev = e;
        }
    }
}

// The leveled tree automorphisms: per internal node, one transposition of its
// first two child subtrees and one full cyclic rotation of its children.
// Together these generate the full iterated wreath product.  Leaves are
// indexed by their address in lexicographic order; duplicate generator images
// (binary nodes) are removed.
inline GSpace ultrametric_space(const UltrametricSpec& spec) {
    validate(spec);
    const int depth = static_cast<int>(spec.branching.size());
    const int n = spec.leaves();
    // strides[d] = leaves under one child of a depth-d node
    std::vector<int> strides(depth);
    int acc = 1;
    for (int d = depth - 1; d >= 0; --d) {
        acc *= spec.branching[d];
        strides[d] = acc / spec.branching[d];
    }
    std::vector<std::vector<int>> gens;
    std::set<std::vector<int>> seen;
    int nodes_at_depth = 1;
    for (int d = 0; d < depth; ++d) {
        const int b = spec.branching[d];
        const int span = strides[d] * b;  // leaves under one depth-d node
        for (int v = 0; v < nodes_at_depth; ++v) {
            const int base = v * span;
            auto child_map = [&](const std::vector<int>& image_of_child) {
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                for (int c = 0; c < b; ++c)
                    for (int off = 0; off < strides[d]; ++off)
                        perm[base + c * strides[d] + off] =
                            base + image_of_child[c] * strides[d] + off;
                return perm;
            };
            std::vector<int> swap01(b), rot(b);
            std::iota(swap01.begin(), swap01.end(), 0);
            std::swap(swap01[0], swap01[1]);
            for (int c = 0; c < b; ++c) rot[c] = (c + 1) % b;
            for (const auto& img : {swap01, rot}) {
                auto perm = child_map(img);
                if (seen.insert(perm).second) gens.push_back(perm);
            }
        }
        nodes_at_depth *= b;
    }
    return make_space(n, std::move(gens));
}

// |Aut| of the leveled tree: product over levels of (b_d!)^(nodes at d-1).
inline long long wreath_order(const UltrametricSpec& spec) {
    validate(spec);
    long long order = 1, nodes = 1;
    for (int b : spec.branching) {
        long long fact = 1;
        for (int i = 2; i <= b; ++i) fact *= i;
        for (long long v = 0; v < nodes; ++v) {
            if (__builtin_mul_overflow(order, fact, &order))
                throw CapExceeded("wreath order overflows");
        }
        nodes *= b;
    }
    return order;
}

// Ball partitions at each scale threshold: level i groups leaves agreeing on
// the first depth-i address coordinates, from the discrete partition up to
// the full one.
inline std::vector<Partition> epsilon_chain(const UltrametricSpec& spec) {
    validate(spec);
    const int depth = static_cast<int>(spec.branching.size());
    const int n = spec.leaves();
    std::vector<Partition> chain;
    for (int i = 0; i <= depth; ++i) {
        // blocks = subtrees rooted at depth (depth - i)
        int block_size = 1;
        for (int d = depth - i; d < depth; ++d) block_size *= spec.branching[d];
        std::vector<int> raw(n);
        for (int x = 0; x < n; ++x) raw[x] = x / block_size;
        chain.push_back(Partition::from_block_of(raw));
    }
    return chain;
}

// Exact distance between two leaves: the scale value of the level of their
// lowest common ancestor.  Leaves splitting at the root are farthest apart
// (scale.back()); siblings under one deepest internal node are closest
// (scale.front()); equal leaves are at distance 0.
inline Rat leaf_distance(const UltrametricSpec& spec, int x, int y) {
    validate(spec);
    const int n = spec.leaves();
    require(0 <= x && x < n && 0 <= y && y < n, "leaf index out of range");
    if (x == y) return 0;
    auto scale = spec.scale_or_default();
    const int depth = static_cast<int>(spec.branching.size());
    int block = n;
    for (int d = 0; d < depth; ++d) {
        block /= spec.branching[d];
        if (x / block != y / block) return scale[depth - 1 - d];
    }
    return 0;  // unreachable: distinct leaves differ at some level
}

struct UltraEntry {
    Configuration k;
    Coloring coloring;
    std::vector<RelPosition> steps;
};

struct UltraReport {
    bool all_ok = true;
    std::vector<UltraEntry> kaleidoscopic;
    std::vector<Configuration> violations;  // kaleidoscopic but not split by the chain
    long long subsets_checked = 0;
};

// Sweeps every subset of leaves whose size divides the leaf count (other
// sizes cannot be kaleidoscopical), tests kaleidoscopicity by the coloring
// search, and verifies that each kaleidoscopical subset is split by the
// epsilon chain with a parallel-or-orthogonal disposition at every step.
inline UltraReport verify_ultrametric_splittability(const UltrametricSpec& spec,
                                                    int leaf_cap = Caps{}.leaf_cap) {
    validate(spec);
    const int n = spec.leaves();
    if (n > leaf_cap) throw CapExceeded("leaf count exceeds the sweep cap");
    GSpace space = ultrametric_space(spec);
    auto chain = epsilon_chain(spec);
    UltraReport report;
    for (Mask m = 1; m < (Mask{1} << n); ++m) {
        if (n % std::popcount(m) != 0) continue;
        ++report.subsets_checked;
        Configuration k = config_of(m);
        auto res = find_kaleidoscopic_coloring(space, k);
        if (res.status != Status::found) continue;
        UltraEntry entry{k, *res.value, {}};
        bool ok = true;
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            RelPosition pos = relative_position(k, chain[i], chain[i + 1]);
            entry.steps.push_back(pos);
            if (pos == RelPosition::neither) ok = false;
        }
        if (ok) {
            report.kaleidoscopic.push_back(std::move(entry));
        } else {
            report.all_ok = false;
            report.violations.push_back(k);
        }
    }
    return report;
}

}  // namespace kaleido
