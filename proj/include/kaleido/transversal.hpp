#pragma once

#include "coloring.hpp"
#include "gspace.hpp"

namespace kaleido {

// true iff t meets every member of the family in exactly one point
inline bool is_transversal(const std::vector<Configuration>& family, const Configuration& t) {
    require(!family.empty(), "family must be non-empty");
    Configuration ts = normalized(t);
    for (const auto& edge : family) {
        int hits = 0;
        for (int x : edge)
            if (std::binary_search(ts.begin(), ts.end(), x)) ++hits;
        if (hits != 1) return false;
    }
    return true;
}

// Searches for a coloring witnessing that `a` is kaleidoscopical: a coloring
// of X with |a| colors whose restriction to every translate in the orbit G[a]
// is bijective.  Distinct-class-size counting forces |a| to divide |X|, so
// other sizes are rejected immediately.
inline Outcome<Coloring> find_kaleidoscopic_coloring(const GSpace& space, const Configuration& a,
                                                     long long budget = 0) {
    Configuration s = normalized(a);
    require(!s.empty(), "configuration must be non-empty");
    if (space.points % static_cast<int>(s.size()) != 0) return {};
    auto edges = set_orbit(space, s);
    return strong_coloring(space.points, edges, static_cast<int>(s.size()), budget);
}

// Re-checks a claimed kaleidoscopical coloring against the orbit of `a`.
inline VerifyResult verify_kaleidoscopic(const GSpace& space, const Configuration& a,
                                         const Coloring& chi) {
    Configuration s = normalized(a);
    if (s.empty()) return {false, "configuration is empty"};
    return verify_strong_coloring(space.points, set_orbit(space, s),
                                  static_cast<int>(s.size()), chi);
}

// Color classes of the found coloring: a partition of X into G[a]-transversals.
inline Outcome<std::vector<Configuration>> transversal_partition(const GSpace& space,
                                                                 const Configuration& a,
                                                                 long long budget = 0) {
    auto res = find_kaleidoscopic_coloring(space, a, budget);
    Outcome<std::vector<Configuration>> out;
    out.status = res.status;
    out.nodes = res.nodes;
    if (res.status == Status::found) {
        const Coloring& chi = *res.value;
        std::vector<Configuration> classes(chi.palette);
        for (int x = 0; x < space.points; ++x) classes[chi.color_of[x]].push_back(x);
        out.value = std::move(classes);
    }
    return out;
}

}  // namespace kaleido
