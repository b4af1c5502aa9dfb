#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "kaleido/factorization.hpp"
#include "kaleido/transversal.hpp"

using namespace kaleido;

namespace {

// Independent decision oracle: plain first-fail backtracking over the points
// in index order, no canonical-color restriction, no budget.
bool brute_kaleidoscopic(const GSpace& space, const Configuration& a) {
    Configuration s = normalized(a);
    int palette = static_cast<int>(s.size());
    if (space.points % palette != 0) return false;
    auto translates = set_orbit(space, s);
    std::vector<std::vector<int>> edges_at(space.points);
    for (std::size_t e = 0; e < translates.size(); ++e)
        for (int x : translates[e]) edges_at[x].push_back(static_cast<int>(e));
    std::vector<int> color(space.points, -1);
    auto ok_at = [&](int x, int c) {
        for (int e : edges_at[x])
            for (int y : translates[e])
                if (y != x && color[y] == c) return false;
        return true;
    };
    auto rec = [&](auto&& self, int x) -> bool {
        if (x == space.points) {
            // every translate must be rainbow-complete
            for (const auto& t : translates) {
                Mask seen = 0;
                for (int y : t) seen |= Mask{1} << color[y];
                if (std::popcount(seen) != palette) return false;
            }
            return true;
        }
        for (int c = 0; c < palette; ++c) {
            if (!ok_at(x, c)) continue;
            color[x] = c;
            if (self(self, x + 1)) return true;
            color[x] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

Configuration config_from_mask(unsigned m, int n) {
    Configuration c;
    for (int i = 0; i < n; ++i)
        if (m & (1u << i)) c.push_back(i);
    return c;
}

}  // namespace

TEST_CASE("search agrees with the brute oracle on all subsets, orders <= 8", "[transversal]") {
    for (const char* name : {"C4", "C2xC2", "C6", "C8", "C4xC2", "C2xC2xC2"}) {
        GSpace space = cayley_space(parse_group_spec(name));
        const int n = space.points;
        for (unsigned m = 1; m < (1u << n); ++m) {
            Configuration a = config_from_mask(m, n);
            auto res = find_kaleidoscopic_coloring(space, a);
            REQUIRE(res.status != Status::unknown);
            bool expected = brute_kaleidoscopic(space, a);
            INFO(name << " subset mask " << m);
            REQUIRE((res.status == Status::found) == expected);
            if (res.status == Status::found) {
                auto v = verify_kaleidoscopic(space, a, *res.value);
                INFO(v.reason);
                REQUIRE(v.ok);
            }
        }
    }
}

TEST_CASE("returned colorings have equal class sizes", "[transversal]") {
    // divisibility: |X| = |A| * |class|
    for (const char* name : {"C6", "C8", "C4xC2", "C3xC3", "C12"}) {
        GSpace space = cayley_space(parse_group_spec(name));
        const int n = space.points;
        for (unsigned m = 1; m < (1u << n); ++m) {
            Configuration a = config_from_mask(m, n);
            auto res = transversal_partition(space, a);
            if (res.status != Status::found) continue;
            const auto& classes = *res.value;
            REQUIRE(classes.size() == normalized(a).size());
            for (const auto& cls : classes)
                REQUIRE(cls.size() * classes.size() == static_cast<std::size_t>(n));
        }
    }
}

TEST_CASE("transversal partition classes are genuine transversals", "[transversal]") {
    GSpace space = cayley_space(parse_group_spec("C8"));
    Configuration a{0, 1};
    auto res = transversal_partition(space, a);
    REQUIRE(res.status == Status::found);
    auto translates = set_orbit(space, a);
    for (const auto& cls : *res.value) CHECK(is_transversal(translates, cls));
}

TEST_CASE("is_transversal counts hits exactly", "[transversal]") {
    std::vector<Configuration> fam{{0, 1}, {2, 3}};
    CHECK(is_transversal(fam, {0, 2}));
    CHECK(is_transversal(fam, {1, 3}));
    CHECK_FALSE(is_transversal(fam, {0, 1}));   // double hit in first edge
    CHECK_FALSE(is_transversal(fam, {0}));      // misses second edge
    CHECK_FALSE(is_transversal(fam, {0, 2, 3}));
}

TEST_CASE("duality: B transversal to translates of A iff G = A + (-B)", "[transversal]") {
    // exhaustive at orders <= 8, then randomized pairs at larger orders
    for (const char* name : {"C4", "C2xC2", "C6", "C8", "C4xC2", "C2xC2xC2"}) {
        AbelianGroupSpec spec = parse_group_spec(name);
        GSpace space = cayley_space(spec);
        const int n = space.points;
        for (unsigned ma = 1; ma < (1u << n); ++ma) {
            Configuration a = config_from_mask(ma, n);
            auto translates = set_orbit(space, a);
            for (unsigned mb = 1; mb < (1u << n); ++mb) {
                Configuration b = config_from_mask(mb, n);
                Configuration nb;
                for (int x : b) nb.push_back(spec.neg(x));
                INFO(name << " A=" << ma << " B=" << mb);
                REQUIRE(is_transversal(translates, b) == is_factorization(spec, a, nb));
            }
        }
    }
    std::mt19937 rng(20260825);
    for (const char* name : {"C16", "C12", "C3xC3xC2", "C24", "C5xC4"}) {
        AbelianGroupSpec spec = parse_group_spec(name);
        GSpace space = cayley_space(spec);
        const int n = space.points;
        for (int trial = 0; trial < 200; ++trial) {
            Configuration a, b;
            for (int x = 0; x < n; ++x) {
                if (rng() & 1) a.push_back(x);
                if (rng() & 1) b.push_back(x);
            }
            if (a.empty() || b.empty()) continue;
            Configuration nb;
            for (int x : b) nb.push_back(spec.neg(x));
            REQUIRE(is_transversal(set_orbit(space, a), b) == is_factorization(spec, a, nb));
        }
    }
}

TEST_CASE("verify rejects broken colorings", "[transversal]") {
    GSpace space = cayley_space(parse_group_spec("C4"));
    Configuration a{0, 1};
    Coloring good{2, {0, 1, 0, 1}};
    CHECK(verify_kaleidoscopic(space, a, good).ok);
    CHECK_FALSE(verify_kaleidoscopic(space, a, Coloring{2, {0, 0, 1, 1}}).ok);
    CHECK_FALSE(verify_kaleidoscopic(space, a, Coloring{2, {0, 1, 0}}).ok);      // wrong length
    CHECK_FALSE(verify_kaleidoscopic(space, a, Coloring{3, {0, 1, 0, 2}}).ok);   // wrong palette
    CHECK_FALSE(verify_kaleidoscopic(space, a, Coloring{2, {0, 1, 0, 5}}).ok);   // out of range
}

TEST_CASE("budget exhaustion is reported as unknown", "[transversal]") {
    GSpace space = cayley_space(parse_group_spec("C12"));
    auto res = find_kaleidoscopic_coloring(space, {0, 1}, 2);
    CHECK(res.status == Status::unknown);
    auto full = find_kaleidoscopic_coloring(space, {0, 1});
    CHECK(full.status == Status::found);
}

TEST_CASE("searches are deterministic", "[transversal]") {
    GSpace space = cayley_space(parse_group_spec("C3xC3"));
    auto r1 = find_kaleidoscopic_coloring(space, {0, 1, 3});
    auto r2 = find_kaleidoscopic_coloring(space, {0, 1, 3});
    REQUIRE(r1.status == r2.status);
    if (r1.status == Status::found) {
        REQUIRE(*r1.value == *r2.value);
        REQUIRE(r1.nodes == r2.nodes);
    }
}
