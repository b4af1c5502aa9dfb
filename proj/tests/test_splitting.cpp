#include <catch2/catch_amalgamated.hpp>

#include "kaleido/group.hpp"
#include "kaleido/splitting.hpp"
#include "kaleido/transversal.hpp"
#include "kaleido/ultrametric.hpp"

using namespace kaleido;

namespace {

// all set partitions of {0..n-1} as block_of vectors, restricted-growth form
std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> raw(n, 0);
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == n) {
            out.push_back(raw);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            raw[i] = b;
            self(self, i + 1, b == used ? used + 1 : used);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// independent invariance check: x ~ y iff gx ~ gy for every generator
bool invariant_oracle(const GSpace& space, const std::vector<int>& block_of) {
    for (const auto& g : space.generators)
        for (int x = 0; x < space.points; ++x)
            for (int y = 0; y < space.points; ++y)
                if ((block_of[x] == block_of[y]) != (block_of[g[x]] == block_of[g[y]]))
                    return false;
    return true;
}

Configuration config_from_mask(unsigned m, int n) {
    Configuration c;
    for (int i = 0; i < n; ++i)
        if (m & (1u << i)) c.push_back(i);
    return c;
}

void check_chain(const GSpace& space, const Configuration& k, const SplittingChain& chain) {
    REQUIRE_FALSE(chain.levels.empty());
    CHECK(chain.levels.front() == Partition::discrete(space.points));
    CHECK(chain.levels.back() == Partition::full(space.points));
    REQUIRE(chain.steps.size() + 1 == chain.levels.size());
    for (const auto& level : chain.levels) CHECK(level.invariant_under(space));
    for (std::size_t i = 0; i + 1 < chain.levels.size(); ++i) {
        CHECK(chain.levels[i].refines(chain.levels[i + 1]));
        CHECK_FALSE(chain.levels[i] == chain.levels[i + 1]);
        RelPosition pos = relative_position(k, chain.levels[i], chain.levels[i + 1]);
        CHECK(pos == chain.steps[i]);
        CHECK(pos != RelPosition::neither);
    }
}

}  // namespace

TEST_CASE("congruence lattice matches the partition sweep", "[splitting]") {
    std::vector<GSpace> spaces;
    for (const char* name : {"C4", "C2xC2", "C6", "C3xC3"})
        spaces.push_back(cayley_space(parse_group_spec(name)));
    spaces.push_back(ultrametric_space({{2, 2}, {}}));
    spaces.push_back(ultrametric_space({{3, 2}, {}}));
    for (const auto& space : spaces) {
        auto lattice = congruences(space);
        std::set<std::vector<int>> got;
        for (const auto& p : lattice) got.insert(Partition::from_block_of(p.block_of).block_of);
        std::set<std::vector<int>> expected;
        for (const auto& raw : all_partitions(space.points))
            if (invariant_oracle(space, raw)) expected.insert(Partition::from_block_of(raw).block_of);
        REQUIRE(got == expected);
    }
}

TEST_CASE("relative position on pinned cases", "[splitting]") {
    Partition d = Partition::discrete(4);
    Partition f = Partition::full(4);
    Partition evens = Partition::from_block_of({0, 1, 0, 1});   // {0,2},{1,3}
    Partition halves = Partition::from_block_of({0, 0, 1, 1});  // {0,1},{2,3}
    CHECK(relative_position({0, 1}, d, evens) == RelPosition::orthogonal);
    CHECK(relative_position({0, 1}, evens, f) == RelPosition::parallel);
    CHECK(relative_position({0, 1}, d, halves) == RelPosition::parallel);
    CHECK(relative_position({0, 1}, halves, f) == RelPosition::orthogonal);
    CHECK(relative_position({0, 2}, d, evens) == RelPosition::parallel);
    CHECK(relative_position({0, 1, 2}, d, evens) == RelPosition::neither);
    CHECK(relative_position({0}, d, evens) == RelPosition::orthogonal);
    CHECK(relative_position({0, 1, 2, 3}, d, f) == RelPosition::parallel);
}

TEST_CASE("generate_splittable equals the is_splittable filter", "[splitting]") {
    std::vector<GSpace> spaces;
    for (const char* name : {"C4", "C2xC2", "C6", "C8", "C4xC2", "C2xC2xC2"})
        spaces.push_back(cayley_space(parse_group_spec(name)));
    spaces.push_back(ultrametric_space({{2, 2}, {}}));
    for (const auto& space : spaces) {
        auto generated = generate_splittable(space);
        std::set<Configuration> got(generated.begin(), generated.end());
        REQUIRE(got.size() == generated.size());  // no duplicates
        std::set<Configuration> expected;
        for (unsigned m = 1; m < (1u << space.points); ++m) {
            Configuration k = config_from_mask(m, space.points);
            auto chain = is_splittable(space, k);
            if (chain) {
                expected.insert(k);
                check_chain(space, k, *chain);
            }
        }
        REQUIRE(got == expected);
    }
}

TEST_CASE("splittable configurations are kaleidoscopical", "[splitting]") {
    std::vector<GSpace> spaces;
    for (const char* name : {"C4", "C2xC2", "C6", "C8", "C4xC2", "C2xC2xC2"})
        spaces.push_back(cayley_space(parse_group_spec(name)));
    spaces.push_back(ultrametric_space({{2, 2}, {}}));
    for (const auto& space : spaces)
        for (const auto& k : generate_splittable(space)) {
            auto res = find_kaleidoscopic_coloring(space, k);
            CAPTURE(space.points, k);
            REQUIRE(res.status == Status::found);
            REQUIRE(verify_kaleidoscopic(space, k, *res.value).ok);
        }
}

TEST_CASE("non-splittable subset of C4", "[splitting]") {
    GSpace space = cayley_space(parse_group_spec("C4"));
    CHECK_FALSE(is_splittable(space, {0, 1, 2}).has_value());
    auto chain = is_splittable(space, {0, 1});
    REQUIRE(chain.has_value());
    check_chain(space, {0, 1}, *chain);
}

TEST_CASE("chains are shortest and deterministic", "[splitting]") {
    GSpace space = cayley_space(parse_group_spec("C8"));
    auto c1 = is_splittable(space, {0, 1});
    auto c2 = is_splittable(space, {0, 1});
    REQUIRE(c1.has_value());
    REQUIRE(c2.has_value());
    CHECK(c1->levels.size() == c2->levels.size());
    for (std::size_t i = 0; i < c1->levels.size(); ++i) CHECK(c1->levels[i] == c2->levels[i]);
}

TEST_CASE("congruence cap raises a structured error", "[splitting]") {
    GSpace space = cayley_space(parse_group_spec("C12"));
    CHECK_THROWS_AS(generate_splittable(space, 2), CapExceeded);
}
