#include <catch2/catch_amalgamated.hpp>

#include "kaleido/factorization.hpp"
#include "kaleido/hajos_classify.hpp"

using namespace kaleido;

namespace {

bool classify_ok(std::vector<int> factors) { return hajos_classify({std::move(factors)}).hajos; }

}  // namespace

TEST_CASE("classifier agrees with brute force on every type of order <= 16", "[classify]") {
    const std::vector<std::vector<int>> types = {
        {2},          {3},         {4},       {2, 2},       {5},          {6},
        {7},          {8},         {4, 2},    {2, 2, 2},    {9},          {3, 3},
        {10},         {11},        {12},      {6, 2},       {13},         {14},
        {15},         {16},        {8, 2},    {4, 4},       {4, 2, 2},    {2, 2, 2, 2}};
    for (const auto& type : types) {
        AbelianGroupSpec spec{type};
        ClassifyResult cls = hajos_classify({type});
        CAPTURE(type);
        bool brute = hajos_brute(spec, 16).holds;
        REQUIRE(cls.hajos == brute);
        if (cls.hajos) {
            std::string family = cls.family;
            auto v = verify_family_assignment({type}, family, cls.assignment);
            INFO(v.reason);
            REQUIRE(v.ok);
        }
    }
}

TEST_CASE("classification is invariant under presentation", "[classify]") {
    CHECK(classify_ok({12}) == classify_ok({4, 3}));
    CHECK(classify_ok({6, 2}) == classify_ok({2, 2, 3}));
    CHECK(classify_ok({6}) == classify_ok({2, 3}));
    CHECK(classify_ok({15}) == classify_ok({3, 5}));
    CHECK(classify_ok({36, 2}) == classify_ok({4, 2, 9}));
    CHECK(classify_ok({4, 4, 2}) == classify_ok({2, 4, 4}));
}

TEST_CASE("frozen verdicts beyond brute range", "[classify]") {
    CHECK(classify_ok({3, 3, 3}));       // (p, 3, 3) with p = 3
    CHECK(classify_ok({8, 2, 2}));       // (p^3, 2, 2) with p = 2
    CHECK(classify_ok({2, 2, 2, 2, 2})); // (p, 2, 2, 2, 2) with p = 2
    CHECK(classify_ok({9, 2}));          // (p^n, q)
    CHECK(classify_ok({2, 3, 3}));       // (p, 3, 3)
    CHECK(classify_ok({5, 5}));          // (p, p)
    CHECK(classify_ok({9, 3}));          // (3^2, 3)
    CHECK(classify_ok({32, 2}));         // (2^n, 2)
    CHECK_FALSE(classify_ok({49, 7}));   // (p^2, p) is special to p = 3
    CHECK_FALSE(classify_ok({4, 4, 2}));
    CHECK_FALSE(classify_ok({9, 9, 3}));
    CHECK_FALSE(classify_ok({4, 4, 4}));
    CHECK_FALSE(classify_ok({3, 3, 5, 5}));
}

TEST_CASE("family assignment verification", "[classify]") {
    ClassifyResult res = hajos_classify({{8, 3}});
    REQUIRE(res.hajos);
    CHECK(res.family == "(p^n, q)");
    CHECK(verify_family_assignment({{8, 3}}, res.family, res.assignment).ok);
    // wrong family name
    CHECK_FALSE(verify_family_assignment({{8, 3}}, "(p, p)", res.assignment).ok);
    // composite assigned to a prime variable
    CHECK_FALSE(verify_family_assignment({{8, 3}}, "(p^n, q)", {{'p', 4}, {'q', 3}}).ok);
    // colliding primes
    CHECK_FALSE(verify_family_assignment({{8, 3}}, "(p^n, q)", {{'p', 2}, {'q', 2}}).ok);
    // type that does not embed under the claimed assignment
    CHECK_FALSE(verify_family_assignment({{8, 3}}, "(p^n, q)", {{'p', 3}, {'q', 2}}).ok);
}

TEST_CASE("classifier rejects malformed types", "[classify]") {
    CHECK_THROWS_AS(hajos_classify({{}}), std::invalid_argument);
    CHECK_THROWS_AS(hajos_classify({{1}}), std::invalid_argument);
    CHECK_THROWS_AS(hajos_classify({{0}}), std::invalid_argument);
    CHECK_THROWS_AS(hajos_classify({{-4}}), std::invalid_argument);
}

TEST_CASE("classifier vs brute on selected types of order 18-24", "[classify][slow]") {
    const std::vector<std::vector<int>> types = {{18}, {6, 3}, {20}, {10, 2}, {21}, {22},
                                                 {24},  {12, 2}, {6, 2, 2}};
    for (const auto& type : types) {
        AbelianGroupSpec spec{type};
        CAPTURE(type);
        REQUIRE(hajos_classify({type}).hajos == hajos_brute(spec, 24).holds);
    }
}
