#pragma once

#include <functional>
#include <map>

#include "types.hpp"

namespace kaleido {

// An abelian group type given as a list of cyclic factor orders (not
// necessarily prime powers), e.g. {8,3} for C8 x C3.
struct GroupTypeQuery {
    std::vector<int> factors;
};

struct ClassifyResult {
    bool hajos = false;
    std::string family;                             // matching template, e.g. "(p^n, q)"
    std::vector<std::pair<char, int>> assignment;   // variable -> prime
};

namespace detail {

struct Slot {
    int fixed;  // fixed prime, or 0 for a variable slot
    char var;   // 'p'..'s' when fixed == 0
    int exp;    // exponent; -1 means the free parameter n (unbounded)
};

struct Family {
    const char* name;
    std::vector<Slot> slots;
};

// The template families of Hajos groups.  p, q, r, s stand for pairwise
// distinct primes; a variable may also take the value of a fixed prime
// appearing in the same family (cross-checked against the exhaustive
// factorization sweep on small orders).
inline const std::vector<Family>& hajos_families() {
    static const std::vector<Family> fams = {
        {"(p^n, q)", {{0, 'p', -1}, {0, 'q', 1}}},
        {"(p^2, q^2)", {{0, 'p', 2}, {0, 'q', 2}}},
        {"(p^2, q, r)", {{0, 'p', 2}, {0, 'q', 1}, {0, 'r', 1}}},
        {"(p, q, r, s)", {{0, 'p', 1}, {0, 'q', 1}, {0, 'r', 1}, {0, 's', 1}}},
        {"(p, p)", {{0, 'p', 1}, {0, 'p', 1}}},
        {"(p, 3, 3)", {{0, 'p', 1}, {3, 0, 1}, {3, 0, 1}}},
        {"(3^2, 3)", {{3, 0, 2}, {3, 0, 1}}},
        {"(p^3, 2, 2)", {{0, 'p', 3}, {2, 0, 1}, {2, 0, 1}}},
        {"(p^2, 2, 2, 2)", {{0, 'p', 2}, {2, 0, 1}, {2, 0, 1}, {2, 0, 1}}},
        {"(p, 2^2, 2)", {{0, 'p', 1}, {2, 0, 2}, {2, 0, 1}}},
        {"(p, 2, 2, 2, 2)", {{0, 'p', 1}, {2, 0, 1}, {2, 0, 1}, {2, 0, 1}, {2, 0, 1}}},
        {"(p, q, 2, 2)", {{0, 'p', 1}, {0, 'q', 1}, {2, 0, 1}, {2, 0, 1}}},
        {"(2^n, 2)", {{2, 0, -1}, {2, 0, 1}}},
        {"(2^2, 2^2)", {{2, 0, 2}, {2, 0, 2}}},
    };
    return fams;
}

// exponents of the p-components, sorted descending per prime
inline std::map<int, std::vector<int>> primary_type(const GroupTypeQuery& q) {
    require(!q.factors.empty(), "group type must have at least one factor");
    std::map<int, std::vector<int>> comp;
    for (int f : q.factors) {
        require(f >= 2, "type factors must be >= 2");
        int m = f;
        for (int p = 2; p * p <= m; ++p) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            if (e) comp[p].push_back(e);
        }
        if (m > 1) comp[m].push_back(1);
    }
    for (auto& [p, es] : comp) std::sort(es.begin(), es.end(), std::greater<int>());
    return comp;
}

// A p-group with exponent sequence mu embeds in one with slot sequence lam
// iff, both sorted descending, mu fits under lam componentwise.
inline bool fits(const std::vector<int>& mu, std::vector<int> lam) {
    std::sort(lam.begin(), lam.end(), [](int a, int b) {
        return (a < 0 ? INT32_MAX : a) > (b < 0 ? INT32_MAX : b);
    });
    if (mu.size() > lam.size()) return false;
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (lam[i] >= 0 && mu[i] > lam[i]) return false;
    return true;
}

// the distinct variable letters of a family, sorted
inline std::vector<char> family_vars(const Family& fam) {
    std::vector<char> vars;
    for (const auto& s : fam.slots)
        if (!s.fixed && std::find(vars.begin(), vars.end(), s.var) == vars.end())
            vars.push_back(s.var);
    std::sort(vars.begin(), vars.end());
    return vars;
}

// Does every primary component of the group embed into the family's merged
// slots at its prime, under the given variable-to-prime assignment
// (chosen[v] = 0 leaves variable v unused)?
inline bool embeds_with(const std::map<int, std::vector<int>>& comp, const Family& fam,
                        const std::vector<char>& vars, const std::vector<int>& chosen) {
    for (const auto& [p, mu] : comp) {
        std::vector<int> lam;
        for (const auto& s : fam.slots) {
            if (s.fixed == p) lam.push_back(s.exp);
            if (!s.fixed)
                for (std::size_t v = 0; v < vars.size(); ++v)
                    if (vars[v] == s.var && chosen[v] == p) lam.push_back(s.exp);
        }
        if (!fits(mu, lam)) return false;
    }
    return true;
}

}  // namespace detail

// Decides the Hajos property from the subgroup-of-template classification:
// accepted iff some family admits an injective assignment of its prime
// variables under which every primary component of the group embeds in the
// merged slots at its prime.
inline ClassifyResult hajos_classify(const GroupTypeQuery& query) {
    auto comp = detail::primary_type(query);
    std::vector<int> primes;
    for (const auto& [p, es] : comp) primes.push_back(p);

    for (const auto& fam : detail::hajos_families()) {
        std::vector<char> vars = detail::family_vars(fam);
        std::vector<int> chosen(vars.size(), 0);  // 0 = unassigned (fresh prime)
        auto assign = [&](auto&& self, std::size_t v) -> bool {
            if (v == vars.size()) return detail::embeds_with(comp, fam, vars, chosen);
            for (int p : primes) {
                if (std::find(chosen.begin(), chosen.begin() + v, p) != chosen.begin() + v)
                    continue;  // variables take pairwise distinct primes
                chosen[v] = p;
                if (self(self, v + 1)) return true;
            }
            chosen[v] = 0;
            return self(self, v + 1);
        };
        if (assign(assign, 0)) {
            ClassifyResult res;
            res.hajos = true;
            res.family = fam.name;
            for (std::size_t v = 0; v < vars.size(); ++v)
                if (chosen[v]) res.assignment.emplace_back(vars[v], chosen[v]);
            return res;
        }
    }
    return {};
}

// Re-checks a positive classification certificate: the named family exists,
// the assignment maps family variables to pairwise distinct primes, and the
// group type embeds under that exact assignment.
inline VerifyResult verify_family_assignment(const GroupTypeQuery& query,
                                             const std::string& family,
                                             const std::vector<std::pair<char, int>>& assignment) {
    const detail::Family* fam = nullptr;
    for (const auto& f : detail::hajos_families())
        if (family == f.name) fam = &f;
    if (!fam) return {false, "unknown family name: " + family};
    std::vector<char> vars = detail::family_vars(*fam);
    std::vector<int> chosen(vars.size(), 0);
    std::vector<int> seen;
    for (const auto& [var, prime] : assignment) {
        auto it = std::find(vars.begin(), vars.end(), var);
        if (it == vars.end()) return {false, std::string("family has no variable ") + var};
        if (prime < 2) return {false, "assigned value is not a prime"};
        for (int d = 2; d * d <= prime; ++d)
            if (prime % d == 0) return {false, "assigned value is not a prime"};
        if (std::find(seen.begin(), seen.end(), prime) != seen.end())
            return {false, "variables must take pairwise distinct primes"};
        seen.push_back(prime);
        int slot = static_cast<int>(it - vars.begin());
        if (chosen[slot]) return {false, std::string("variable assigned twice: ") + var};
        chosen[slot] = prime;
    }
    auto comp = detail::primary_type(query);
    if (!detail::embeds_with(comp, *fam, vars, chosen))
        return {false, "group type does not embed under the claimed assignment"};
    return {true, ""};
}

}  // namespace kaleido
