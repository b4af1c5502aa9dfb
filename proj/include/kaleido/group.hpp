#pragma once

#include <bit>
#include <cctype>
#include <cstdlib>

#include "gspace.hpp"
#include "types.hpp"

namespace kaleido {

// Element of a finite abelian group written additively as a residue vector
// against the cyclic factor orders of its spec.
struct GroupElement {
    std::vector<int> residues;
    bool operator==(const GroupElement&) const = default;
};

// A finite abelian group C{n1} x C{n2} x ... given by its cyclic factor orders.
// Elements are indexed in mixed-radix order, first factor most significant.
struct AbelianGroupSpec {
    std::vector<int> orders;

    int order() const {
        int n = 1;
        for (int o : orders) n *= o;
        return n;
    }

    GroupElement element_at(int index) const {
        GroupElement e;
        e.residues.resize(orders.size());
        for (int i = static_cast<int>(orders.size()) - 1; i >= 0; --i) {
            e.residues[i] = index % orders[i];
            index /= orders[i];
        }
        return e;
    }

    int index_of(const GroupElement& e) const {
        int idx = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + e.residues[i];
        return idx;
    }

    int add(int a, int b) const {
        GroupElement x = element_at(a), y = element_at(b);
        for (std::size_t i = 0; i < orders.size(); ++i)
            x.residues[i] = (x.residues[i] + y.residues[i]) % orders[i];
        return index_of(x);
    }

    int neg(int a) const {
        GroupElement x = element_at(a);
        for (std::size_t i = 0; i < orders.size(); ++i)
            x.residues[i] = (orders[i] - x.residues[i]) % orders[i];
        return index_of(x);
    }

    std::string text() const {
        std::string s;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (i) s += "x";
            s += "C" + std::to_string(orders[i]);
        }
        return s;
    }
};

// Parses "C4", "C4xC2", ... — each factor order must be at least 2, and the
// group order must stay under the global construction cap.
inline AbelianGroupSpec parse_group_spec(const std::string& text) {
    AbelianGroupSpec spec;
    std::size_t i = 0;
    long long total = 1;
    while (i < text.size()) {
        if (!spec.orders.empty()) {
            require(text[i] == 'x', "expected 'x' between factors in '" + text + "'");
            ++i;
        }
        require(i < text.size() && text[i] == 'C', "expected 'C<n>' factor in '" + text + "'");
        ++i;
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        require(j > i && j - i <= 9, "missing or oversized factor order in '" + text + "'");
        int n = std::atoi(text.substr(i, j - i).c_str());
        require(n >= 2, "factor order must be >= 2 in '" + text + "'");
        total *= n;
        if (total > Caps{}.group_order_cap)
            throw CapExceeded("group order exceeds the construction cap");
        spec.orders.push_back(n);
        i = j;
    }
    require(!spec.orders.empty(), "empty group spec");
    return spec;
}

// The regular action of the group on itself: one generator per cyclic factor,
// translating by that factor's unit element.
inline GSpace cayley_space(const AbelianGroupSpec& spec) {
    int n = spec.order();
    std::vector<std::vector<int>> gens;
    for (std::size_t f = 0; f < spec.orders.size(); ++f) {
        GroupElement unit;
        unit.residues.assign(spec.orders.size(), 0);
        unit.residues[f] = 1;
        int u = spec.index_of(unit);
        std::vector<int> perm(n);
        for (int x = 0; x < n; ++x) perm[x] = spec.add(x, u);
        gens.push_back(std::move(perm));
    }
    return make_space(n, std::move(gens));
}

// Dense addition/negation tables for a group of order <= 64, with per-element
// mask translation.  Also represents subgroup and quotient groups uniformly.
struct GroupTable {
    int n = 0;
    std::vector<int> add;  // n*n, add[a*n+b]
    std::vector<int> neg;

    static GroupTable from_spec(const AbelianGroupSpec& spec) {
        GroupTable t;
        t.n = spec.order();
        require(t.n <= 64, "group too large for mask arithmetic");
        t.add.resize(t.n * t.n);
        t.neg.resize(t.n);
        for (int a = 0; a < t.n; ++a) {
            t.neg[a] = spec.neg(a);
            for (int b = 0; b < t.n; ++b) t.add[a * t.n + b] = spec.add(a, b);
        }
        return t;
    }

    int sum(int a, int b) const { return add[a * n + b]; }

    Mask full() const { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

    Mask translate(Mask m, int g) const {
        Mask out = 0;
        while (m) {
            int b = std::countr_zero(m);
            m &= m - 1;
            out |= Mask{1} << sum(b, g);
        }
        return out;
    }

    // Least non-zero period of m (translate(m, g) == m), if any.
    std::optional<int> least_period(Mask m) const {
        for (int g = 1; g < n; ++g)
            if (translate(m, g) == m) return g;
        return std::nullopt;
    }

    // All subgroups, as masks containing 0, by closing under generation.
    std::vector<Mask> subgroups() const {
        std::set<Mask> known{Mask{1}};
        std::vector<Mask> todo{Mask{1}};
        while (!todo.empty()) {
            Mask h = todo.back();
            todo.pop_back();
            for (int g = 0; g < n; ++g) {
                if (h >> g & 1) continue;
                Mask ext = h;
                // close h + <g> under addition
                std::vector<int> stack{g};
                ext |= Mask{1} << g;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    Mask base = ext;
                    while (base) {
                        int y = std::countr_zero(base);
                        base &= base - 1;
                        int z = sum(x, y);
                        if (!(ext >> z & 1)) {
                            ext |= Mask{1} << z;
                            stack.push_back(z);
                        }
                    }
                }
                if (known.insert(ext).second) todo.push_back(ext);
            }
        }
        return {known.begin(), known.end()};
    }

    // Quotient by the subgroup `h`: returns the quotient table together with
    // the coset index of every element.
    std::pair<GroupTable, std::vector<int>> quotient(Mask h) const {
        std::vector<int> cid(n, -1);
        std::vector<int> reps;
        for (int x = 0; x < n; ++x) {
            if (cid[x] >= 0) continue;
            int id = static_cast<int>(reps.size());
            reps.push_back(x);
            Mask coset = translate(h, x);
            while (coset) {
                int y = std::countr_zero(coset);
                coset &= coset - 1;
                cid[y] = id;
            }
        }
        GroupTable q;
        q.n = static_cast<int>(reps.size());
        q.add.resize(q.n * q.n);
        q.neg.resize(q.n);
        for (int a = 0; a < q.n; ++a) {
            q.neg[a] = cid[neg[reps[a]]];
            for (int b = 0; b < q.n; ++b) q.add[a * q.n + b] = cid[sum(reps[a], reps[b])];
        }
        return {std::move(q), std::move(cid)};
    }
};

}  // namespace kaleido
