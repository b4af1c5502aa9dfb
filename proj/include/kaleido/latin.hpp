#pragma once

#include <random>
#include <set>

#include "coloring.hpp"
#include "group.hpp"

namespace kaleido {

// An n x n Latin square over symbols 1..n; cell[i][j] is the product
// (i+1)*(j+1).  Rows and columns are indexed 0-based, symbols are 1-based.
struct LatinSquare {
    int n = 0;
    std::vector<std::vector<int>> cell;
};

// A fully filled r x s rectangle over symbols 1..n with no repeat in any row
// or column (a partial Latin rectangle occupying the top-left corner).
struct PartialRectangle {
    int n = 0, r = 0, s = 0;
    std::vector<std::vector<int>> cell;
};

inline VerifyResult validate(const LatinSquare& sq) {
    if (sq.n < 1) return {false, "order must be at least 1"};
    if (static_cast<int>(sq.cell.size()) != sq.n) return {false, "row count differs from order"};
    for (const auto& row : sq.cell)
        if (static_cast<int>(row.size()) != sq.n) return {false, "row length differs from order"};
    for (int i = 0; i < sq.n; ++i) {
        std::vector<bool> seen(sq.n + 1, false);
        for (int j = 0; j < sq.n; ++j) {
            int v = sq.cell[i][j];
            if (v < 1 || v > sq.n) return {false, "symbol out of range"};
            if (seen[v]) return {false, "symbol repeats in a row"};
            seen[v] = true;
        }
    }
    for (int j = 0; j < sq.n; ++j) {
        std::vector<bool> seen(sq.n + 1, false);
        for (int i = 0; i < sq.n; ++i) {
            int v = sq.cell[i][j];
            if (seen[v]) return {false, "symbol repeats in a column"};
            seen[v] = true;
        }
    }
    return {true, ""};
}

inline VerifyResult validate(const PartialRectangle& rect) {
    if (rect.n < 1) return {false, "symbol count must be at least 1"};
    if (rect.r < 1 || rect.s < 1) return {false, "rectangle must have at least one row and column"};
    if (rect.r > rect.n || rect.s > rect.n)
        return {false, "rectangle dimensions exceed the symbol count"};
    if (static_cast<int>(rect.cell.size()) != rect.r) return {false, "row count differs from r"};
    for (const auto& row : rect.cell)
        if (static_cast<int>(row.size()) != rect.s) return {false, "row length differs from s"};
    for (int i = 0; i < rect.r; ++i) {
        std::vector<bool> seen(rect.n + 1, false);
        for (int j = 0; j < rect.s; ++j) {
            int v = rect.cell[i][j];
            if (v < 1 || v > rect.n) return {false, "symbol out of range"};
            if (seen[v]) return {false, "symbol repeats in a row"};
            seen[v] = true;
        }
    }
    for (int j = 0; j < rect.s; ++j) {
        std::vector<bool> seen(rect.n + 1, false);
        for (int i = 0; i < rect.r; ++i) {
            int v = rect.cell[i][j];
            if (seen[v]) return {false, "symbol repeats in a column"};
            seen[v] = true;
        }
    }
    return {true, ""};
}

// occurrence count of each symbol 1..n (index 0 holds symbol 1)
inline std::vector<int> symbol_counts(const PartialRectangle& rect) {
    std::vector<int> counts(rect.n, 0);
    for (const auto& row : rect.cell)
        for (int v : row) ++counts[v - 1];
    return counts;
}

// Ryser's condition: the rectangle extends to an order-n Latin square iff
// every symbol occurs at least r + s - n times.
inline bool ryser_completable(const PartialRectangle& rect) {
    auto check = validate(rect);
    require(check.ok, check.reason);
    int need = rect.r + rect.s - rect.n;
    if (need <= 0) return true;
    for (int c : symbol_counts(rect))
        if (c < need) return false;
    return true;
}

namespace detail {

// Bipartite matching engine for line-by-line completion: left vertices are
// the lines being filled (rows in phase one, columns in phase two), right
// vertices are symbols.  Kuhn's augmenting-path search; candidate order is
// ascending by default, shuffled per line when sampling completions.
struct LineMatcher {
    int left_n, right_n;
    std::vector<std::vector<bool>> allowed;  // left x right
    std::vector<int> left_match, right_match;
    std::vector<bool> seen_left, seen_right;
    std::vector<int> left_order, right_order;

    LineMatcher(int l, int r)
        : left_n(l),
          right_n(r),
          allowed(l, std::vector<bool>(r, false)),
          left_match(l, -1),
          right_match(r, -1),
          left_order(l),
          right_order(r) {
        std::iota(left_order.begin(), left_order.end(), 0);
        std::iota(right_order.begin(), right_order.end(), 0);
    }

    bool extend_from_left(int u) {
        for (int v : right_order) {
            if (!allowed[u][v] || seen_right[v]) continue;
            seen_right[v] = true;
            if (right_match[v] == -1 || extend_from_left(right_match[v])) {
                left_match[u] = v;
                right_match[v] = u;
                return true;
            }
        }
        return false;
    }

    bool extend_from_right(int v) {
        for (int u : left_order) {
            if (!allowed[u][v] || seen_left[u]) continue;
            seen_left[u] = true;
            if (left_match[u] == -1 || extend_from_right(left_match[u])) {
                left_match[u] = v;
                right_match[v] = u;
                return true;
            }
        }
        return false;
    }

    bool augment_left(int u) {
        seen_right.assign(right_n, false);
        return extend_from_left(u);
    }

    bool augment_right(int v) {
        seen_left.assign(left_n, false);
        return extend_from_right(v);
    }
};

}  // namespace detail

// Completes the rectangle to an order-n Latin square, or reports absence
// (exactly when Ryser's condition fails).  Phase one appends columns: each
// new column is a perfect matching of rows to unused-in-row symbols in which
// every critical symbol — one whose count sits exactly at the Ryser bound —
// is forced to appear.  Phase two appends rows by matching columns to
// symbols.  Deterministic with candidates in ascending order; a seed shuffles
// candidate order to sample alternative completions.
inline std::optional<LatinSquare> complete_rectangle(
    const PartialRectangle& rect, std::optional<std::uint64_t> seed = std::nullopt) {
    if (!ryser_completable(rect)) return std::nullopt;
    const int n = rect.n;
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);

    // phase one: widen from r x s to r x n
    std::vector<std::vector<int>> table = rect.cell;
    std::vector<int> counts = symbol_counts(rect);
    std::vector<std::vector<bool>> in_row(rect.r, std::vector<bool>(n, false));
    for (int i = 0; i < rect.r; ++i)
        for (int v : table[i]) in_row[i][v - 1] = true;
    for (int width = rect.s; width < n; ++width) {
        detail::LineMatcher m(rect.r, n);
        for (int i = 0; i < rect.r; ++i)
            for (int v = 0; v < n; ++v) m.allowed[i][v] = !in_row[i][v];
        if (rng) {
            std::shuffle(m.left_order.begin(), m.left_order.end(), *rng);
            std::shuffle(m.right_order.begin(), m.right_order.end(), *rng);
        }
        int bound = rect.r + width - n;
        for (int v = 0; v < n; ++v)
            if (bound >= 0 && counts[v] == bound && !m.augment_right(v))
                return std::nullopt;  // unreachable when Ryser holds
        for (int i = 0; i < rect.r; ++i)
            if (m.left_match[i] == -1 && !m.augment_left(i))
                return std::nullopt;  // unreachable when Ryser holds
        for (int i = 0; i < rect.r; ++i) {
            int v = m.left_match[i];
            table[i].push_back(v + 1);
            in_row[i][v] = true;
            ++counts[v];
        }
    }

    // phase two: grow from r x n to n x n
    std::vector<std::vector<bool>> in_col(n, std::vector<bool>(n, false));
    for (const auto& row : table)
        for (int j = 0; j < n; ++j) in_col[j][row[j] - 1] = true;
    for (int height = rect.r; height < n; ++height) {
        detail::LineMatcher m(n, n);
        for (int j = 0; j < n; ++j)
            for (int v = 0; v < n; ++v) m.allowed[j][v] = !in_col[j][v];
        if (rng) {
            std::shuffle(m.left_order.begin(), m.left_order.end(), *rng);
            std::shuffle(m.right_order.begin(), m.right_order.end(), *rng);
        }
        for (int j = 0; j < n; ++j)
            if (m.left_match[j] == -1 && !m.augment_left(j))
                return std::nullopt;  // unreachable: the column graph is regular
        std::vector<int> row(n);
        for (int j = 0; j < n; ++j) {
            row[j] = m.left_match[j] + 1;
            in_col[j][m.left_match[j]] = true;
        }
        table.push_back(std::move(row));
    }

    LatinSquare out{n, std::move(table)};
    auto check = validate(out);
    if (!check.ok) throw std::logic_error("completion produced an invalid square: " + check.reason);
    return out;
}

// The fixed 9 x 3 rectangle whose completions all contain {1,2,3} as a
// self-complemented but non-kaleidoscopical subset.
inline PartialRectangle example9() {
    return PartialRectangle{9,
                            9,
                            3,
                            {{1, 4, 5},
                             {6, 2, 7},
                             {8, 9, 3},
                             {4, 1, 6},
                             {5, 6, 1},
                             {2, 7, 8},
                             {7, 8, 2},
                             {3, 5, 9},
                             {9, 3, 4}}};
}

// product x*y in the quasigroup of the square (symbols 1..n)
inline int times(const LatinSquare& sq, int x, int y) {
    require(1 <= x && x <= sq.n && 1 <= y && y <= sq.n, "symbol out of range");
    return sq.cell[x - 1][y - 1];
}

// right division b/a: the unique y with y*a = b
inline int rdiv(const LatinSquare& sq, int b, int a) {
    require(1 <= b && b <= sq.n && 1 <= a && a <= sq.n, "symbol out of range");
    for (int y = 1; y <= sq.n; ++y)
        if (sq.cell[y - 1][a - 1] == b) return y;
    throw std::logic_error("square is not Latin: missing quotient");
}

// the full right-division table: cell[b-1][a-1] = b/a
inline LatinSquare right_division(const LatinSquare& sq) {
    auto check = validate(sq);
    require(check.ok, check.reason);
    LatinSquare rd{sq.n, std::vector<std::vector<int>>(sq.n, std::vector<int>(sq.n, 0))};
    for (int y = 1; y <= sq.n; ++y)
        for (int a = 1; a <= sq.n; ++a) rd.cell[sq.cell[y - 1][a - 1] - 1][a - 1] = y;
    return rd;
}

// the Cayley table of a finite abelian group as a Latin square
// (symbol i+1 stands for the group element with mixed-radix index i)
inline LatinSquare cayley_square(const AbelianGroupSpec& spec) {
    const int n = spec.order();
    LatinSquare sq{n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sq.cell[i][j] = spec.add(i, j) + 1;
    return sq;
}

namespace detail {

inline std::vector<int> checked_symbols(const LatinSquare& sq, const Configuration& a) {
    auto check = validate(sq);
    require(check.ok, check.reason);
    std::vector<int> s(a.begin(), a.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    require(!s.empty(), "subset must be non-empty");
    for (int v : s) require(1 <= v && v <= sq.n, "subset symbol out of range");
    return s;
}

// Lexicographically least B (by symbol) of size n/|A| such that right
// division delta: B x A -> X is bijective — equivalently, every translate
// y*A meets B exactly once.  DFS in ascending symbol order; a branch dies
// when some translate is hit twice or can no longer be hit at all.
inline std::optional<std::vector<int>> least_delta_complement(const LatinSquare& sq,
                                                              const std::vector<int>& a) {
    const int n = sq.n;
    const int size = static_cast<int>(a.size());
    if (n % size != 0) return std::nullopt;
    const int target = n / size;
    // translate_max[y] = largest symbol in y*A; owners[b] = translates containing b
    std::vector<int> translate_max(n, 0);
    std::vector<std::vector<int>> owners(n);
    for (int y = 1; y <= n; ++y)
        for (int x : a) {
            int p = times(sq, y, x);
            translate_max[y - 1] = std::max(translate_max[y - 1], p);
            owners[p - 1].push_back(y - 1);
        }
    std::vector<int> hits(n, 0), chosen;
    std::optional<std::vector<int>> found;
    auto dfs = [&](auto&& self, int next) -> bool {
        if (static_cast<int>(chosen.size()) == target) {
            found = chosen;
            return true;
        }
        int remaining = target - static_cast<int>(chosen.size());
        for (int y = 0; y < n; ++y)
            if (hits[y] == 0 && translate_max[y] < next) return false;
        for (int b = next; b <= n - remaining + 1; ++b) {
            bool clash = false;
            for (int y : owners[b - 1])
                if (hits[y] == 1) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            for (int y : owners[b - 1]) ++hits[y];
            chosen.push_back(b);
            if (self(self, b + 1)) return true;
            chosen.pop_back();
            for (int y : owners[b - 1]) --hits[y];
        }
        return false;
    };
    dfs(dfs, 1);
    return found;
}

}  // namespace detail

// Classification flags of a subset A of the quasigroup:
//   complemented      — least B with delta: B x A -> X bijective
//   doubly            — least complemented B with mu: A x B -> X bijective
//   self_complemented — mu and delta restricted to A x A are both bijective
struct QuasiFlags {
    std::optional<Configuration> complemented;
    std::optional<Configuration> doubly;
    bool self_complemented = false;
};

inline QuasiFlags quasi_classify_subset(const LatinSquare& sq, const Configuration& a) {
    auto s = detail::checked_symbols(sq, a);
    const int n = sq.n;
    const int size = static_cast<int>(s.size());
    QuasiFlags flags;

    if (auto b = detail::least_delta_complement(sq, s)) flags.complemented = *b;

    if (n % size == 0) {
        const int target = n / size;
        // least B with all products a*b distinct, then itself complemented
        std::vector<int> chosen;
        std::vector<bool> product_used(n + 1, false);
        auto dfs = [&](auto&& self, int next) -> bool {
            if (static_cast<int>(chosen.size()) == target)
                return detail::least_delta_complement(sq, chosen).has_value();
            int remaining = target - static_cast<int>(chosen.size());
            for (int b = next; b <= n - remaining + 1; ++b) {
                bool clash = false;
                for (int x : s)
                    if (product_used[times(sq, x, b)]) {
                        clash = true;
                        break;
                    }
                if (clash) continue;
                for (int x : s) product_used[times(sq, x, b)] = true;
                chosen.push_back(b);
                if (self(self, b + 1)) return true;
                chosen.pop_back();
                for (int x : s) product_used[times(sq, x, b)] = false;
            }
            return false;
        };
        if (dfs(dfs, 1)) flags.doubly = chosen;
    }

    if (size * size == n) {
        std::vector<bool> seen_mu(n + 1, false), seen_delta(n + 1, false);
        bool ok = true;
        for (int x : s)
            for (int y : s) {
                int p = times(sq, x, y);
                int q = rdiv(sq, x, y);
                if (seen_mu[p] || seen_delta[q]) ok = false;
                seen_mu[p] = seen_delta[q] = true;
            }
        flags.self_complemented = ok;
    }
    return flags;
}

// The hyperedge family {x*A : x in X} as 0-based point sets, deduplicated
// and sorted; every edge has exactly |A| points (left translation is a
// bijection in a quasigroup).
inline std::vector<Configuration> quasi_edges(const LatinSquare& sq, const Configuration& a) {
    auto s = detail::checked_symbols(sq, a);
    std::set<Configuration> edges;
    for (int x = 1; x <= sq.n; ++x) {
        Configuration e;
        for (int y : s) e.push_back(times(sq, x, y) - 1);
        edges.insert(normalized(e));
    }
    return {edges.begin(), edges.end()};
}

// Kaleidoscopicity of A in the quasigroup: a coloring of the symbols
// (0-based points, point i = symbol i+1) with |A| colors, bijective on every
// translate x*A.  Same engine and canonical-least certificate as the G-space
// search; sizes not dividing n are rejected immediately.
inline Outcome<Coloring> quasi_kaleidoscopic(const LatinSquare& sq, const Configuration& a,
                                             long long budget = 0) {
    auto s = detail::checked_symbols(sq, a);
    if (sq.n % static_cast<int>(s.size()) != 0) return {};
    auto edges = quasi_edges(sq, a);
    return strong_coloring(sq.n, edges, static_cast<int>(s.size()), budget);
}

// Re-checks a claimed kaleidoscopical coloring against the translate family.
inline VerifyResult verify_quasi_kaleidoscopic(const LatinSquare& sq, const Configuration& a,
                                               const Coloring& chi) {
    auto s = detail::checked_symbols(sq, a);
    return verify_strong_coloring(sq.n, quasi_edges(sq, a), static_cast<int>(s.size()), chi);
}

}  // namespace kaleido
