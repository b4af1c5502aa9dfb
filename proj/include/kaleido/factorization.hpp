#pragma once

#include <functional>
#include <map>
#include <unordered_map>

#include "group.hpp"

namespace kaleido {

// A factorization certificate: G = subset + complement with every sum unique.
// `periodic`, when present, is a non-zero g with subset+g == subset or
// complement+g == complement; absent on Hajos counterexamples, where the
// claim is that neither factor is periodic.
struct FactorizationCertificate {
    std::string group;
    Configuration subset;
    Configuration complement;
    std::optional<int> periodic;
};

// true iff every group element is a + b for exactly one pair in a x b
inline bool is_factorization(const AbelianGroupSpec& spec, const Configuration& a,
                             const Configuration& b) {
    Configuration as = normalized(a), bs = normalized(b);
    int n = spec.order();
    require(!as.empty() && !bs.empty(), "factors must be non-empty");
    require(as.back() < n && bs.back() < n && as.front() >= 0 && bs.front() >= 0,
            "factor element out of range");
    if (static_cast<int>(as.size() * bs.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int x : as)
        for (int y : bs) {
            int s = spec.add(x, y);
            if (seen[s]) return false;
            seen[s] = 1;
        }
    return true;
}

// Least non-zero period of `a`, if `a` is periodic.
inline std::optional<int> is_periodic(const AbelianGroupSpec& spec, const Configuration& a) {
    GroupTable t = GroupTable::from_spec(spec);
    Configuration as = normalized(a);
    require(!as.empty() && as.back() < t.n && as.front() >= 0, "subset out of range");
    return t.least_period(mask_of(as));
}

namespace detail {

// Enumerates complements B of `a` (normalized: 0 in B) in lexicographic order
// of the sorted element list, invoking `visit`; stops when `visit` returns
// false.  Elements are added in increasing order; a branch dies once the
// least uncovered point can no longer be covered by any remaining translate.
inline void for_each_complement(const GroupTable& t, Mask amask,
                                const std::function<bool(Mask)>& visit) {
    const Mask full = t.full();
    const int k = std::popcount(amask);
    if (t.n % k != 0) return;
    std::vector<Mask> tile(t.n);
    for (int b = 0; b < t.n; ++b) tile[b] = t.translate(amask, b);
    Mask bmask = 1;
    bool stop = false;
    auto rec = [&](auto&& self, Mask covered, int last) -> void {
        if (stop) return;
        if (covered == full) {
            if (!visit(bmask)) stop = true;
            return;
        }
        int x = std::countr_zero(~covered & full);
        int maxcand = -1;
        for (int b = last + 1; b < t.n; ++b)
            if ((tile[b] >> x & 1) && !(tile[b] & covered)) maxcand = b;
        for (int b = last + 1; b <= maxcand; ++b) {
            if (tile[b] & covered) continue;
            bmask |= Mask{1} << b;
            self(self, covered | tile[b], b);
            bmask &= ~(Mask{1} << b);
            if (stop) return;
        }
    };
    rec(rec, tile[0], 0);
}

// Fast existence check: is there any B with a + B = G?  Branches on the least
// uncovered point; its covering translate must be one of |a| candidates.
inline bool has_complement(const GroupTable& t, Mask amask) {
    const Mask full = t.full();
    const int k = std::popcount(amask);
    if (t.n % k != 0) return false;
    Configuration elems = config_of(amask);
    auto rec = [&](auto&& self, Mask covered) -> bool {
        if (covered == full) return true;
        int x = std::countr_zero(~covered & full);
        for (int a : elems) {
            int b = t.sum(x, t.neg[a]);
            Mask tile = t.translate(amask, b);
            if (!(tile & covered) && self(self, covered | tile)) return true;
        }
        return false;
    };
    return rec(rec, amask);  // normalization: 0 in B, so the translate a+0 is used
}

// Decides whether `a` admits a periodic complement.  B is periodic iff B is a
// union of cosets of some non-trivial subgroup H; and a + B = G with B = H-
// saturated iff the quotient map is injective on `a` and its image is
// complemented in G/H.  Quotient verdicts are memoized per subgroup.
struct PeriodicComplementOracle {
    const GroupTable& t;
    struct Sub {
        Mask h;
        GroupTable q;
        std::vector<int> cid;
        std::vector<signed char> dense;       // -1 unknown / 0 no / 1 yes, by image mask
        std::unordered_map<Mask, bool> sparse;  // fallback for large quotients
    };
    std::vector<Sub> subs;

    explicit PeriodicComplementOracle(const GroupTable& table) : t(table) {
        for (Mask h : t.subgroups()) {
            if (std::popcount(h) < 2) continue;  // trivial subgroup gives no period
            auto [q, cid] = t.quotient(h);
            Sub s{h, std::move(q), std::move(cid), {}, {}};
            if (s.q.n <= 24) s.dense.assign(std::size_t{1} << s.q.n, -1);
            subs.push_back(std::move(s));
        }
    }

    bool query(Mask amask) {
        int k = std::popcount(amask);
        for (auto& s : subs) {
            if (s.q.n % k != 0) continue;
            Mask image = 0;
            Mask m = amask;
            bool injective = true;
            while (m) {
                int x = std::countr_zero(m);
                m &= m - 1;
                Mask bit = Mask{1} << s.cid[x];
                if (image & bit) {
                    injective = false;
                    break;
                }
                image |= bit;
            }
            if (!injective) continue;
            bool good;
            if (!s.dense.empty()) {
                signed char& v = s.dense[image];
                if (v < 0) v = has_complement(s.q, image) ? 1 : 0;
                good = v == 1;
            } else {
                auto it = s.sparse.find(image);
                if (it == s.sparse.end())
                    it = s.sparse.emplace(image, has_complement(s.q, image)).first;
                good = it->second;
            }
            if (good) return true;
        }
        return false;
    }
};

}  // namespace detail

// Lexicographically least complement of `a` (normalized to contain 0), if any.
inline std::optional<Configuration> find_complement(const AbelianGroupSpec& spec,
                                                    const Configuration& a) {
    GroupTable t = GroupTable::from_spec(spec);
    Configuration as = normalized(a);
    require(!as.empty() && as.back() < t.n && as.front() >= 0, "subset out of range");
    std::optional<Configuration> best;
    detail::for_each_complement(t, mask_of(as), [&](Mask b) {
        best = config_of(b);
        return false;  // first hit is the lexicographic minimum
    });
    return best;
}

// Searches complements B of `a`, then complements C of B; the first pair
// (least B, then least C) witnesses that `a` is doubly complemented.
inline std::optional<std::pair<Configuration, Configuration>> is_doubly_complemented(
    const AbelianGroupSpec& spec, const Configuration& a) {
    GroupTable t = GroupTable::from_spec(spec);
    Configuration as = normalized(a);
    require(!as.empty() && as.back() < t.n && as.front() >= 0, "subset out of range");
    std::optional<std::pair<Configuration, Configuration>> found;
    detail::for_each_complement(t, mask_of(as), [&](Mask b) {
        std::optional<Configuration> c;
        detail::for_each_complement(t, b, [&](Mask cm) {
            c = config_of(cm);
            return false;
        });
        if (c) {
            found = std::make_pair(config_of(b), std::move(*c));
            return false;
        }
        return true;
    });
    return found;
}

struct HajosResult {
    bool holds = true;
    std::optional<FactorizationCertificate> counterexample;
    long long checked = 0;  // factorizations (brute/demi) or subsets (semi) examined
};

enum class HajosVariant { semi, demi };

namespace detail {

inline std::vector<int> divisors_of(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

// Enumerates subsets containing 0 size-major: the requested sizes in order,
// and within one size in lexicographic order of the sorted element list;
// `process` returns false to stop the sweep.
inline void for_each_zero_subset(int n, const std::vector<int>& sizes,
                                 const std::function<bool(Mask)>& process) {
    bool stop = false;
    auto rec = [&](auto&& self, Mask m, int last, int left) -> void {
        if (stop) return;
        if (left == 0) {
            if (!process(m)) stop = true;
            return;
        }
        for (int x = last + 1; x <= n - left && !stop; ++x)
            self(self, m | Mask{1} << x, x, left - 1);
    };
    for (int k : sizes) {
        if (stop) break;
        if (k >= 1 && k <= n) rec(rec, 1, 0, k - 1);
    }
}

inline FactorizationCertificate make_certificate(const AbelianGroupSpec& spec, const GroupTable& t,
                                                 Mask a, Mask b) {
    FactorizationCertificate c;
    c.group = spec.text();
    c.subset = config_of(a);
    c.complement = config_of(b);
    if (auto p = t.least_period(b)) c.periodic = p;
    else if (auto p2 = t.least_period(a)) c.periodic = p2;
    return c;
}

}  // namespace detail

// Exhaustive Hajos check: every factorization G = A + B (normalized so that
// 0 is in A and in B, which is harmless since periodicity is translation
// invariant) must have a periodic factor.  Counterexamples are reported
// size-major in A and depth-first in B, so the returned one is the least in
// that order.
inline HajosResult hajos_brute(const AbelianGroupSpec& spec, int cap = Caps{}.hajos_cap) {
    int n = spec.order();
    if (n > cap) throw CapExceeded("group order exceeds the factorization sweep cap");
    GroupTable t = GroupTable::from_spec(spec);
    HajosResult res;
    detail::for_each_zero_subset(n, detail::divisors_of(n), [&](Mask a) {
        bool a_periodic = t.least_period(a).has_value();
        detail::for_each_complement(t, a, [&](Mask b) {
            ++res.checked;
            if (!a_periodic && !t.least_period(b)) {
                res.holds = false;
                res.counterexample = detail::make_certificate(spec, t, a, b);
                return false;
            }
            return true;
        });
        return res.holds;
    });
    return res;
}

// semi: every complemented proper non-empty subset is periodic or has a
// periodic complement.  demi: in every factorization, one factor satisfies
// that disjunction.  Both quantifiers over complements are decided exactly by
// the subgroup-quotient oracle.
inline HajosResult hajos_check(const AbelianGroupSpec& spec, HajosVariant variant,
                               int cap = Caps{}.hajos_cap) {
    int n = spec.order();
    if (n > cap) throw CapExceeded("group order exceeds the factorization sweep cap");
    GroupTable t = GroupTable::from_spec(spec);
    detail::PeriodicComplementOracle oracle(t);
    HajosResult res;
    std::vector<int> sizes = detail::divisors_of(n);
    if (variant == HajosVariant::semi) {
        sizes.pop_back();  // the whole group is trivially complemented by {0}
        detail::for_each_zero_subset(n, sizes, [&](Mask a) {
            ++res.checked;
            if (t.least_period(a)) return true;
            if (oracle.query(a)) return true;
            // not periodic, no periodic complement: fails iff complemented at all
            if (!detail::has_complement(t, a)) return true;
            detail::for_each_complement(t, a, [&](Mask b) {
                res.counterexample = detail::make_certificate(spec, t, a, b);
                return false;
            });
            res.holds = false;
            return false;
        });
    } else {
        std::unordered_map<Mask, bool> semiok_memo;
        auto semiok = [&](Mask s) {
            auto it = semiok_memo.find(s);
            if (it != semiok_memo.end()) return it->second;
            bool ok = t.least_period(s).has_value() || oracle.query(s);
            semiok_memo.emplace(s, ok);
            return ok;
        };
        detail::for_each_zero_subset(n, sizes, [&](Mask a) {
            detail::for_each_complement(t, a, [&](Mask b) {
                ++res.checked;
                if (!semiok(a) && !semiok(b)) {
                    res.holds = false;
                    res.counterexample = detail::make_certificate(spec, t, a, b);
                    return false;
                }
                return true;
            });
            return res.holds;
        });
    }
    return res;
}

}  // namespace kaleido
