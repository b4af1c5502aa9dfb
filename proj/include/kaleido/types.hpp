#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kaleido {

// A configuration is a sorted list of distinct point indices of some space.
using Configuration = std::vector<int>;

// Search caps.  Exceeding a cap is an error (distinct from a negative verdict);
// a search budget of 0 means unlimited, exceeding it yields Status::unknown.
struct Caps {
    long long group_order_cap = 10'000'000;  // closure element cap
    int hajos_cap = 24;                      // max |G| for factorization sweeps
    int congruence_cap = 128;                // max lattice size for chain enumeration
    int leaf_cap = 12;                       // max leaves for ultrametric sweeps
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Status { found, absent, unknown };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::found: return "found";
        case Status::absent: return "absent";
        default: return "unknown";
    }
}

// Outcome of a budgeted search: `value` is set iff status == found,
// `nodes` counts search-tree nodes visited.
template <class T>
struct Outcome {
    Status status = Status::absent;
    std::optional<T> value;
    long long nodes = 0;
};

inline Configuration normalized(Configuration c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

// Result of re-checking a certificate or witness against its claim.
struct VerifyResult {
    bool ok = false;
    std::string reason;
    explicit operator bool() const { return ok; }
};

// Subsets of spaces with at most 64 points are manipulated as bit masks.
using Mask = std::uint64_t;

inline Mask mask_of(const Configuration& c) {
    Mask m = 0;
    for (int x : c) {
        require(0 <= x && x < 64, "point index out of mask range");
        m |= Mask{1} << x;
    }
    return m;
}

inline Configuration config_of(Mask m) {
    Configuration c;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) c.push_back(i);
    return c;
}

}  // namespace kaleido
