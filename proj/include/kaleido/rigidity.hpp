#pragma once

#include <array>
#include <set>

#include "rational.hpp"

namespace kaleido {

struct PlanarPoint {
    Rat x, y;
    bool operator==(const PlanarPoint&) const = default;
};

// A finite set of points with exact rational coordinates.
struct PlanarPointSet {
    std::vector<PlanarPoint> pts;
};

// A point with coordinates a + b*sqrt(tau) over a shared radicand tau >= 0.
// Canonical form: tau == 0 for rational points (bx == by == 0); otherwise tau
// is positive and not a perfect rational square, so the point is irrational.
struct QuadPoint {
    Rat ax, bx, ay, by, tau;
    bool rational() const { return tau == 0; }
};

// Puts a candidate point into canonical form (folds square radicands).
inline QuadPoint canonical_quad(QuadPoint p) {
    if (p.bx == 0 && p.by == 0) {
        p.tau = 0;
        return p;
    }
    Rat root = 0;
    if (p.tau == 0 || is_perfect_square(p.tau, &root)) {
        p.ax += p.bx * root;
        p.ay += p.by * root;
        p.bx = p.by = 0;
        p.tau = 0;
    }
    return p;
}

// Exact test: does p lie on the circle centered at c with squared radius r2?
// Substituting a + b*sqrt(tau) splits the equation into a rational part and a
// sqrt(tau) part; both must vanish.
inline bool on_circle(const QuadPoint& p, const PlanarPoint& c, const Rat& r2) {
    Rat dx = p.ax - c.x, dy = p.ay - c.y;
    Rat rational_part = dx * dx + p.bx * p.bx * p.tau + dy * dy + p.by * p.by * p.tau - r2;
    Rat surd_part = 2 * dx * p.bx + 2 * dy * p.by;
    return rational_part == 0 && (p.tau == 0 || surd_part == 0);
}

inline bool in_point_set(const QuadPoint& p, const PlanarPointSet& k) {
    if (!p.rational()) return false;  // members have rational coordinates
    for (const auto& q : k.pts)
        if (q.x == p.ax && q.y == p.ay) return true;
    return false;
}

struct RigidityWitness {
    std::array<int, 3> centers;
    std::array<Rat, 3> radii_sq;
    QuadPoint point;
};

struct RigidityResult {
    bool rigid = true;
    std::optional<RigidityWitness> witness;
    long long triples_checked = 0;
};

inline Rat dist_sq(const PlanarPoint& a, const PlanarPoint& b) {
    Rat dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

namespace detail {

// Common points of three circles with distinct centers, exactly.  The two
// radical axes are linear; distinct centers make each one a proper line.
inline std::vector<QuadPoint> three_circle_intersection(const PlanarPoint& c1, const Rat& r1,
                                                        const PlanarPoint& c2, const Rat& r2,
                                                        const PlanarPoint& c3, const Rat& r3) {
    // axis(ci, cj): 2(cj-ci).(X,Y) = rj_missing ... written as a*X + b*Y = c
    auto axis = [](const PlanarPoint& p, const Rat& rp, const PlanarPoint& q, const Rat& rq) {
        std::array<Rat, 3> line;
        line[0] = 2 * (q.x - p.x);
        line[1] = 2 * (q.y - p.y);
        line[2] = rp - rq + q.x * q.x - p.x * p.x + q.y * q.y - p.y * p.y;
        return line;
    };
    auto l12 = axis(c1, r1, c2, r2);
    auto l13 = axis(c1, r1, c3, r3);
    Rat det = l12[0] * l13[1] - l12[1] * l13[0];
    std::vector<QuadPoint> out;
    if (det != 0) {
        // non-collinear centers: unique rational candidate, then verify
        QuadPoint p;
        p.ax = (l12[2] * l13[1] - l12[1] * l13[2]) / det;
        p.ay = (l12[0] * l13[2] - l12[2] * l13[0]) / det;
        p.bx = p.by = p.tau = 0;
        if (on_circle(p, c1, r1)) out.push_back(p);
        return out;
    }
    // collinear centers: the axes are parallel; a common point needs one line
    auto proportional = [](const std::array<Rat, 3>& u, const std::array<Rat, 3>& v) {
        return u[0] * v[1] == u[1] * v[0] && u[0] * v[2] == u[2] * v[0] &&
               u[1] * v[2] == u[2] * v[1];
    };
    if (!proportional(l12, l13)) return out;
    const auto& L = (l12[0] != 0 || l12[1] != 0) ? l12 : l13;
    if (L[0] == 0 && L[1] == 0) return out;  // degenerate axis (equal circles) — no constraint line
    // foot of the perpendicular from c1 onto L, then offset by sqrt(tau)
    Rat nn = L[0] * L[0] + L[1] * L[1];
    Rat lam = (L[2] - (L[0] * c1.x + L[1] * c1.y)) / nn;
    PlanarPoint foot{c1.x + lam * L[0], c1.y + lam * L[1]};
    Rat h2 = r1 - dist_sq(foot, c1);
    if (h2 < 0) return out;
    // direction along L is (L[1], -L[0]); offset t with t^2 = h2 / nn
    QuadPoint plus;
    plus.ax = foot.x;
    plus.ay = foot.y;
    plus.bx = L[1];
    plus.by = -L[0];
    plus.tau = h2 / nn;
    plus = canonical_quad(plus);
    if (on_circle(plus, c2, r2) && on_circle(plus, c3, r3)) out.push_back(plus);
    if (h2 > 0) {
        QuadPoint minus;
        minus.ax = foot.x;
        minus.ay = foot.y;
        minus.bx = -L[1];
        minus.by = L[0];
        minus.tau = h2 / nn;
        minus = canonical_quad(minus);
        if (on_circle(minus, c2, r2) && on_circle(minus, c3, r3)) out.push_back(minus);
    }
    return out;
}

}  // namespace detail

// K is rigid iff every common point of three spheres centered in K with radii
// from the distance set of K lies in K.  All candidates have coordinates in a
// real quadratic extension and are decided exactly; irrational candidates are
// automatically outside K.  Iteration is canonical (triples by index, then
// squared radii ascending), so the first witness found is deterministic.
inline RigidityResult rigidity_check(const PlanarPointSet& k) {
    const int n = static_cast<int>(k.pts.size());
    require(n >= 3, "rigidity needs at least three points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(!(k.pts[i] == k.pts[j]), "points must be pairwise distinct");

    std::vector<Rat> dists;  // distinct non-zero squared distances, ascending
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) dists.push_back(dist_sq(k.pts[i], k.pts[j]));
    std::sort(dists.begin(), dists.end());
    dists.erase(std::unique(dists.begin(), dists.end()), dists.end());

    RigidityResult res;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int t = j + 1; t < n; ++t)
                for (const Rat& ri : dists)
                    for (const Rat& rj : dists)
                        for (const Rat& rt : dists) {
                            ++res.triples_checked;
                            auto common = detail::three_circle_intersection(
                                k.pts[i], ri, k.pts[j], rj, k.pts[t], rt);
                            for (const auto& p : common) {
                                if (in_point_set(p, k)) continue;
                                res.rigid = false;
                                res.witness = RigidityWitness{{i, j, t}, {ri, rj, rt}, p};
                                return res;
                            }
                        }
    return res;
}

// Re-checks a rigidity witness: well-formed canonical point, on all three
// circles, radii drawn from the distance set, and outside K.
inline VerifyResult verify_rigidity_witness(const PlanarPointSet& k, const RigidityWitness& w) {
    const int n = static_cast<int>(k.pts.size());
    for (int c : w.centers)
        if (c < 0 || c >= n) return {false, "witness center index out of range"};
    if (w.centers[0] == w.centers[1] || w.centers[0] == w.centers[2] ||
        w.centers[1] == w.centers[2])
        return {false, "witness centers must be distinct"};
    std::set<Rat> dset;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) dset.insert(dist_sq(k.pts[i], k.pts[j]));
    for (const Rat& r : w.radii_sq)
        if (!dset.count(r)) return {false, "witness radius is not a distance of the set"};
    QuadPoint p = w.point;
    if (p.tau < 0) return {false, "negative radicand"};
    if (p.tau != 0 && is_perfect_square(p.tau))
        return {false, "witness point is not in canonical form"};
    if (p.tau == 0 && !(p.bx == 0 && p.by == 0))
        return {false, "witness point is not in canonical form"};
    if (p.tau != 0 && p.bx == 0 && p.by == 0)
        return {false, "witness point is not in canonical form"};
    for (int idx = 0; idx < 3; ++idx)
        if (!on_circle(p, k.pts[w.centers[idx]], w.radii_sq[idx]))
            return {false, "witness point misses a sphere"};
    if (in_point_set(p, k)) return {false, "witness point lies in the set"};
    return {true, ""};
}

}  // namespace kaleido
