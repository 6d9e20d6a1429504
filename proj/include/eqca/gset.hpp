#pragma once
// Finite G-sets and equivariant maps; pullbacks, dependent products
// (section objects), bispans and their composition.
#include "grp.hpp"
#include <functional>
#include <map>
#include <utility>

namespace eqca {

constexpr long long kSectionCap = 1 << 20;

struct GSet {
    const Group* G = nullptr;
    int n = 0;
    std::vector<std::vector<int>> act; // act[g][x] = g.x

    int a(int g, int x) const { return act[g][x]; }

    void validate() const {
        if (!G) fail(ErrKind::validation, "gset: no group");
        if (int(act.size()) != G->n) fail(ErrKind::validation, "gset: bad action height");
        for (auto& row : act) {
            if (int(row.size()) != n) fail(ErrKind::validation, "gset: bad action width");
            for (int v : row)
                if (v < 0 || v >= n) fail(ErrKind::validation, "gset: point out of range");
        }
        for (int x = 0; x < n; ++x)
            if (act[G->e][x] != x) fail(ErrKind::validation, "gset: identity must act trivially");
        for (int g = 0; g < G->n; ++g)
            for (int h = 0; h < G->n; ++h)
                for (int x = 0; x < n; ++x)
                    if (act[G->mul[g][h]][x] != act[g][act[h][x]])
                        fail(ErrKind::validation, "gset: action not associative");
    }
    bool same_as(const GSet& o) const { return G == o.G && n == o.n && act == o.act; }
};

struct GMap {
    int src = 0, dst = 0;
    std::vector<int> v;
    int operator()(int x) const { return v[x]; }
};

inline GMap identity_map(const GSet& X) {
    GMap m{X.n, X.n, std::vector<int>(X.n)};
    for (int i = 0; i < X.n; ++i) m.v[i] = i;
    return m;
}

inline GMap compose(const GMap& first, const GMap& then) {
    if (first.dst != then.src) fail(ErrKind::internal, "map composition size mismatch");
    GMap m{first.src, then.dst, std::vector<int>(first.src)};
    for (int i = 0; i < first.src; ++i) m.v[i] = then.v[first.v[i]];
    return m;
}

inline void check_map(const GSet& X, const GSet& Y, const GMap& u) {
    if (u.src != X.n || u.dst != Y.n || int(u.v.size()) != X.n)
        fail(ErrKind::validation, "gmap: size mismatch");
    for (int x : u.v)
        if (x < 0 || x >= Y.n) fail(ErrKind::validation, "gmap: value out of range");
    for (int g = 0; g < X.G->n; ++g)
        for (int x = 0; x < X.n; ++x)
            if (u.v[X.a(g, x)] != Y.a(g, u.v[x]))
                fail(ErrKind::validation, "gmap: not equivariant");
}

inline int stabilizer(const GSet& X, int x) {
    std::vector<int> elems;
    for (int g = 0; g < X.G->n; ++g)
        if (X.a(g, x) == x) elems.push_back(g);
    return X.G->find_subgroup(elems);
}

struct OrbitInfo {
    std::vector<int> points; // sorted
    int base;                // = points.front()
    int stab;                // subgroup id of the base point's stabilizer
};

struct OrbitDecomp {
    std::vector<OrbitInfo> orbits;
    std::vector<int> orbit_idx;   // per point
    std::vector<int> transporter; // u with u.base = point, per point
};

inline OrbitDecomp orbit_decomposition(const GSet& X) {
    OrbitDecomp d;
    d.orbit_idx.assign(X.n, -1);
    d.transporter.assign(X.n, X.G ? X.G->e : 0);
    for (int x = 0; x < X.n; ++x) {
        if (d.orbit_idx[x] >= 0) continue;
        OrbitInfo o;
        o.base = x;
        int id = int(d.orbits.size());
        for (int g = 0; g < X.G->n; ++g) {
            int y = X.a(g, x);
            if (d.orbit_idx[y] < 0) {
                d.orbit_idx[y] = id;
                d.transporter[y] = g;
                o.points.push_back(y);
            }
        }
        std::sort(o.points.begin(), o.points.end());
        o.stab = stabilizer(X, x);
        d.orbits.push_back(std::move(o));
    }
    return d;
}

// --- constructors -----------------------------------------------------------

// cosets of the subgroup, indexed in order of least element
inline GSet orbit_set(const Group& G, int sub_id) {
    auto reps = G.coset_reps(G.full_id, sub_id);
    // coset of g = sorted element list; order cosets by least element
    std::vector<std::vector<int>> cosets;
    for (int r : reps) {
        std::vector<int> c;
        for (int s : G.subgroups[sub_id].elems) c.push_back(G.mul[r][s]);
        std::sort(c.begin(), c.end());
        cosets.push_back(c);
    }
    std::sort(cosets.begin(), cosets.end());
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < int(cosets.size()); ++i) idx[cosets[i]] = i;
    GSet X;
    X.G = &G;
    X.n = int(cosets.size());
    X.act.assign(G.n, std::vector<int>(X.n));
    for (int g = 0; g < G.n; ++g)
        for (int i = 0; i < X.n; ++i) {
            std::vector<int> c;
            for (int x : cosets[i]) c.push_back(G.mul[g][x]);
            std::sort(c.begin(), c.end());
            X.act[g][i] = idx.at(c);
        }
    return X;
}

inline GSet point_set(const Group& G) { return orbit_set(G, G.full_id); }
inline GSet free_set(const Group& G) { return orbit_set(G, G.triv_id); }

inline GSet empty_set(const Group& G) {
    GSet X;
    X.G = &G;
    X.n = 0;
    X.act.assign(G.n, {});
    return X;
}

struct Coproduct { GSet X; GMap in_left, in_right; };
inline Coproduct disjoint_union(const GSet& A, const GSet& B) {
    GSet X;
    X.G = A.G;
    X.n = A.n + B.n;
    X.act.assign(A.G->n, std::vector<int>(X.n));
    for (int g = 0; g < A.G->n; ++g) {
        for (int i = 0; i < A.n; ++i) X.act[g][i] = A.act[g][i];
        for (int j = 0; j < B.n; ++j) X.act[g][A.n + j] = A.n + B.act[g][j];
    }
    GMap il{A.n, X.n, {}}, ir{B.n, X.n, {}};
    for (int i = 0; i < A.n; ++i) il.v.push_back(i);
    for (int j = 0; j < B.n; ++j) ir.v.push_back(A.n + j);
    return {std::move(X), std::move(il), std::move(ir)};
}

struct Product { GSet X; GMap pr_left, pr_right; };
inline Product product_set(const GSet& A, const GSet& B) {
    GSet X;
    X.G = A.G;
    X.n = A.n * B.n;
    X.act.assign(A.G->n, std::vector<int>(X.n));
    for (int g = 0; g < A.G->n; ++g)
        for (int i = 0; i < A.n; ++i)
            for (int j = 0; j < B.n; ++j)
                X.act[g][i * B.n + j] = A.act[g][i] * B.n + B.act[g][j];
    GMap pl{X.n, A.n, std::vector<int>(X.n)}, pr{X.n, B.n, std::vector<int>(X.n)};
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < B.n; ++j) {
            pl.v[i * B.n + j] = i;
            pr.v[i * B.n + j] = j;
        }
    return {std::move(X), std::move(pl), std::move(pr)};
}

namespace detail {
// coset element sets of sub in G, in the point order used by orbit_set
inline std::vector<std::vector<int>> coset_elem_sets(const Group& G, int sub_id) {
    std::vector<std::vector<int>> cosets;
    for (int r : G.coset_reps(G.full_id, sub_id)) {
        std::vector<int> c;
        for (int s : G.subgroups[sub_id].elems) c.push_back(G.mul[r][s]);
        std::sort(c.begin(), c.end());
        cosets.push_back(c);
    }
    std::sort(cosets.begin(), cosets.end());
    return cosets;
}
} // namespace detail

// the map G/K -> G/H sending each coset mK to mH, for K <= H
inline GMap projection_map(const Group& G, const GSet& GK, const GSet& GH, int k_id, int h_id) {
    if (!G.leq(k_id, h_id)) fail(ErrKind::validation, "projection: not a subgroup inclusion");
    auto ck = detail::coset_elem_sets(G, k_id);
    auto ch = detail::coset_elem_sets(G, h_id);
    std::map<std::vector<int>, int> hidx;
    for (int i = 0; i < int(ch.size()); ++i) hidx[ch[i]] = i;
    GMap u{GK.n, GH.n, std::vector<int>(GK.n)};
    for (int i = 0; i < GK.n; ++i) {
        int m = ck[i].front();
        std::vector<int> c;
        for (int s : G.subgroups[h_id].elems) c.push_back(G.mul[m][s]);
        std::sort(c.begin(), c.end());
        u.v[i] = hidx.at(c);
    }
    return u;
}

// --- pullback ---------------------------------------------------------------

struct PullbackResult {
    GSet P;
    GMap to_left, to_right;
    std::vector<std::pair<int, int>> points;
};

inline PullbackResult pullback(const GSet& X, const GMap& f, const GSet& Y, const GMap& g,
                               const GSet& Z) {
    check_map(X, Z, f);
    check_map(Y, Z, g);
    PullbackResult r;
    std::map<std::pair<int, int>, int> idx;
    for (int x = 0; x < X.n; ++x)
        for (int y = 0; y < Y.n; ++y)
            if (f.v[x] == g.v[y]) {
                idx[{x, y}] = int(r.points.size());
                r.points.push_back({x, y});
            }
    r.P.G = X.G;
    r.P.n = int(r.points.size());
    r.P.act.assign(X.G->n, std::vector<int>(r.P.n));
    for (int k = 0; k < X.G->n; ++k)
        for (int i = 0; i < r.P.n; ++i)
            r.P.act[k][i] = idx.at({X.a(k, r.points[i].first), Y.a(k, r.points[i].second)});
    r.to_left = {r.P.n, X.n, {}};
    r.to_right = {r.P.n, Y.n, {}};
    for (auto& [x, y] : r.points) {
        r.to_left.v.push_back(x);
        r.to_right.v.push_back(y);
    }
    return r;
}

// --- dependent product ------------------------------------------------------

// Data of the distributivity construction for p: A -> X and g: X -> Y.
// Pi points are pairs (y, s) with s a section of p over the fiber of g at y;
// the section values are stored aligned with the sorted fiber points.
struct DependentProduct {
    GSet Pi;
    GMap q; // Pi -> Y
    std::vector<int> pi_y;
    std::vector<std::vector<int>> pi_s;
    std::vector<std::vector<int>> fiber; // fiber[y] = sorted g^{-1}(y)
    GSet XP;                             // X x_Y Pi
    GMap xp_to_x, xp_to_pi;
    GMap ev; // XP -> A, evaluation of sections
};

inline DependentProduct dependent_product(const GSet& A, const GMap& p, const GSet& X,
                                          const GMap& g, const GSet& Y,
                                          long long section_cap = kSectionCap) {
    check_map(A, X, p);
    check_map(X, Y, g);
    DependentProduct d;
    d.fiber.assign(Y.n, {});
    for (int x = 0; x < X.n; ++x) d.fiber[g.v[x]].push_back(x);
    std::vector<std::vector<int>> pfiber(X.n);
    for (int a = 0; a < A.n; ++a) pfiber[p.v[a]].push_back(a);
    // enumerate sections per y with a global cap
    long long total = 0;
    std::map<std::pair<int, std::vector<int>>, int> idx;
    for (int y = 0; y < Y.n; ++y) {
        long long count = 1;
        for (int x : d.fiber[y]) {
            count *= std::max<size_t>(pfiber[x].size(), 0);
            if (count > section_cap)
                fail(ErrKind::resource_cap, "dependent product: section count exceeds cap");
            if (count == 0) break;
        }
        total += count;
        if (total > section_cap)
            fail(ErrKind::resource_cap, "dependent product: section count exceeds cap");
        // odometer over the fiber
        int m = int(d.fiber[y].size());
        if (count == 0) continue;
        std::vector<int> pos(m, 0);
        while (true) {
            std::vector<int> s(m);
            for (int i = 0; i < m; ++i) s[i] = pfiber[d.fiber[y][i]][pos[i]];
            idx[{y, s}] = int(d.pi_y.size());
            d.pi_y.push_back(y);
            d.pi_s.push_back(std::move(s));
            int i = m - 1;
            while (i >= 0 && pos[i] + 1 == int(pfiber[d.fiber[y][i]].size())) pos[i--] = 0;
            if (i < 0) break;
            ++pos[i];
        }
    }
    d.Pi.G = X.G;
    d.Pi.n = int(d.pi_y.size());
    d.Pi.act.assign(X.G->n, std::vector<int>(d.Pi.n));
    const Group& G = *X.G;
    for (int k = 0; k < G.n; ++k)
        for (int i = 0; i < d.Pi.n; ++i) {
            int y = d.pi_y[i], y2 = Y.a(k, y);
            int m = int(d.fiber[y2].size());
            std::vector<int> s2(m);
            int kinv = G.inv[k];
            for (int j = 0; j < m; ++j) {
                int x2 = d.fiber[y2][j];
                int x = X.a(kinv, x2);
                int posx = int(std::lower_bound(d.fiber[y].begin(), d.fiber[y].end(), x) -
                               d.fiber[y].begin());
                s2[j] = A.a(k, d.pi_s[i][posx]);
            }
            d.Pi.act[k][i] = idx.at({y2, s2});
        }
    d.q = {d.Pi.n, Y.n, d.pi_y};
    auto pb = pullback(X, g, d.Pi, d.q, Y);
    d.XP = std::move(pb.P);
    d.xp_to_x = std::move(pb.to_left);
    d.xp_to_pi = std::move(pb.to_right);
    d.ev = {d.XP.n, A.n, std::vector<int>(d.XP.n)};
    for (int i = 0; i < d.XP.n; ++i) {
        auto [x, pi] = pb.points[i];
        int y = d.pi_y[pi];
        int posx =
            int(std::lower_bound(d.fiber[y].begin(), d.fiber[y].end(), x) - d.fiber[y].begin());
        d.ev.v[i] = d.pi_s[pi][posx];
    }
    return d;
}

// --- bispans ----------------------------------------------------------------

// X <-f- S -g-> T -h-> Y
struct Bispan {
    GSet X, Y, S, T;
    GMap f, g, h;

    void validate() const {
        check_map(S, X, f);
        check_map(S, T, g);
        check_map(T, Y, h);
    }
};

inline Bispan identity_bispan(const GSet& X) {
    return {X, X, X, X, identity_map(X), identity_map(X), identity_map(X)};
}

// restriction along u: Y -> X, as a bispan from X to Y
inline Bispan restriction_bispan(const GSet& X, const GSet& Y, const GMap& u) {
    check_map(Y, X, u);
    return {X, Y, Y, Y, u, identity_map(Y), identity_map(Y)};
}

// norm along u: X -> Y
inline Bispan norm_bispan(const GSet& X, const GSet& Y, const GMap& u) {
    check_map(X, Y, u);
    return {X, Y, X, Y, identity_map(X), u, identity_map(Y)};
}

// transfer along u: X -> Y
inline Bispan transfer_bispan(const GSet& X, const GSet& Y, const GMap& u) {
    check_map(X, Y, u);
    return {X, Y, X, X, identity_map(X), identity_map(X), u};
}

// pointwise semantics on functions with values in a commutative ring:
// (result)(y) = sum_{t in h^-1(y)} prod_{s in g^-1(t)} omega(f(s))
inline std::vector<Int> bispan_apply(const Bispan& b, const std::vector<Int>& omega) {
    if (int(omega.size()) != b.X.n) fail(ErrKind::validation, "bispan apply: size mismatch");
    std::vector<Int> out(b.Y.n, 0);
    for (int y = 0; y < b.Y.n; ++y)
        for (int t = 0; t < b.T.n; ++t) {
            if (b.h.v[t] != y) continue;
            Int prod = 1;
            for (int s = 0; s < b.S.n; ++s)
                if (b.g.v[s] == t) prod *= omega[b.f.v[s]];
            out[y] += prod;
        }
    return out;
}

// second bispan after the first: X -> Y -> Z
inline Bispan compose_bispans(const Bispan& b2 /* Y -> Z */, const Bispan& b1 /* X -> Y */,
                              long long section_cap = kSectionCap) {
    if (!b1.Y.same_as(b2.X)) fail(ErrKind::validation, "bispan composition endpoint mismatch");
    // 1. pull the transfer leg of b1 past the restriction leg of b2:
    //    Q = T1 x_Y S2
    auto q1 = pullback(b1.T, b1.h, b2.S, b2.f, b1.Y);
    // 2. distribute the norm of b2 over the transfer: sections of Q -> S2 along g2
    auto dp = dependent_product(q1.P, q1.to_right, b2.S, b2.g, b2.T, section_cap);
    // 3. the combined restriction lands in T1
    GMap r = compose(dp.ev, q1.to_left); // XP -> T1
    // 4. base change the norm of b1 along r: P = S1 x_T1 XP
    auto q2 = pullback(b1.S, b1.g, dp.XP, r, b1.T);
    // 5. assemble
    Bispan c;
    c.X = b1.X;
    c.Y = b2.Y;
    c.S = q2.P;
    c.T = dp.Pi;
    c.f = compose(q2.to_left, b1.f);
    c.g = compose(q2.to_right, dp.xp_to_pi);
    c.h = compose(dp.q, b2.h);
    c.validate();
    return c;
}

// --- isomorphism of bispans -------------------------------------------------

namespace detail {

// enumerate equivariant bijections U -> V subject to a pointwise constraint;
// invoke the callback for each; return true if any callback returns true
template <class Ok, class Cb>
bool equivariant_bijections(const GSet& U, const GSet& V, Ok&& ok, Cb&& cb) {
    if (U.n != V.n) return false;
    auto du = orbit_decomposition(U);
    std::vector<int> img(U.n, -1);
    std::vector<char> used(V.n, 0);
    const Group& G = *U.G;
    std::function<bool(size_t)> rec = [&](size_t oi) -> bool {
        if (oi == du.orbits.size()) return cb(img);
        const auto& orb = du.orbits[oi];
        for (int cand = 0; cand < V.n; ++cand) {
            if (used[cand]) continue;
            if (stabilizer(V, cand) != orb.stab) continue;
            // extend equivariantly over the orbit
            bool good = true;
            std::vector<std::pair<int, int>> placed;
            for (int pt : orb.points) {
                int u = du.transporter[pt]; // u.base = pt
                int im = V.a(u, cand);
                if (img[pt] != -1 || used[im]) { good = false; break; }
                if (!ok(pt, im)) { good = false; break; }
                img[pt] = im;
                used[im] = 1;
                placed.push_back({pt, im});
            }
            if (good) {
                // verify full equivariance on this partial map (guards against
                // ill-defined extension when stabilizers differ by labeling)
                for (auto& [pt, im] : placed) {
                    for (int g = 0; g < G.n && good; ++g)
                        if (img[U.a(g, pt)] != -1 && img[U.a(g, pt)] != V.a(g, im)) good = false;
                    if (!good) break;
                }
            }
            if (good && rec(oi + 1)) return true;
            for (auto& [pt, im] : placed) {
                img[pt] = -1;
                used[im] = 0;
            }
        }
        return false;
    };
    return rec(0);
}

} // namespace detail

// diagram isomorphism over identical endpoints X and Y
inline bool bispans_isomorphic(const Bispan& a, const Bispan& b) {
    if (!a.X.same_as(b.X) || !a.Y.same_as(b.Y)) return false;
    if (a.S.n != b.S.n || a.T.n != b.T.n) return false;
    // match T first (h and g-fiber signatures), then S fiberwise
    return detail::equivariant_bijections(
        a.T, b.T, [&](int t, int t2) { return a.h.v[t] == b.h.v[t2]; },
        [&](const std::vector<int>& tau) {
            return detail::equivariant_bijections(
                a.S, b.S,
                [&](int s, int s2) {
                    return a.f.v[s] == b.f.v[s2] && tau[a.g.v[s]] == b.g.v[s2];
                },
                [&](const std::vector<int>&) { return true; });
        });
}

} // namespace eqca
