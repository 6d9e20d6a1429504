#pragma once
// Mackey functors on a finite group: levels at canonical subgroup
// representatives, Weyl actions, restriction/transfer on covering edges with
// all other maps derived; axioms checked numerically. Constructors for
// represented functors, values at arbitrary G-sets, shifts, box products and
// hom groups.
#include "gset.hpp"
#include "abgrp.hpp"

namespace eqca {

// A-linear map between presented groups is zero iff every column is a relation
inline bool maps_equal(const FPAb& dst, const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) return false;
    for (int c = 0; c < A.cols; ++c)
        if (!dst.eq(A.col(c), B.col(c))) return false;
    return true;
}
inline bool map_respects(const FPAb& src, const FPAb& dst, const Mat& A) {
    if (A.cols != src.n_gens || A.rows != dst.n_gens) return false;
    for (int r = 0; r < src.rels.rows; ++r)
        if (!dst.is_zero_elem(A.apply(src.rels.row(r)))) return false;
    return true;
}
// well-defined, surjective, and injective on the presented groups
inline bool map_is_isomorphism(const FPAb& src, const FPAb& dst, const Mat& A) {
    if (!map_respects(src, dst, A)) return false;
    FPAb coker(dst.n_gens, Mat::vstack(dst.rels, A.transpose()));
    if (!is_trivial_group(coker)) return false;
    Mat ker = kernel_basis(Mat::hstack(A, dst.rel_cols()));
    for (int c = 0; c < ker.cols; ++c) {
        Vec x(src.n_gens, Int(0));
        for (int i = 0; i < src.n_gens; ++i) x[i] = ker.at(i, c);
        if (!src.is_zero_elem(x)) return false;
    }
    return true;
}

struct MackeyFunctor {
    const Group* G = nullptr;
    std::vector<FPAb> level;                   // per subgroup conjugacy class
    std::vector<std::map<int, Mat>> weyl;      // class -> (n in N_G(H) -> matrix)
    std::vector<std::map<int, Mat>> res_edge;  // class -> (maximal sub id -> level -> model(S))
    std::vector<std::map<int, Mat>> tr_edge;   // class -> (maximal sub id -> model(S) -> level)
    std::vector<std::vector<std::string>> gen_names; // optional, per class

    const FPAb& model(int sub_id) const { return level[G->cls(sub_id)]; }

    Mat weyl_at(int class_id, int n) const {
        int rep = G->rep_of_class(class_id);
        if (G->contains(rep, n)) return Mat::identity(level[class_id].n_gens);
        auto it = weyl[class_id].find(n);
        if (it != weyl[class_id].end()) return it->second;
        // matrices are constant on cosets nH, so any stored coset mate works
        for (auto& [n2, A] : weyl[class_id])
            if (G->contains(rep, G->mul[G->inv[n2]][n])) return A;
        fail(ErrKind::internal, "missing weyl matrix");
    }

    // model(S) -> model(gSg^-1)
    Mat conj_map(int g, int sub_id) const {
        int s2 = G->conj_subgroup(g, sub_id);
        int n = G->mul[G->mul[G->conjugator_to_rep[s2]][g]][G->inv[G->conjugator_to_rep[sub_id]]];
        return weyl_at(G->cls(sub_id), n);
    }

    // model(H) -> model(K) for K <= H
    Mat res_map(int h_id, int k_id) const {
        if (!G->leq(k_id, h_id)) fail(ErrKind::internal, "res_map: not a subgroup");
        int ch = G->conjugator_to_rep[h_id];
        int hstar = G->subgroups[h_id].class_rep;
        int kstar = G->conj_subgroup(ch, k_id);
        Mat inner = res_canonical(hstar, kstar);
        // back from model(K*) to model(K) along conjugation by ch^{-1}
        Mat back = conj_map(G->inv[ch], kstar);
        return back * inner;
    }

    // model(K) -> model(H) for K <= H
    Mat tr_map(int h_id, int k_id) const {
        if (!G->leq(k_id, h_id)) fail(ErrKind::internal, "tr_map: not a subgroup");
        int ch = G->conjugator_to_rep[h_id];
        int hstar = G->subgroups[h_id].class_rep;
        int kstar = G->conj_subgroup(ch, k_id);
        Mat inner = tr_canonical(hstar, kstar);
        Mat fwd = conj_map(ch, k_id); // model(K) -> model(K*)
        return inner * fwd;
    }

    Mat res_canonical(int hstar, int kstar) const {
        if (hstar == kstar) return Mat::identity(level[G->cls(hstar)].n_gens);
        for (int s : G->maximal_subgroups(hstar))
            if (G->leq(kstar, s))
                return res_map(s, kstar) * res_edge[G->cls(hstar)].at(s);
        fail(ErrKind::internal, "no covering step for restriction");
    }
    Mat tr_canonical(int hstar, int kstar) const {
        if (hstar == kstar) return Mat::identity(level[G->cls(hstar)].n_gens);
        for (int s : G->maximal_subgroups(hstar))
            if (G->leq(kstar, s))
                return tr_edge[G->cls(hstar)].at(s) * tr_map(s, kstar);
        fail(ErrKind::internal, "no covering step for transfer");
    }
};

// --- validation -------------------------------------------------------------

inline void validate_mackey(const MackeyFunctor& M) {
    const Group& G = *M.G;
    if (int(M.level.size()) != int(G.classes.size()))
        fail(ErrKind::validation, "level count does not match subgroup classes");
    for (int c = 0; c < int(G.classes.size()); ++c) {
        int rep = G.rep_of_class(c);
        // weyl data: complete, homomorphic, identity on the subgroup itself
        for (int n : G.normalizer_elems(rep)) {
            Mat A = M.weyl_at(c, n);
            if (!map_respects(M.level[c], M.level[c], A))
                fail(ErrKind::validation, "weyl matrix does not respect level relations");
        }
        for (int n1 : G.normalizer_elems(rep))
            for (int n2 : G.normalizer_elems(rep)) {
                if (!maps_equal(M.level[c], M.weyl_at(c, G.mul[n1][n2]),
                                M.weyl_at(c, n1) * M.weyl_at(c, n2)))
                    fail(ErrKind::validation, "weyl action is not a group action");
            }
        // edges present and relation-respecting
        for (int s : G.maximal_subgroups(rep)) {
            if (!M.res_edge[c].count(s) || !M.tr_edge[c].count(s))
                fail(ErrKind::validation, "missing restriction/transfer edge");
            const FPAb& sub = M.level[G.cls(s)];
            if (!map_respects(M.level[c], sub, M.res_edge[c].at(s)))
                fail(ErrKind::validation, "restriction edge does not respect relations");
            if (!map_respects(sub, M.level[c], M.tr_edge[c].at(s)))
                fail(ErrKind::validation, "transfer edge does not respect relations");
        }
    }
    // path independence: all covering chains from H to K agree
    for (int c = 0; c < int(G.classes.size()); ++c) {
        int h = G.rep_of_class(c);
        for (int k : G.subgroups_of(h)) {
            if (k == h) continue;
            Mat r0 = M.res_map(h, k), t0 = M.tr_map(h, k);
            for (int s : G.maximal_subgroups(h)) {
                if (!G.leq(k, s)) continue;
                Mat r1 = M.res_map(s, k) * M.res_edge[c].at(s);
                if (!maps_equal(M.model(k), r0, r1))
                    fail(ErrKind::validation, "restriction is path-dependent");
                Mat t1 = M.tr_edge[c].at(s) * M.tr_map(s, k);
                if (!maps_equal(M.level[c], t0, t1))
                    fail(ErrKind::validation, "transfer is path-dependent");
            }
        }
    }
    // conjugation functoriality
    for (int s = 0; s < int(G.subgroups.size()); ++s) {
        for (int x : G.subgroups[s].elems)
            if (!maps_equal(M.model(s), M.conj_map(x, s), Mat::identity(M.model(s).n_gens)))
                fail(ErrKind::validation, "inner conjugation must be the identity");
        for (int g1 = 0; g1 < G.n; ++g1)
            for (int g2 = 0; g2 < G.n; ++g2) {
                int s2 = G.conj_subgroup(g2, s);
                Mat lhs = M.conj_map(G.mul[g1][g2], s);
                Mat rhs = M.conj_map(g1, s2) * M.conj_map(g2, s);
                if (!maps_equal(M.model(G.conj_subgroup(g1, s2)), lhs, rhs))
                    fail(ErrKind::validation, "conjugation is not functorial");
            }
    }
    // naturality of conjugation against restriction and transfer
    for (int c = 0; c < int(G.classes.size()); ++c) {
        int h = G.rep_of_class(c);
        for (int k : G.subgroups_of(h)) {
            for (int g = 0; g < G.n; ++g) {
                int h2 = G.conj_subgroup(g, h), k2 = G.conj_subgroup(g, k);
                Mat lhs = M.conj_map(g, k) * M.res_map(h, k);
                Mat rhs = M.res_map(h2, k2) * M.conj_map(g, h);
                if (!maps_equal(M.model(k2), lhs, rhs))
                    fail(ErrKind::validation, "restriction is not conjugation-natural");
                Mat lhs2 = M.conj_map(g, h) * M.tr_map(h, k);
                Mat rhs2 = M.tr_map(h2, k2) * M.conj_map(g, k);
                if (!maps_equal(M.model(h2), lhs2, rhs2))
                    fail(ErrKind::validation, "transfer is not conjugation-natural");
            }
        }
    }
    // double coset formula on every canonical level
    for (int c = 0; c < int(G.classes.size()); ++c) {
        int h = G.rep_of_class(c);
        for (int l : G.subgroups_of(h))
            for (int k : G.subgroups_of(h)) {
                Mat lhs = M.res_map(h, l) * M.tr_map(h, k);
                Mat rhs = Mat::zero(M.model(l).n_gens, M.model(k).n_gens);
                for (auto& dc : G.double_cosets(h, l, k)) {
                    int gk = G.conj_subgroup(dc.rep, k);
                    Mat term = M.tr_map(l, dc.intersection) *
                               M.res_map(gk, dc.intersection) * M.conj_map(dc.rep, k);
                    rhs = rhs + term;
                }
                if (!maps_equal(M.model(l), lhs, rhs))
                    fail(ErrKind::validation, "double coset formula fails");
            }
    }
}

// --- values at arbitrary G-sets ---------------------------------------------

struct MackeyValue {
    OrbitDecomp dec;
    std::vector<int> offset;
    int total = 0;
    FPAb group{0};
};

inline MackeyValue value_at(const MackeyFunctor& M, const GSet& X) {
    MackeyValue v;
    v.dec = orbit_decomposition(X);
    int rel_rows = 0;
    for (auto& o : v.dec.orbits) {
        v.offset.push_back(v.total);
        v.total += M.model(o.stab).n_gens;
        rel_rows += M.model(o.stab).rels.rows;
    }
    v.group = FPAb(v.total);
    v.group.rels = Mat::zero(rel_rows, v.total);
    int r0 = 0;
    for (size_t i = 0; i < v.dec.orbits.size(); ++i) {
        const FPAb& L = M.model(v.dec.orbits[i].stab);
        for (int r = 0; r < L.rels.rows; ++r)
            for (int c = 0; c < L.n_gens; ++c)
                v.group.rels.at(r0 + r, v.offset[i] + c) = L.rels.at(r, c);
        r0 += L.rels.rows;
    }
    return v;
}

// contravariant: M[X] -> M[X'] along f: X' -> X
inline Mat res_along(const MackeyFunctor& M, const GMap& f, const MackeyValue& vp,
                     const MackeyValue& vx) {
    const Group& G = *M.G;
    Mat out = Mat::zero(vp.total, vx.total);
    for (size_t op = 0; op < vp.dec.orbits.size(); ++op) {
        int base = vp.dec.orbits[op].base;
        int sp = vp.dec.orbits[op].stab;
        int y = f.v[base];
        int o = vx.dec.orbit_idx[y];
        int u = vx.dec.transporter[y]; // u . base_o = y
        int so = vx.dec.orbits[o].stab;
        int uso = G.conj_subgroup(u, so);
        Mat block = M.res_map(uso, sp) * M.conj_map(u, so);
        for (int r = 0; r < block.rows; ++r)
            for (int c = 0; c < block.cols; ++c)
                out.at(vp.offset[op] + r, vx.offset[o] + c) = block.at(r, c);
    }
    return out;
}

// covariant: M[X'] -> M[X] along f: X' -> X
inline Mat tr_along(const MackeyFunctor& M, const GMap& f, const MackeyValue& vp,
                    const MackeyValue& vx) {
    const Group& G = *M.G;
    Mat out = Mat::zero(vx.total, vp.total);
    for (size_t op = 0; op < vp.dec.orbits.size(); ++op) {
        int base = vp.dec.orbits[op].base;
        int sp = vp.dec.orbits[op].stab;
        int y = f.v[base];
        int o = vx.dec.orbit_idx[y];
        int u = vx.dec.transporter[y];
        int so = vx.dec.orbits[o].stab;
        int uso = G.conj_subgroup(u, so);
        Mat block = M.conj_map(G.inv[u], uso) * M.tr_map(uso, sp);
        for (int r = 0; r < block.rows; ++r)
            for (int c = 0; c < block.cols; ++c)
                out.at(vx.offset[o] + r, vp.offset[op] + c) = block.at(r, c);
    }
    return out;
}

// --- represented functors ---------------------------------------------------

namespace detail {

// basis of formal spans X <- S -> Y with transitive S: orbits of pairs
// (L, p in (X x Y)^L) under simultaneous conjugation and translation
struct SpanBasis {
    std::vector<std::pair<int, int>> reps;
    std::map<std::pair<int, int>, int> index;
};

inline SpanBasis span_basis(const Group& G, const GSet& XY) {
    SpanBasis b;
    std::vector<std::pair<int, int>> nodes;
    for (int s = 0; s < int(G.subgroups.size()); ++s)
        for (int p = 0; p < XY.n; ++p) {
            bool fixed = true;
            for (int x : G.subgroups[s].elems)
                if (XY.a(x, p) != p) { fixed = false; break; }
            if (fixed) nodes.push_back({s, p});
        }
    std::map<std::pair<int, int>, char> visited;
    std::vector<std::vector<std::pair<int, int>>> orbits;
    for (auto& node : nodes) {
        if (visited.count(node)) continue;
        std::vector<std::pair<int, int>> orbit{node};
        visited[node] = 1;
        for (size_t i = 0; i < orbit.size(); ++i)
            for (int g = 0; g < G.n; ++g) {
                std::pair<int, int> nxt{G.conj_subgroup(g, orbit[i].first),
                                        XY.a(g, orbit[i].second)};
                if (!visited.count(nxt)) {
                    visited[nxt] = 1;
                    orbit.push_back(nxt);
                }
            }
        orbits.push_back(std::move(orbit));
    }
    std::vector<std::pair<std::pair<int, int>, int>> order;
    for (int i = 0; i < int(orbits.size()); ++i)
        order.push_back({*std::min_element(orbits[i].begin(), orbits[i].end()), i});
    std::sort(order.begin(), order.end());
    for (auto& [rep, oi] : order) {
        int id = int(b.reps.size());
        b.reps.push_back(rep);
        for (auto& n : orbits[oi]) b.index[n] = id;
    }
    return b;
}

} // namespace detail

// the Mackey functor informally spanned by maps out of X: its value at Y is
// the group of formal spans X <- S -> Y
struct RepresentedMackey {
    MackeyFunctor M;
    std::vector<detail::SpanBasis> basis;  // per class
    std::vector<GSet> level_set;           // orbit G-set per class
    std::vector<Product> level_prod;       // X x G/H per class
    GSet X;
};

inline RepresentedMackey represented(const Group& G, const GSet& X) {
    RepresentedMackey R;
    R.X = X;
    MackeyFunctor& M = R.M;
    M.G = &G;
    int nc = int(G.classes.size());
    M.level.resize(nc);
    M.weyl.resize(nc);
    M.res_edge.resize(nc);
    M.tr_edge.resize(nc);
    M.gen_names.resize(nc);
    R.level_set.reserve(nc);
    R.basis.reserve(nc);
    for (int c = 0; c < nc; ++c) {
        int h = G.rep_of_class(c);
        R.level_set.push_back(orbit_set(G, h));
        R.level_prod.push_back(product_set(X, R.level_set.back()));
        R.basis.push_back(detail::span_basis(G, R.level_prod.back().X));
        M.level[c] = FPAb(int(R.basis[c].reps.size()));
        for (auto& [L, p] : R.basis[c].reps)
            M.gen_names[c].push_back("[" + std::to_string(L) + "|" + std::to_string(p) + "]");
    }
    auto coset_sets = [&](int sub) { return detail::coset_elem_sets(G, sub); };
    // point of X x Y from components
    auto pt = [&](int c, int x, int y) { return x * R.level_set[c].n + y; };
    auto split = [&](int c, int p) { return std::pair<int, int>{p / R.level_set[c].n, p % R.level_set[c].n}; };

    // transfer-like relabeling along an equivariant point map  Y_c -> Y_c2
    auto relabel = [&](int c, int c2, const std::vector<int>& ymap) {
        Mat out = Mat::zero(int(R.basis[c2].reps.size()), int(R.basis[c].reps.size()));
        for (int j = 0; j < int(R.basis[c].reps.size()); ++j) {
            auto [L, p] = R.basis[c].reps[j];
            auto [x, y] = split(c, p);
            out.at(R.basis[c2].index.at({L, pt(c2, x, ymap[y])}), j) += 1;
        }
        return out;
    };
    // restriction along an equivariant map  Y_c2 -> Y_c  (value map goes c -> c2)
    auto restrict_along = [&](int c, int c2, const std::vector<int>& f) {
        Mat out = Mat::zero(int(R.basis[c2].reps.size()), int(R.basis[c].reps.size()));
        const GSet& Yc = R.level_set[c];
        const GSet& Yc2 = R.level_set[c2];
        for (int j = 0; j < int(R.basis[c].reps.size()); ++j) {
            auto [L, p] = R.basis[c].reps[j];
            auto [x, y] = split(c, p);
            auto GL = orbit_set(G, L);
            auto csets = detail::coset_elem_sets(G, L);
            // pullback points (coset i, v) with rep_i . y == f(v)
            std::vector<std::pair<int, int>> pts;
            std::map<std::pair<int, int>, int> pidx;
            for (int i = 0; i < GL.n; ++i) {
                int gi = csets[i].front();
                int yi = Yc.a(gi, y);
                for (int v = 0; v < Yc2.n; ++v)
                    if (f[v] == yi) {
                        pidx[{i, v}] = int(pts.size());
                        pts.push_back({i, v});
                    }
            }
            std::vector<char> used(pts.size(), 0);
            for (size_t k = 0; k < pts.size(); ++k) {
                if (used[k]) continue;
                // orbit of pts[k]
                std::vector<size_t> orbit{k};
                used[k] = 1;
                for (size_t qi = 0; qi < orbit.size(); ++qi)
                    for (int g = 0; g < G.n; ++g) {
                        auto [i, v] = pts[orbit[qi]];
                        auto it = pidx.find({GL.a(g, i), Yc2.a(g, v)});
                        if (it != pidx.end() && !used[it->second]) {
                            used[it->second] = 1;
                            orbit.push_back(it->second);
                        }
                    }
                auto [i0, v0] = pts[orbit.front()];
                int g0 = csets[i0].front();
                std::vector<int> stab_elems;
                for (int g = 0; g < G.n; ++g)
                    if (GL.a(g, i0) == i0 && Yc2.a(g, v0) == v0) stab_elems.push_back(g);
                int L2 = G.find_subgroup(stab_elems);
                int xnew = X.a(g0, x);
                out.at(R.basis[c2].index.at({L2, pt(c2, xnew, v0)}), j) += 1;
            }
        }
        return out;
    };

    for (int c = 0; c < nc; ++c) {
        int h = G.rep_of_class(c);
        auto ch = coset_sets(h);
        std::map<std::vector<int>, int> hidx;
        for (int i = 0; i < int(ch.size()); ++i) hidx[ch[i]] = i;
        // weyl matrices: g H -> g n^{-1} H
        for (int n : G.normalizer_elems(h)) {
            std::vector<int> ymap(R.level_set[c].n);
            for (int i = 0; i < R.level_set[c].n; ++i) {
                int g = ch[i].front();
                std::vector<int> cs;
                for (int s : G.subgroups[h].elems) cs.push_back(G.mul[G.mul[g][G.inv[n]]][s]);
                std::sort(cs.begin(), cs.end());
                ymap[i] = hidx.at(cs);
            }
            M.weyl[c][n] = relabel(c, c, ymap);
        }
        // edges: for maximal S < H, along  G/canon(S) -> G/S -> G/H,
        // g canonS |-> g c_S S |-> g c_S H
        for (int s : G.maximal_subgroups(h)) {
            int cs_rep = G.subgroups[s].class_rep;
            int c2 = G.cls(s);
            int cS = G.conjugator_to_rep[s]; // cS s cS^{-1} = canon
            auto cls2 = coset_sets(cs_rep);
            std::vector<int> fmap(R.level_set[c2].n);
            for (int i = 0; i < R.level_set[c2].n; ++i) {
                int g = cls2[i].front();
                std::vector<int> target;
                for (int hh : G.subgroups[h].elems)
                    target.push_back(G.mul[G.mul[g][cS]][hh]);
                std::sort(target.begin(), target.end());
                fmap[i] = hidx.at(target);
            }
            // transfer: relabel c2 -> c along fmap; restriction: pull back
            M.tr_edge[c][s] = relabel(c2, c, fmap);
            M.res_edge[c][s] = restrict_along(c, c2, fmap);
        }
    }
    return R;
}

inline RepresentedMackey burnside_mackey(const Group& G) { return represented(G, point_set(G)); }

// --- simplification ---------------------------------------------------------

struct SimplifiedMackey {
    MackeyFunctor M;
    std::vector<Mat> to_simple, from_simple;
};

inline SimplifiedMackey simplify_levels(const MackeyFunctor& M) {
    SimplifiedMackey out;
    out.M.G = M.G;
    int nc = int(M.level.size());
    out.M.level.resize(nc);
    out.M.weyl.resize(nc);
    out.M.res_edge.resize(nc);
    out.M.tr_edge.resize(nc);
    out.M.gen_names.resize(nc);
    for (int c = 0; c < nc; ++c) {
        auto s = simplify(M.level[c]);
        out.M.level[c] = s.group;
        out.to_simple.push_back(s.to_simple);
        out.from_simple.push_back(s.from_simple);
    }
    for (int c = 0; c < nc; ++c) {
        for (auto& [n, A] : M.weyl[c])
            out.M.weyl[c][n] = out.to_simple[c] * A * out.from_simple[c];
        for (auto& [s, A] : M.res_edge[c]) {
            int c2 = M.G->cls(s);
            out.M.res_edge[c][s] = out.to_simple[c2] * A * out.from_simple[c];
        }
        for (auto& [s, A] : M.tr_edge[c]) {
            int c2 = M.G->cls(s);
            out.M.tr_edge[c][s] = out.to_simple[c] * A * out.from_simple[c2];
        }
    }
    return out;
}

// --- box product ------------------------------------------------------------

// raw generators of the product at a level K: triples (H, i, j) over chosen
// representatives H of K-conjugacy classes of subgroups, i and j running over
// the operands' model generators at H
struct BoxLevelInfo {
    std::vector<int> reps;
    std::vector<int> offset;
    std::vector<std::pair<int, int>> dims; // (gens of A at rep, gens of B at rep)
    int total = 0;
    std::map<int, std::pair<int, int>> to_rep; // sub -> (rep position, k with kHk^-1 = rep)
};

struct BoxProduct {
    MackeyFunctor M; // simplified levels
    std::vector<BoxLevelInfo> info;
    std::vector<Mat> to_simple, from_simple;
};

namespace detail {

inline Vec box_expand(const MackeyFunctor& A, const MackeyFunctor& B, const BoxLevelInfo& L,
                      int sub, const Vec& m, const Vec& n) {
    auto [pos, k] = L.to_rep.at(sub);
    Vec mm = A.conj_map(k, sub).apply(m);
    Vec nn = B.conj_map(k, sub).apply(n);
    Vec out(L.total, 0);
    int nb = int(nn.size());
    for (int i = 0; i < int(mm.size()); ++i)
        for (int j = 0; j < nb; ++j) out[L.offset[pos] + i * nb + j] += mm[i] * nn[j];
    return out;
}

inline Vec unit_vec(int n, int i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

} // namespace detail

inline BoxProduct box_product(const MackeyFunctor& A, const MackeyFunctor& B) {
    const Group& G = *A.G;
    int nc = int(G.classes.size());
    MackeyFunctor P;
    P.G = &G;
    P.level.resize(nc);
    P.weyl.resize(nc);
    P.res_edge.resize(nc);
    P.tr_edge.resize(nc);
    P.gen_names.resize(nc);
    std::vector<BoxLevelInfo> info(nc);
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        auto& L = info[c];
        for (auto& cls_list : G.conj_classes_within(K)) {
            int rep = cls_list.front();
            int pos = int(L.reps.size());
            L.reps.push_back(rep);
            L.offset.push_back(L.total);
            int na = A.model(rep).n_gens, nb = B.model(rep).n_gens;
            L.dims.push_back({na, nb});
            L.total += na * nb;
            for (int sub : cls_list) {
                int k = -1;
                for (int g : G.subgroups[K].elems)
                    if (G.conj_subgroup(g, sub) == rep) { k = g; break; }
                L.to_rep[sub] = {pos, k};
            }
        }
    }
    auto gen_at = [&](const BoxLevelInfo& L, int pos, int i, int j) {
        return L.offset[pos] + i * L.dims[pos].second + j;
    };
    // levels with relations
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        auto& L = info[c];
        std::vector<Vec> rows;
        for (int pos = 0; pos < int(L.reps.size()); ++pos) {
            int H = L.reps[pos];
            auto [na, nb] = L.dims[pos];
            const FPAb& MA = A.model(H);
            const FPAb& MB = B.model(H);
            // bilinearity against level relations
            for (int r = 0; r < MA.rels.rows; ++r)
                for (int j = 0; j < nb; ++j) {
                    Vec row(L.total, 0);
                    for (int i = 0; i < na; ++i) row[gen_at(L, pos, i, j)] = MA.rels.at(r, i);
                    rows.push_back(row);
                }
            for (int r = 0; r < MB.rels.rows; ++r)
                for (int i = 0; i < na; ++i) {
                    Vec row(L.total, 0);
                    for (int j = 0; j < nb; ++j) row[gen_at(L, pos, i, j)] = MB.rels.at(r, j);
                    rows.push_back(row);
                }
            // Frobenius relations over each maximal subgroup
            for (int Hp : G.maximal_subgroups(H)) {
                int nap = A.model(Hp).n_gens, nbp = B.model(Hp).n_gens;
                Mat TA = A.tr_map(H, Hp), RB = B.res_map(H, Hp);
                Mat TB = B.tr_map(H, Hp), RA = A.res_map(H, Hp);
                for (int i = 0; i < nap; ++i)
                    for (int j = 0; j < nb; ++j) {
                        Vec row(L.total, 0);
                        Vec t = TA.col(i);
                        for (int a = 0; a < na; ++a) row[gen_at(L, pos, a, j)] += t[a];
                        Vec rhs = detail::box_expand(A, B, L, Hp, detail::unit_vec(nap, i),
                                                    RB.col(j));
                        row = row - rhs;
                        if (!is_zero(row)) rows.push_back(row);
                    }
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < nbp; ++j) {
                        Vec row(L.total, 0);
                        Vec t = TB.col(j);
                        for (int b = 0; b < nb; ++b) row[gen_at(L, pos, i, b)] += t[b];
                        Vec rhs = detail::box_expand(A, B, L, Hp, RA.col(i),
                                                    detail::unit_vec(nbp, j));
                        row = row - rhs;
                        if (!is_zero(row)) rows.push_back(row);
                    }
            }
            // diagonal Weyl relations within K
            for (int g : G.subgroups[K].elems) {
                if (G.conj_subgroup(g, H) != H) continue;
                Mat CA = A.conj_map(g, H), CB = B.conj_map(g, H);
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < nb; ++j) {
                        Vec row = detail::box_expand(A, B, L, H, CA.col(i), CB.col(j));
                        row[gen_at(L, pos, i, j)] -= 1;
                        if (!is_zero(row)) rows.push_back(row);
                    }
            }
        }
        P.level[c] = FPAb(L.total);
        P.level[c].rels = Mat::zero(int(rows.size()), L.total);
        for (int r = 0; r < int(rows.size()); ++r)
            for (int q = 0; q < L.total; ++q) P.level[c].rels.at(r, q) = rows[r][q];
    }
    // structure maps in raw coordinates
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        auto& L = info[c];
        for (int n : G.normalizer_elems(K)) {
            Mat W = Mat::zero(L.total, L.total);
            for (int pos = 0; pos < int(L.reps.size()); ++pos) {
                int H = L.reps[pos];
                auto [na, nb] = L.dims[pos];
                int Hn = G.conj_subgroup(n, H);
                Mat CA = A.conj_map(n, H), CB = B.conj_map(n, H);
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < nb; ++j) {
                        Vec col = detail::box_expand(A, B, L, Hn, CA.col(i), CB.col(j));
                        for (int r = 0; r < L.total; ++r)
                            W.at(r, gen_at(L, pos, i, j)) = col[r];
                    }
            }
            P.weyl[c][n] = W;
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            auto& L2 = info[c2];
            int cS = G.conjugator_to_rep[s];
            int icS = G.inv[cS];
            // transfer: move the source generator to a subgroup of s, re-expand at K
            Mat T = Mat::zero(L.total, L2.total);
            for (int pos = 0; pos < int(L2.reps.size()); ++pos) {
                int Hp = L2.reps[pos];
                auto [na, nb] = L2.dims[pos];
                int Hs = G.conj_subgroup(icS, Hp);
                Mat CA = A.conj_map(icS, Hp), CB = B.conj_map(icS, Hp);
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < nb; ++j) {
                        Vec col = detail::box_expand(A, B, L, Hs, CA.col(i), CB.col(j));
                        for (int r = 0; r < L.total; ++r)
                            T.at(r, L2.offset[pos] + i * nb + j) = col[r];
                    }
            }
            P.tr_edge[c][s] = T;
            // restriction: double coset expansion, then conjugate into the canonical level
            Mat R = Mat::zero(L2.total, L.total);
            for (int pos = 0; pos < int(L.reps.size()); ++pos) {
                int H = L.reps[pos];
                auto [na, nb] = L.dims[pos];
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < nb; ++j) {
                        Vec col(L2.total, 0);
                        for (auto& dc : G.double_cosets(K, s, H)) {
                            int gH = G.conj_subgroup(dc.rep, H);
                            int D = dc.intersection;
                            Vec mD = (A.res_map(gH, D) * A.conj_map(dc.rep, H))
                                         .apply(detail::unit_vec(na, i));
                            Vec nD = (B.res_map(gH, D) * B.conj_map(dc.rep, H))
                                         .apply(detail::unit_vec(nb, j));
                            int Dstar = G.conj_subgroup(cS, D);
                            Vec term = detail::box_expand(A, B, L2, Dstar,
                                                          A.conj_map(cS, D).apply(mD),
                                                          B.conj_map(cS, D).apply(nD));
                            col = col + term;
                        }
                        for (int r = 0; r < L2.total; ++r) R.at(r, gen_at(L, pos, i, j)) = col[r];
                    }
            }
            P.res_edge[c][s] = R;
        }
    }
    auto S = simplify_levels(P);
    BoxProduct out;
    out.M = std::move(S.M);
    out.info = std::move(info);
    out.to_simple = std::move(S.to_simple);
    out.from_simple = std::move(S.from_simple);
    validate_mackey(out.M);
    return out;
}

// image of a pure pair (m at A-model(sub), n at B-model(sub)) transferred up to
// the level of the class of K, in simplified coordinates
inline Vec box_pair(const BoxProduct& P, const MackeyFunctor& A, const MackeyFunctor& B, int K,
                    int sub, const Vec& m, const Vec& n) {
    const Group& G = *A.G;
    int c = G.cls(K);
    if (!G.is_canonical(K)) fail(ErrKind::internal, "box_pair expects a canonical level");
    Vec raw = detail::box_expand(A, B, P.info[c], sub, m, n);
    return P.to_simple[c].apply(raw);
}

// --- hom groups -------------------------------------------------------------

struct MackeyHom {
    FPAb group;
    std::vector<std::vector<Mat>> reps; // per generator: matrices per class
    LatticeQuotient lq;
    std::vector<int> x_offset;
    std::vector<std::pair<int, int>> x_dims; // per class: (rows = N gens, cols = M gens)
    int x_total = 0;

    Vec flatten(const std::vector<Mat>& maps) const {
        Vec v(x_total, 0);
        for (size_t c = 0; c < maps.size(); ++c)
            for (int r = 0; r < x_dims[c].first; ++r)
                for (int q = 0; q < x_dims[c].second; ++q)
                    v[x_offset[c] + r * x_dims[c].second + q] = maps[c].at(r, q);
        return v;
    }
    // coordinates of a natural map in the hom group
    Vec encode(const std::vector<Mat>& maps) const {
        auto y = lq.encode(flatten(maps));
        if (!y) fail(ErrKind::internal, "map is not in the computed hom lattice");
        return *y;
    }
};

// additional constraint on the level maps: X_c * A = B * X_c modulo relations
struct HomEq {
    int c = 0;
    Mat A, B;
};

// one summand C * X_c * u of a general linear condition on the level maps
struct HomTerm {
    int c = 0;
    Mat C; // target-level factor applied after X_c
    Vec u; // source-level column fed into X_c
};
// condition: the terms sum to zero in the target level `home`, modulo relations
struct HomLin {
    int home = 0;
    std::vector<HomTerm> terms;
};

inline MackeyHom hom_mackey(const MackeyFunctor& M, const MackeyFunctor& N,
                            const std::vector<HomEq>& extra = {},
                            const std::vector<HomLin>& lin = {}) {
    const Group& G = *M.G;
    int nc = int(G.classes.size());
    MackeyHom H;
    H.x_offset.resize(nc);
    H.x_dims.resize(nc);
    for (int c = 0; c < nc; ++c) {
        H.x_offset[c] = H.x_total;
        H.x_dims[c] = {N.level[c].n_gens, M.level[c].n_gens};
        H.x_total += N.level[c].n_gens * M.level[c].n_gens;
    }
    int total_vars = H.x_total;
    struct Trip { int row, col; Int v; };
    std::vector<Trip> trips;
    int eq_rows = 0;
    auto xvar = [&](int c, int r, int k) { return H.x_offset[c] + r * H.x_dims[c].second + k; };
    // X_c2 * A  contribution rows indexed by (r, q)
    auto add_left = [&](int base, int c, const Mat& A, int sign, int ncols) {
        // (X_c * A)[r][q], rows laid out r * ncols + q
        for (int r = 0; r < H.x_dims[c].first; ++r)
            for (int q = 0; q < ncols; ++q)
                for (int k = 0; k < A.rows; ++k)
                    if (A.at(k, q) != 0)
                        trips.push_back({base + r * ncols + q, xvar(c, r, k), Int(sign) * A.at(k, q)});
    };
    auto add_right = [&](int base, const Mat& A, int c, int sign, int ncols) {
        // (A * X_c)[r][q]
        for (int r = 0; r < A.rows; ++r)
            for (int q = 0; q < ncols; ++q)
                for (int k = 0; k < A.cols; ++k)
                    if (A.at(r, k) != 0)
                        trips.push_back({base + r * ncols + q, xvar(c, k, q), Int(sign) * A.at(r, k)});
    };
    auto add_aux = [&](int base, const Mat& R, int ncols) {
        // -(R * Z)[r][q] with fresh Z of size R.cols x ncols
        int z0 = total_vars;
        total_vars += R.cols * ncols;
        for (int r = 0; r < R.rows; ++r)
            for (int q = 0; q < ncols; ++q)
                for (int k = 0; k < R.cols; ++k)
                    if (R.at(r, k) != 0)
                        trips.push_back({base + r * ncols + q, z0 + k * ncols + q, -R.at(r, k)});
    };
    for (int c = 0; c < nc; ++c) {
        int rep = G.rep_of_class(c);
        Mat RM = M.level[c].rel_cols();
        Mat RN = N.level[c].rel_cols();
        // well-definedness
        if (RM.cols > 0) {
            int base = eq_rows;
            eq_rows += H.x_dims[c].first * RM.cols;
            add_left(base, c, RM, +1, RM.cols);
            if (RN.cols > 0) add_aux(base, RN, RM.cols);
        }
        // commuting with weyl
        for (int n : G.normalizer_elems(rep)) {
            if (G.contains(rep, n)) continue;
            Mat WM = M.weyl_at(c, n), WN = N.weyl_at(c, n);
            int base = eq_rows;
            int ncols = H.x_dims[c].second;
            eq_rows += H.x_dims[c].first * ncols;
            add_left(base, c, WM, +1, ncols);
            add_right(base, WN, c, -1, ncols);
            if (RN.cols > 0) add_aux(base, RN, ncols);
        }
        // commuting with edges
        for (int s : G.maximal_subgroups(rep)) {
            int c2 = G.cls(s);
            Mat AM = M.res_edge[c].at(s), AN = N.res_edge[c].at(s);
            Mat RN2 = N.level[c2].rel_cols();
            {
                int base = eq_rows;
                int ncols = H.x_dims[c].second;
                eq_rows += H.x_dims[c2].first * ncols;
                add_left(base, c2, AM, +1, ncols);
                add_right(base, AN, c, -1, ncols);
                if (RN2.cols > 0) add_aux(base, RN2, ncols);
            }
            Mat TM = M.tr_edge[c].at(s), TN = N.tr_edge[c].at(s);
            {
                int base = eq_rows;
                int ncols = H.x_dims[c2].second;
                eq_rows += H.x_dims[c].first * ncols;
                add_left(base, c, TM, +1, ncols);
                add_right(base, TN, c2, -1, ncols);
                if (RN.cols > 0) add_aux(base, RN, ncols);
            }
        }
    }
    for (auto& e : extra) {
        Mat RN = N.level[e.c].rel_cols();
        int base = eq_rows;
        int ncols = H.x_dims[e.c].second;
        eq_rows += H.x_dims[e.c].first * ncols;
        add_left(base, e.c, e.A, +1, ncols);
        add_right(base, e.B, e.c, -1, ncols);
        if (RN.cols > 0) add_aux(base, RN, ncols);
    }
    for (auto& L : lin) {
        Mat RN = N.level[L.home].rel_cols();
        int base = eq_rows;
        eq_rows += N.level[L.home].n_gens;
        for (auto& t : L.terms)
            for (int r = 0; r < t.C.rows; ++r)
                for (int k = 0; k < t.C.cols; ++k) {
                    if (t.C.at(r, k) == 0) continue;
                    for (int j = 0; j < int(t.u.size()); ++j)
                        if (t.u[j] != 0)
                            trips.push_back({base + r, xvar(t.c, k, j), t.C.at(r, k) * t.u[j]});
                }
        if (RN.cols > 0) add_aux(base, RN, 1);
    }
    Mat E = Mat::zero(eq_rows, total_vars);
    for (auto& t : trips) E.at(t.row, t.col) = E.at(t.row, t.col) + t.v;
    Mat ker = kernel_basis(E);
    // project to the X block
    Mat Lproj = Mat::zero(H.x_total, ker.cols);
    for (int csol = 0; csol < ker.cols; ++csol)
        for (int r = 0; r < H.x_total; ++r) Lproj.at(r, csol) = ker.at(r, csol);
    // trivial maps: columns valued in target relations
    std::vector<Vec> triv;
    for (int c = 0; c < nc; ++c) {
        Mat RN = N.level[c].rel_cols();
        for (int k = 0; k < RN.cols; ++k)
            for (int q = 0; q < H.x_dims[c].second; ++q) {
                Vec v(H.x_total, 0);
                for (int r = 0; r < H.x_dims[c].first; ++r)
                    v[xvar(c, r, q)] = RN.at(r, k);
                triv.push_back(v);
            }
    }
    Mat Ltriv = Mat::zero(H.x_total, int(triv.size()));
    for (int k = 0; k < int(triv.size()); ++k)
        for (int r = 0; r < H.x_total; ++r) Ltriv.at(r, k) = triv[k][r];
    H.lq = lattice_quotient(Lproj, Ltriv);
    H.group = H.lq.group;
    for (int g = 0; g < H.lq.embed.cols; ++g) {
        std::vector<Mat> maps;
        for (int c = 0; c < nc; ++c) {
            Mat X(H.x_dims[c].first, H.x_dims[c].second);
            for (int r = 0; r < X.rows; ++r)
                for (int q = 0; q < X.cols; ++q)
                    X.at(r, q) = H.lq.embed.at(xvar(c, r, q), g);
            maps.push_back(X);
        }
        H.reps.push_back(std::move(maps));
    }
    return H;
}

// --- internal hom -----------------------------------------------------------

inline MackeyFunctor shift_mackey(const MackeyFunctor& M, const GSet& X);

// value at G/H is the group of natural maps M -> N(G/H x -); structure maps
// act through the shifting slot
inline MackeyFunctor internal_hom(const MackeyFunctor& M, const MackeyFunctor& N) {
    const Group& G = *M.G;
    int nc = int(G.classes.size());
    MackeyFunctor H;
    H.G = &G;
    H.level.resize(nc);
    H.weyl.resize(nc);
    H.res_edge.resize(nc);
    H.tr_edge.resize(nc);
    H.gen_names.resize(nc);
    std::vector<GSet> ysets;
    for (int c = 0; c < nc; ++c) ysets.push_back(orbit_set(G, G.rep_of_class(c)));
    std::vector<std::vector<GSet>> prods(nc);       // [shifting class][level class]
    std::vector<std::vector<MackeyValue>> vals(nc);
    std::vector<MackeyHom> homs;
    for (int c = 0; c < nc; ++c) {
        for (int i = 0; i < nc; ++i) {
            prods[c].push_back(product_set(ysets[c], ysets[i]).X);
            vals[c].push_back(value_at(N, prods[c].back()));
        }
        homs.push_back(hom_mackey(M, shift_mackey(N, ysets[c])));
        H.level[c] = homs[c].group;
    }
    // a point map Y_c -> Y_cp acts on hom groups by postcomposition with the
    // induced value maps of N, covariantly or contravariantly
    auto lift = [&](int c, int cp, const std::vector<int>& ymap, int i) {
        GMap f{prods[c][i].n, prods[cp][i].n, std::vector<int>(prods[c][i].n)};
        int yn = ysets[i].n;
        for (int y = 0; y < ysets[c].n; ++y)
            for (int x = 0; x < yn; ++x) f.v[y * yn + x] = ymap[y] * yn + x;
        return f;
    };
    auto induce = [&](int c, int cp, const std::vector<int>& ymap, bool covariant) {
        // covariant: hom at c -> hom at cp; else hom at cp -> hom at c
        int src = covariant ? c : cp, dst = covariant ? cp : c;
        Mat out = Mat::zero(H.level[dst].n_gens, H.level[src].n_gens);
        for (int g = 0; g < H.level[src].n_gens; ++g) {
            std::vector<Mat> comp;
            for (int i = 0; i < nc; ++i) {
                auto f = lift(c, cp, ymap, i);
                Mat W = covariant ? tr_along(N, f, vals[c][i], vals[cp][i])
                                  : res_along(N, f, vals[c][i], vals[cp][i]);
                comp.push_back(W * homs[src].reps[g][i]);
            }
            Vec col = homs[dst].encode(comp);
            for (int r = 0; r < out.rows; ++r) out.at(r, g) = col[r];
        }
        return out;
    };
    for (int c = 0; c < nc; ++c) {
        int h = G.rep_of_class(c);
        auto ch = detail::coset_elem_sets(G, h);
        std::map<std::vector<int>, int> hidx;
        for (int i = 0; i < int(ch.size()); ++i) hidx[ch[i]] = i;
        for (int n : G.normalizer_elems(h)) {
            std::vector<int> ymap(ysets[c].n);
            for (int i = 0; i < ysets[c].n; ++i) {
                int g = ch[i].front();
                std::vector<int> cs;
                for (int s : G.subgroups[h].elems) cs.push_back(G.mul[G.mul[g][G.inv[n]]][s]);
                std::sort(cs.begin(), cs.end());
                ymap[i] = hidx.at(cs);
            }
            H.weyl[c][n] = induce(c, c, ymap, true);
        }
        for (int s : G.maximal_subgroups(h)) {
            int c2 = G.cls(s);
            int cs_rep = G.subgroups[s].class_rep;
            int cS = G.conjugator_to_rep[s];
            auto cls2 = detail::coset_elem_sets(G, cs_rep);
            std::vector<int> ymap(ysets[c2].n); // Y_{c2} -> Y_c
            for (int i = 0; i < ysets[c2].n; ++i) {
                int g = cls2[i].front();
                std::vector<int> target;
                for (int hh : G.subgroups[h].elems) target.push_back(G.mul[G.mul[g][cS]][hh]);
                std::sort(target.begin(), target.end());
                ymap[i] = hidx.at(target);
            }
            H.res_edge[c][s] = induce(c2, c, ymap, false);
            H.tr_edge[c][s] = induce(c2, c, ymap, true);
        }
    }
    validate_mackey(H);
    return H;
}

// --- shift ------------------------------------------------------------------

// shift_X(M): value at Y is M[X x Y]
inline MackeyFunctor shift_mackey(const MackeyFunctor& M, const GSet& X) {
    const Group& G = *M.G;
    MackeyFunctor S;
    S.G = &G;
    int nc = int(G.classes.size());
    S.level.resize(nc);
    S.weyl.resize(nc);
    S.res_edge.resize(nc);
    S.tr_edge.resize(nc);
    S.gen_names.resize(nc);
    std::vector<GSet> prods;
    std::vector<MackeyValue> vals;
    std::vector<GSet> ysets;
    for (int c = 0; c < nc; ++c) {
        int h = G.rep_of_class(c);
        ysets.push_back(orbit_set(G, h));
        prods.push_back(product_set(X, ysets.back()).X);
        vals.push_back(value_at(M, prods.back()));
        S.level[c] = vals.back().group;
    }
    auto lift = [&](int c, int c2, const std::vector<int>& ymap) {
        // X x Y_c -> X x Y_c2 from a point map on the Y factor
        GMap f{prods[c].n, prods[c2].n, std::vector<int>(prods[c].n)};
        int yn = ysets[c].n;
        for (int x = 0; x < X.n; ++x)
            for (int y = 0; y < yn; ++y) f.v[x * yn + y] = x * ysets[c2].n + ymap[y];
        return f;
    };
    for (int c = 0; c < nc; ++c) {
        int h = G.rep_of_class(c);
        auto ch = detail::coset_elem_sets(G, h);
        std::map<std::vector<int>, int> hidx;
        for (int i = 0; i < int(ch.size()); ++i) hidx[ch[i]] = i;
        for (int n : G.normalizer_elems(h)) {
            std::vector<int> ymap(ysets[c].n);
            for (int i = 0; i < ysets[c].n; ++i) {
                int g = ch[i].front();
                std::vector<int> cs;
                for (int s : G.subgroups[h].elems) cs.push_back(G.mul[G.mul[g][G.inv[n]]][s]);
                std::sort(cs.begin(), cs.end());
                ymap[i] = hidx.at(cs);
            }
            auto f = lift(c, c, ymap);
            S.weyl[c][n] = tr_along(M, f, vals[c], vals[c]);
        }
        for (int s : G.maximal_subgroups(h)) {
            int c2 = G.cls(s);
            int cs_rep = G.subgroups[s].class_rep;
            int cS = G.conjugator_to_rep[s];
            auto cls2 = detail::coset_elem_sets(G, cs_rep);
            std::vector<int> ymap(ysets[c2].n);
            for (int i = 0; i < ysets[c2].n; ++i) {
                int g = cls2[i].front();
                std::vector<int> target;
                for (int hh : G.subgroups[h].elems)
                    target.push_back(G.mul[G.mul[g][cS]][hh]);
                std::sort(target.begin(), target.end());
                ymap[i] = hidx.at(target);
            }
            auto f = lift(c2, c, ymap); // X x Y_{c2} -> X x Y_c
            S.res_edge[c][s] = res_along(M, f, vals[c2], vals[c]);
            S.tr_edge[c][s] = tr_along(M, f, vals[c2], vals[c]);
        }
    }
    return S;
}

} // namespace eqca
