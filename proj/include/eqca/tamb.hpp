#pragma once
// Indexing systems and Tambara functors: ring-valued levels presented by
// rewrite systems, restriction/transfer/conjugation plumbing, multiplicative
// norms evaluated by orbit-section enumeration, free functors on one level of
// generators, and full validation against the additive axioms.
#include "gset.hpp"
#include "mackey.hpp"
#include "rewrite.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <utility>

namespace eqca {

// --- indexing systems -------------------------------------------------------

struct IndexingSystem {
    const Group* G = nullptr;
    // adm[cls K][cls H]: the norm from level H up to level K is declared
    std::vector<std::vector<char>> adm;

    bool admissible(int k_id, int h_id) const {
        return adm[G->cls(k_id)][G->cls(h_id)] != 0;
    }
};

inline IndexingSystem trivial_indexing(const Group& G) {
    IndexingSystem o;
    o.G = &G;
    int nc = int(G.classes.size());
    o.adm.assign(nc, std::vector<char>(nc, 0));
    for (int c = 0; c < nc; ++c) o.adm[c][c] = 1;
    return o;
}

inline IndexingSystem complete_indexing(const Group& G) {
    IndexingSystem o = trivial_indexing(G);
    for (int c = 0; c < int(G.classes.size()); ++c)
        for (int s : G.subgroups_of(G.rep_of_class(c))) o.adm[c][G.cls(s)] = 1;
    return o;
}

// empty report = valid; entries name each closure violation
inline std::vector<std::string> validate_indexing_system(const IndexingSystem& o) {
    const Group& G = *o.G;
    int nc = int(G.classes.size());
    std::vector<std::string> report;
    auto cname = [&](int c) {
        return "class" + std::to_string(c) + "[order " +
               std::to_string(G.order_of(G.rep_of_class(c))) + "]";
    };
    for (int c = 0; c < nc; ++c)
        if (!o.adm[c][c]) report.push_back("missing trivial orbits at " + cname(c));
    for (int cK = 0; cK < nc; ++cK) {
        int K = G.rep_of_class(cK);
        for (int cH = 0; cH < nc; ++cH) {
            if (!o.adm[cK][cH] || cH == cK) continue;
            bool witnessed = false;
            for (int H : G.subgroups_of(K)) {
                if (G.cls(H) != cH) continue;
                witnessed = true;
                // restriction closure: every orbit of the restricted set is admissible
                for (int L : G.subgroups_of(K))
                    for (auto& dc : G.double_cosets(K, L, H))
                        if (!o.adm[G.cls(L)][G.cls(dc.intersection)])
                            report.push_back("restriction closure fails: " + cname(cH) + " -> " +
                                             cname(cK) + " restricted to " + cname(G.cls(L)));
                // self-induction closure
                for (int L : G.subgroups_of(H))
                    if (o.adm[cH][G.cls(L)] && !o.adm[cK][G.cls(L)])
                        report.push_back("self-induction closure fails: " + cname(G.cls(L)) +
                                         " through " + cname(cH) + " into " + cname(cK));
            }
            if (!witnessed)
                report.push_back("flag " + cname(cH) + " -> " + cname(cK) +
                                 " has no witnessing containment");
        }
    }
    std::sort(report.begin(), report.end());
    report.erase(std::unique(report.begin(), report.end()), report.end());
    return report;
}

// --- Tambara functors -------------------------------------------------------

struct NormData {
    int K0 = -1, H0 = -1;         // representative containment H0 <= K0, K0 canonical
    std::vector<Poly> var_images; // image in level[cls K0] of each variable of level[cls H0]
};

struct TambaraFunctor {
    const Group* G = nullptr;
    IndexingSystem O;
    int degree_bound = kDefaultDegreeBound;
    std::vector<RewriteRing> level;                            // per class
    std::vector<std::map<int, std::vector<Poly>>> res_edge;    // class -> max sub -> var images
    std::vector<std::map<int, std::map<Monomial, Poly>>> tr_edge; // basis monomial -> image
    std::vector<std::map<int, std::vector<Poly>>> weyl;        // class -> n -> var images
    std::map<std::pair<int, int>, NormData> norms;             // (cls K, cls H)

    const RewriteRing& model(int sub_id) const { return level[G->cls(sub_id)]; }

    RingMap rmap(int c_from, int c_to, std::vector<Poly> images) const {
        return RingMap{&level[c_from], &level[c_to], std::move(images)};
    }
    std::vector<Poly> identity_images(int c) const {
        std::vector<Poly> im;
        for (int i = 0; i < level[c].nvars(); ++i)
            im.push_back(poly_mono(mono_var(level[c].nvars(), i)));
        return im;
    }

    RingMap weyl_ring_at(int class_id, int n) const {
        int rep = G->rep_of_class(class_id);
        if (G->contains(rep, n)) return rmap(class_id, class_id, identity_images(class_id));
        auto it = weyl[class_id].find(n);
        if (it != weyl[class_id].end()) return rmap(class_id, class_id, it->second);
        for (auto& [n2, im] : weyl[class_id])
            if (G->contains(rep, G->mul[G->inv[n2]][n])) return rmap(class_id, class_id, im);
        fail(ErrKind::internal, "missing level automorphism");
    }

    // model(S) -> model(gSg^-1)
    RingMap ring_conj(int g, int sub_id) const {
        int s2 = G->conj_subgroup(g, sub_id);
        int n = G->mul[G->mul[G->conjugator_to_rep[s2]][g]][G->inv[G->conjugator_to_rep[sub_id]]];
        return weyl_ring_at(G->cls(sub_id), n);
    }

    // model(H) -> model(K) for K <= H
    RingMap ring_res(int h_id, int k_id) const {
        if (!G->leq(k_id, h_id)) fail(ErrKind::internal, "ring_res: not a subgroup");
        int ch = G->conjugator_to_rep[h_id];
        int hstar = G->subgroups[h_id].class_rep;
        int kstar = G->conj_subgroup(ch, k_id);
        RingMap inner = ring_res_canonical(hstar, kstar);
        RingMap back = ring_conj(G->inv[ch], kstar);
        return compose(inner, back);
    }
    RingMap ring_res_canonical(int hstar, int kstar) const {
        int c = G->cls(hstar);
        if (hstar == kstar) return rmap(c, c, identity_images(c));
        for (int s : G->maximal_subgroups(hstar))
            if (G->leq(kstar, s)) {
                RingMap edge = rmap(c, G->cls(s), res_edge[c].at(s));
                return compose(edge, ring_res(s, kstar));
            }
        fail(ErrKind::internal, "no covering step for ring restriction");
    }

    // additive transfer of p from model(K) to model(H), K <= H
    Poly tr_apply(int h_id, int k_id, const Poly& p) const {
        if (!G->leq(k_id, h_id)) fail(ErrKind::internal, "tr_apply: not a subgroup");
        int ch = G->conjugator_to_rep[h_id];
        int hstar = G->subgroups[h_id].class_rep;
        int kstar = G->conj_subgroup(ch, k_id);
        Poly q = ring_conj(ch, k_id).apply(p);
        return tr_canonical(hstar, kstar, q);
    }
    Poly tr_canonical(int hstar, int kstar, const Poly& q) const {
        int c = G->cls(hstar);
        if (hstar == kstar) return level[c].normalize(q);
        for (int s : G->maximal_subgroups(hstar))
            if (G->leq(kstar, s)) return tr_table(c, s, tr_apply(s, kstar, q));
        fail(ErrKind::internal, "no covering step for transfer");
    }
    Poly tr_table(int c, int s, const Poly& p) const {
        const auto& tab = tr_edge[c].at(s);
        Poly q = level[G->cls(s)].normalize(p);
        Poly out;
        for (auto& [m, coef] : q) {
            auto it = tab.find(m);
            if (it == tab.end())
                fail(ErrKind::resource_cap, "transfer of a monomial beyond the degree bound");
            out = poly_add(out, poly_scale(it->second, coef));
        }
        return level[c].normalize(out);
    }

    const NormData* find_norm(int cK, int cH) const {
        auto it = norms.find({cK, cH});
        return it == norms.end() ? nullptr : &it->second;
    }
};

// --- norm evaluation --------------------------------------------------------

Poly eval_norm(const TambaraFunctor& T, int k_id, int h_id, const Poly& x);

namespace detail {

// direct orbit-section expansion of the norm of a sum of atomic terms
inline Poly norm_of_sum(const TambaraFunctor& T, int k_id, int h_id,
                        const std::vector<Poly>& terms) {
    const Group& G = *T.G;
    int cK = G.cls(k_id);
    auto reps = G.coset_reps(k_id, h_id);
    int m = int(reps.size());
    int k = int(terms.size());
    double fcount = std::pow(double(k), double(m));
    if (fcount > double(kSectionCap))
        fail(ErrKind::resource_cap, "norm expansion exceeds the section cap");
    // coset index of each element of K
    std::map<int, int> coset_of;
    for (int i = 0; i < m; ++i)
        for (int s : G.subgroups[h_id].elems) coset_of[G.mul[reps[i]][s]] = i;
    const auto& kelems = G.subgroups[k_id].elems;
    // action of group elements on functions: (g.f)(i) = f(coset of g^-1 reps[i])
    auto act = [&](int g, const std::vector<int>& f) {
        std::vector<int> out(m);
        for (int i = 0; i < m; ++i) out[i] = f[coset_of.at(G.mul[G.inv[g]][reps[i]])];
        return out;
    };
    std::set<std::vector<int>> seen;
    std::vector<int> f(m, 0);
    Poly total;
    while (true) {
        if (!seen.count(f)) {
            std::vector<int> stab;
            for (int g : kelems) {
                auto fg = act(g, f);
                if (fg == f) stab.push_back(g);
                seen.insert(fg);
            }
            std::sort(stab.begin(), stab.end());
            int L = G.find_subgroup(stab);
            // product over L-orbits of the cosets
            std::vector<char> done(m, 0);
            Poly u = poly_const(T.level[G.cls(L)].nvars(), 1);
            for (int i = 0; i < m; ++i) {
                if (done[i]) continue;
                for (int g : G.subgroups[L].elems) done[coset_of.at(G.mul[g][reps[i]])] = 1;
                int gi = reps[i];
                int giH = G.conj_subgroup(gi, h_id);
                int D = G.intersect(L, giH);
                Poly moved = T.ring_conj(gi, h_id).apply(terms[f[i]]);
                Poly down = T.ring_res(giH, D).apply(moved);
                Poly factor = eval_norm(T, L, D, down);
                u = T.level[G.cls(L)].mul(u, factor);
            }
            total = poly_add(total, T.tr_apply(k_id, L, u));
        }
        // next function
        int pos = 0;
        while (pos < m && f[pos] == k - 1) f[pos++] = 0;
        if (pos == m) break;
        ++f[pos];
    }
    return T.level[cK].normalize(total);
}

inline Poly norm_scalar(const TambaraFunctor& T, int k_id, int h_id, const Int& c) {
    const Group& G = *T.G;
    int cK = G.cls(k_id);
    if (k_id == h_id) return poly_const(T.level[cK].nvars(), c);
    if (c == 0) return poly_zero();
    if (c == 1) return poly_const(T.level[cK].nvars(), 1);
    int m = G.order_of(k_id) / G.order_of(h_id);
    auto direct = [&](int j) {
        if (j == 0) return poly_zero();
        std::vector<Poly> ones(j, poly_const(T.level[G.cls(h_id)].nvars(), 1));
        return norm_of_sum(T, k_id, h_id, ones);
    };
    if (c >= 0 && c <= m + 1) return direct(int(c));
    // the norm of a scalar is a degree-m polynomial function of it: interpolate
    // through 0..m by forward differences
    std::vector<Poly> vals;
    for (int j = 0; j <= m; ++j) vals.push_back(direct(j));
    Poly out;
    for (int k = 0; k <= m; ++k) {
        Poly delta;
        for (int i = 0; i <= k; ++i) {
            Int coef = binomial(Int(k), i);
            if ((k - i) % 2) coef = -coef;
            delta = poly_add(delta, poly_scale(vals[i], coef));
        }
        out = poly_add(out, poly_scale(delta, binomial(c, k)));
    }
    return T.level[cK].normalize(out);
}

// norm of a single variable, resolved through stored data or admissible chains
inline Poly norm_var(const TambaraFunctor& T, int k_id, int h_id, int var) {
    const Group& G = *T.G;
    int cK = G.cls(k_id), cH = G.cls(h_id);
    if (const NormData* nd = T.find_norm(cK, cH)) {
        if (k_id == nd->K0 && h_id == nd->H0)
            return T.level[cK].normalize(nd->var_images[var]);
        // align (K, H) with the stored representative pair
        for (int g = 0; g < G.n; ++g)
            if (G.conj_subgroup(g, k_id) == nd->K0 && G.conj_subgroup(g, h_id) == nd->H0) {
                Poly v = poly_mono(mono_var(T.level[cH].nvars(), var));
                Poly moved = T.ring_conj(g, h_id).apply(v);
                Poly image = eval_norm(T, nd->K0, nd->H0, moved);
                return T.ring_conj(G.inv[g], nd->K0).apply(image);
            }
        fail(ErrKind::unsupported, "norm data not alignable with the requested pair");
    }
    // factor through an intermediate level
    for (int M : G.subgroups_of(k_id)) {
        if (M == k_id || M == h_id || !G.leq(h_id, M)) continue;
        if (!T.O.admissible(M, h_id) || !T.O.admissible(k_id, M)) continue;
        if (!T.find_norm(G.cls(M), cH)) continue;
        Poly inner = eval_norm(T, M, h_id, poly_mono(mono_var(T.level[cH].nvars(), var)));
        return eval_norm(T, k_id, M, inner);
    }
    fail(ErrKind::unsupported, "no norm data for this pair of levels");
}

} // namespace detail

// multiplicative norm along the orbit projection G/H -> G/K, H <= K, on an
// element of the level of H (expressed in the model ring of its class)
inline Poly eval_norm(const TambaraFunctor& T, int k_id, int h_id, const Poly& x) {
    const Group& G = *T.G;
    int cH = G.cls(h_id);
    Poly xn = T.level[cH].normalize(x);
    if (k_id == h_id) return xn;
    if (!G.leq(h_id, k_id)) fail(ErrKind::validation, "norm requires a containment of levels");
    if (!T.O.admissible(k_id, h_id))
        fail(ErrKind::validation, "norm not admissible in the indexing system");
    if (xn.empty()) return poly_zero();
    if (xn.size() == 1) {
        auto& [m, c] = *xn.begin();
        Poly out = detail::norm_scalar(T, k_id, h_id, c);
        const auto& Rk = T.level[G.cls(k_id)];
        for (int v = 0; v < T.level[cH].nvars(); ++v)
            for (int e = 0; e < m[v]; ++e) out = Rk.mul(out, detail::norm_var(T, k_id, h_id, v));
        return out;
    }
    std::vector<Poly> terms;
    for (auto& [m, c] : xn) terms.push_back(poly_mono(m, c));
    return detail::norm_of_sum(T, k_id, h_id, terms);
}

// --- Burnside rings as a Tambara functor ------------------------------------

namespace detail {

// orbit classes of the co-induced set Map_H(K, S), where the H-set S is given
// by its points and the H-action; returns stabilizer subgroup ids with
// multiplicity, one per K-orbit
inline std::vector<int> coinduced_orbit_stabs(const Group& G, int k_id, int h_id, int s_points,
                                              const std::function<int(int, int)>& act_h) {
    // right coset representatives of H in K: K = union of H r_i
    std::vector<int> rreps;
    std::vector<char> seen_elem(G.n, 0);
    for (int g : G.subgroups[k_id].elems) {
        if (seen_elem[g]) continue;
        rreps.push_back(g);
        for (int h : G.subgroups[h_id].elems) seen_elem[G.mul[h][g]] = 1;
    }
    int q = int(rreps.size());
    double count = std::pow(double(s_points), double(q));
    if (count > double(kSectionCap))
        fail(ErrKind::resource_cap, "co-induction exceeds the section cap");
    // locate the coset and H-part of any element of K
    std::map<int, std::pair<int, int>> split; // g -> (slot i, h) with g = h * r_i
    for (int i = 0; i < q; ++i)
        for (int h : G.subgroups[h_id].elems) split[G.mul[h][rreps[i]]] = {i, h};
    // f is a tuple of values at the slots; (k.f)(r_i) = h f(r_j) with r_i k = h r_j
    auto act = [&](int k, const std::vector<int>& f) {
        std::vector<int> out(q);
        for (int i = 0; i < q; ++i) {
            auto [j, h] = split.at(G.mul[rreps[i]][k]);
            out[i] = act_h(h, f[j]);
        }
        return out;
    };
    std::set<std::vector<int>> seen;
    std::vector<int> f(q, 0);
    std::vector<int> stabs;
    while (true) {
        if (!seen.count(f)) {
            std::vector<int> stab;
            for (int k : G.subgroups[k_id].elems) {
                auto fk = act(k, f);
                if (fk == f) stab.push_back(k);
                seen.insert(fk);
            }
            std::sort(stab.begin(), stab.end());
            stabs.push_back(G.find_subgroup(stab));
        }
        int pos = 0;
        while (pos < q && f[pos] == s_points - 1) f[pos++] = 0;
        if (pos == q) break;
        ++f[pos];
    }
    return stabs;
}

} // namespace detail

// level at K: the ring of finite K-sets, one variable per class of proper
// subgroups; transfers are induction, norms are co-induction
inline TambaraFunctor burnside_tambara(const Group& G, const IndexingSystem& O) {
    TambaraFunctor T;
    T.G = &G;
    T.O = O;
    int nc = int(G.classes.size());
    T.level.resize(nc);
    T.res_edge.resize(nc);
    T.tr_edge.resize(nc);
    T.weyl.resize(nc);
    // per class: representatives of K-classes of proper subgroups, and a lookup
    // from any proper subgroup of K to its variable index
    std::vector<std::vector<int>> var_rep(nc);
    std::vector<std::map<int, int>> var_of(nc);
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (auto& cl : G.conj_classes_within(K)) {
            if (cl.front() == K) continue;
            int idx = int(var_rep[c].size());
            var_rep[c].push_back(cl.front());
            for (int s : cl) var_of[c][s] = idx;
        }
        RewriteRing R;
        for (size_t i = 0; i < var_rep[c].size(); ++i) {
            R.var_names.push_back(var_rep[c].size() == 1 && G.order_of(K) == 2
                                      ? std::string("t")
                                      : "b" + std::to_string(i));
            R.var_weights.push_back(0);
        }
        T.level[c] = R;
    }
    // the class of a K-set given by orbit stabilizers, as a polynomial
    auto set_poly = [&](int c, const std::vector<int>& stabs) {
        int K = G.rep_of_class(c);
        Poly p;
        int nv = T.level[c].nvars();
        for (int s : stabs) {
            if (s == K)
                p = poly_add(p, poly_const(nv, 1));
            else
                p = poly_add(p, poly_mono(mono_var(nv, var_of[c].at(s))));
        }
        return p;
    };
    // multiplication rules from orbit products
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        int nv = T.level[c].nvars();
        for (int i = 0; i < nv; ++i)
            for (int j = i; j < nv; ++j) {
                std::vector<int> stabs;
                for (auto& dc : G.double_cosets(K, var_rep[c][i], var_rep[c][j]))
                    stabs.push_back(dc.intersection);
                MonoRule r;
                r.lhs = mono_mul(mono_var(nv, i), mono_var(nv, j));
                r.rhs = set_poly(c, stabs);
                T.level[c].mono_rules.push_back(std::move(r));
            }
    }
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        // level automorphisms
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            std::vector<Poly> im;
            for (int L : var_rep[c]) im.push_back(set_poly(c, {G.conj_subgroup(n, L)}));
            T.weyl[c][n] = im;
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            int cS = G.conjugator_to_rep[s];
            // restriction: orbit decomposition over double cosets, conjugated
            // into the model level
            std::vector<Poly> rim;
            for (int L : var_rep[c]) {
                std::vector<int> stabs;
                for (auto& dc : G.double_cosets(K, s, L))
                    stabs.push_back(G.conj_subgroup(cS, dc.intersection));
                rim.push_back(set_poly(c2, stabs));
            }
            T.res_edge[c][s] = rim;
            // transfer: induction of each basis class
            std::map<Monomial, Poly> tab;
            int nv2 = T.level[c2].nvars();
            tab[mono_one(nv2)] = set_poly(c, {s});
            for (int i = 0; i < nv2; ++i) {
                int M = G.conj_subgroup(G.inv[cS], var_rep[c2][i]);
                tab[mono_var(nv2, i)] = set_poly(c, {M});
            }
            T.tr_edge[c][s] = tab;
        }
    }
    // norms by co-induction wherever declared and witnessed
    for (int cK = 0; cK < nc; ++cK) {
        int K = G.rep_of_class(cK);
        for (int cH = 0; cH < nc; ++cH) {
            if (cH == cK || !O.adm[cK][cH]) continue;
            int H = -1;
            for (int s : G.subgroups_of(K))
                if (G.cls(s) == cH) { H = s; break; }
            if (H < 0) continue;
            NormData nd;
            nd.K0 = K;
            nd.H0 = H;
            int cHH = G.cls(H);
            int icH = G.inv[G.conjugator_to_rep[H]];
            for (int Lstar : var_rep[cHH]) {
                // variable of the model level, moved to an actual subgroup of H
                int L = G.conj_subgroup(icH, Lstar);
                auto cosets = detail::coset_elem_sets(G, L);
                std::vector<std::vector<int>> hcosets;
                std::map<std::vector<int>, int> cidx;
                for (auto& cs : cosets)
                    if (G.contains(H, cs.front())) {
                        cidx[cs] = int(hcosets.size());
                        hcosets.push_back(cs);
                    }
                auto act_h = [&](int h, int pt) {
                    std::vector<int> moved;
                    for (int x : hcosets[pt]) moved.push_back(G.mul[h][x]);
                    std::sort(moved.begin(), moved.end());
                    return cidx.at(moved);
                };
                auto stabs =
                    detail::coinduced_orbit_stabs(G, K, H, int(hcosets.size()), act_h);
                nd.var_images.push_back(set_poly(cK, stabs));
            }
            T.norms[{cK, cH}] = nd;
        }
    }
    return T;
}

// --- fixed small functors ---------------------------------------------------

// two-element group; levels Z[t]/(t^2 - 2t) over Z
inline TambaraFunctor burnside_c2_tambara(const Group& C2) {
    return burnside_tambara(C2, complete_indexing(C2));
}

// Strickland's example over the two-element group: top level
// Z[b,g]/(b^2, bg, g^2, 2g), bottom level Z[a]/(a^2); T(a) = b, N(a) = g
inline TambaraFunctor strickland_tambara(const Group& C2) {
    if (C2.n != 2) fail(ErrKind::validation, "this fixture needs the two-element group");
    TambaraFunctor T;
    T.G = &C2;
    T.O = complete_indexing(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    T.level.resize(2);
    T.res_edge.resize(2);
    T.tr_edge.resize(2);
    T.weyl.resize(2);
    RewriteRing top;
    top.var_names = {"b", "g"};
    top.var_weights = {0, 0};
    top.mono_rules.push_back({mono_mul(mono_var(2, 0), mono_var(2, 0)), poly_zero()});
    top.mono_rules.push_back({mono_mul(mono_var(2, 0), mono_var(2, 1)), poly_zero()});
    top.mono_rules.push_back({mono_mul(mono_var(2, 1), mono_var(2, 1)), poly_zero()});
    top.coef_rules.push_back({2, mono_var(2, 1), poly_zero()});
    RewriteRing bot;
    bot.var_names = {"a"};
    bot.var_weights = {0};
    bot.mono_rules.push_back({mono_var(1, 0, 2), poly_zero()});
    T.level[cg] = top;
    T.level[ce] = bot;
    // R(b) = 2a, R(g) = 0
    T.res_edge[cg][C2.triv_id] = {poly_mono(mono_var(1, 0), 2), poly_zero()};
    // T(1) = 2, T(a) = b
    std::map<Monomial, Poly> tab;
    tab[mono_one(1)] = poly_const(2, 2);
    tab[mono_var(1, 0)] = poly_mono(mono_var(2, 0));
    T.tr_edge[cg][C2.triv_id] = tab;
    // trivial action on the bottom level
    T.weyl[ce][1] = {poly_mono(mono_var(1, 0))};
    NormData nd;
    nd.K0 = C2.full_id;
    nd.H0 = C2.triv_id;
    nd.var_images = {poly_mono(mono_var(2, 1))};
    T.norms[{cg, ce}] = nd;
    return T;
}

// the constant functor with value Z: every level is Z, restrictions are the
// identity, transfers multiply by the index, norms raise to the index power
inline TambaraFunctor constant_tambara(const Group& G, const IndexingSystem& O) {
    TambaraFunctor T;
    T.G = &G;
    T.O = O;
    int nc = int(G.classes.size());
    T.level.resize(nc);
    T.res_edge.resize(nc);
    T.tr_edge.resize(nc);
    T.weyl.resize(nc);
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            T.weyl[c][n] = {};
        }
        for (int s : G.maximal_subgroups(K)) {
            T.res_edge[c][s] = {};
            std::map<Monomial, Poly> tab;
            tab[mono_one(0)] = poly_const(0, G.order_of(K) / G.order_of(s));
            T.tr_edge[c][s] = tab;
        }
    }
    for (int cK = 0; cK < nc; ++cK) {
        int K = G.rep_of_class(cK);
        for (int cH = 0; cH < nc; ++cH) {
            if (cH == cK || !O.adm[cK][cH]) continue;
            int H = -1;
            for (int s : G.subgroups_of(K))
                if (G.cls(s) == cH) { H = s; break; }
            if (H < 0) continue;
            NormData nd;
            nd.K0 = K;
            nd.H0 = H;
            T.norms[{cK, cH}] = nd;
        }
    }
    return T;
}

// --- free functors on generators at the top level ---------------------------

struct FreeGenerator {
    std::string name;
    int sub_id = -1; // level carrying the generator
};

// polynomial extension of the Burnside functor by generators at the top level;
// with the complete system over the two-element group this adds norm classes
inline TambaraFunctor free_tambara(const Group& G, const IndexingSystem& O,
                                   const std::vector<FreeGenerator>& gens, int degree_bound) {
    if (gens.empty()) fail(ErrKind::validation, "free functor needs at least one generator");
    if (degree_bound < 2)
        fail(ErrKind::validation, "degree bound too small to close required relations");
    for (auto& g : gens)
        if (g.sub_id != G.full_id)
            fail(ErrKind::unsupported,
                 "free functors are only built on generators at the top level");
    bool complete_norms = false;
    for (int c = 0; c < int(G.classes.size()); ++c)
        for (int c2 = 0; c2 < int(G.classes.size()); ++c2)
            if (c != c2 && O.adm[c][c2]) complete_norms = true;
    if (complete_norms && G.n != 2)
        fail(ErrKind::unsupported,
             "free functors with norms are only built over the two-element group");
    int k = int(gens.size());
    TambaraFunctor T = burnside_tambara(G, O);
    T.degree_bound = degree_bound;
    int nc = int(G.classes.size());
    int ctop = G.cls(G.full_id);
    // extend each level ring: generators at the top, their restrictions below,
    // and over the two-element group with norms also one norm class per generator
    std::vector<int> x0(nc), n0(nc, -1); // first generator / norm-class variable index
    for (int c = 0; c < nc; ++c) {
        RewriteRing& R = T.level[c];
        R.degree_bound = degree_bound;
        x0[c] = R.nvars();
        for (int i = 0; i < k; ++i) {
            if (c == ctop)
                R.var_names.push_back(gens[i].name);
            else
                R.var_names.push_back(k == 1 ? std::string("r")
                                             : "r" + std::to_string(i + 1));
            R.var_weights.push_back(1);
        }
        if (complete_norms && c == ctop) {
            n0[c] = R.nvars();
            for (int i = 0; i < k; ++i) {
                R.var_names.push_back(k == 1 ? std::string("n")
                                             : "n" + std::to_string(i + 1));
                R.var_weights.push_back(2);
            }
        }
        for (auto& rule : R.mono_rules) {
            rule.lhs.resize(R.nvars(), 0);
            pad_poly_vars(rule.rhs, R.nvars());
        }
        for (auto& rule : R.coef_rules) {
            rule.lhs.resize(R.nvars(), 0);
            pad_poly_vars(rule.rhs, R.nvars());
        }
    }
    if (complete_norms) {
        // t * n_i -> t * x_i^2 closes the interaction of the transferred unit
        // with the norm classes
        RewriteRing& R = T.level[ctop];
        int nv = R.nvars();
        for (int i = 0; i < k; ++i) {
            MonoRule r;
            r.lhs = mono_mul(mono_var(nv, 0), mono_var(nv, n0[ctop] + i));
            r.rhs = poly_mono(mono_mul(mono_var(nv, 0), mono_var(nv, x0[ctop] + i, 2)));
            R.mono_rules.push_back(std::move(r));
        }
    }
    // extend the structure maps
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        int nv = T.level[c].nvars();
        for (auto& [n, im] : T.weyl[c]) {
            for (auto& p : im) pad_poly_vars(p, nv);
            for (int i = 0; i < k; ++i) im.push_back(poly_mono(mono_var(nv, x0[c] + i)));
            if (n0[c] >= 0)
                for (int i = 0; i < k; ++i) im.push_back(poly_mono(mono_var(nv, n0[c] + i)));
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            int nv2 = T.level[c2].nvars();
            auto& rim = T.res_edge[c].at(s);
            for (auto& p : rim) pad_poly_vars(p, nv2);
            for (int i = 0; i < k; ++i) rim.push_back(poly_mono(mono_var(nv2, x0[c2] + i)));
            if (n0[c] >= 0)
                for (int i = 0; i < k; ++i)
                    rim.push_back(poly_mono(mono_var(nv2, x0[c2] + i, 2)));
            // transfers over the product basis: T(m r^a) = x^a T(m)
            std::map<Monomial, Poly> tab;
            auto& old_tab = T.tr_edge[c].at(s);
            for (int w = 0; w <= degree_bound; ++w)
                for (auto& mono : T.level[c2].basis(w)) {
                    Monomial burn(mono.begin(), mono.begin() + x0[c2]);
                    Monomial xpart = mono_one(nv);
                    for (int i = 0; i < k; ++i) xpart[x0[c] + i] = mono[x0[c2] + i];
                    auto it = old_tab.find(burn);
                    if (it == old_tab.end()) fail(ErrKind::internal, "transfer table gap");
                    Poly lifted = it->second;
                    pad_poly_vars(lifted, nv);
                    tab[mono] = T.level[c].normalize(poly_mul_raw(lifted, poly_mono(xpart)));
                }
            T.tr_edge[c][s] = tab;
        }
    }
    // norms: pad the co-induction images and set the generator norm classes
    for (auto& [key, nd] : T.norms) {
        for (auto& p : nd.var_images) pad_poly_vars(p, T.level[key.first].nvars());
        if (complete_norms && key.first == ctop)
            for (int i = 0; i < k; ++i)
                nd.var_images.push_back(poly_mono(mono_var(T.level[ctop].nvars(), n0[ctop] + i)));
    }
    return T;
}

// --- additive skeleton ------------------------------------------------------

// the levels as graded abelian groups with all additive structure maps, for
// validation and for module-level computations
struct TambaraSkeleton {
    const TambaraFunctor* T = nullptr;
    MackeyFunctor M;
    int wmax = 0;
    std::vector<std::vector<std::vector<Monomial>>> bases; // [class][weight]
    std::vector<std::vector<int>> offset;                  // [class][weight]

    Vec encode(int c, const Poly& p) const {
        const RewriteRing& R = T->level[c];
        Poly q = R.normalize(p);
        Vec v(M.level[c].n_gens, 0);
        for (auto& [m, coef] : q) {
            int w = R.weight(m);
            if (w > wmax) fail(ErrKind::resource_cap, "element beyond the graded bound");
            const auto& bs = bases[c][w];
            auto it = std::lower_bound(bs.begin(), bs.end(), m,
                                       [&](const Monomial& a, const Monomial& b) {
                                           return R.mono_less(a, b);
                                       });
            if (it == bs.end() || *it != m) fail(ErrKind::internal, "monomial outside basis");
            v[offset[c][w] + int(it - bs.begin())] = coef;
        }
        return v;
    }
    Poly decode(int c, const Vec& v) const {
        Poly p;
        int at = 0;
        for (int w = 0; w <= wmax; ++w)
            for (auto& m : bases[c][w]) poly_add_term(p, m, v[at++]);
        return T->level[c].normalize(p);
    }
    // like encode, but terms beyond the graded window are dropped (quotient view)
    Vec encode_trunc(int c, const Poly& p) const {
        const RewriteRing& R = T->level[c];
        Poly q = R.normalize(p);
        Vec v(M.level[c].n_gens, 0);
        for (auto& [m, coef] : q) {
            int w = R.weight(m);
            if (w > wmax) continue;
            const auto& bs = bases[c][w];
            auto it = std::lower_bound(bs.begin(), bs.end(), m,
                                       [&](const Monomial& a, const Monomial& b) {
                                           return R.mono_less(a, b);
                                       });
            if (it == bs.end() || *it != m) fail(ErrKind::internal, "monomial outside basis");
            v[offset[c][w] + int(it - bs.begin())] = coef;
        }
        return v;
    }
};

inline TambaraSkeleton additive_skeleton(const TambaraFunctor& T, int wmax = -1) {
    const Group& G = *T.G;
    if (wmax < 0) wmax = T.degree_bound;
    TambaraSkeleton S;
    S.T = &T;
    S.wmax = wmax;
    int nc = int(G.classes.size());
    S.M.G = &G;
    S.M.level.resize(nc);
    S.M.weyl.resize(nc);
    S.M.res_edge.resize(nc);
    S.M.tr_edge.resize(nc);
    S.M.gen_names.resize(nc);
    S.bases.resize(nc);
    S.offset.resize(nc);
    for (int c = 0; c < nc; ++c) {
        int total = 0;
        std::vector<Mat> rels;
        for (int w = 0; w <= wmax; ++w) {
            S.offset[c].push_back(total);
            S.bases[c].push_back(T.level[c].basis(w));
            total += int(S.bases[c].back().size());
        }
        S.M.level[c] = FPAb(total);
        int rel_rows = 0;
        for (int w = 0; w <= wmax; ++w) rel_rows += T.level[c].slice_group(w).rels.rows;
        S.M.level[c].rels = Mat::zero(rel_rows, total);
        int r0 = 0;
        for (int w = 0; w <= wmax; ++w) {
            Mat rw = T.level[c].slice_group(w).rels;
            for (int r = 0; r < rw.rows; ++r)
                for (int q = 0; q < rw.cols; ++q)
                    S.M.level[c].rels.at(r0 + r, S.offset[c][w] + q) = rw.at(r, q);
            r0 += rw.rows;
        }
        for (int w = 0; w <= wmax; ++w)
            for (auto& m : S.bases[c][w])
                S.M.gen_names[c].push_back(T.level[c].mono_to_string(m));
    }
    auto matrix_of = [&](int c_from, int c_to, const std::function<Poly(const Poly&)>& f) {
        Mat A = Mat::zero(S.M.level[c_to].n_gens, S.M.level[c_from].n_gens);
        int j = 0;
        for (int w = 0; w <= wmax; ++w)
            for (auto& m : S.bases[c_from][w]) {
                Vec col = S.encode(c_to, f(poly_mono(m)));
                for (int r = 0; r < A.rows; ++r) A.at(r, j) = col[r];
                ++j;
            }
        return A;
    };
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            RingMap wm = T.weyl_ring_at(c, n);
            S.M.weyl[c][n] = matrix_of(c, c, [&](const Poly& p) { return wm.apply(p); });
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            RingMap rm = T.rmap(c, c2, T.res_edge[c].at(s));
            S.M.res_edge[c][s] = matrix_of(c, c2, [&](const Poly& p) { return rm.apply(p); });
            S.M.tr_edge[c][s] =
                matrix_of(c2, c, [&](const Poly& p) { return T.tr_table(c, s, p); });
        }
    }
    return S;
}

// --- validation -------------------------------------------------------------

inline void validate_tambara(const TambaraFunctor& T, int wmax = -1) {
    const Group& G = *T.G;
    if (wmax < 0) wmax = T.degree_bound;
    auto bad = validate_indexing_system(T.O);
    if (!bad.empty()) fail(ErrKind::validation, "indexing system invalid: " + bad.front());
    for (auto& R : T.level) R.validate();
    // ring maps respect the presentations
    int nc = int(G.classes.size());
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (int s : G.maximal_subgroups(K)) T.rmap(c, G.cls(s), T.res_edge[c].at(s)).validate();
        for (auto& [n, im] : T.weyl[c]) T.rmap(c, c, im).validate();
    }
    // the additive layer satisfies all axioms
    TambaraSkeleton S = additive_skeleton(T, wmax);
    validate_mackey(S.M);
    // reciprocity: s * T(m) = T(R(s) * m) over each edge
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            RingMap rm = T.rmap(c, c2, T.res_edge[c].at(s));
            for (int wu = 0; wu <= wmax; ++wu)
                for (auto& u : T.level[c].basis(wu))
                    for (int wm = 0; wu + wm <= wmax; ++wm)
                        for (auto& m : T.level[c2].basis(wm)) {
                            Poly lhs = T.level[c].mul(poly_mono(u), T.tr_table(c, s, poly_mono(m)));
                            Poly rhs = T.tr_table(
                                c, s, T.level[c2].mul(rm.apply(poly_mono(u)), poly_mono(m)));
                            if (!T.level[c].eq(lhs, rhs))
                                fail(ErrKind::validation, "reciprocity fails for " +
                                                              T.level[c].mono_to_string(u) +
                                                              " against " +
                                                              T.level[c2].mono_to_string(m));
                        }
        }
    }
    // norms: unit preserved and the restriction expansion over double cosets
    for (auto& [key, nd] : T.norms) {
        Poly one = eval_norm(T, nd.K0, nd.H0, poly_const(T.level[key.second].nvars(), 1));
        if (!T.level[key.first].eq(one, poly_const(T.level[key.first].nvars(), 1)))
            fail(ErrKind::validation, "norm does not preserve the unit");
        for (int s : G.maximal_subgroups(nd.K0)) {
            int c2 = G.cls(s);
            RingMap rs = T.ring_res(nd.K0, s);
            for (int v = 0; v < T.level[key.second].nvars(); ++v) {
                Poly var = poly_mono(mono_var(T.level[key.second].nvars(), v));
                Poly lhs = rs.apply(eval_norm(T, nd.K0, nd.H0, var));
                Poly rhs = poly_const(T.level[c2].nvars(), 1);
                for (auto& dc : G.double_cosets(nd.K0, s, nd.H0)) {
                    int gH = G.conj_subgroup(dc.rep, nd.H0);
                    int D = G.intersect(s, gH);
                    Poly moved = T.ring_conj(dc.rep, nd.H0).apply(var);
                    Poly down = T.ring_res(gH, D).apply(moved);
                    rhs = T.level[c2].mul(rhs, eval_norm(T, s, D, down));
                }
                if (!T.level[c2].eq(lhs, rhs))
                    fail(ErrKind::validation, "norm restriction expansion fails on " +
                                                  T.level[key.second].var_names[v]);
            }
        }
    }
}

// --- morphisms ---------------------------------------------------------------

struct TambaraMorphism {
    const TambaraFunctor* src = nullptr;
    const TambaraFunctor* dst = nullptr;
    std::vector<std::vector<Poly>> var_images; // per class

    RingMap at(int c) const {
        return RingMap{&src->level[c], &dst->level[c], var_images[c]};
    }
};

inline TambaraMorphism identity_morphism(const TambaraFunctor& T) {
    TambaraMorphism f;
    f.src = &T;
    f.dst = &T;
    for (int c = 0; c < int(T.level.size()); ++c) f.var_images.push_back(T.identity_images(c));
    return f;
}

inline void validate_tambara_morphism(const TambaraMorphism& f, int wmax = -1) {
    const Group& G = *f.src->G;
    if (wmax < 0) wmax = std::min(f.src->degree_bound, f.dst->degree_bound);
    int nc = int(G.classes.size());
    for (int c = 0; c < nc; ++c) f.at(c).validate();
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (auto& [n, im] : f.src->weyl[c]) {
            RingMap a = compose(f.src->weyl_ring_at(c, n), f.at(c));
            RingMap b = compose(f.at(c), f.dst->weyl_ring_at(c, n));
            for (int v = 0; v < f.src->level[c].nvars(); ++v) {
                Poly var = poly_mono(mono_var(f.src->level[c].nvars(), v));
                if (!f.dst->level[c].eq(a.apply(var), b.apply(var)))
                    fail(ErrKind::validation, "morphism does not commute with the action");
            }
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            RingMap a = compose(f.src->rmap(c, c2, f.src->res_edge[c].at(s)), f.at(c2));
            RingMap b = compose(f.at(c), f.dst->rmap(c, c2, f.dst->res_edge[c].at(s)));
            for (int v = 0; v < f.src->level[c].nvars(); ++v) {
                Poly var = poly_mono(mono_var(f.src->level[c].nvars(), v));
                if (!f.dst->level[c2].eq(a.apply(var), b.apply(var)))
                    fail(ErrKind::validation, "morphism does not commute with restriction");
            }
            for (int w = 0; w <= wmax; ++w)
                for (auto& m : f.src->level[c2].basis(w)) {
                    Poly lhs = f.at(c).apply(f.src->tr_table(c, s, poly_mono(m)));
                    Poly rhs = f.dst->tr_table(c, s, f.at(c2).apply(poly_mono(m)));
                    if (!f.dst->level[c].eq(lhs, rhs))
                        fail(ErrKind::validation, "morphism does not commute with transfer");
                }
        }
    }
    for (auto& [key, nd] : f.src->norms) {
        if (!f.dst->find_norm(key.first, key.second)) continue;
        for (int v = 0; v < f.src->level[key.second].nvars(); ++v) {
            Poly var = poly_mono(mono_var(f.src->level[key.second].nvars(), v));
            Poly lhs = f.at(key.first).apply(eval_norm(*f.src, nd.K0, nd.H0, var));
            Poly rhs = eval_norm(*f.dst, nd.K0, nd.H0, f.at(key.second).apply(var));
            if (!f.dst->level[key.first].eq(lhs, rhs))
                fail(ErrKind::validation, "morphism does not commute with a norm");
        }
    }
}

} // namespace eqca
