#pragma once
// Modules over a graded equivariant commutative ring: free modules carrying
// their universal property, hom groups, kernels/cokernels, generated
// submodules, tensor products over the ring, square-zero ring extensions and
// augmentation ideals.
#include "tamb.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace eqca {

// --- module data -------------------------------------------------------------

struct ModuleGen {
    std::string name;
    int sub_id = 0; // level carrying the generator
    int weight = 0;
};
using GIndexedSet = std::vector<ModuleGen>;

// additive layer plus one action matrix per ring variable at each level;
// generator weights record the grading (-1 = unknown or mixed)
struct RModule {
    const TambaraFunctor* ring = nullptr;
    MackeyFunctor M;
    std::vector<std::vector<int>> gen_weight;
    std::vector<std::vector<Mat>> act; // per class, per ring variable
    int wmax = 0;

    Mat act_pow(int c, const Monomial& m) const {
        Mat r = Mat::identity(M.level[c].n_gens);
        for (int v = 0; v < int(m.size()); ++v)
            for (int e = 0; e < m[v]; ++e) r = act[c][v] * r;
        return r;
    }
    Mat act_of(int c, const Poly& p) const {
        Poly q = ring->level[c].normalize(p);
        int n = M.level[c].n_gens;
        Mat r = Mat::zero(n, n);
        for (auto& [m, coef] : q) r = r + act_pow(c, m).scaled(coef);
        return r;
    }
};

namespace detail {

inline Mat blockdiag(const Mat& a, const Mat& b) {
    Mat r(a.rows + b.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) r.at(a.rows + i, a.cols + j) = b.at(i, j);
    return r;
}

// columnwise exact solutions of basis * X = rhs
inline Mat solve_cols(const Mat& basis, const Mat& rhs, const char* what) {
    Mat X(basis.cols, rhs.cols);
    for (int q = 0; q < rhs.cols; ++q) {
        auto x = solve(basis, rhs.col(q));
        if (!x) fail(ErrKind::internal, std::string(what) + ": image leaves the span");
        for (int r = 0; r < basis.cols; ++r) X.at(r, q) = (*x)[r];
    }
    return X;
}

// common weight of the support, -1 when mixed or unknown; zero vector -> 0
inline int vec_weight(const std::vector<int>& wt, const Vec& v) {
    int w = -2;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (wt[i] < 0) return -1;
        if (w == -2) w = wt[i];
        else if (w != wt[i]) return -1;
    }
    return w == -2 ? 0 : w;
}

} // namespace detail

inline MackeyFunctor direct_sum_mackey(const MackeyFunctor& A, const MackeyFunctor& B) {
    const Group& G = *A.G;
    int nc = int(G.classes.size());
    MackeyFunctor S;
    S.G = &G;
    S.level.resize(nc);
    S.weyl.resize(nc);
    S.res_edge.resize(nc);
    S.tr_edge.resize(nc);
    S.gen_names.resize(nc);
    for (int c = 0; c < nc; ++c) {
        S.level[c] = FPAb(A.level[c].n_gens + B.level[c].n_gens,
                          detail::blockdiag(A.level[c].rels, B.level[c].rels));
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            S.weyl[c][n] = detail::blockdiag(A.weyl_at(c, n), B.weyl_at(c, n));
        }
        for (int s : G.maximal_subgroups(K)) {
            S.res_edge[c][s] =
                detail::blockdiag(A.res_edge[c].at(s), B.res_edge[c].at(s));
            S.tr_edge[c][s] = detail::blockdiag(A.tr_edge[c].at(s), B.tr_edge[c].at(s));
        }
    }
    return S;
}

inline RModule zero_module(const TambaraFunctor& T) {
    const Group& G = *T.G;
    int nc = int(G.classes.size());
    RModule Z;
    Z.ring = &T;
    Z.wmax = T.degree_bound;
    Z.M.G = &G;
    Z.M.level.assign(nc, FPAb(0));
    Z.M.weyl.resize(nc);
    Z.M.res_edge.resize(nc);
    Z.M.tr_edge.resize(nc);
    Z.M.gen_names.resize(nc);
    Z.gen_weight.resize(nc);
    Z.act.resize(nc);
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            Z.M.weyl[c][n] = Mat(0, 0);
        }
        for (int s : G.maximal_subgroups(K)) {
            Z.M.res_edge[c][s] = Mat(0, 0);
            Z.M.tr_edge[c][s] = Mat(0, 0);
        }
        Z.act[c].assign(T.level[c].nvars(), Mat(0, 0));
    }
    return Z;
}

// --- validation ---------------------------------------------------------------

inline void validate_module(const RModule& m) {
    const TambaraFunctor& T = *m.ring;
    const Group& G = *T.G;
    validate_mackey(m.M);
    int nc = int(G.classes.size());
    for (int c = 0; c < nc; ++c) {
        const RewriteRing& R = T.level[c];
        const FPAb& L = m.M.level[c];
        if (int(m.gen_weight[c].size()) != L.n_gens)
            fail(ErrKind::validation, "module: weight table does not match the level");
        if (int(m.act[c].size()) != R.nvars())
            fail(ErrKind::validation, "module: wrong number of action maps");
        for (int v = 0; v < R.nvars(); ++v) {
            const Mat& A = m.act[c][v];
            if (A.rows != L.n_gens || A.cols != L.n_gens)
                fail(ErrKind::validation, "module: action map has the wrong shape");
            if (!map_respects(L, L, A))
                fail(ErrKind::validation, "module: action does not respect the presentation");
            for (int q = 0; q < A.cols; ++q) {
                int wq = m.gen_weight[c][q];
                if (wq < 0) continue;
                for (int r = 0; r < A.rows; ++r)
                    if (A.at(r, q) != 0 && m.gen_weight[c][r] >= 0 &&
                        m.gen_weight[c][r] != wq + R.var_weights[v])
                        fail(ErrKind::validation, "module: action is not graded");
            }
            for (int v2 = v + 1; v2 < R.nvars(); ++v2)
                if (!maps_equal(L, A * m.act[c][v2], m.act[c][v2] * A))
                    fail(ErrKind::validation, "module: action maps do not commute");
        }
        for (auto& r : R.mono_rules)
            if (!maps_equal(L, m.act_pow(c, r.lhs), m.act_of(c, r.rhs)))
                fail(ErrKind::validation, "module: action violates a ring relation");
        for (auto& r : R.coef_rules)
            if (!maps_equal(L, m.act_pow(c, r.lhs).scaled(r.c0), m.act_of(c, r.rhs)))
                fail(ErrKind::validation, "module: action violates a ring relation");
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            Mat W = m.M.weyl_at(c, n);
            RingMap wr = T.weyl_ring_at(c, n);
            for (int v = 0; v < R.nvars(); ++v) {
                Poly var = poly_mono(mono_var(R.nvars(), v));
                if (!maps_equal(L, W * m.act[c][v], m.act_of(c, wr.apply(var)) * W))
                    fail(ErrKind::validation, "module: action is not equivariant");
            }
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            const Mat& Res = m.M.res_edge[c].at(s);
            const Mat& Tr = m.M.tr_edge[c].at(s);
            RingMap rm = T.rmap(c, c2, T.res_edge[c].at(s));
            for (int v = 0; v < R.nvars(); ++v) {
                Poly var = poly_mono(mono_var(R.nvars(), v));
                Mat down = m.act_of(c2, rm.apply(var));
                if (!maps_equal(m.M.level[c2], Res * m.act[c][v], down * Res))
                    fail(ErrKind::validation, "module: action does not restrict");
                if (!maps_equal(L, m.act[c][v] * Tr, Tr * down))
                    fail(ErrKind::validation, "module: transfer is not linear over restriction");
            }
            const RewriteRing& R2 = T.level[c2];
            for (int v2 = 0; v2 < R2.nvars(); ++v2) {
                Poly var = poly_mono(mono_var(R2.nvars(), v2));
                Mat lhs = m.act_of(c, T.tr_table(c, s, var));
                if (!maps_equal(L, lhs, Tr * m.act[c2][v2] * Res))
                    fail(ErrKind::validation, "module: transferred scalars act wrongly");
            }
        }
    }
}

struct ModuleMorphism {
    const RModule* src = nullptr;
    const RModule* dst = nullptr;
    std::vector<Mat> at; // per class
};

inline void validate_module_morphism(const ModuleMorphism& f) {
    if (f.src->ring != f.dst->ring)
        fail(ErrKind::validation, "module morphism: ring mismatch");
    const Group& G = *f.src->M.G;
    int nc = int(G.classes.size());
    for (int c = 0; c < nc; ++c) {
        const Mat& A = f.at[c];
        if (!map_respects(f.src->M.level[c], f.dst->M.level[c], A))
            fail(ErrKind::validation, "module morphism: does not respect the presentations");
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            if (!maps_equal(f.dst->M.level[c], A * f.src->M.weyl_at(c, n),
                            f.dst->M.weyl_at(c, n) * A))
                fail(ErrKind::validation, "module morphism: not equivariant");
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            if (!maps_equal(f.dst->M.level[c2], f.at[c2] * f.src->M.res_edge[c].at(s),
                            f.dst->M.res_edge[c].at(s) * A))
                fail(ErrKind::validation, "module morphism: does not commute with restriction");
            if (!maps_equal(f.dst->M.level[c], A * f.src->M.tr_edge[c].at(s),
                            f.dst->M.tr_edge[c].at(s) * f.at[c2]))
                fail(ErrKind::validation, "module morphism: does not commute with transfer");
        }
        for (size_t v = 0; v < f.src->act[c].size(); ++v)
            if (!maps_equal(f.dst->M.level[c], A * f.src->act[c][v], f.dst->act[c][v] * A))
                fail(ErrKind::validation, "module morphism: not linear over the ring");
    }
}

// --- free modules -------------------------------------------------------------

// one orbit block of a free module at a fixed level: sections of the shifted
// ring over the orbit of a pair of cosets, in model coordinates of the pair
// stabilizer sp; g0 and v0 carry the base pair back to the reference cosets
struct FreeComponent {
    int gen = 0;
    int sp = 0;
    int g0 = 0, v0 = 0;
    int offset = 0;
    int ngens = 0;
};

struct FreeModule {
    RModule mod;
    GIndexedSet gens;
    std::vector<TambaraSkeleton> skel;            // per generator
    std::vector<std::vector<FreeComponent>> comp; // per class
    std::vector<std::pair<int, Vec>> gen_vec;     // each generator inside its level
};

inline FreeModule free_module(const TambaraFunctor& T, const GIndexedSet& gens_in,
                              int wmax = -1) {
    const Group& G = *T.G;
    if (wmax < 0) wmax = T.degree_bound;
    int nc = int(G.classes.size());
    FreeModule F;
    F.mod = zero_module(T);
    F.mod.wmax = wmax;
    F.comp.resize(nc);
    std::set<std::string> seen;
    for (auto g : gens_in) {
        if (g.name.empty() || !seen.insert(g.name).second)
            fail(ErrKind::validation, "free module: generator names must be distinct");
        if (g.sub_id < 0 || g.sub_id >= int(G.subgroups.size()))
            fail(ErrKind::validation, "free module: no such subgroup");
        if (g.weight < 0) fail(ErrKind::validation, "free module: negative generator weight");
        if (g.weight > wmax)
            fail(ErrKind::resource_cap, "free module: generator weight beyond the graded bound");
        g.sub_id = G.subgroups[g.sub_id].class_rep;
        F.gens.push_back(g);
    }
    std::vector<std::vector<std::string>> names(nc);
    std::vector<std::tuple<int, int, Vec>> gen_pos; // (class, block base, unit coords)
    for (int j = 0; j < int(F.gens.size()); ++j) {
        int H = F.gens[j].sub_id, w0 = F.gens[j].weight;
        F.skel.push_back(additive_skeleton(T, wmax - w0));
        const TambaraSkeleton& sk = F.skel.back();
        GSet X = orbit_set(G, H);
        auto xcosets = detail::coset_elem_sets(G, H);
        MackeyFunctor Mj = shift_mackey(sk.M, X);
        std::vector<std::vector<Mat>> actj(nc);
        std::vector<std::vector<int>> wtj(nc);
        std::vector<std::vector<FreeComponent>> compj(nc);
        for (int c = 0; c < nc; ++c) {
            int K = G.rep_of_class(c);
            GSet Y = orbit_set(G, K);
            auto ycosets = detail::coset_elem_sets(G, K);
            GSet P = product_set(X, Y).X;
            MackeyValue val = value_at(sk.M, P);
            int nvc = T.level[c].nvars();
            actj[c].assign(nvc, Mat(val.total, val.total));
            for (size_t o = 0; o < val.dec.orbits.size(); ++o) {
                FreeComponent fc;
                fc.gen = j;
                int p = val.dec.orbits[o].base;
                int xi = p / Y.n, y = p % Y.n;
                fc.v0 = xcosets[xi].front();
                fc.g0 = ycosets[y].front();
                fc.sp = val.dec.orbits[o].stab;
                fc.offset = val.offset[o];
                int csp = G.cls(fc.sp);
                fc.ngens = sk.M.level[csp].n_gens;
                int gK = G.conj_subgroup(fc.g0, K);
                for (int v = 0; v < nvc; ++v) {
                    Poly s = T.ring_res(gK, fc.sp).apply(
                        T.ring_conj(fc.g0, K).apply(poly_mono(mono_var(nvc, v))));
                    int col = 0;
                    for (int w = 0; w <= sk.wmax; ++w)
                        for (auto& mb : sk.bases[csp][w]) {
                            Vec im = sk.encode_trunc(csp, poly_mul_raw(s, poly_mono(mb)));
                            for (int r = 0; r < fc.ngens; ++r)
                                actj[c][v].at(val.offset[o] + r, val.offset[o] + col) = im[r];
                            ++col;
                        }
                }
                for (int w = 0; w <= sk.wmax; ++w)
                    for (auto& mb : sk.bases[csp][w]) {
                        wtj[c].push_back(w0 + w);
                        std::string nm = F.gens[j].name;
                        if (o > 0) nm += "~" + std::to_string(o);
                        if (!mono_is_one(mb)) nm += "*" + T.level[csp].mono_to_string(mb);
                        names[c].push_back(nm);
                    }
                compj[c].push_back(fc);
            }
        }
        int cH = G.cls(H);
        Vec unit = sk.encode(cH, poly_const(T.level[cH].nvars(), 1));
        gen_pos.push_back({cH, F.mod.M.level[cH].n_gens, unit});
        MackeyFunctor merged = direct_sum_mackey(F.mod.M, Mj);
        for (int c = 0; c < nc; ++c) {
            int base = F.mod.M.level[c].n_gens;
            for (auto& fc : compj[c]) {
                fc.offset += base;
                F.comp[c].push_back(fc);
            }
            for (size_t v = 0; v < F.mod.act[c].size(); ++v)
                F.mod.act[c][v] = detail::blockdiag(F.mod.act[c][v], actj[c][v]);
            for (int w : wtj[c]) F.mod.gen_weight[c].push_back(w);
        }
        F.mod.M = std::move(merged);
    }
    F.mod.M.gen_names = std::move(names);
    for (auto& [cH, base, unit] : gen_pos) {
        Vec full(F.mod.M.level[cH].n_gens, Int(0));
        for (size_t i = 0; i < unit.size(); ++i) full[base + int(i)] = unit[i];
        F.gen_vec.push_back({cH, std::move(full)});
    }
    return F;
}

// the unique module map sending each generator to the chosen image: restrict
// the image to the component stabilizer, act by the component's ring
// coordinate, transfer back up
inline ModuleMorphism factor_through_free(const FreeModule& F, const RModule& N,
                                          const std::vector<Vec>& images) {
    if (F.mod.ring != N.ring) fail(ErrKind::validation, "universal map: ring mismatch");
    const Group& G = *N.M.G;
    if (images.size() != F.gens.size())
        fail(ErrKind::validation, "universal map: one image per generator required");
    for (size_t j = 0; j < images.size(); ++j)
        if (int(images[j].size()) != N.M.level[G.cls(F.gens[j].sub_id)].n_gens)
            fail(ErrKind::validation, "universal map: image has the wrong level size");
    int nc = int(G.classes.size());
    ModuleMorphism f;
    f.src = &F.mod;
    f.dst = &N;
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        Mat A = Mat::zero(N.M.level[c].n_gens, F.mod.M.level[c].n_gens);
        for (auto& fc : F.comp[c]) {
            int H = F.gens[fc.gen].sub_id;
            int csp = G.cls(fc.sp);
            Vec psi = N.M.res_map(G.conj_subgroup(fc.v0, H), fc.sp)
                          .apply(N.M.conj_map(fc.v0, H).apply(images[fc.gen]));
            int gK = G.conj_subgroup(fc.g0, K);
            Mat trb = N.M.conj_map(G.inv[fc.g0], gK) * N.M.tr_map(gK, fc.sp);
            const TambaraSkeleton& sk = F.skel[fc.gen];
            int col = 0;
            for (int w = 0; w <= sk.wmax; ++w)
                for (auto& mb : sk.bases[csp][w]) {
                    Vec im = trb.apply(N.act_of(csp, poly_mono(mb)).apply(psi));
                    for (int r = 0; r < A.rows; ++r) A.at(r, fc.offset + col) = im[r];
                    ++col;
                }
        }
        f.at.push_back(std::move(A));
    }
    return f;
}

// --- hom groups ---------------------------------------------------------------

using ModuleHom = MackeyHom;

inline ModuleHom module_hom(const RModule& M0, const RModule& N0) {
    if (M0.ring != N0.ring) fail(ErrKind::validation, "module hom: ring mismatch");
    int nc = int(M0.M.G->classes.size());
    std::vector<HomEq> extra;
    for (int c = 0; c < nc; ++c)
        for (size_t v = 0; v < M0.act[c].size(); ++v)
            extra.push_back({c, M0.act[c][v], N0.act[c][v]});
    return hom_mackey(M0.M, N0.M, extra);
}

// --- presentation reduction ---------------------------------------------------

// isomorphic copy of a module on diagonalized level presentations; `to` and
// `from` are the mutually inverse level isomorphisms.  Generator weights are
// lost in the mixing, so the result serves hom computations, not graded ones.
struct CondensedModule {
    RModule mod;
    std::vector<Mat> to, from; // per class: ambient -> small, small -> ambient
};

inline CondensedModule condense_module(const RModule& m) {
    const Group& G = *m.M.G;
    int nc = int(G.classes.size());
    CondensedModule R;
    R.mod.ring = m.ring;
    R.mod.wmax = m.wmax;
    R.mod.M.G = &G;
    for (int c = 0; c < nc; ++c) {
        Simplified s = simplify(m.M.level[c]);
        R.mod.M.level.push_back(s.group);
        R.to.push_back(std::move(s.to_simple));
        R.from.push_back(std::move(s.from_simple));
    }
    R.mod.M.weyl.resize(nc);
    R.mod.M.res_edge.resize(nc);
    R.mod.M.tr_edge.resize(nc);
    R.mod.M.gen_names.resize(nc);
    R.mod.gen_weight.resize(nc);
    R.mod.act.resize(nc);
    for (int c = 0; c < nc; ++c) {
        for (auto& [n, W] : m.M.weyl[c]) R.mod.M.weyl[c][n] = R.to[c] * W * R.from[c];
        for (auto& [s, A] : m.M.res_edge[c]) {
            int c2 = G.cls(s);
            R.mod.M.res_edge[c][s] = R.to[c2] * A * R.from[c];
        }
        for (auto& [s, A] : m.M.tr_edge[c]) {
            int c2 = G.cls(s);
            R.mod.M.tr_edge[c][s] = R.to[c] * A * R.from[c2];
        }
        for (auto& A : m.act[c]) R.mod.act[c].push_back(R.to[c] * A * R.from[c]);
        R.mod.gen_weight[c].assign(R.mod.M.level[c].n_gens, -1);
        for (int i = 0; i < R.mod.M.level[c].n_gens; ++i)
            R.mod.M.gen_names[c].push_back("s" + std::to_string(i));
    }
    return R;
}

// --- submodules ---------------------------------------------------------------

struct SubModule {
    RModule mod;
    std::vector<Mat> embed; // per class: generator images in the ambient level
};

namespace detail {

// presentation of the subgroup generated by the columns of B inside amb
inline FPAb subgroup_presentation(const FPAb& amb, const Mat& B) {
    Mat ker = kernel_basis(Mat::hstack(B, amb.rel_cols()));
    Mat rels(ker.cols, B.cols);
    for (int r = 0; r < ker.cols; ++r)
        for (int q = 0; q < B.cols; ++q) rels.at(r, q) = ker.at(q, r);
    return FPAb(B.cols, rels);
}

// module structure on lattices closed under every structure map
inline RModule induced_submodule(const RModule& N, const std::vector<Mat>& bases) {
    const TambaraFunctor& T = *N.ring;
    const Group& G = *T.G;
    int nc = int(G.classes.size());
    RModule S;
    S.ring = N.ring;
    S.wmax = N.wmax;
    S.M.G = &G;
    S.M.level.resize(nc);
    S.M.weyl.resize(nc);
    S.M.res_edge.resize(nc);
    S.M.tr_edge.resize(nc);
    S.M.gen_names.resize(nc);
    S.gen_weight.resize(nc);
    S.act.resize(nc);
    for (int c = 0; c < nc; ++c)
        S.M.level[c] = subgroup_presentation(N.M.level[c], bases[c]);
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            S.M.weyl[c][n] =
                solve_cols(bases[c], N.M.weyl_at(c, n) * bases[c], "submodule structure");
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            S.M.res_edge[c][s] = solve_cols(bases[c2], N.M.res_edge[c].at(s) * bases[c],
                                            "submodule structure");
            S.M.tr_edge[c][s] = solve_cols(bases[c], N.M.tr_edge[c].at(s) * bases[c2],
                                           "submodule structure");
        }
        for (size_t v = 0; v < N.act[c].size(); ++v)
            S.act[c].push_back(
                solve_cols(bases[c], N.act[c][v] * bases[c], "submodule structure"));
        for (int q = 0; q < bases[c].cols; ++q)
            S.gen_weight[c].push_back(vec_weight(N.gen_weight[c], bases[c].col(q)));
    }
    return S;
}

} // namespace detail

// kernel as a submodule of the source; computed weight slice by weight slice
// when source, target, map and target relations are all graded
inline SubModule kernel_module(const ModuleMorphism& f) {
    const RModule& src = *f.src;
    const RModule& dst = *f.dst;
    int nc = int(src.M.G->classes.size());
    bool graded = true;
    for (int c = 0; c < nc && graded; ++c) {
        for (int w : src.gen_weight[c])
            if (w < 0) graded = false;
        for (int w : dst.gen_weight[c])
            if (w < 0) graded = false;
        if (!graded) break;
        const Mat& A = f.at[c];
        for (int q = 0; q < A.cols && graded; ++q)
            for (int r = 0; r < A.rows; ++r)
                if (A.at(r, q) != 0 && dst.gen_weight[c][r] != src.gen_weight[c][q])
                    graded = false;
        const Mat& rels = dst.M.level[c].rels;
        for (int r = 0; r < rels.rows && graded; ++r)
            if (detail::vec_weight(dst.gen_weight[c], rels.row(r)) < 0) graded = false;
    }
    std::vector<Mat> bases(nc);
    for (int c = 0; c < nc; ++c) {
        const Mat& A = f.at[c];
        Mat RB = dst.M.level[c].rel_cols();
        std::map<int, std::vector<int>> slices;
        if (graded)
            for (int q = 0; q < A.cols; ++q) slices[src.gen_weight[c][q]].push_back(q);
        else
            for (int q = 0; q < A.cols; ++q) slices[0].push_back(q);
        Mat full(A.cols, 0);
        for (auto& [w, idx] : slices) {
            Mat Aw(A.rows, int(idx.size()));
            for (int q = 0; q < int(idx.size()); ++q)
                for (int r = 0; r < A.rows; ++r) Aw.at(r, q) = A.at(r, idx[q]);
            Mat ker = kernel_basis(Mat::hstack(Aw, RB));
            Mat part(A.cols, ker.cols);
            for (int k = 0; k < ker.cols; ++k)
                for (int q = 0; q < int(idx.size()); ++q) part.at(idx[q], k) = ker.at(q, k);
            full = Mat::hstack(full, column_space_basis(part));
        }
        bases[c] = full;
    }
    SubModule S;
    S.mod = detail::induced_submodule(src, bases);
    S.embed = std::move(bases);
    return S;
}

inline RModule cokernel_module(const ModuleMorphism& f) {
    RModule Q = *f.dst;
    int nc = int(Q.M.G->classes.size());
    for (int c = 0; c < nc; ++c)
        Q.M.level[c].rels = Mat::vstack(Q.M.level[c].rels, f.at[c].transpose());
    return Q;
}

inline RModule direct_sum(const RModule& a, const RModule& b) {
    if (a.ring != b.ring) fail(ErrKind::validation, "direct sum: ring mismatch");
    RModule S;
    S.ring = a.ring;
    S.wmax = std::max(a.wmax, b.wmax);
    S.M = direct_sum_mackey(a.M, b.M);
    int nc = int(S.M.level.size());
    S.act.resize(nc);
    S.gen_weight.resize(nc);
    for (int c = 0; c < nc; ++c) {
        for (size_t v = 0; v < a.act[c].size(); ++v)
            S.act[c].push_back(detail::blockdiag(a.act[c][v], b.act[c][v]));
        S.gen_weight[c] = a.gen_weight[c];
        for (int w : b.gen_weight[c]) S.gen_weight[c].push_back(w);
    }
    return S;
}

// --- generated submodules -----------------------------------------------------

namespace detail {

struct LatOp {
    int from = 0, to = 0;
    Mat A;
};

// grow the lattices until each operation maps them into themselves exactly
inline std::vector<Mat> saturate_lattices(std::vector<Mat> basis,
                                          const std::vector<LatOp>& ops) {
    auto member = [&](int c, const Vec& v) {
        if (is_zero(v)) return true;
        if (basis[c].cols == 0) return false;
        return solve(basis[c], v).has_value();
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& op : ops)
            for (int q = 0; q < basis[op.from].cols; ++q) {
                Vec img = op.A.apply(basis[op.from].col(q));
                if (member(op.to, img)) continue;
                Mat one(int(img.size()), 1);
                for (size_t r = 0; r < img.size(); ++r) one.at(int(r), 0) = img[r];
                basis[op.to] = column_space_basis(Mat::hstack(basis[op.to], one));
                changed = true;
            }
    }
    return basis;
}

} // namespace detail

// smallest submodule containing the seeds and closed under the level actions,
// transfers, restrictions and the ring action
inline SubModule span_closure(const RModule& m, const std::vector<std::pair<int, Vec>>& seeds) {
    const Group& G = *m.M.G;
    int nc = int(G.classes.size());
    std::vector<Mat> basis(nc);
    for (int c = 0; c < nc; ++c) basis[c] = Mat(m.M.level[c].n_gens, 0);
    for (auto& [c, v] : seeds) {
        Mat one(int(v.size()), 1);
        for (size_t r = 0; r < v.size(); ++r) one.at(int(r), 0) = v[r];
        basis[c] = column_space_basis(Mat::hstack(basis[c], one));
    }
    std::vector<detail::LatOp> ops;
    for (int c = 0; c < nc; ++c) {
        for (auto& [n, W] : m.M.weyl[c]) ops.push_back({c, c, W});
        int K = G.rep_of_class(c);
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            ops.push_back({c, c2, m.M.res_edge[c].at(s)});
            ops.push_back({c2, c, m.M.tr_edge[c].at(s)});
        }
        for (auto& A : m.act[c]) ops.push_back({c, c, A});
    }
    basis = detail::saturate_lattices(std::move(basis), ops);
    SubModule S;
    S.mod = detail::induced_submodule(m, basis);
    S.embed = std::move(basis);
    return S;
}

// --- linear independence ------------------------------------------------------

struct IndependenceReport {
    bool independent = true;
    bool independent_at_own_level = true; // probing only each element's own block
    int witness_class = -1;
    Vec witness; // coefficients of a vanishing combination in the probe module
};

// the elements are independent iff the map from the free module on matching
// generators is injective; kernel vectors are the vanishing combinations
inline IndependenceReport linear_independence(const RModule& m,
                                              const std::vector<std::pair<int, Vec>>& elements) {
    const Group& G = *m.M.G;
    IndependenceReport rep;
    if (elements.empty()) return rep;
    GIndexedSet probe;
    std::vector<Vec> images;
    for (size_t i = 0; i < elements.size(); ++i) {
        int c = elements[i].first;
        int w = detail::vec_weight(m.gen_weight[c], elements[i].second);
        probe.push_back({"p" + std::to_string(i), G.rep_of_class(c), std::max(w, 0)});
        images.push_back(elements[i].second);
    }
    FreeModule F = free_module(*m.ring, probe, m.wmax);
    ModuleMorphism f = factor_through_free(F, m, images);
    int nc = int(G.classes.size());
    for (int c = 0; c < nc && rep.independent; ++c) {
        Mat RB = m.M.level[c].rel_cols();
        Mat ker = kernel_basis(Mat::hstack(f.at[c], RB));
        int n = F.mod.M.level[c].n_gens;
        for (int k = 0; k < ker.cols; ++k) {
            Vec x(n, Int(0));
            for (int r = 0; r < n; ++r) x[r] = ker.at(r, k);
            if (!F.mod.M.level[c].is_zero_elem(x)) {
                rep.independent = false;
                rep.witness_class = c;
                rep.witness = x;
                break;
            }
        }
    }
    // restricted probe: each element only through its own diagonal component
    for (int c = 0; c < nc && rep.independent_at_own_level; ++c) {
        std::vector<int> cols;
        for (size_t i = 0; i < elements.size(); ++i) {
            if (elements[i].first != c) continue;
            for (auto& fc : F.comp[c])
                if (fc.gen == int(i)) {
                    for (int r = 0; r < fc.ngens; ++r) cols.push_back(fc.offset + r);
                    break; // first component of this generator is the diagonal one
                }
        }
        if (cols.empty()) continue;
        Mat Ad(f.at[c].rows, int(cols.size()));
        for (int q = 0; q < int(cols.size()); ++q)
            for (int r = 0; r < Ad.rows; ++r) Ad.at(r, q) = f.at[c].at(r, cols[q]);
        const Mat& rels = F.mod.M.level[c].rels;
        std::vector<Vec> keep;
        for (int r = 0; r < rels.rows; ++r) {
            bool inside = true;
            for (int q = 0; q < rels.cols && inside; ++q)
                if (rels.at(r, q) != 0 &&
                    std::find(cols.begin(), cols.end(), q) == cols.end())
                    inside = false;
            if (!inside) continue;
            Vec row(cols.size(), Int(0));
            for (int q = 0; q < int(cols.size()); ++q) row[q] = rels.at(r, cols[q]);
            keep.push_back(std::move(row));
        }
        Mat RF(int(cols.size()), int(keep.size()));
        for (int k = 0; k < int(keep.size()); ++k)
            for (int r = 0; r < int(cols.size()); ++r) RF.at(r, k) = keep[k][r];
        Mat RB = m.M.level[c].rel_cols();
        Mat ker = kernel_basis(Mat::hstack(Ad, RB));
        for (int k = 0; k < ker.cols; ++k) {
            Vec x(cols.size(), Int(0));
            for (int r = 0; r < int(cols.size()); ++r) x[r] = ker.at(r, k);
            if (is_zero(x)) continue;
            if (RF.cols > 0 && solve(RF, x)) continue;
            rep.independent_at_own_level = false;
            break;
        }
    }
    return rep;
}

// --- tensor product over the ring ---------------------------------------------

struct TensorProduct {
    RModule mod; // the quotient, acting through the left factor
    BoxProduct box;
    std::vector<std::vector<Mat>> left_act, right_act; // before the quotient
};

inline TensorProduct tensor_over_r(const RModule& a, const RModule& b) {
    if (a.ring != b.ring) fail(ErrKind::validation, "tensor product: ring mismatch");
    const TambaraFunctor& T = *a.ring;
    const Group& G = *T.G;
    int nc = int(G.classes.size());
    TensorProduct tp;
    tp.box = box_product(a.M, b.M);
    const BoxProduct& P = tp.box;
    tp.left_act.resize(nc);
    tp.right_act.resize(nc);
    std::vector<std::pair<int, Vec>> seeds;
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        const BoxLevelInfo& L = P.info[c];
        int nvc = T.level[c].nvars();
        for (int v = 0; v < nvc; ++v) {
            Mat rawL(L.total, L.total), rawR(L.total, L.total);
            for (int pos = 0; pos < int(L.reps.size()); ++pos) {
                int H = L.reps[pos];
                int cH = G.cls(H);
                auto [na, nb] = L.dims[pos];
                Poly sH = T.ring_res(K, H).apply(poly_mono(mono_var(nvc, v)));
                Mat AL = a.act_of(cH, sH), AR = b.act_of(cH, sH);
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < nb; ++j) {
                        int col = L.offset[pos] + i * nb + j;
                        Vec lv = detail::box_expand(a.M, b.M, L, H, AL.col(i),
                                                    detail::unit_vec(nb, j));
                        Vec rv = detail::box_expand(a.M, b.M, L, H, detail::unit_vec(na, i),
                                                    AR.col(j));
                        for (int r = 0; r < L.total; ++r) {
                            rawL.at(r, col) = lv[r];
                            rawR.at(r, col) = rv[r];
                        }
                    }
            }
            tp.left_act[c].push_back(P.to_simple[c] * rawL * P.from_simple[c]);
            tp.right_act[c].push_back(P.to_simple[c] * rawR * P.from_simple[c]);
        }
        // balancing relations: scalars at each level move across the pairing
        for (int pos = 0; pos < int(L.reps.size()); ++pos) {
            int cH = G.cls(L.reps[pos]);
            auto [na, nb] = L.dims[pos];
            int nvH = T.level[cH].nvars();
            for (int w = 0; w < nvH; ++w) {
                const Mat& AW = a.act[cH][w];
                const Mat& BW = b.act[cH][w];
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < nb; ++j) {
                        Vec raw(L.total, Int(0));
                        for (int r = 0; r < na; ++r)
                            raw[L.offset[pos] + r * nb + j] += AW.at(r, i);
                        for (int r = 0; r < nb; ++r)
                            raw[L.offset[pos] + i * nb + r] -= BW.at(r, j);
                        seeds.push_back({c, P.to_simple[c].apply(raw)});
                    }
            }
        }
    }
    std::vector<Mat> lat(nc);
    for (int c = 0; c < nc; ++c) lat[c] = Mat(P.M.level[c].n_gens, 0);
    for (auto& [c, v] : seeds) {
        if (is_zero(v)) continue;
        Mat one(int(v.size()), 1);
        for (size_t r = 0; r < v.size(); ++r) one.at(int(r), 0) = v[r];
        lat[c] = column_space_basis(Mat::hstack(lat[c], one));
    }
    std::vector<detail::LatOp> ops;
    for (int c = 0; c < nc; ++c) {
        for (auto& [n, W] : P.M.weyl[c]) ops.push_back({c, c, W});
        int K = G.rep_of_class(c);
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            ops.push_back({c, c2, P.M.res_edge[c].at(s)});
            ops.push_back({c2, c, P.M.tr_edge[c].at(s)});
        }
        for (auto& A : tp.left_act[c]) ops.push_back({c, c, A});
        for (auto& A : tp.right_act[c]) ops.push_back({c, c, A});
    }
    lat = detail::saturate_lattices(std::move(lat), ops);
    tp.mod.ring = a.ring;
    tp.mod.wmax = std::min(a.wmax, b.wmax);
    tp.mod.M = P.M;
    int ncv = nc;
    tp.mod.act = tp.left_act;
    tp.mod.gen_weight.resize(ncv);
    for (int c = 0; c < nc; ++c) {
        tp.mod.M.level[c].rels = Mat::vstack(tp.mod.M.level[c].rels, lat[c].transpose());
        const BoxLevelInfo& L = P.info[c];
        std::vector<int> rawwt(L.total, -1);
        for (int pos = 0; pos < int(L.reps.size()); ++pos) {
            int cH = G.cls(L.reps[pos]);
            auto [na, nb] = L.dims[pos];
            for (int i = 0; i < na; ++i)
                for (int j = 0; j < nb; ++j) {
                    int wa = a.gen_weight[cH][i], wb = b.gen_weight[cH][j];
                    rawwt[L.offset[pos] + i * nb + j] = (wa < 0 || wb < 0) ? -1 : wa + wb;
                }
        }
        for (int g = 0; g < tp.mod.M.level[c].n_gens; ++g)
            tp.mod.gen_weight[c].push_back(
                detail::vec_weight(rawwt, P.from_simple[c].col(g)));
    }
    return tp;
}

// --- square-zero extensions ---------------------------------------------------

// ring extension B |x M with M squaring to zero; mvar maps each module
// generator to its ring variable per class
struct SquareZeroExtension {
    TambaraFunctor T;
    std::vector<std::vector<int>> mvar;
};

inline SquareZeroExtension square_zero(const TambaraFunctor& B, const RModule& Mmod) {
    if (Mmod.ring != &B) fail(ErrKind::validation, "square zero: module is over another ring");
    const Group& G = *B.G;
    int nc = int(G.classes.size());
    for (int c = 0; c < nc; ++c)
        for (int w : Mmod.gen_weight[c])
            if (w < 0) fail(ErrKind::unsupported, "square zero: module generators need weights");
    // per level: triangular order of the module generators, so that the action
    // rules only produce earlier variables
    std::vector<std::vector<int>> order(nc), pos(nc);
    std::vector<std::vector<Int>> modulus(nc);
    for (int c = 0; c < nc; ++c) {
        int n = Mmod.M.level[c].n_gens;
        std::vector<char> chosen(n, 0);
        pos[c].assign(n, -1);
        while (int(order[c].size()) < n) {
            int pick = -1;
            for (int i = 0; i < n && pick < 0; ++i) {
                if (chosen[i]) continue;
                bool ok = true;
                for (auto& A : Mmod.act[c])
                    for (int k = 0; k < n && ok; ++k)
                        if (k != i && A.at(k, i) != 0 && !chosen[k]) ok = false;
                if (ok) pick = i;
            }
            if (pick < 0)
                fail(ErrKind::unsupported, "square zero: module action is not triangular");
            chosen[pick] = 1;
            pos[c][pick] = int(order[c].size());
            order[c].push_back(pick);
        }
        modulus[c].assign(n, Int(0));
        const Mat& rels = Mmod.M.level[c].rels;
        for (int r = 0; r < rels.rows; ++r) {
            int hit = -1;
            for (int q = 0; q < rels.cols; ++q)
                if (rels.at(r, q) != 0) {
                    if (hit >= 0)
                        fail(ErrKind::unsupported,
                             "square zero: module presentation is not diagonal");
                    hit = q;
                }
            if (hit < 0) continue;
            Int d = rels.at(r, hit);
            if (d < 0) d = -d;
            Int& m = modulus[c][hit];
            m = (m == 0) ? d : gcd_int(m, d);
        }
    }
    SquareZeroExtension E;
    E.T.G = &G;
    E.T.O = B.O;
    E.T.degree_bound = B.degree_bound;
    E.T.level.resize(nc);
    E.T.res_edge.resize(nc);
    E.T.tr_edge.resize(nc);
    E.T.weyl.resize(nc);
    E.mvar.resize(nc);
    std::vector<int> nb(nc), nm(nc), nv2(nc);
    for (int c = 0; c < nc; ++c) {
        nb[c] = B.level[c].nvars();
        nm[c] = Mmod.M.level[c].n_gens;
        nv2[c] = nb[c] + nm[c];
        E.mvar[c].assign(nm[c], -1);
        RewriteRing R;
        R.degree_bound = B.degree_bound;
        R.var_names = B.level[c].var_names;
        R.var_weights = B.level[c].var_weights;
        for (int t = 0; t < nm[c]; ++t) {
            R.var_names.push_back("m" + std::to_string(t));
            R.var_weights.push_back(Mmod.gen_weight[c][order[c][t]]);
            E.mvar[c][order[c][t]] = nb[c] + t;
        }
        for (auto r : B.level[c].mono_rules) {
            r.lhs.resize(nv2[c], 0);
            pad_poly_vars(r.rhs, nv2[c]);
            R.mono_rules.push_back(std::move(r));
        }
        for (int t = 0; t < nm[c]; ++t)
            for (int u = t; u < nm[c]; ++u) {
                MonoRule r;
                r.lhs = mono_mul(mono_var(nv2[c], nb[c] + t), mono_var(nv2[c], nb[c] + u));
                r.rhs = poly_zero();
                R.mono_rules.push_back(std::move(r));
            }
        for (int v = 0; v < nb[c]; ++v)
            for (int t = 0; t < nm[c]; ++t) {
                MonoRule r;
                r.lhs = mono_mul(mono_var(nv2[c], v), mono_var(nv2[c], nb[c] + t));
                const Mat& A = Mmod.act[c][v];
                for (int k = 0; k < nm[c]; ++k)
                    if (A.at(k, order[c][t]) != 0)
                        poly_add_term(r.rhs, mono_var(nv2[c], nb[c] + pos[c][k]),
                                      A.at(k, order[c][t]));
                R.mono_rules.push_back(std::move(r));
            }
        for (auto r : B.level[c].coef_rules) {
            r.lhs.resize(nv2[c], 0);
            pad_poly_vars(r.rhs, nv2[c]);
            R.coef_rules.push_back(std::move(r));
        }
        for (int t = 0; t < nm[c]; ++t) {
            Int d = modulus[c][order[c][t]];
            if (d == 0) continue;
            CoefRule r;
            r.c0 = d;
            r.lhs = mono_var(nv2[c], nb[c] + t);
            r.rhs = poly_zero();
            R.coef_rules.push_back(std::move(r));
        }
        E.T.level[c] = std::move(R);
    }
    auto mpoly = [&](int c, const Vec& col) {
        Poly p;
        for (int k = 0; k < nm[c]; ++k)
            if (col[k] != 0)
                poly_add_term(p, mono_var(nv2[c], nb[c] + pos[c][k]), col[k]);
        return p;
    };
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            std::vector<Poly> im;
            for (Poly p : B.weyl_ring_at(c, n).var_images) {
                pad_poly_vars(p, nv2[c]);
                im.push_back(std::move(p));
            }
            Mat W = Mmod.M.weyl_at(c, n);
            for (int t = 0; t < nm[c]; ++t) im.push_back(mpoly(c, W.col(order[c][t])));
            E.T.weyl[c][n] = std::move(im);
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            std::vector<Poly> rim;
            for (Poly p : B.res_edge[c].at(s)) {
                pad_poly_vars(p, nv2[c2]);
                rim.push_back(std::move(p));
            }
            const Mat& Rm = Mmod.M.res_edge[c].at(s);
            for (int t = 0; t < nm[c]; ++t) rim.push_back(mpoly(c2, Rm.col(order[c][t])));
            E.T.res_edge[c][s] = std::move(rim);
            std::map<Monomial, Poly> tab;
            const Mat& Tm = Mmod.M.tr_edge[c].at(s);
            for (int w = 0; w <= E.T.degree_bound; ++w)
                for (auto& mb : E.T.level[c2].basis(w)) {
                    bool pure_b = true;
                    int mslot = -1;
                    for (int t = 0; t < nm[c2]; ++t)
                        if (mb[nb[c2] + t] != 0) {
                            pure_b = false;
                            mslot = t;
                        }
                    if (pure_b) {
                        Monomial short_m(mb.begin(), mb.begin() + nb[c2]);
                        auto it = B.tr_edge[c].at(s).find(short_m);
                        if (it == B.tr_edge[c].at(s).end()) continue;
                        Poly p = it->second;
                        pad_poly_vars(p, nv2[c]);
                        tab[mb] = std::move(p);
                    } else {
                        tab[mb] = mpoly(c, Tm.col(order[c2][mslot]));
                    }
                }
            E.T.tr_edge[c][s] = std::move(tab);
        }
    }
    for (auto& [key, nd] : B.norms) {
        NormData nd2;
        nd2.K0 = nd.K0;
        nd2.H0 = nd.H0;
        for (Poly p : nd.var_images) {
            pad_poly_vars(p, nv2[key.first]);
            nd2.var_images.push_back(std::move(p));
        }
        for (int t = 0; t < nm[key.second]; ++t) nd2.var_images.push_back(poly_zero());
        E.T.norms[key] = std::move(nd2);
    }
    return E;
}

// the projection killing the square-zero part
inline TambaraMorphism square_zero_augmentation(const SquareZeroExtension& E,
                                                const TambaraFunctor& B) {
    TambaraMorphism f;
    f.src = &E.T;
    f.dst = &B;
    int nc = int(B.level.size());
    for (int c = 0; c < nc; ++c) {
        std::vector<Poly> im;
        for (int v = 0; v < B.level[c].nvars(); ++v)
            im.push_back(poly_mono(mono_var(B.level[c].nvars(), v)));
        for (int t = B.level[c].nvars(); t < E.T.level[c].nvars(); ++t)
            im.push_back(poly_zero());
        f.var_images.push_back(std::move(im));
    }
    return f;
}

// --- augmentation ideals ------------------------------------------------------

// the target of a ring morphism as a module over the source: the target's
// additive levels with each source variable acting through its image
inline RModule module_along(const TambaraMorphism& f) {
    const TambaraFunctor& S = *f.src;
    const TambaraFunctor& B = *f.dst;
    const Group& G = *S.G;
    int nc = int(G.classes.size());
    TambaraSkeleton bs = additive_skeleton(B, B.degree_bound);
    RModule Bm;
    Bm.ring = &S;
    Bm.M = bs.M;
    Bm.wmax = bs.wmax;
    Bm.gen_weight.resize(nc);
    Bm.act.resize(nc);
    for (int c = 0; c < nc; ++c) {
        if (int(f.var_images[c].size()) != S.level[c].nvars())
            fail(ErrKind::validation, "module along: morphism has the wrong variable count");
        for (int w = 0; w <= bs.wmax; ++w)
            for (size_t i = 0; i < bs.bases[c][w].size(); ++i)
                Bm.gen_weight[c].push_back(w);
        int n = bs.M.level[c].n_gens;
        for (int v = 0; v < S.level[c].nvars(); ++v) {
            Mat A(n, n);
            int col = 0;
            for (int w = 0; w <= bs.wmax; ++w)
                for (auto& mb : bs.bases[c][w]) {
                    Vec im = bs.encode_trunc(
                        c, poly_mul_raw(f.var_images[c][v], poly_mono(mb)));
                    for (int r = 0; r < n; ++r) A.at(r, col) = im[r];
                    ++col;
                }
            Bm.act[c].push_back(std::move(A));
        }
    }
    return Bm;
}

struct AugmentationIdeal {
    SubModule ideal; // inside the ring seen as a module over itself
    bool norm_vanishing = true;
};

// kernel of a ring morphism out of S, as a module over S; the flag records
// whether every declared norm kills the ideal generators
inline AugmentationIdeal augmentation_ideal(const TambaraFunctor& S, const TambaraMorphism& f) {
    if (f.src != &S) fail(ErrKind::validation, "augmentation ideal: morphism source mismatch");
    const Group& G = *S.G;
    const TambaraFunctor& B = *f.dst;
    FreeModule Rs = free_module(S, {{"1", G.full_id, 0}}, S.degree_bound);
    TambaraSkeleton bs = additive_skeleton(B, B.degree_bound);
    RModule Bm = module_along(f);
    int cg = G.cls(G.full_id);
    Vec unit = bs.encode(cg, poly_const(B.level[cg].nvars(), 1));
    ModuleMorphism phi = factor_through_free(Rs, Bm, {unit});
    AugmentationIdeal out;
    out.ideal = kernel_module(phi);
    for (auto& [key, nd] : S.norms) {
        if (!out.norm_vanishing) break;
        if (nd.K0 == nd.H0) continue;
        int cH = key.second;
        if (Rs.comp[cH].size() != 1)
            fail(ErrKind::internal, "augmentation ideal: unexpected component layout");
        const FreeComponent& fc = Rs.comp[cH].front();
        const Mat& emb = out.ideal.embed[cH];
        for (int q = 0; q < emb.cols; ++q) {
            Poly p = Rs.skel[0].decode(G.cls(fc.sp), emb.col(q));
            Poly x = S.ring_conj(G.inv[fc.g0], fc.sp).apply(p);
            Poly nu = S.level[key.first].normalize(eval_norm(S, nd.K0, nd.H0, x));
            if (!nu.empty()) {
                out.norm_vanishing = false;
                break;
            }
        }
    }
    return out;
}

} // namespace eqca
