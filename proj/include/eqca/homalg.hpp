#pragma once
// Homological algebra for modules over an equivariant ring: chain complexes
// and their homology with induced structure, simplicial modules with the
// alternating-face-sum complex, free resolutions by iterated minimal covers,
// and the derived functors of tensor (tor) and hom (ext).

#include "rmod.hpp"

namespace eqca {

// --- chain complexes ----------------------------------------------------------

// terms in degrees 0..top with d[i] : mod[i] -> mod[i-1] per class; d[0] unused
struct ChainComplex {
    std::vector<RModule> mod;
    std::vector<std::vector<Mat>> d;
    int top() const { return int(mod.size()) - 1; }
};

inline void validate_complex(const ChainComplex& C) {
    if (C.mod.empty()) fail(ErrKind::validation, "complex: no terms");
    if (C.d.size() != C.mod.size())
        fail(ErrKind::validation, "complex: one differential slot per term required");
    int nc = int(C.mod[0].M.G->classes.size());
    for (int i = 1; i <= C.top(); ++i) {
        ModuleMorphism f{&C.mod[i], &C.mod[i - 1], C.d[i]};
        validate_module_morphism(f);
    }
    for (int i = 2; i <= C.top(); ++i)
        for (int c = 0; c < nc; ++c) {
            Mat sq = C.d[i - 1][c] * C.d[i][c];
            if (!maps_equal(C.mod[i - 2].M.level[c], sq, Mat::zero(sq.rows, sq.cols)))
                fail(ErrKind::validation, "complex: differentials do not square to zero");
        }
}

// --- simplicial modules -------------------------------------------------------

// objects in dimensions 0..top; face[n][i] : obj[n] -> obj[n-1] for 0 <= i <= n,
// degen[n][i] : obj[n] -> obj[n+1] for 0 <= i <= n and n < top
struct SimplicialModule {
    std::vector<RModule> obj;
    std::vector<std::vector<std::vector<Mat>>> face;
    std::vector<std::vector<std::vector<Mat>>> degen;
    int top() const { return int(obj.size()) - 1; }
};

inline void validate_simplicial(const SimplicialModule& S) {
    if (S.obj.empty()) fail(ErrKind::validation, "simplicial module: no objects");
    int N = S.top();
    int nc = int(S.obj[0].M.G->classes.size());
    if (int(S.face.size()) != N + 1 || int(S.degen.size()) != N + 1)
        fail(ErrKind::validation, "simplicial module: one map list per dimension required");
    for (int n = 1; n <= N; ++n)
        if (int(S.face[n].size()) != n + 1)
            fail(ErrKind::validation, "simplicial module: face maps must number n+1");
    for (int n = 0; n < N; ++n)
        if (int(S.degen[n].size()) != n + 1)
            fail(ErrKind::validation, "simplicial module: degeneracies must number n+1");
    for (int n = 1; n <= N; ++n)
        for (auto& A : S.face[n]) {
            ModuleMorphism f{&S.obj[n], &S.obj[n - 1], A};
            validate_module_morphism(f);
        }
    for (int n = 0; n < N; ++n)
        for (auto& A : S.degen[n]) {
            ModuleMorphism f{&S.obj[n], &S.obj[n + 1], A};
            validate_module_morphism(f);
        }
    auto check = [&](int dst_dim, const std::vector<Mat>& A, const std::vector<Mat>& B) {
        for (int c = 0; c < nc; ++c)
            if (!maps_equal(S.obj[dst_dim].M.level[c], A[c], B[c]))
                fail(ErrKind::validation, "simplicial module: identity violation");
    };
    auto comp = [&](const std::vector<Mat>& A, const std::vector<Mat>& B) {
        std::vector<Mat> out;
        for (int c = 0; c < nc; ++c) out.push_back(A[c] * B[c]);
        return out;
    };
    for (int n = 2; n <= N; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                check(n - 2, comp(S.face[n - 1][i], S.face[n][j]),
                      comp(S.face[n - 1][j - 1], S.face[n][i]));
    for (int n = 0; n + 2 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                check(n + 2, comp(S.degen[n + 1][i], S.degen[n][j]),
                      comp(S.degen[n + 1][j + 1], S.degen[n][i]));
    for (int n = 0; n < N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                std::vector<Mat> lhs = comp(S.face[n + 1][i], S.degen[n][j]);
                if (i == j || i == j + 1) {
                    std::vector<Mat> id;
                    for (int c = 0; c < nc; ++c)
                        id.push_back(Mat::identity(S.obj[n].M.level[c].n_gens));
                    check(n, lhs, id);
                } else if (i < j) {
                    check(n, lhs, comp(S.degen[n - 1][j - 1], S.face[n][i]));
                } else {
                    check(n, lhs, comp(S.degen[n - 1][j], S.face[n][i - 1]));
                }
            }
}

// the complex with the same terms and alternating face sums as differentials
inline ChainComplex moore_complex(const SimplicialModule& S) {
    validate_simplicial(S);
    int nc = int(S.obj[0].M.G->classes.size());
    ChainComplex C;
    C.mod = S.obj;
    C.d.resize(S.obj.size());
    for (int n = 1; n <= S.top(); ++n)
        for (int c = 0; c < nc; ++c) {
            Mat d = S.face[n][0][c];
            for (int i = 1; i <= n; ++i)
                d = d + S.face[n][i][c].scaled(i % 2 ? -1 : 1);
            C.d[n].push_back(std::move(d));
        }
    for (int n = 2; n <= C.top(); ++n)
        for (int c = 0; c < nc; ++c) {
            Mat sq = C.d[n - 1][c] * C.d[n][c];
            if (!maps_equal(C.mod[n - 2].M.level[c], sq, Mat::zero(sq.rows, sq.cols)))
                fail(ErrKind::internal, "alternating face sums do not square to zero");
        }
    return C;
}

// --- homology -----------------------------------------------------------------

// homology in one degree; rep embeds each generator as a cycle in C.mod[q]
struct HomologyModule {
    RModule mod;
    std::vector<Mat> rep;
};

inline HomologyModule homology_module(const ChainComplex& C, int q) {
    if (q < 0 || q > C.top() - 1)
        fail(ErrKind::validation, "homology: degree out of range");
    const RModule& src = C.mod[q];
    int nc = int(src.M.G->classes.size());
    RModule zero = zero_module(*src.ring);
    std::vector<Mat> zmaps;
    for (int c = 0; c < nc; ++c) zmaps.push_back(Mat(0, src.M.level[c].n_gens));
    ModuleMorphism dq{&src, q == 0 ? &zero : &C.mod[q - 1], q == 0 ? zmaps : C.d[q]};
    SubModule K = kernel_module(dq);
    HomologyModule H;
    H.mod = K.mod;
    H.rep = K.embed;
    for (int c = 0; c < nc; ++c) {
        Mat X = detail::solve_cols(K.embed[c], C.d[q + 1][c], "homology boundaries");
        H.mod.M.level[c].rels = Mat::vstack(H.mod.M.level[c].rels, X.transpose());
    }
    return H;
}

// --- free resolutions ---------------------------------------------------------

namespace detail {

// minimal generator choice: classes by descending subgroup order, weights
// ascending; a candidate is redundant when it lies in the span of what is
// already chosen, a transfer of a full lower level, or a positive-weight
// multiple, modulo relations
inline std::pair<GIndexedSet, std::vector<Vec>> greedy_cover(const RModule& N) {
    const TambaraFunctor& T = *N.ring;
    const Group& G = *T.G;
    int nc = int(G.classes.size());
    std::vector<int> order(nc);
    for (int c = 0; c < nc; ++c) order[c] = c;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int oa = G.order_of(G.rep_of_class(a)), ob = G.order_of(G.rep_of_class(b));
        if (oa != ob) return oa > ob;
        return a < b;
    });
    std::vector<Mat> redundant(nc), rels(nc);
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        Mat D(N.M.level[c].n_gens, 0);
        for (int s : G.maximal_subgroups(K)) D = Mat::hstack(D, N.M.tr_edge[c].at(s));
        for (int v = 0; v < T.level[c].nvars(); ++v)
            if (T.level[c].var_weights[v] > 0) D = Mat::hstack(D, N.act[c][v]);
        redundant[c] = column_space_basis(D);
        rels[c] = N.M.level[c].rel_cols();
    }
    std::vector<Mat> span(nc);
    for (int c = 0; c < nc; ++c) span[c] = Mat(N.M.level[c].n_gens, 0);
    std::vector<LatOp> ops;
    for (int c = 0; c < nc; ++c) {
        for (auto& [n, W] : N.M.weyl[c]) ops.push_back({c, c, W});
        int K = G.rep_of_class(c);
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            ops.push_back({c, c2, N.M.res_edge[c].at(s)});
            ops.push_back({c2, c, N.M.tr_edge[c].at(s)});
        }
        for (auto& A : N.act[c]) ops.push_back({c, c, A});
    }
    auto member = [&](int c, const Vec& v) {
        if (is_zero(v)) return true;
        Mat lhs = Mat::hstack(Mat::hstack(span[c], redundant[c]), rels[c]);
        if (lhs.cols == 0) return false;
        return solve(lhs, v).has_value();
    };
    GIndexedSet gens;
    std::vector<Vec> images;
    for (int c : order) {
        int n = N.M.level[c].n_gens;
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            int wa = std::max(N.gen_weight[c][a], 0), wb = std::max(N.gen_weight[c][b], 0);
            if (wa != wb) return wa < wb;
            return a < b;
        });
        for (int i : idx) {
            Vec v = unit_vec(n, i);
            if (member(c, v)) continue;
            ModuleGen g;
            g.name = "g" + std::to_string(gens.size());
            g.sub_id = G.rep_of_class(c);
            g.weight = std::max(N.gen_weight[c][i], 0);
            gens.push_back(g);
            images.push_back(v);
            Mat one(n, 1);
            one.at(i, 0) = 1;
            span[c] = column_space_basis(Mat::hstack(span[c], one));
            span = saturate_lattices(std::move(span), ops);
        }
    }
    return {gens, images};
}

} // namespace detail

// a complex of free modules covering m; aug maps term 0 onto m, gens records
// the chosen generators stage by stage
struct Resolution {
    ChainComplex C;
    std::vector<Mat> aug;
    std::vector<GIndexedSet> gens;
};

inline Resolution free_resolution(const TambaraFunctor& r, const RModule& m, int length) {
    if (m.ring != &r) fail(ErrKind::validation, "resolution: ring mismatch");
    if (length < 0) fail(ErrKind::validation, "resolution: negative length");
    const Group& G = *r.G;
    int nc = int(G.classes.size());
    Resolution R;
    R.C.d.resize(length + 1);
    RModule cur = m;
    std::vector<Mat> prev_embed;
    for (int i = 0; i <= length; ++i) {
        bool cur_zero = true;
        for (int c = 0; c < nc; ++c)
            if (cur.M.level[c].n_gens > 0 && !is_trivial_group(cur.M.level[c]))
                cur_zero = false;
        if (i > 0 && cur_zero) {
            for (int j = i; j <= length; ++j) {
                R.C.mod.push_back(zero_module(r));
                R.gens.push_back({});
                for (int c = 0; c < nc; ++c)
                    R.C.d[j].push_back(Mat(R.C.mod[j - 1].M.level[c].n_gens, 0));
            }
            break;
        }
        auto [gens, images] = detail::greedy_cover(cur);
        FreeModule F = free_module(r, gens, -1);
        ModuleMorphism eps = factor_through_free(F, cur, images);
        if (i == 0)
            R.aug = eps.at;
        else
            for (int c = 0; c < nc; ++c) R.C.d[i].push_back(prev_embed[c] * eps.at[c]);
        R.C.mod.push_back(F.mod);
        R.gens.push_back(F.gens);
        if (i == length) break;
        eps.src = &R.C.mod.back();
        SubModule K = kernel_module(eps);
        prev_embed = K.embed;
        cur = std::move(K.mod);
    }
    return R;
}

// --- derived tensor -----------------------------------------------------------

// termwise tensor with n; differentials act through the left factor's raw
// generators and descend to the simplified presentations
inline ChainComplex tensor_complex(const ChainComplex& C, const RModule& n) {
    const Group& G = *n.M.G;
    int nc = int(G.classes.size());
    ChainComplex T;
    std::vector<TensorProduct> tps;
    for (auto& term : C.mod) tps.push_back(tensor_over_r(term, n));
    for (auto& tp : tps) T.mod.push_back(tp.mod);
    T.d.resize(C.mod.size());
    for (int i = 1; i <= C.top(); ++i)
        for (int c = 0; c < nc; ++c) {
            const BoxLevelInfo& Ls = tps[i].box.info[c];
            const BoxLevelInfo& Ld = tps[i - 1].box.info[c];
            Mat raw(Ld.total, Ls.total);
            for (int pos = 0; pos < int(Ls.reps.size()); ++pos) {
                int H = Ls.reps[pos];
                int cH = G.cls(H);
                auto [na, nb] = Ls.dims[pos];
                const Mat& fH = C.d[i][cH];
                for (int a = 0; a < na; ++a)
                    for (int b = 0; b < nb; ++b) {
                        Vec col = detail::box_expand(C.mod[i - 1].M, n.M, Ld, H,
                                                     fH.col(a), detail::unit_vec(nb, b));
                        for (int rr = 0; rr < Ld.total; ++rr)
                            raw.at(rr, Ls.offset[pos] + a * nb + b) = col[rr];
                    }
            }
            T.d[i].push_back(tps[i - 1].box.to_simple[c] * raw * tps[i].box.from_simple[c]);
        }
    return T;
}

// derived tensor functors in degrees 0..qmax
inline std::vector<HomologyModule> tor_table(const TambaraFunctor& r, const RModule& m,
                                             const RModule& n, int qmax) {
    if (qmax < 0) fail(ErrKind::validation, "tor: negative degree");
    if (m.ring != &r || n.ring != &r) fail(ErrKind::validation, "tor: ring mismatch");
    Resolution R = free_resolution(r, m, qmax + 1);
    ChainComplex T = tensor_complex(R.C, n);
    std::vector<HomologyModule> out;
    for (int q = 0; q <= qmax; ++q) out.push_back(homology_module(T, q));
    return out;
}

inline HomologyModule tor(const TambaraFunctor& r, const RModule& m, const RModule& n,
                          int q) {
    return tor_table(r, m, n, q).back();
}

// --- shifted modules and derived hom ------------------------------------------

// the module with underlying levels N(X x G/K), each ring element acting after
// restriction along the projection to the orbit through the second slot
inline RModule shift_module(const RModule& N, const GSet& X) {
    const TambaraFunctor& T = *N.ring;
    const Group& G = *T.G;
    int nc = int(G.classes.size());
    RModule S;
    S.ring = N.ring;
    S.wmax = N.wmax;
    S.M = shift_mackey(N.M, X);
    S.act.resize(nc);
    S.gen_weight.resize(nc);
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        GSet Y = orbit_set(G, K);
        auto ycosets = detail::coset_elem_sets(G, K);
        MackeyValue val = value_at(N.M, product_set(X, Y).X);
        int nvc = T.level[c].nvars();
        S.act[c].assign(nvc, Mat(val.total, val.total));
        for (size_t o = 0; o < val.dec.orbits.size(); ++o) {
            int p = val.dec.orbits[o].base;
            int y = p % Y.n;
            int g0 = ycosets[y].front();
            int sp = val.dec.orbits[o].stab;
            int csp = G.cls(sp);
            int gK = G.conj_subgroup(g0, K);
            for (int v = 0; v < nvc; ++v) {
                Poly s = T.ring_res(gK, sp).apply(
                    T.ring_conj(g0, K).apply(poly_mono(mono_var(nvc, v))));
                Mat B = N.act_of(csp, s);
                for (int rr = 0; rr < B.rows; ++rr)
                    for (int cc = 0; cc < B.cols; ++cc)
                        S.act[c][v].at(val.offset[o] + rr, val.offset[o] + cc) =
                            B.at(rr, cc);
            }
            for (int i = 0; i < N.M.level[csp].n_gens; ++i)
                S.gen_weight[c].push_back(N.gen_weight[csp][i]);
        }
    }
    return S;
}

namespace detail {

// kernel of dout modulo the image of din, for maps of presented groups
inline FPAb presented_subquotient(const FPAb& A, const FPAb& B, const Mat& dout,
                                  const Mat& din) {
    Mat pre = kernel_basis(Mat::hstack(dout, B.rel_cols()));
    Mat L(A.n_gens, pre.cols);
    for (int c = 0; c < pre.cols; ++c)
        for (int r = 0; r < A.n_gens; ++r) L.at(r, c) = pre.at(r, c);
    Mat F = column_space_basis(L);
    Mat RA = A.rel_cols();
    Mat rels(0, F.cols);
    auto add = [&](const Vec& v) {
        auto y = solve(F, v);
        if (!y) fail(ErrKind::internal, "subquotient: boundary is not a cycle");
        Mat row(1, F.cols);
        row.set_row(0, *y);
        rels = Mat::vstack(rels, row);
    };
    for (int c = 0; c < RA.cols; ++c) add(RA.col(c));
    for (int c = 0; c < din.cols; ++c) add(din.col(c));
    return FPAb(F.cols, rels);
}

} // namespace detail

// derived hom functors in degrees 0..qmax, one group per conjugacy class of
// subgroups: at G/K the cohomology of maps into n shifted by G/K
inline std::vector<std::vector<FPAb>> ext_table(const TambaraFunctor& r, const RModule& m,
                                                const RModule& n, int qmax) {
    if (qmax < 0) fail(ErrKind::validation, "ext: negative degree");
    if (m.ring != &r || n.ring != &r) fail(ErrKind::validation, "ext: ring mismatch");
    const Group& G = *r.G;
    int nc = int(G.classes.size());
    Resolution R = free_resolution(r, m, qmax + 1);
    std::vector<std::vector<FPAb>> out(qmax + 1);
    for (int q = 0; q <= qmax; ++q) out[q].resize(nc);
    for (int c = 0; c < nc; ++c) {
        RModule Nc = shift_module(n, orbit_set(G, G.rep_of_class(c)));
        std::vector<ModuleHom> hq;
        for (int q = 0; q <= qmax + 1; ++q) hq.push_back(module_hom(R.C.mod[q], Nc));
        std::vector<Mat> delta;
        for (int q = 0; q <= qmax; ++q) {
            Mat D(hq[q + 1].group.n_gens, hq[q].group.n_gens);
            for (int g = 0; g < hq[q].group.n_gens; ++g) {
                std::vector<Mat> comp;
                for (int c2 = 0; c2 < nc; ++c2)
                    comp.push_back(hq[q].reps[g][c2] * R.C.d[q + 1][c2]);
                Vec col = hq[q + 1].encode(comp);
                for (int rr = 0; rr < D.rows; ++rr) D.at(rr, g) = col[rr];
            }
            delta.push_back(std::move(D));
        }
        for (int q = 0; q <= qmax; ++q) {
            Mat din = q == 0 ? Mat(hq[0].group.n_gens, 0) : delta[q - 1];
            out[q][c] =
                detail::presented_subquotient(hq[q].group, hq[q + 1].group, delta[q], din);
        }
    }
    return out;
}

inline std::vector<FPAb> ext(const TambaraFunctor& r, const RModule& m, const RModule& n,
                             int q) {
    return ext_table(r, m, n, q).back();
}

} // namespace eqca
