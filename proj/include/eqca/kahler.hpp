#pragma once
#include "rmod.hpp"

// Augmentation ideals with their power and norm filtrations, modules of
// differentials with the universal derivation, and derivation solving over an
// equivariant base ring.

namespace eqca {

// --- augmented algebras -------------------------------------------------------

struct AugmentedAlgebra {
    const TambaraFunctor* base = nullptr;
    const TambaraFunctor* algebra = nullptr;
    TambaraMorphism structure;              // base -> algebra
    std::optional<TambaraMorphism> onto;    // optional further augmentation
};

inline AugmentedAlgebra augmented_algebra(const TambaraFunctor& A, const TambaraFunctor& B,
                                          std::vector<std::vector<Poly>> var_images) {
    AugmentedAlgebra aug;
    aug.base = &A;
    aug.algebra = &B;
    aug.structure = TambaraMorphism{&A, &B, std::move(var_images)};
    validate_tambara_morphism(aug.structure);
    return aug;
}

// --- ideals -------------------------------------------------------------------

struct RingElement {
    int cls = 0;
    Poly p;
};

enum class IdealKind { ordinary, power, norm };

// an ideal as the closure of generators under multiplication, transfer,
// restriction and conjugation, tracked inside the graded window of the ring
struct IdealPresentation {
    const TambaraFunctor* ambient = nullptr;
    IdealKind kind = IdealKind::ordinary;
    int kind_arg = 0;
    std::vector<RingElement> gens;
    TambaraSkeleton sk;
    RModule carrier;       // the ring as a module over itself
    std::vector<Mat> span; // closed span per class
};

namespace detail {

inline Vec vec_sub(Vec a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
inline Vec vec_scaled(Vec a, const Int& k) {
    for (auto& x : a) x *= k;
    return a;
}

inline IdealPresentation close_ideal(const TambaraFunctor& B, std::vector<RingElement> gens,
                                     IdealKind kind, int arg) {
    IdealPresentation I;
    I.ambient = &B;
    I.kind = kind;
    I.kind_arg = arg;
    I.gens = std::move(gens);
    TambaraMorphism id = identity_morphism(B);
    I.carrier = module_along(id);
    I.sk = additive_skeleton(B, B.degree_bound);
    std::vector<std::pair<int, Vec>> seeds;
    for (auto& g : I.gens) seeds.push_back({g.cls, I.sk.encode_trunc(g.cls, g.p)});
    SubModule S = span_closure(I.carrier, seeds);
    I.span = S.embed;
    return I;
}

// levelwise products of n elements of the closed span
inline std::vector<RingElement> span_products(const IdealPresentation& I, int n) {
    const TambaraFunctor& B = *I.ambient;
    std::vector<RingElement> out;
    for (int c = 0; c < int(B.level.size()); ++c) {
        const RewriteRing& R = B.level[c];
        std::vector<Poly> base;
        for (int j = 0; j < I.span[c].cols; ++j) base.push_back(I.sk.decode(c, I.span[c].col(j)));
        if (base.empty()) continue;
        std::vector<int> pick(n, 0);
        while (true) {
            Poly prod = poly_const(R.nvars(), 1);
            for (int i : pick) prod = R.mul(prod, base[i]);
            if (!prod.empty()) out.push_back({c, prod});
            int pos = n - 1;
            while (pos >= 0 && pick[pos] == int(base.size()) - 1) --pos;
            if (pos < 0) break;
            int v = ++pick[pos];
            for (int i = pos + 1; i < n; ++i) pick[i] = v;
        }
    }
    return out;
}

} // namespace detail

inline IdealPresentation ideal_span(const TambaraFunctor& B, std::vector<RingElement> gens) {
    return detail::close_ideal(B, std::move(gens), IdealKind::ordinary, 0);
}

inline IdealPresentation ideal_power(const IdealPresentation& I, int n) {
    if (n < 1) fail(ErrKind::validation, "ideal power: exponent must be positive");
    return detail::close_ideal(*I.ambient, detail::span_products(I, n), IdealKind::power, n);
}

// smallest ideal containing the multiplicative images of the ideal along every
// declared orbit surjection whose fibers all have at least k+1 points; the
// fold-map images are the (k+1)-fold products
inline IdealPresentation norm_ideal(const IdealPresentation& I, int k) {
    if (k < 1) fail(ErrKind::validation, "norm filtration: level must be positive");
    const TambaraFunctor& B = *I.ambient;
    const Group& G = *B.G;
    std::vector<RingElement> gens = detail::span_products(I, k + 1);
    for (int c2 = 0; c2 < int(G.classes.size()); ++c2) {
        int K = G.rep_of_class(c2);
        for (int H : G.subgroups_of(K)) {
            if (H == K) continue;
            if (G.order_of(K) / G.order_of(H) < k + 1) continue;
            if (!B.O.admissible(K, H)) continue;
            int cH = G.cls(H);
            for (int j = 0; j < I.span[cH].cols; ++j) {
                Poly x = I.sk.decode(cH, I.span[cH].col(j));
                try {
                    gens.push_back({c2, eval_norm(B, K, H, x)});
                } catch (const Error& e) {
                    if (e.kind != ErrKind::unsupported && e.kind != ErrKind::resource_cap)
                        throw;
                }
            }
        }
    }
    return detail::close_ideal(B, std::move(gens), IdealKind::norm, k);
}

inline bool ideal_contains(const IdealPresentation& I, const RingElement& e) {
    Vec v = I.sk.encode_trunc(e.cls, e.p);
    if (is_zero(v)) return true;
    if (I.span[e.cls].cols == 0) return false;
    return bool(solve(I.span[e.cls], v));
}

inline bool ideals_equal(const IdealPresentation& a, const IdealPresentation& b) {
    if (a.ambient != b.ambient) fail(ErrKind::validation, "ideal comparison: different rings");
    for (int c = 0; c < int(a.span.size()); ++c) {
        for (int j = 0; j < a.span[c].cols; ++j)
            if (!b.span[c].cols || !solve(b.span[c], a.span[c].col(j))) {
                if (!is_zero(a.span[c].col(j))) return false;
            }
        for (int j = 0; j < b.span[c].cols; ++j)
            if (!a.span[c].cols || !solve(a.span[c], b.span[c].col(j))) {
                if (!is_zero(b.span[c].col(j))) return false;
            }
    }
    return true;
}

// --- norm probes --------------------------------------------------------------

namespace detail {

// the ring extended by a square-zero free rank-one symbol below one stored
// norm edge, used to read off the transferred correction in norm identities
struct NormProbe {
    FreeModule probe;
    SquareZeroExtension ext;
    int cK = 0, cH = 0;
    int K0 = 0, H0 = 0;
};

inline NormProbe norm_probe(const TambaraFunctor& B, int cK, int cH, int weight) {
    const NormData& nd = B.norms.at({cK, cH});
    NormProbe P;
    P.cK = cK;
    P.cH = cH;
    P.K0 = nd.K0;
    P.H0 = nd.H0;
    P.probe = free_module(B, {{"u", nd.H0, weight}}, B.degree_bound);
    P.ext = square_zero(B, P.probe.mod);
    return P;
}

// symbol component of the norm of (x + symbol), an element of the probe
// module at the upper level: the transferred twisted multiple of the symbol
inline Vec norm_symbol_part(const NormProbe& P, const Poly& x) {
    const TambaraFunctor& E = P.ext.T;
    int nv2 = E.level[P.cH].nvars();
    Poly p = x;
    pad_poly_vars(p, nv2);
    const Vec& u = P.probe.gen_vec[0].second;
    for (size_t j = 0; j < u.size(); ++j)
        if (u[j] != 0) poly_add_term(p, mono_var(nv2, P.ext.mvar[P.cH][int(j)]), u[j]);
    Poly q = eval_norm(E, P.K0, P.H0, p);
    int nm = P.probe.mod.M.level[P.cK].n_gens;
    Vec xi(nm, Int(0));
    std::vector<int> slot_of(E.level[P.cK].nvars(), -1);
    for (int t = 0; t < nm; ++t) slot_of[P.ext.mvar[P.cK][t]] = t;
    for (auto& [m, coef] : q) {
        int gen = -1, symdeg = 0;
        bool ring = false;
        for (int v = 0; v < int(m.size()); ++v) {
            if (m[v] == 0) continue;
            if (slot_of[v] < 0) ring = true;
            else {
                symdeg += m[v];
                gen = slot_of[v];
            }
        }
        if (symdeg == 0) continue;
        if (symdeg > 1 || ring) fail(ErrKind::internal, "norm probe: unreduced symbol monomial");
        xi[gen] += coef;
    }
    return xi;
}

// matrix sending a prospective symbol image in W to the transferred correction
inline Mat norm_correction(const NormProbe& P, const RModule& W, const Vec& xi) {
    int nH = W.M.level[P.cH].n_gens, nK = W.M.level[P.cK].n_gens;
    Mat H(nK, nH);
    for (int j = 0; j < nH; ++j) {
        Vec e(nH, Int(0));
        e[j] = 1;
        ModuleMorphism h = factor_through_free(P.probe, W, {e});
        H.set_col(j, h.at[P.cK].apply(xi));
    }
    return H;
}

} // namespace detail

// --- differential symbols -----------------------------------------------------

// one symbol per level variable on its own level, with the formal differential
// of polynomials into the free module they span
struct DifferentialSymbols {
    const TambaraFunctor* B = nullptr;
    FreeModule F;
    std::vector<std::vector<int>> sym; // per class: generator index per variable

    const Vec& symbol(int c, int v) const { return F.gen_vec[sym[c][v]].second; }

    Vec act_monomial(int c, const Monomial& m, Vec x) const {
        for (int v = 0; v < int(m.size()); ++v)
            for (int e = 0; e < m[v]; ++e) x = F.mod.act[c][v].apply(x);
        return x;
    }

    Vec diff(int c, const Poly& p) const {
        const RewriteRing& R = B->level[c];
        Poly q = R.normalize(p);
        int n = F.mod.M.level[c].n_gens;
        Vec out(n, Int(0));
        for (auto& [m, coef] : q)
            for (int v = 0; v < R.nvars(); ++v) {
                if (m[v] == 0) continue;
                Monomial m2 = m;
                m2[v] -= 1;
                Vec term = act_monomial(c, m2, symbol(c, v));
                Int k = coef * m[v];
                for (int i = 0; i < n; ++i) out[i] += k * term[i];
            }
        return out;
    }
};

inline DifferentialSymbols differential_symbols(const TambaraFunctor& B) {
    const Group& G = *B.G;
    DifferentialSymbols D;
    D.B = &B;
    D.sym.resize(G.classes.size());
    GIndexedSet gens;
    std::set<std::string> used;
    for (int c = 0; c < int(G.classes.size()); ++c)
        for (int v = 0; v < B.level[c].nvars(); ++v) {
            std::string nm = "d" + B.level[c].var_names[v];
            if (!used.insert(nm).second) {
                nm += "@" + std::to_string(c);
                used.insert(nm);
            }
            D.sym[c].push_back(int(gens.size()));
            gens.push_back({nm, G.rep_of_class(c), B.level[c].var_weights[v]});
        }
    D.F = free_module(B, gens, B.degree_bound);
    return D;
}

// --- derivations --------------------------------------------------------------

// a prospective derivation: values on the additive basis of the ring, one
// matrix per class into a target module's levels
struct Derivation {
    const TambaraFunctor* src = nullptr;
    TambaraSkeleton sk;
    std::vector<std::vector<Poly>> base_images; // images of the base-ring variables
    std::vector<Mat> at;

    Vec apply(int c, const Poly& p) const { return at[c].apply(sk.encode(c, p)); }
};

// --- differentials module -----------------------------------------------------

struct KahlerDifferentials {
    DifferentialSymbols d;
    std::vector<Mat> span; // per class: closed span of the relation lattice
    RModule omega;         // the symbol carrier modulo the relation span
    Derivation delta;      // the universal derivation, valued in omega
};

// quotient of the free module on the variable symbols by the differentials of
// the level relations, naturality against conjugation/restriction/transfer,
// vanishing on the base, and the transfer-corrected rule under each norm
inline KahlerDifferentials kahler_differentials(const AugmentedAlgebra& aug) {
    const TambaraFunctor& B = *aug.algebra;
    const Group& G = *B.G;
    int nc = int(G.classes.size());
    KahlerDifferentials K;
    K.d = differential_symbols(B);
    FreeModule& F = K.d.F;
    std::vector<std::pair<int, Vec>> rels;
    auto add_rel = [&](int c, Vec v) {
        if (!is_zero(v)) rels.push_back({c, std::move(v)});
    };
    for (int c = 0; c < nc; ++c)
        for (auto& p : aug.structure.var_images[c]) add_rel(c, K.d.diff(c, p));
    for (int c = 0; c < nc; ++c) {
        for (auto& r : B.level[c].mono_rules)
            add_rel(c, detail::vec_sub(K.d.diff(c, poly_mono(r.lhs)), K.d.diff(c, r.rhs)));
        for (auto& r : B.level[c].coef_rules)
            add_rel(c, detail::vec_sub(detail::vec_scaled(K.d.diff(c, poly_mono(r.lhs)), r.c0),
                                       K.d.diff(c, r.rhs)));
    }
    for (int c = 0; c < nc; ++c) {
        for (auto& [n, im] : B.weyl[c]) {
            Mat W = F.mod.M.weyl_at(c, n);
            for (int v = 0; v < B.level[c].nvars(); ++v)
                add_rel(c, detail::vec_sub(W.apply(K.d.symbol(c, v)), K.d.diff(c, im[v])));
        }
        for (auto& [s, rim] : B.res_edge[c]) {
            int c2 = G.cls(s);
            const Mat& Rm = F.mod.M.res_edge[c].at(s);
            for (int v = 0; v < B.level[c].nvars(); ++v)
                add_rel(c2, detail::vec_sub(Rm.apply(K.d.symbol(c, v)), K.d.diff(c2, rim[v])));
        }
        for (auto& [s, tab] : B.tr_edge[c]) {
            int c2 = G.cls(s);
            const Mat& Tm = F.mod.M.tr_edge[c].at(s);
            for (auto& [m, im] : tab)
                add_rel(c, detail::vec_sub(K.d.diff(c, im),
                                           Tm.apply(K.d.diff(c2, poly_mono(m)))));
        }
    }
    for (auto& [key, nd] : B.norms) {
        int cK = key.first, cH = key.second;
        if (cK == cH) continue;
        for (int v = 0; v < B.level[cH].nvars(); ++v) {
            detail::NormProbe P =
                detail::norm_probe(B, cK, cH, B.level[cH].var_weights[v]);
            Vec xi = detail::norm_symbol_part(
                P, poly_mono(mono_var(B.level[cH].nvars(), v)));
            Mat corr = detail::norm_correction(P, F.mod, xi);
            add_rel(cK, detail::vec_sub(K.d.diff(cK, nd.var_images[v]),
                                        corr.apply(K.d.symbol(cH, v))));
        }
    }
    SubModule S = span_closure(F.mod, rels);
    K.span = S.embed;
    K.omega = F.mod;
    for (int c = 0; c < nc; ++c)
        K.omega.M.level[c] = FPAb(F.mod.M.level[c].n_gens, K.span[c].transpose());
    K.delta.src = &B;
    K.delta.sk = additive_skeleton(B, B.degree_bound);
    K.delta.base_images = aug.structure.var_images;
    for (int c = 0; c < nc; ++c) {
        Mat Dm(F.mod.M.level[c].n_gens, K.delta.sk.M.level[c].n_gens);
        int col = 0;
        for (int w = 0; w <= K.delta.sk.wmax; ++w)
            for (auto& mb : K.delta.sk.bases[c][w])
                Dm.set_col(col++, K.d.diff(c, poly_mono(mb)));
        K.delta.at.push_back(std::move(Dm));
    }
    return K;
}

// --- derivation checking ------------------------------------------------------

struct DerivationReport {
    bool mackey = true, base_vanishing = true, leibniz = true, norm_rule = true;
    std::vector<std::string> issues;
    bool ok() const { return mackey && base_vanishing && leibniz && norm_rule; }
};

// checks additive naturality, vanishing on the base, the product rule against
// every variable, and the transfer-corrected norm rule on generators, their
// low powers, and two-term sums
inline DerivationReport is_genuine_derivation(const Derivation& d, const RModule& W,
                                              const IndexingSystem& O) {
    const TambaraFunctor& B = *d.src;
    const Group& G = *B.G;
    int nc = int(G.classes.size());
    DerivationReport rep;
    auto note = [&](bool& flag, std::string s) {
        flag = false;
        rep.issues.push_back(std::move(s));
    };
    for (int c = 0; c < nc; ++c) {
        int K = G.rep_of_class(c);
        for (int n : G.normalizer_elems(K)) {
            if (G.contains(K, n)) continue;
            if (!maps_equal(W.M.level[c], d.at[c] * d.sk.M.weyl_at(c, n),
                            W.M.weyl_at(c, n) * d.at[c])) {
                note(rep.mackey, "conjugation mismatch at class " + std::to_string(c));
                break;
            }
        }
        for (int s : G.maximal_subgroups(K)) {
            int c2 = G.cls(s);
            if (!maps_equal(W.M.level[c2], d.at[c2] * d.sk.M.res_edge[c].at(s),
                            W.M.res_edge[c].at(s) * d.at[c]))
                note(rep.mackey, "restriction mismatch at class " + std::to_string(c));
            if (!maps_equal(W.M.level[c], d.at[c] * d.sk.M.tr_edge[c].at(s),
                            W.M.tr_edge[c].at(s) * d.at[c2]))
                note(rep.mackey, "transfer mismatch at class " + std::to_string(c));
        }
    }
    for (int c = 0; c < nc; ++c) {
        const RewriteRing& R = B.level[c];
        std::vector<Poly> base;
        base.push_back(poly_const(R.nvars(), 1));
        if (c < int(d.base_images.size()))
            for (auto& p : d.base_images[c]) base.push_back(p);
        for (size_t i = 0; i < base.size(); ++i)
            for (size_t j = i; j < base.size(); ++j) {
                Poly q = R.mul(base[i], base[j]);
                bool fits = true;
                for (auto& [m, coef] : q)
                    if (R.weight(m) > d.sk.wmax) fits = false;
                if (!fits) continue;
                if (!W.M.level[c].is_zero_elem(d.apply(c, q))) {
                    note(rep.base_vanishing,
                         "base image survives at class " + std::to_string(c));
                    j = base.size();
                    i = base.size();
                }
            }
    }
    for (int c = 0; c < nc; ++c) {
        const RewriteRing& R = B.level[c];
        for (int v = 0; v < R.nvars() && rep.leibniz; ++v) {
            Poly pv = poly_mono(mono_var(R.nvars(), v));
            Vec dv = d.apply(c, pv);
            for (int w = 0; w + R.var_weights[v] <= d.sk.wmax && rep.leibniz; ++w)
                for (auto& mb : d.sk.bases[c][w]) {
                    Vec lhs = d.apply(c, R.mul(pv, poly_mono(mb)));
                    Vec rhs = W.act[c][v].apply(d.apply(c, poly_mono(mb)));
                    Vec tail = dv;
                    for (int u = 0; u < int(mb.size()); ++u)
                        for (int e = 0; e < mb[u]; ++e) tail = W.act[c][u].apply(tail);
                    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] += tail[i];
                    if (!W.M.level[c].eq(lhs, rhs)) {
                        note(rep.leibniz, "product rule fails at class " + std::to_string(c) +
                                              " for variable " + R.var_names[v]);
                        break;
                    }
                }
        }
    }
    for (auto& [key, nd] : B.norms) {
        int cK = key.first, cH = key.second;
        if (cK == cH || !O.adm[cK][cH]) continue;
        int idx = G.order_of(nd.K0) / G.order_of(nd.H0);
        std::vector<std::pair<int, Poly>> samples; // (probe weight, element)
        for (int w = 0; w <= 2 && w * idx <= d.sk.wmax; ++w)
            for (auto& mb : d.sk.bases[cH][w]) samples.push_back({w, poly_mono(mb)});
        int nsum = 0;
        for (size_t i = 0; i < samples.size() && nsum < 6; ++i)
            for (size_t j = i + 1; j < samples.size() && nsum < 6; ++j) {
                if (samples[j].first * idx > d.sk.wmax) continue;
                samples.push_back(
                    {samples[i].first, poly_add(samples[i].second, samples[j].second)});
                ++nsum;
            }
        std::map<int, detail::NormProbe> probes;
        for (auto& [w, s] : samples) {
            if (!probes.count(w)) probes.emplace(w, detail::norm_probe(B, cK, cH, w));
            detail::NormProbe& P = probes.at(w);
            Vec xi = detail::norm_symbol_part(P, s);
            Mat corr = detail::norm_correction(P, W, xi);
            Vec lhs = d.apply(cK, eval_norm(B, nd.K0, nd.H0, s));
            Vec rhs = corr.apply(d.apply(cH, s));
            if (!W.M.level[cK].eq(lhs, rhs)) {
                note(rep.norm_rule, "norm rule fails between classes " + std::to_string(cH) +
                                        " and " + std::to_string(cK));
                break;
            }
        }
    }
    return rep;
}

// --- the module of derivations ------------------------------------------------

struct DerivationsModule {
    ModuleHom via_omega;           // maps out of the differentials module
    MackeyHom direct;              // values solved from the defining conditions
    std::vector<Derivation> basis; // one derivation per direct generator
    Mat match;                     // direct -> via_omega on group coordinates
    bool isomorphic = false;
};

// path one: module maps out of the differentials module (on a reduced copy);
// path two: solve the defining linear conditions on basis values directly;
// the witness identifies every solved derivation with a factoring map
inline DerivationsModule derivations_module(const KahlerDifferentials& K,
                                            const AugmentedAlgebra& aug, const RModule& W) {
    const TambaraFunctor& B = *aug.algebra;
    const Group& G = *B.G;
    int nc = int(G.classes.size());
    if (W.ring != &B) fail(ErrKind::validation, "derivations: module is over another ring");
    DerivationsModule out;
    CondensedModule cond = condense_module(K.omega);
    out.via_omega = module_hom(cond.mod, W);
    const TambaraSkeleton& sk = K.delta.sk;
    std::vector<HomLin> lins;
    for (int c = 0; c < nc; ++c) {
        const RewriteRing& R = B.level[c];
        Mat I = Mat::identity(W.M.level[c].n_gens);
        lins.push_back({c, {{c, I, sk.encode(c, poly_const(R.nvars(), 1))}}});
        for (auto& p : aug.structure.var_images[c])
            lins.push_back({c, {{c, I, sk.encode(c, p)}}});
        for (int v = 0; v < R.nvars(); ++v) {
            Poly pv = poly_mono(mono_var(R.nvars(), v));
            for (int w = 0; w + R.var_weights[v] <= sk.wmax; ++w)
                for (auto& mb : sk.bases[c][w]) {
                    Mat powm = Mat::identity(W.M.level[c].n_gens);
                    for (int u = 0; u < int(mb.size()); ++u)
                        for (int e = 0; e < mb[u]; ++e) powm = W.act[c][u] * powm;
                    HomLin L;
                    L.home = c;
                    L.terms.push_back({c, I, sk.encode(c, R.mul(pv, poly_mono(mb)))});
                    L.terms.push_back({c, W.act[c][v].scaled(-1), sk.encode(c, poly_mono(mb))});
                    L.terms.push_back({c, powm.scaled(-1), sk.encode(c, pv)});
                    lins.push_back(std::move(L));
                }
        }
    }
    for (auto& [key, nd] : B.norms) {
        int cK = key.first, cH = key.second;
        if (cK == cH) continue;
        int idx = G.order_of(nd.K0) / G.order_of(nd.H0);
        Mat I = Mat::identity(W.M.level[cK].n_gens);
        std::map<int, detail::NormProbe> probes;
        for (int w = 0; w * idx <= sk.wmax; ++w)
            for (auto& mb : sk.bases[cH][w]) {
                if (!probes.count(w)) probes.emplace(w, detail::norm_probe(B, cK, cH, w));
                detail::NormProbe& P = probes.at(w);
                Poly s = poly_mono(mb);
                Vec xi = detail::norm_symbol_part(P, s);
                Mat corr = detail::norm_correction(P, W, xi);
                HomLin L;
                L.home = cK;
                L.terms.push_back({cK, I, sk.encode(cK, eval_norm(B, nd.K0, nd.H0, s))});
                L.terms.push_back({cH, corr.scaled(-1), sk.encode(cH, s)});
                lins.push_back(std::move(L));
            }
    }
    out.direct = hom_mackey(sk.M, W.M, {}, lins);
    std::vector<std::pair<int, int>> gen_of(K.d.F.gens.size());
    for (int c = 0; c < nc; ++c)
        for (size_t v = 0; v < K.d.sym[c].size(); ++v) gen_of[K.d.sym[c][v]] = {c, int(v)};
    out.match = Mat(out.via_omega.group.n_gens, out.direct.group.n_gens);
    for (int g = 0; g < out.direct.group.n_gens; ++g) {
        Derivation d;
        d.src = &B;
        d.sk = sk;
        d.base_images = aug.structure.var_images;
        d.at = out.direct.reps[g];
        std::vector<Vec> imgs;
        for (size_t j = 0; j < K.d.F.gens.size(); ++j) {
            auto [c, v] = gen_of[j];
            imgs.push_back(
                d.at[c].apply(sk.encode(c, poly_mono(mono_var(B.level[c].nvars(), v)))));
        }
        ModuleMorphism h = factor_through_free(K.d.F, W, imgs);
        for (int c = 0; c < nc; ++c) {
            Mat z = h.at[c] * K.span[c];
            for (int q = 0; q < z.cols; ++q)
                if (!W.M.level[c].is_zero_elem(z.col(q)))
                    fail(ErrKind::internal,
                         "derivation does not factor through the differentials module");
        }
        std::vector<Mat> small;
        for (int c = 0; c < nc; ++c) small.push_back(h.at[c] * cond.from[c]);
        out.match.set_col(g, out.via_omega.encode(small));
        out.basis.push_back(std::move(d));
    }
    out.isomorphic = map_is_isomorphism(out.direct.group, out.via_omega.group, out.match);
    return out;
}

inline DerivationsModule derivations_module(const AugmentedAlgebra& aug, const RModule& W) {
    KahlerDifferentials K = kahler_differentials(aug);
    return derivations_module(K, aug, W);
}

} // namespace eqca
