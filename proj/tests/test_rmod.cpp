#include <catch2/catch_amalgamated.hpp>

#include <eqca/rmod.hpp>

using namespace eqca;

static Group C2 = cyclic_group(2);
static Group C4 = cyclic_group(4);
static Group S3 = symmetric3();

// flattened skeleton basis monomials at a class, in generator order
static std::vector<Monomial> flat_basis(const TambaraSkeleton& sk, int c) {
    std::vector<Monomial> out;
    for (int w = 0; w <= sk.wmax; ++w)
        for (auto& m : sk.bases[c][w]) out.push_back(m);
    return out;
}

TEST_CASE("the constant functor validates over several groups") {
    validate_tambara(constant_tambara(C2, complete_indexing(C2)));
    validate_tambara(constant_tambara(C2, trivial_indexing(C2)));
    validate_tambara(constant_tambara(C4, complete_indexing(C4)));
    validate_tambara(constant_tambara(S3, complete_indexing(S3)));
    // scalar norms come out of the section formula: N(c) = c^2 over C2
    TambaraFunctor K = constant_tambara(C2, complete_indexing(C2));
    for (int c : {-2, -1, 0, 1, 2, 3})
        REQUIRE(K.level[C2.cls(C2.full_id)].eq(
            eval_norm(K, C2.full_id, C2.triv_id, poly_const(0, c)), poly_const(0, Int(c) * c)));
}

TEST_CASE("the ring as a module over itself") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule F = free_module(A, {{"one", C2.full_id, 0}});
    validate_module(F.mod);
    REQUIRE(F.mod.M.level[cg].n_gens == 2); // 1 and t
    REQUIRE(F.mod.M.level[ce].n_gens == 1);
    // t acts by sending 1 to t and t to 2t
    REQUIRE(F.mod.act[cg][0] == Mat{2, 2, {0, 0, 1, 2}});
    REQUIRE(F.mod.act[ce].empty());
    // restriction and transfer carry the ring numbers
    Mat res = F.mod.M.res_edge[cg].at(C2.triv_id);
    REQUIRE(res.at(0, 0) == 1);
    REQUIRE(res.at(0, 1) == 2);
    REQUIRE(F.mod.M.tr_edge[cg].at(C2.triv_id).col(0) == Vec{0, 1});
    REQUIRE(F.gen_vec[0].first == cg);
    REQUIRE(F.gen_vec[0].second == Vec{1, 0});
}

TEST_CASE("free module on a generator at the free level") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule F = free_module(A, {{"y", C2.triv_id, 0}});
    validate_module(F.mod);
    REQUIRE(F.mod.M.level[cg].n_gens == 1); // the transferred class
    REQUIRE(F.mod.M.level[ce].n_gens == 2); // y and its conjugate
    REQUIRE(F.mod.act[cg][0] == Mat{1, 1, {2}});
    REQUIRE(F.mod.M.res_edge[cg].at(C2.triv_id) == Mat{2, 1, {1, 1}});
    REQUIRE(F.mod.M.tr_edge[cg].at(C2.triv_id) == Mat{1, 2, {1, 1}});
    REQUIRE(F.mod.M.weyl_at(ce, 1) == Mat{2, 2, {0, 1, 1, 0}});
    REQUIRE(F.gen_vec[0].first == ce);
    REQUIRE(F.gen_vec[0].second == Vec{1, 0});
}

TEST_CASE("free module over a polynomial extension carries the graded basis") {
    TambaraFunctor Ft = free_tambara(C2, trivial_indexing(C2), {{"x", C2.full_id}}, 6);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule F = free_module(Ft, {{"y", C2.full_id, 0}});
    validate_module(F.mod);
    REQUIRE(F.mod.M.level[cg].n_gens == 14); // x^w and t x^w for w = 0..6
    REQUIRE(F.mod.M.level[ce].n_gens == 7);  // r^w
    for (int w = 0; w <= 6; ++w) {
        REQUIRE(F.mod.gen_weight[cg][2 * w] == w);
        REQUIRE(F.mod.gen_weight[cg][2 * w + 1] == w);
        REQUIRE(F.mod.gen_weight[ce][w] == w);
        // transfer of the degree-w generator below lands on t x^w
        Vec tcol = F.mod.M.tr_edge[cg].at(C2.triv_id).col(w);
        for (int i = 0; i < 14; ++i) REQUIRE(tcol[i] == (i == 2 * w + 1 ? 1 : 0));
        // restriction: x^w to r^w, t x^w to 2 r^w
        Vec r1 = F.mod.M.res_edge[cg].at(C2.triv_id).col(2 * w);
        Vec r2 = F.mod.M.res_edge[cg].at(C2.triv_id).col(2 * w + 1);
        for (int i = 0; i <= 6; ++i) {
            REQUIRE(r1[i] == (i == w ? 1 : 0));
            REQUIRE(r2[i] == (i == w ? 2 : 0));
        }
    }
    // multiplication by x shifts the basis and truncates at the window edge
    const Mat& ax = F.mod.act[cg][1];
    REQUIRE(ax.col(0) == detail::unit_vec(14, 2));
    REQUIRE(ax.col(11) == detail::unit_vec(14, 13));
    REQUIRE(is_zero(ax.col(12)));
    REQUIRE(is_zero(ax.col(13)));
}

TEST_CASE("free modules validate over larger groups") {
    {
        TambaraFunctor T4 = burnside_tambara(C4, complete_indexing(C4));
        int mid = -1;
        for (int s = 0; s < int(C4.subgroups.size()); ++s)
            if (C4.order_of(s) == 2) mid = s;
        FreeModule F = free_module(T4, {{"u", mid, 0}});
        validate_module(F.mod);
    }
    {
        TambaraFunctor T3 = burnside_tambara(S3, complete_indexing(S3));
        int two = -1;
        for (int s = 0; s < int(S3.subgroups.size()); ++s)
            if (S3.order_of(s) == 2) two = s;
        FreeModule F = free_module(T3, {{"u", two, 0}});
        validate_module(F.mod);
    }
}

TEST_CASE("free module input validation") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    REQUIRE_THROWS_AS(free_module(A, {{"a", C2.full_id, 0}, {"a", C2.triv_id, 0}}), Error);
    REQUIRE_THROWS_AS(free_module(A, {{"", C2.full_id, 0}}), Error);
    REQUIRE_THROWS_AS(free_module(A, {{"a", C2.full_id, -1}}), Error);
    REQUIRE_THROWS_AS(free_module(A, {{"a", C2.full_id, 9}}), Error);
}

TEST_CASE("the universal property determines morphisms out of free modules") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule F = free_module(A, {{"y", C2.triv_id, 0}});
    // send y to its conjugate: levels swap below, fix the transferred class
    ModuleMorphism f = factor_through_free(F, F.mod, {Vec{0, 1}});
    validate_module_morphism(f);
    REQUIRE(f.at[ce] == Mat{2, 2, {0, 1, 1, 0}});
    REQUIRE(f.at[cg] == Mat{1, 1, {1}});
    // the generator goes where it was sent
    REQUIRE(F.mod.M.level[ce].eq(f.at[ce].apply(F.gen_vec[0].second), Vec{0, 1}));

    FreeModule R1 = free_module(A, {{"one", C2.full_id, 0}});
    // send the unit generator to t
    ModuleMorphism g = factor_through_free(R1, R1.mod, {Vec{0, 1}});
    validate_module_morphism(g);
    REQUIRE(R1.mod.M.level[cg].eq(g.at[cg].apply(R1.gen_vec[0].second), Vec{0, 1}));
    // t * 1 = t, t * t = 2t, below the restriction is multiplication by two
    REQUIRE(g.at[cg] == Mat{2, 2, {0, 0, 1, 2}});
    REQUIRE(g.at[ce] == Mat{1, 1, {2}});
}

TEST_CASE("hom groups of modules match the represented values") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule R1 = free_module(A, {{"one", C2.full_id, 0}});
    FreeModule Fe = free_module(A, {{"y", C2.triv_id, 0}});
    // maps out of the rank-one free module correspond to the level of its generator
    auto h1 = module_hom(R1.mod, R1.mod);
    REQUIRE(elementary_divisors(h1.group) == std::vector<Int>{0, 0});
    auto h2 = module_hom(Fe.mod, R1.mod);
    REQUIRE(elementary_divisors(h2.group) == std::vector<Int>{0});
    auto h3 = module_hom(Fe.mod, Fe.mod);
    REQUIRE(elementary_divisors(h3.group) == std::vector<Int>{0, 0});
    // maps into the zero module vanish
    RModule Z = zero_module(A);
    auto h4 = module_hom(R1.mod, Z);
    REQUIRE(is_trivial_group(h4.group));

    TambaraFunctor Ft = free_tambara(C2, trivial_indexing(C2), {{"x", C2.full_id}}, 6);
    FreeModule Fx = free_module(Ft, {{"y", C2.full_id, 0}}, 3);
    auto h5 = module_hom(Fx.mod, Fx.mod);
    REQUIRE(elementary_divisors(h5.group) == std::vector<Int>(8, Int(0)));
}

TEST_CASE("module hom rejects mismatched rings") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    TambaraFunctor B = burnside_c2_tambara(C2);
    FreeModule Fa = free_module(A, {{"u", C2.full_id, 0}});
    FreeModule Fb = free_module(B, {{"u", C2.full_id, 0}});
    REQUIRE_THROWS_AS(module_hom(Fa.mod, Fb.mod), Error);
    REQUIRE_THROWS_AS(tensor_over_r(Fa.mod, Fb.mod), Error);
    REQUIRE_THROWS_AS(direct_sum(Fa.mod, Fb.mod), Error);
}

TEST_CASE("direct sums, kernels and cokernels") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule R1 = free_module(A, {{"one", C2.full_id, 0}});
    FreeModule Fe = free_module(A, {{"y", C2.triv_id, 0}});
    RModule D = direct_sum(R1.mod, Fe.mod);
    validate_module(D);
    REQUIRE(elementary_divisors(D.M.level[cg]) == std::vector<Int>{0, 0, 0});
    REQUIRE(elementary_divisors(D.M.level[ce]) == std::vector<Int>{0, 0, 0});

    ModuleMorphism id{&R1.mod, &R1.mod, {}};
    for (size_t c = 0; c < C2.classes.size(); ++c)
        id.at.push_back(Mat::identity(R1.mod.M.level[c].n_gens));
    SubModule K = kernel_module(id);
    REQUIRE(elementary_divisors(K.mod.M.level[cg]).empty());
    REQUIRE(elementary_divisors(K.mod.M.level[ce]).empty());

    ModuleMorphism dbl = id;
    for (auto& m : dbl.at) m = m.scaled(2);
    validate_module_morphism(dbl);
    SubModule K2 = kernel_module(dbl);
    REQUIRE(elementary_divisors(K2.mod.M.level[cg]).empty());
    RModule Q = cokernel_module(dbl);
    REQUIRE(elementary_divisors(Q.M.level[cg]) == std::vector<Int>{2, 2});
    REQUIRE(elementary_divisors(Q.M.level[ce]) == std::vector<Int>{2});
}

TEST_CASE("span closure reaches everything a generator generates") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int ce = C2.cls(C2.triv_id);
    FreeModule Fe = free_module(A, {{"y", C2.triv_id, 0}});
    SubModule S = span_closure(Fe.mod, {{ce, Vec{1, 0}}});
    for (size_t c = 0; c < C2.classes.size(); ++c) {
        FPAb coker(Fe.mod.M.level[c].n_gens,
                   Mat::vstack(Fe.mod.M.level[c].rels, S.embed[c].transpose()));
        REQUIRE(is_trivial_group(coker));
    }

    // over the one-variable polynomial ring, twice a generator spans an index-two copy
    Group E = trivial_group();
    TambaraFunctor P = free_tambara(E, trivial_indexing(E), {{"x", E.full_id}}, 6);
    FreeModule W = free_module(P, {{"w", E.full_id, 0}});
    SubModule S2 = span_closure(W.mod, {{0, Vec{2, 0, 0, 0, 0, 0, 0}}});
    FPAb coker(7, Mat::vstack(W.mod.M.level[0].rels, S2.embed[0].transpose()));
    REQUIRE(elementary_divisors(coker) == std::vector<Int>(7, Int(2)));
    REQUIRE(elementary_divisors(S2.mod.M.level[0]) == std::vector<Int>(7, Int(0)));
}

TEST_CASE("independence distinguishes a global relation from a levelwise one") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id);
    FreeModule Fe = free_module(A, {{"y", C2.triv_id, 0}});
    int ce = C2.cls(C2.triv_id);
    // y and its conjugate: transfers agree, so they are globally dependent,
    // but no relation exists inside the bottom level itself
    auto rep = linear_independence(Fe.mod, {{ce, Vec{1, 0}}, {ce, Vec{0, 1}}});
    REQUIRE_FALSE(rep.independent);
    REQUIRE(rep.independent_at_own_level);
    REQUIRE(rep.witness_class >= 0);
    REQUIRE_FALSE(is_zero(rep.witness));

    auto rep2 = linear_independence(Fe.mod, {{ce, Vec{1, 0}}});
    REQUIRE(rep2.independent);

    FreeModule R1 = free_module(A, {{"one", C2.full_id, 0}});
    auto rep3 = linear_independence(R1.mod, {{cg, Vec{1, 0}}});
    REQUIRE(rep3.independent);

    // a two-torsion element is dependent even at its own level
    ModuleMorphism dbl{&R1.mod, &R1.mod, {}};
    for (size_t c = 0; c < C2.classes.size(); ++c)
        dbl.at.push_back(Mat::identity(R1.mod.M.level[c].n_gens).scaled(2));
    RModule Q = cokernel_module(dbl);
    auto rep4 = linear_independence(Q, {{cg, Vec{1, 0}}});
    REQUIRE_FALSE(rep4.independent);
    REQUIRE_FALSE(rep4.independent_at_own_level);
}

TEST_CASE("tensoring with the ring is the identity up to isomorphism") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    FreeModule R1 = free_module(A, {{"one", C2.full_id, 0}});
    TensorProduct tp = tensor_over_r(R1.mod, R1.mod);
    validate_module(tp.mod);
    for (size_t c = 0; c < C2.classes.size(); ++c)
        for (size_t v = 0; v < tp.left_act[c].size(); ++v)
            REQUIRE(maps_equal(tp.mod.M.level[c], tp.left_act[c][v], tp.right_act[c][v]));

    // the multiplication map: transfer the product of each pure pair
    ModuleMorphism ev;
    ev.src = &tp.mod;
    ev.dst = &R1.mod;
    for (size_t c = 0; c < C2.classes.size(); ++c) {
        int K = C2.rep_of_class(int(c));
        const BoxLevelInfo& L = tp.box.info[c];
        Mat raw(R1.mod.M.level[c].n_gens, L.total);
        for (int pos = 0; pos < int(L.reps.size()); ++pos) {
            int H = L.reps[pos];
            int cH = C2.cls(H);
            auto monos = flat_basis(R1.skel[0], cH);
            Mat tr = R1.mod.M.tr_map(K, H);
            for (int i = 0; i < int(monos.size()); ++i)
                for (int j = 0; j < int(monos.size()); ++j) {
                    Vec prod = R1.skel[0].encode_trunc(
                        cH, poly_mul_raw(poly_mono(monos[i]), poly_mono(monos[j])));
                    Vec img = tr.apply(prod);
                    for (int r = 0; r < raw.rows; ++r)
                        raw.at(r, L.offset[pos] + i * int(monos.size()) + j) = img[r];
                }
        }
        ev.at.push_back(raw * tp.box.from_simple[c]);
    }
    validate_module_morphism(ev);
    for (size_t c = 0; c < C2.classes.size(); ++c)
        REQUIRE(map_is_isomorphism(tp.mod.M.level[c], R1.mod.M.level[c], ev.at[c]));
}

TEST_CASE("tensor of two free modules is free on the induced generator") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule R1 = free_module(A, {{"one", C2.full_id, 0}});
    FreeModule Fe = free_module(A, {{"y", C2.triv_id, 0}});
    TensorProduct tp = tensor_over_r(R1.mod, Fe.mod);
    validate_module(tp.mod);
    REQUIRE(elementary_divisors(tp.mod.M.level[cg]) == std::vector<Int>{0});
    REQUIRE(elementary_divisors(tp.mod.M.level[ce]) == std::vector<Int>{0, 0});
    for (size_t c = 0; c < C2.classes.size(); ++c)
        for (size_t v = 0; v < tp.left_act[c].size(); ++v)
            REQUIRE(maps_equal(tp.mod.M.level[c], tp.left_act[c][v], tp.right_act[c][v]));
}

TEST_CASE("square-zero extension by the ring itself") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule R1 = free_module(A, {{"one", C2.full_id, 0}});
    SquareZeroExtension E = square_zero(A, R1.mod);
    validate_tambara(E.T);
    REQUIRE(E.T.level[cg].nvars() == 3); // t and two square-zero classes
    REQUIRE(E.T.level[ce].nvars() == 1);
    TambaraMorphism aug = square_zero_augmentation(E, A);
    validate_tambara_morphism(aug);
    AugmentationIdeal ai = augmentation_ideal(E.T, aug);
    REQUIRE(ai.norm_vanishing);
    REQUIRE(elementary_divisors(ai.ideal.mod.M.level[cg]) == std::vector<Int>{0, 0});
    REQUIRE(elementary_divisors(ai.ideal.mod.M.level[ce]) == std::vector<Int>{0});
    validate_module(ai.ideal.mod);
}

TEST_CASE("square-zero extension by the free-level module, with its norm rule") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    FreeModule Fe = free_module(A, {{"y", C2.triv_id, 0}});
    SquareZeroExtension E = square_zero(A, Fe.mod);
    validate_tambara(E.T);
    REQUIRE(E.T.level[cg].nvars() == 2); // t and the transferred class
    REQUIRE(E.T.level[ce].nvars() == 2); // the two conjugate classes
    TambaraMorphism aug = square_zero_augmentation(E, A);
    validate_tambara_morphism(aug);
    AugmentationIdeal ai = augmentation_ideal(E.T, aug);
    REQUIRE(ai.norm_vanishing);
    REQUIRE(elementary_divisors(ai.ideal.mod.M.level[cg]) == std::vector<Int>{0});
    REQUIRE(elementary_divisors(ai.ideal.mod.M.level[ce]) == std::vector<Int>{0, 0});

    // the norm of a mixed element c + d y: the square-zero part contributes
    // the transferred class with coefficient c d
    const RewriteRing& top = E.T.level[cg];
    for (auto [c, d] : std::vector<std::pair<int, int>>{{3, 2}, {1, 1}, {-2, 5}, {0, 4}}) {
        Poly x = poly_const(2, c);
        poly_add_term(x, mono_var(2, 0), d);
        Poly expect = poly_const(2, c);
        poly_add_term(expect, mono_var(2, 0), Int(c) * (c - 1) / 2);
        poly_add_term(expect, mono_var(2, 1), Int(c) * d);
        REQUIRE(top.eq(eval_norm(E.T, C2.full_id, C2.triv_id, x), expect));
    }
}

TEST_CASE("square-zero input validation") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    FreeModule R1 = free_module(A, {{"one", C2.full_id, 0}});
    RModule bad = R1.mod;
    int cg = C2.cls(C2.full_id);
    bad.gen_weight[cg][0] = -1;
    REQUIRE_THROWS_AS(square_zero(A, bad), Error);
    TambaraFunctor B = burnside_c2_tambara(C2);
    REQUIRE_THROWS_AS(square_zero(B, R1.mod), Error); // module lives over another copy
}

TEST_CASE("augmentation ideal with a non-vanishing norm") {
    TambaraFunctor S = strickland_tambara(C2);
    TambaraFunctor K = constant_tambara(C2, complete_indexing(C2));
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    TambaraMorphism f;
    f.src = &S;
    f.dst = &K;
    f.var_images.resize(C2.classes.size());
    f.var_images[cg] = {poly_zero(), poly_zero()};
    f.var_images[ce] = {poly_zero()};
    validate_tambara_morphism(f);
    AugmentationIdeal ai = augmentation_ideal(S, f);
    REQUIRE_FALSE(ai.norm_vanishing);
    REQUIRE(elementary_divisors(ai.ideal.mod.M.level[cg]) == std::vector<Int>{2, 0});
    REQUIRE(elementary_divisors(ai.ideal.mod.M.level[ce]) == std::vector<Int>{0});
}

TEST_CASE("augmentation ideal of a straight ring surjection") {
    TambaraFunctor A = burnside_c2_tambara(C2);
    TambaraFunctor K = constant_tambara(C2, complete_indexing(C2));
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    TambaraMorphism f;
    f.src = &A;
    f.dst = &K;
    f.var_images.resize(C2.classes.size());
    f.var_images[cg] = {poly_const(0, 2)}; // the transferred class restricts to two
    f.var_images[ce] = {};
    validate_tambara_morphism(f);
    AugmentationIdeal ai = augmentation_ideal(A, f);
    REQUIRE(ai.norm_vanishing); // the bottom level kernel is zero, nothing to test
    REQUIRE(elementary_divisors(ai.ideal.mod.M.level[cg]) == std::vector<Int>{0});
    REQUIRE(elementary_divisors(ai.ideal.mod.M.level[ce]).empty());

    // the identity has no augmentation ideal at all
    TambaraMorphism idm;
    idm.src = &A;
    idm.dst = &A;
    idm.var_images.resize(C2.classes.size());
    idm.var_images[cg] = {poly_mono(mono_var(1, 0))};
    idm.var_images[ce] = {};
    AugmentationIdeal ai2 = augmentation_ideal(A, idm);
    REQUIRE(ai2.norm_vanishing);
    REQUIRE(elementary_divisors(ai2.ideal.mod.M.level[cg]).empty());
    REQUIRE(elementary_divisors(ai2.ideal.mod.M.level[ce]).empty());
}
