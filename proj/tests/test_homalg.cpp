#include <catch2/catch_amalgamated.hpp>
#include <eqca/homalg.hpp>

using namespace eqca;

static Group C2 = cyclic_group(2);
static Group E = trivial_group();

static TambaraFunctor& ring_b() {
    static TambaraFunctor B = free_tambara(C2, complete_indexing(C2), {{"x", C2.full_id}}, 6);
    return B;
}

static TambaraFunctor& ring_a() {
    static TambaraFunctor A = burnside_c2_tambara(C2);
    return A;
}

// the coordinate module: the burnside functor as a module over the free ring,
// every positive-weight variable acting by zero
static RModule& coord_m() {
    static RModule M = [] {
        int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
        static TambaraMorphism eps;
        eps.src = &ring_b();
        eps.dst = &ring_a();
        eps.var_images.resize(2);
        eps.var_images[cg] = {poly_mono(mono_var(1, 0)), poly_zero(), poly_zero()};
        eps.var_images[ce] = {poly_zero()};
        return module_along(eps);
    }();
    return M;
}

static TambaraFunctor& poly_ring() {
    static TambaraFunctor P = free_tambara(E, trivial_indexing(E), {{"x", E.full_id}}, 6);
    return P;
}

static RModule& poly_point() {
    static TambaraFunctor Z = constant_tambara(E, trivial_indexing(E));
    static RModule M = [] {
        static TambaraMorphism eps;
        eps.src = &poly_ring();
        eps.dst = &Z;
        eps.var_images = {{poly_zero()}};
        return module_along(eps);
    }();
    return M;
}

TEST_CASE("complex validation accepts identities and rejects broken squares") {
    TambaraFunctor& A = ring_a();
    FreeModule F = free_module(A, {{"y", C2.full_id, 0}}, 0);
    int nc = 2;
    auto id_maps = [&] {
        std::vector<Mat> m;
        for (int c = 0; c < nc; ++c) m.push_back(Mat::identity(F.mod.M.level[c].n_gens));
        return m;
    };
    ChainComplex C;
    C.mod = {F.mod, F.mod};
    C.d = {{}, id_maps()};
    validate_complex(C);

    ChainComplex bad;
    bad.mod = {F.mod, F.mod, F.mod};
    bad.d = {{}, id_maps(), id_maps()};
    REQUIRE_THROWS_AS(validate_complex(bad), Error);
}

TEST_CASE("constant simplicial module collapses to its value in degree zero") {
    TambaraFunctor& A = ring_a();
    FreeModule F = free_module(A, {{"y", C2.full_id, 0}}, 0);
    int nc = 2;
    auto id_maps = [&] {
        std::vector<Mat> m;
        for (int c = 0; c < nc; ++c) m.push_back(Mat::identity(F.mod.M.level[c].n_gens));
        return m;
    };
    SimplicialModule S;
    S.obj = {F.mod, F.mod, F.mod};
    S.face.resize(3);
    S.degen.resize(3);
    for (int n = 1; n <= 2; ++n)
        for (int i = 0; i <= n; ++i) S.face[n].push_back(id_maps());
    for (int n = 0; n < 2; ++n)
        for (int i = 0; i <= n; ++i) S.degen[n].push_back(id_maps());
    ChainComplex C = moore_complex(S);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    HomologyModule h0 = homology_module(C, 0);
    REQUIRE(elementary_divisors(h0.mod.M.level[cg]) == std::vector<Int>{0, 0});
    REQUIRE(elementary_divisors(h0.mod.M.level[ce]) == std::vector<Int>{0});
    HomologyModule h1 = homology_module(C, 1);
    REQUIRE(elementary_divisors(h1.mod.M.level[cg]).empty());
    REQUIRE(elementary_divisors(h1.mod.M.level[ce]).empty());
    REQUIRE_THROWS_AS(homology_module(C, 2), Error);

    SimplicialModule broken = S;
    broken.face[2][1] = {Mat::identity(2).scaled(-1), Mat::identity(1)};
    REQUIRE_THROWS_AS(moore_complex(broken), Error);
}

TEST_CASE("degreewise zero simplicial module gives the zero complex") {
    RModule Z = zero_module(ring_a());
    SimplicialModule S;
    S.obj = {Z, Z};
    S.face.resize(2);
    S.degen.resize(2);
    S.face[1] = {{Mat(0, 0), Mat(0, 0)}, {Mat(0, 0), Mat(0, 0)}};
    S.degen[0] = {{Mat(0, 0), Mat(0, 0)}};
    ChainComplex C = moore_complex(S);
    HomologyModule h0 = homology_module(C, 0);
    REQUIRE(elementary_divisors(h0.mod.M.level[0]).empty());
    REQUIRE(elementary_divisors(h0.mod.M.level[1]).empty());
}

TEST_CASE("identity complex has vanishing homology") {
    TambaraFunctor& P = poly_ring();
    FreeModule F = free_module(P, {{"y", E.full_id, 0}}, 0);
    ChainComplex C;
    C.mod = {F.mod, F.mod};
    C.d = {{}, {Mat::identity(F.mod.M.level[0].n_gens)}};
    HomologyModule h0 = homology_module(C, 0);
    REQUIRE(elementary_divisors(h0.mod.M.level[0]).empty());
}

TEST_CASE("resolving the coordinate module finds the minimal stage shapes") {
    TambaraFunctor& B = ring_b();
    RModule& M = coord_m();
    Resolution R = free_resolution(B, M, 4);
    int full = C2.rep_of_class(C2.cls(C2.full_id));
    int triv = C2.rep_of_class(C2.cls(C2.triv_id));

    REQUIRE(R.gens[0].size() == 1);
    REQUIRE(R.gens[0][0].sub_id == full);
    REQUIRE(R.gens[0][0].weight == 0);

    REQUIRE(R.gens[1].size() == 2);
    REQUIRE(R.gens[1][0].sub_id == full);
    REQUIRE(R.gens[1][0].weight == 1);
    REQUIRE(R.gens[1][1].sub_id == full);
    REQUIRE(R.gens[1][1].weight == 2);

    REQUIRE(R.gens[2].size() == 2);
    REQUIRE(R.gens[2][0].sub_id == full);
    REQUIRE(R.gens[2][0].weight == 3);
    REQUIRE(R.gens[2][1].sub_id == triv);
    REQUIRE(R.gens[2][1].weight == 2);

    REQUIRE(R.gens[3].size() == 2);
    REQUIRE(R.gens[3][0].sub_id == triv);
    REQUIRE(R.gens[3][0].weight == 2);
    REQUIRE(R.gens[3][1].sub_id == triv);
    REQUIRE(R.gens[3][1].weight == 3);

    REQUIRE(R.gens[4].size() == 2);
    REQUIRE(R.gens[4][0].sub_id == full);
    REQUIRE(R.gens[4][0].weight == 2);
    REQUIRE(R.gens[4][1].sub_id == triv);
    REQUIRE(R.gens[4][1].weight == 3);

    validate_complex(R.C);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    HomologyModule h0 = homology_module(R.C, 0);
    REQUIRE(elementary_divisors(h0.mod.M.level[cg]) == std::vector<Int>{0, 0});
    REQUIRE(elementary_divisors(h0.mod.M.level[ce]) == std::vector<Int>{0});
    for (int q = 1; q <= 3; ++q) {
        HomologyModule h = homology_module(R.C, q);
        REQUIRE(elementary_divisors(h.mod.M.level[cg]).empty());
        REQUIRE(elementary_divisors(h.mod.M.level[ce]).empty());
    }
}

TEST_CASE("resolving a free module stops at once") {
    TambaraFunctor& B = ring_b();
    FreeModule F = free_module(B, {{"y", C2.full_id, 0}}, -1);
    Resolution R = free_resolution(B, F.mod, 2);
    REQUIRE(R.gens[0].size() == 1);
    REQUIRE(R.gens[1].empty());
    REQUIRE(R.gens[2].empty());
    REQUIRE(R.C.mod[1].M.level[0].n_gens == 0);
    REQUIRE(R.C.mod[2].M.level[1].n_gens == 0);
}

TEST_CASE("koszul resolution over the polynomial ring on one variable") {
    TambaraFunctor& P = poly_ring();
    RModule& M = poly_point();
    Resolution R = free_resolution(P, M, 2);
    REQUIRE(R.gens[0].size() == 1);
    REQUIRE(R.gens[0][0].weight == 0);
    REQUIRE(R.gens[1].size() == 1);
    REQUIRE(R.gens[1][0].weight == 1);
    REQUIRE(R.gens[2].empty());

    auto tt = tor_table(P, M, M, 1);
    REQUIRE(elementary_divisors(tt[0].mod.M.level[0]) == std::vector<Int>{0});
    REQUIRE(elementary_divisors(tt[1].mod.M.level[0]) == std::vector<Int>{0});
    HomologyModule t1 = tor(P, M, M, 1);
    REQUIRE(elementary_divisors(t1.mod.M.level[0]) == std::vector<Int>{0});
}

TEST_CASE("derived tensor of the coordinate module in low degrees") {
    TambaraFunctor& B = ring_b();
    RModule& M = coord_m();
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    int triv = C2.rep_of_class(ce);
    auto tt = tor_table(B, M, M, 3);

    REQUIRE(elementary_divisors(tt[0].mod.M.level[cg]) == std::vector<Int>{0, 0});
    REQUIRE(elementary_divisors(tt[0].mod.M.level[ce]) == std::vector<Int>{0});
    TensorProduct tp = tensor_over_r(M, M);
    REQUIRE(elementary_divisors(tp.mod.M.level[cg]) ==
            elementary_divisors(tt[0].mod.M.level[cg]));
    REQUIRE(elementary_divisors(tp.mod.M.level[ce]) ==
            elementary_divisors(tt[0].mod.M.level[ce]));

    const HomologyModule& t1 = tt[1];
    const FPAb& g1 = t1.mod.M.level[cg];
    const FPAb& e1 = t1.mod.M.level[ce];
    REQUIRE(elementary_divisors(g1) == std::vector<Int>{0, 0, 0});
    REQUIRE(elementary_divisors(e1) == std::vector<Int>{0});
    const Mat& tr1 = t1.mod.M.tr_edge[cg].at(triv);
    const Mat& rs1 = t1.mod.M.res_edge[cg].at(triv);
    // the transferred line: nonzero, torsion free, and the weight zero ring
    // variable doubles it
    FPAb trimg = detail::subgroup_presentation(g1, tr1);
    REQUIRE(elementary_divisors(trimg) == std::vector<Int>{0});
    REQUIRE(maps_equal(g1, t1.mod.act[cg][0] * tr1, tr1.scaled(2)));
    FPAb coker = g1;
    coker.rels = Mat::vstack(coker.rels, tr1.transpose());
    REQUIRE(elementary_divisors(coker) == std::vector<Int>{0, 0});
    // every weight two class restricts to zero
    for (int i = 0; i < g1.n_gens; ++i)
        if (t1.mod.gen_weight[cg][i] == 2) REQUIRE(e1.is_zero_elem(rs1.col(i)));
    // restriction covers the bottom level
    FPAb rescoker = e1;
    rescoker.rels = Mat::vstack(rescoker.rels, rs1.transpose());
    REQUIRE(elementary_divisors(rescoker).empty());

    const HomologyModule& t2 = tt[2];
    const FPAb& g2 = t2.mod.M.level[cg];
    REQUIRE(elementary_divisors(g2) == std::vector<Int>{0});
    REQUIRE(elementary_divisors(t2.mod.M.level[ce]).empty());
    Mat tact = t2.mod.act[cg][0];
    REQUIRE(maps_equal(g2, tact, Mat::zero(tact.rows, tact.cols)));

    REQUIRE(elementary_divisors(tt[3].mod.M.level[cg]).empty());
    REQUIRE(elementary_divisors(tt[3].mod.M.level[ce]).empty());
}

TEST_CASE("derived tensor of a free module vanishes upward") {
    TambaraFunctor& B = ring_b();
    RModule& M = coord_m();
    FreeModule F = free_module(B, {{"y", C2.full_id, 0}}, -1);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    auto tt = tor_table(B, F.mod, M, 1);
    REQUIRE(elementary_divisors(tt[0].mod.M.level[cg]) == std::vector<Int>{0, 0});
    REQUIRE(elementary_divisors(tt[0].mod.M.level[ce]) == std::vector<Int>{0});
    REQUIRE(elementary_divisors(tt[1].mod.M.level[cg]).empty());
    REQUIRE(elementary_divisors(tt[1].mod.M.level[ce]).empty());
}

TEST_CASE("derived hom over the polynomial ring on one variable") {
    TambaraFunctor& P = poly_ring();
    RModule& M = poly_point();
    auto et = ext_table(P, M, M, 1);
    REQUIRE(elementary_divisors(et[0][0]) == std::vector<Int>{0});
    REQUIRE(elementary_divisors(et[1][0]) == std::vector<Int>{0});
    auto e1 = ext(P, M, M, 1);
    REQUIRE(elementary_divisors(e1[0]) == std::vector<Int>{0});
}

TEST_CASE("derived hom out of a free module vanishes upward") {
    TambaraFunctor& B = ring_b();
    RModule& M = coord_m();
    FreeModule F = free_module(B, {{"y", C2.full_id, 0}}, -1);
    auto et = ext_table(B, F.mod, M, 1);
    REQUIRE(elementary_divisors(et[1][0]).empty());
    REQUIRE(elementary_divisors(et[1][1]).empty());
}
