#include <catch2/catch_amalgamated.hpp>

#include <eqca/tamb.hpp>

using namespace eqca;

TEST_CASE("indexing systems validate and detect closure failures") {
    Group C4 = cyclic_group(4);
    REQUIRE(validate_indexing_system(trivial_indexing(C4)).empty());
    REQUIRE(validate_indexing_system(complete_indexing(C4)).empty());
    Group S3 = symmetric3();
    REQUIRE(validate_indexing_system(complete_indexing(S3)).empty());
    Group C2 = cyclic_group(2);
    REQUIRE(validate_indexing_system(complete_indexing(C2)).empty());

    // declaring the full norm without the intermediate one breaks restriction closure
    IndexingSystem o = trivial_indexing(C4);
    o.adm[C4.cls(C4.full_id)][C4.cls(C4.triv_id)] = 1;
    auto rep = validate_indexing_system(o);
    REQUIRE(!rep.empty());
    bool mentions = false;
    for (auto& line : rep)
        if (line.find("restriction closure") != std::string::npos) mentions = true;
    REQUIRE(mentions);
}

TEST_CASE("the two-element burnside functor and its scalar norms") {
    Group C2 = cyclic_group(2);
    TambaraFunctor A = burnside_c2_tambara(C2);
    validate_tambara(A);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    const RewriteRing& top = A.level[cg];
    REQUIRE(top.var_names == std::vector<std::string>{"t"});
    REQUIRE(A.level[ce].nvars() == 0);

    Poly t = poly_mono(mono_var(1, 0));
    REQUIRE(top.eq(top.mul(t, t), poly_mono(mono_var(1, 0), 2)));
    RingMap R = A.rmap(cg, ce, A.res_edge[cg].at(C2.triv_id));
    REQUIRE(A.level[ce].eq(R.apply(t), poly_const(0, 2)));
    REQUIRE(top.eq(A.tr_apply(C2.full_id, C2.triv_id, poly_const(0, 1)), t));

    auto N = [&](int c) { return eval_norm(A, C2.full_id, C2.triv_id, poly_const(0, c)); };
    REQUIRE(top.eq(N(0), poly_zero()));
    REQUIRE(top.eq(N(1), poly_const(1, 1)));
    for (int c : {-3, -1, 2, 3, 5}) {
        Poly expect = poly_const(1, c);
        poly_add_term(expect, mono_var(1, 0), Int(c) * (c - 1) / 2);
        REQUIRE(top.eq(N(c), expect));
    }
}

TEST_CASE("burnside functors over larger groups validate with norms") {
    Group C4 = cyclic_group(4);
    validate_tambara(burnside_tambara(C4, complete_indexing(C4)));
    Group S3 = symmetric3();
    validate_tambara(burnside_tambara(S3, complete_indexing(S3)));
}

TEST_CASE("the ungraded functor with a nontrivial norm class") {
    Group C2 = cyclic_group(2);
    TambaraFunctor T = strickland_tambara(C2);
    validate_tambara(T);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    const RewriteRing& top = T.level[cg];
    int b = top.var_index("b"), g = top.var_index("g");
    Poly a = poly_mono(mono_var(1, 0));

    REQUIRE(top.eq(T.tr_apply(C2.full_id, C2.triv_id, a), poly_mono(mono_var(2, b))));
    RingMap R = T.rmap(cg, ce, T.res_edge[cg].at(C2.triv_id));
    REQUIRE(T.level[ce].eq(R.apply(poly_mono(mono_var(2, b))), poly_mono(mono_var(1, 0), 2)));
    REQUIRE(T.level[ce].eq(R.apply(poly_mono(mono_var(2, g))), poly_zero()));
    REQUIRE(top.eq(eval_norm(T, C2.full_id, C2.triv_id, a), poly_mono(mono_var(2, g))));

    // the norm of a general element, from the generator data alone
    for (auto [i, j] : std::vector<std::pair<int, int>>{
             {0, 1}, {1, 1}, {2, 3}, {-1, 2}, {5, -4}, {3, 0}, {-2, -3}}) {
        Poly x = poly_const(1, i);
        poly_add_term(x, mono_var(1, 0), j);
        Poly expect = poly_const(2, Int(i) * i);
        poly_add_term(expect, mono_var(2, b), Int(i) * j);
        poly_add_term(expect, mono_var(2, g), Int(j) * j);
        REQUIRE(top.eq(eval_norm(T, C2.full_id, C2.triv_id, x), expect));
    }
}

TEST_CASE("free functor with trivial norms over the two-element group") {
    Group C2 = cyclic_group(2);
    TambaraFunctor F = free_tambara(C2, trivial_indexing(C2), {{"x", C2.full_id}}, 6);
    validate_tambara(F);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    REQUIRE(F.level[cg].var_names == std::vector<std::string>{"t", "x"});
    REQUIRE(F.level[ce].var_names == std::vector<std::string>{"r"});
    REQUIRE(F.level[cg].basis(0).size() == 2);
    REQUIRE(F.level[cg].basis(3).size() == 2);
    REQUIRE(elementary_divisors(F.level[cg].slice_group(2)) == std::vector<Int>{0, 0});
    REQUIRE(F.norms.empty());

    // T(r^2) = t x^2 and R(x) = r
    Poly tx2 = poly_mono(mono_mul(mono_var(2, 0), mono_var(2, 1, 2)));
    REQUIRE(F.level[cg].eq(F.tr_apply(C2.full_id, C2.triv_id, poly_mono(mono_var(1, 0, 2))), tx2));
    RingMap R = F.rmap(cg, ce, F.res_edge[cg].at(C2.triv_id));
    REQUIRE(F.level[ce].eq(R.apply(poly_mono(mono_var(2, 1))), poly_mono(mono_var(1, 0))));
}

TEST_CASE("free functor with a norm class over the two-element group") {
    Group C2 = cyclic_group(2);
    TambaraFunctor F = free_tambara(C2, complete_indexing(C2), {{"x", C2.full_id}}, 6);
    validate_tambara(F);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    const RewriteRing& top = F.level[cg];
    REQUIRE(top.var_names == std::vector<std::string>{"t", "x", "n"});
    int vt = 0, vx = 1, vn = 2;

    // t n = t x^2 inside the ring
    Poly tn = top.mul(poly_mono(mono_var(3, vt)), poly_mono(mono_var(3, vn)));
    REQUIRE(top.eq(tn, poly_mono(mono_mul(mono_var(3, vt), mono_var(3, vx, 2)))));
    // weight-two slice {x^2, n, t x^2} is free of rank three
    REQUIRE(elementary_divisors(top.slice_group(2)) == std::vector<Int>{0, 0, 0});

    Poly r = poly_mono(mono_var(1, 0));
    REQUIRE(top.eq(eval_norm(F, C2.full_id, C2.triv_id, r), poly_mono(mono_var(3, vn))));
    REQUIRE(top.eq(eval_norm(F, C2.full_id, C2.triv_id, poly_mono(mono_var(1, 0, 2))),
                   poly_mono(mono_var(3, vn, 2))));
    RingMap R = F.rmap(cg, ce, F.res_edge[cg].at(C2.triv_id));
    REQUIRE(F.level[ce].eq(R.apply(poly_mono(mono_var(3, vn))), poly_mono(mono_var(1, 0, 2))));

    // N(r + 1) = n + t x + 1
    Poly rp1 = r;
    poly_add_term(rp1, mono_one(1), 1);
    Poly e1 = poly_mono(mono_var(3, vn));
    poly_add_term(e1, mono_mul(mono_var(3, vt), mono_var(3, vx)), 1);
    poly_add_term(e1, mono_one(3), 1);
    REQUIRE(top.eq(eval_norm(F, C2.full_id, C2.triv_id, rp1), e1));
    // N(2 r) = 2 n + t x^2
    Poly e2 = poly_mono(mono_var(3, vn), 2);
    poly_add_term(e2, mono_mul(mono_var(3, vt), mono_var(3, vx, 2)), 1);
    REQUIRE(top.eq(eval_norm(F, C2.full_id, C2.triv_id, poly_mono(mono_var(1, 0), 2)), e2));
}

TEST_CASE("free functor over the trivial group is a polynomial ring") {
    Group E = trivial_group();
    TambaraFunctor F = free_tambara(E, trivial_indexing(E), {{"x", E.full_id}}, 6);
    validate_tambara(F);
    REQUIRE(F.level.size() == 1);
    REQUIRE(F.level[0].var_names == std::vector<std::string>{"x"});
    REQUIRE(F.level[0].mono_rules.empty());
    REQUIRE(F.level[0].basis(4).size() == 1);
}

TEST_CASE("free functors reject unsupported generator placements") {
    Group C2 = cyclic_group(2);
    REQUIRE_THROWS_AS(free_tambara(C2, complete_indexing(C2), {{"y", C2.triv_id}}, 6), Error);
    Group C4 = cyclic_group(4);
    REQUIRE_THROWS_AS(free_tambara(C4, complete_indexing(C4), {{"x", C4.full_id}}, 6), Error);
}

TEST_CASE("augmentation to the burnside functor is a morphism") {
    Group C2 = cyclic_group(2);
    TambaraFunctor F = free_tambara(C2, complete_indexing(C2), {{"x", C2.full_id}}, 6);
    TambaraFunctor A = burnside_c2_tambara(C2);
    int cg = C2.cls(C2.full_id), ce = C2.cls(C2.triv_id);
    TambaraMorphism eps;
    eps.src = &F;
    eps.dst = &A;
    eps.var_images.resize(2);
    eps.var_images[cg] = {poly_mono(mono_var(1, 0)), poly_zero(), poly_zero()};
    eps.var_images[ce] = {poly_zero()};
    validate_tambara_morphism(eps);

    // sending the generator to the transferred class is not multiplicative-compatible
    TambaraMorphism wrong = eps;
    wrong.var_images[cg][2] = poly_const(1, 1); // norm class to 1, but N(eps(r)) = 0
    REQUIRE_THROWS_AS(validate_tambara_morphism(wrong), Error);
}
