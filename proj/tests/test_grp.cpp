#include <catch2/catch_amalgamated.hpp>
#include <eqca/grp.hpp>

using namespace eqca;

TEST_CASE("cyclic group tables are valid and have the right subgroup count") {
    auto c2 = cyclic_group(2);
    REQUIRE(c2.subgroups.size() == 2);
    REQUIRE(c2.classes.size() == 2);
    REQUIRE(c2.triv_id != c2.full_id);

    auto c4 = cyclic_group(4);
    REQUIRE(c4.subgroups.size() == 3); // e < C2 < C4
    REQUIRE(c4.classes.size() == 3);   // abelian: every subgroup its own class
    // chain ordering by size
    REQUIRE(c4.order_of(0) == 1);
    REQUIRE(c4.order_of(1) == 2);
    REQUIRE(c4.order_of(2) == 4);
    REQUIRE(c4.leq(0, 1));
    REQUIRE(c4.leq(1, 2));

    auto c6 = cyclic_group(6);
    REQUIRE(c6.subgroups.size() == 4); // 1,2,3,6
}

TEST_CASE("klein four group has five subgroups") {
    auto k4 = klein_four();
    REQUIRE(k4.n == 4);
    REQUIRE(k4.subgroups.size() == 5); // e, three C2s, K4
    REQUIRE(k4.classes.size() == 5);   // abelian
    for (int s = 0; s < 5; ++s) REQUIRE(k4.is_canonical(s));
}

TEST_CASE("S3 subgroup lattice: six subgroups in four classes") {
    auto s3 = symmetric3();
    REQUIRE(s3.n == 6);
    REQUIRE(s3.subgroups.size() == 6); // e, three C2, A3, S3
    REQUIRE(s3.classes.size() == 4);
    // class sizes: {e}:1, C2s:3, A3:1, S3:1
    std::vector<int> class_sizes;
    for (auto& c : s3.classes) class_sizes.push_back(int(c.size()));
    std::sort(class_sizes.begin(), class_sizes.end());
    REQUIRE(class_sizes == std::vector<int>{1, 1, 1, 3});
    // canonical representative of the order-2 class is the lexicographically
    // least element set among the three
    int rep2 = -1;
    for (int c = 0; c < 4; ++c) {
        int r = s3.rep_of_class(c);
        if (s3.order_of(r) == 2) rep2 = r;
    }
    REQUIRE(rep2 >= 0);
    for (int s = 0; s < 6; ++s)
        if (s3.order_of(s) == 2) REQUIRE(s3.subgroups[rep2].elems <= s3.subgroups[s].elems);
    // conjugators actually work
    for (int s = 0; s < 6; ++s) {
        int g = s3.conjugator_to_rep[s];
        REQUIRE(s3.conj_subgroup(g, s) == s3.subgroups[s].class_rep);
    }
}

TEST_CASE("normalizers and Weyl cosets") {
    auto s3 = symmetric3();
    for (int s = 0; s < 6; ++s) {
        auto nm = s3.normalizer_elems(s);
        int order = s3.order_of(s);
        auto w = s3.weyl_reps(s);
        REQUIRE(int(nm.size()) % order == 0);
        REQUIRE(int(w.size()) == int(nm.size()) / order);
        if (order == 2) REQUIRE(w.size() == 1);  // N(C2)=C2 in S3
        if (order == 3) REQUIRE(w.size() == 2);  // A3 normal, Weyl C2
    }
    auto c4 = cyclic_group(4);
    for (int s = 0; s < 3; ++s)
        REQUIRE(int(c4.weyl_reps(s).size()) == 4 / c4.order_of(s));
}

TEST_CASE("double cosets: counts and partition invariant") {
    auto s3 = symmetric3();
    // K' = K = e: |e\G/e| = |G|
    auto dc = s3.double_cosets(s3.full_id, s3.triv_id, s3.triv_id);
    REQUIRE(dc.size() == 6);
    // K' = K = G: one double coset
    dc = s3.double_cosets(s3.full_id, s3.full_id, s3.full_id);
    REQUIRE(dc.size() == 1);
    REQUIRE(dc[0].size == 6);
    // order-2 against order-2: 2 double cosets (sizes 2 and 4)
    int h2 = -1;
    for (int s = 0; s < 6; ++s)
        if (s3.order_of(s) == 2) { h2 = s; break; }
    dc = s3.double_cosets(s3.full_id, h2, h2);
    REQUIRE(dc.size() == 2);
    std::vector<int> sizes{dc[0].size, dc[1].size};
    std::sort(sizes.begin(), sizes.end());
    REQUIRE(sizes == std::vector<int>{2, 4});
    // partition: sizes sum to |G| for every pair
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int total = 0;
            for (auto& d : s3.double_cosets(s3.full_id, a, b)) total += d.size;
            REQUIRE(total == 6);
        }
    // relative version partitions |H|
    for (int h = 0; h < 6; ++h) {
        auto subs = s3.subgroups_of(h);
        for (int a : subs)
            for (int b : subs) {
                int total = 0;
                for (auto& d : s3.double_cosets(h, a, b)) total += d.size;
                REQUIRE(total == s3.order_of(h));
            }
    }
}

TEST_CASE("intersections and maximal subgroups") {
    auto c4 = cyclic_group(4);
    auto mx = c4.maximal_subgroups(c4.full_id);
    REQUIRE(mx.size() == 1);
    REQUIRE(c4.order_of(mx[0]) == 2);

    auto s3 = symmetric3();
    mx = s3.maximal_subgroups(s3.full_id);
    REQUIRE(mx.size() == 4); // three C2s and A3
    auto k4 = klein_four();
    mx = k4.maximal_subgroups(k4.full_id);
    REQUIRE(mx.size() == 3);
    // intersection of two distinct C2s in K4 is trivial
    std::vector<int> c2s;
    for (int s = 0; s < 5; ++s)
        if (k4.order_of(s) == 2) c2s.push_back(s);
    REQUIRE(k4.intersect(c2s[0], c2s[1]) == k4.triv_id);
}

TEST_CASE("conjugacy classes within a subgroup") {
    auto s3 = symmetric3();
    // within A3 (order 3): subgroups e and A3, each its own class
    int a3 = -1;
    for (int s = 0; s < 6; ++s)
        if (s3.order_of(s) == 3) a3 = s;
    auto cw = s3.conj_classes_within(a3);
    REQUIRE(cw.size() == 2);
    // within S3 itself: matches global classes (4)
    REQUIRE(s3.conj_classes_within(s3.full_id).size() == 4);
}

TEST_CASE("order cap is enforced with a validation error") {
    bool threw = false;
    try {
        cyclic_group(25);
    } catch (const Error& err) {
        threw = (err.kind == ErrKind::validation);
    }
    REQUIRE(threw);
    // 24 itself is fine
    auto c24 = cyclic_group(24);
    REQUIRE(c24.subgroups.size() == 8); // divisors of 24
}

TEST_CASE("coset representatives cover without overlap") {
    auto s3 = symmetric3();
    for (int h = 0; h < 6; ++h)
        for (int s : s3.subgroups_of(h)) {
            auto reps = s3.coset_reps(h, s);
            REQUIRE(int(reps.size()) == s3.order_of(h) / s3.order_of(s));
            std::set<int> covered;
            for (int r : reps)
                for (int x : s3.subgroups[s].elems) covered.insert(s3.mul[r][x]);
            REQUIRE(int(covered.size()) == s3.order_of(h));
        }
}
