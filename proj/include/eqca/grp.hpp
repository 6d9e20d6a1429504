#pragma once
// Finite groups as multiplication tables: subgroup lattice, conjugacy classes
// of subgroups, normalizers, Weyl cosets, double cosets.
#include "int.hpp"
#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace eqca {

constexpr int kMaxGroupOrder = 24;

struct Subgroup {
    std::vector<int> elems;  // sorted element indices, contains identity
    int class_rep = -1;      // index (into Group::subgroups) of its conjugacy class representative
    int class_id = -1;       // index into Group::classes
};

struct Group {
    int n = 0;
    std::vector<std::vector<int>> mul; // mul[a][b] = a*b
    int e = 0;
    std::vector<int> inv;
    std::string name;

    // subgroup lattice, filled by finalize()
    std::vector<Subgroup> subgroups;           // sorted by (size, elems); index = subgroup id
    std::vector<std::vector<int>> classes;     // conjugacy classes as lists of subgroup ids
    std::vector<int> class_rep_subgroup;       // classes[i] canonical representative subgroup id
    std::vector<int> conjugator_to_rep;        // g with g S g^-1 = rep(S), per subgroup id
    int full_id = -1, triv_id = -1;

    int op(int a, int b) const { return mul[a][b]; }
    int conj(int g, int x) const { return mul[mul[g][x]][inv[g]]; } // g x g^-1

    bool contains(int sub_id, int x) const {
        const auto& v = subgroups[sub_id].elems;
        return std::binary_search(v.begin(), v.end(), x);
    }
    int order_of(int sub_id) const { return int(subgroups[sub_id].elems.size()); }
    int index_of(int sub_id) const { return n / order_of(sub_id); }
    int cls(int sub_id) const { return subgroups[sub_id].class_id; }
    int rep_of_class(int class_id) const { return class_rep_subgroup[class_id]; }
    bool is_canonical(int sub_id) const { return rep_of_class(cls(sub_id)) == sub_id; }

    int conj_subgroup(int g, int sub_id) const {
        std::vector<int> v;
        v.reserve(subgroups[sub_id].elems.size());
        for (int x : subgroups[sub_id].elems) v.push_back(conj(g, x));
        std::sort(v.begin(), v.end());
        return find_subgroup(v);
    }
    int find_subgroup(const std::vector<int>& sorted_elems) const {
        auto it = sub_index.find(sorted_elems);
        if (it == sub_index.end()) fail(ErrKind::internal, "unknown subgroup element set");
        return it->second;
    }
    bool leq(int small, int big) const { // containment of element sets
        for (int x : subgroups[small].elems)
            if (!contains(big, x)) return false;
        return true;
    }
    int intersect(int a, int b) const {
        std::vector<int> v;
        for (int x : subgroups[a].elems)
            if (contains(b, x)) v.push_back(x);
        return find_subgroup(v);
    }
    std::vector<int> normalizer_elems(int sub_id) const {
        std::vector<int> out;
        for (int g = 0; g < n; ++g)
            if (conj_subgroup(g, sub_id) == sub_id) out.push_back(g);
        return out;
    }
    // coset representatives of N_G(S)/S
    std::vector<int> weyl_reps(int sub_id) const {
        std::vector<int> reps;
        std::vector<char> seen(n, 0);
        for (int g : normalizer_elems(sub_id)) {
            if (seen[g]) continue;
            reps.push_back(g);
            for (int s : subgroups[sub_id].elems) seen[mul[g][s]] = 1;
        }
        return reps;
    }
    // left coset representatives of S in H (H a subgroup id, S <= H); for the
    // whole group pass full_id
    std::vector<int> coset_reps(int h_id, int s_id) const {
        std::vector<int> reps;
        std::vector<char> seen(n, 0);
        for (int g : subgroups[h_id].elems) {
            if (seen[g]) continue;
            reps.push_back(g);
            for (int s : subgroups[s_id].elems) seen[mul[g][s]] = 1;
        }
        return reps;
    }
    // representatives g of double cosets Kp \ H / K together with Kp n g K g^-1
    struct DoubleCoset { int rep; int size; int intersection; };
    std::vector<DoubleCoset> double_cosets(int h_id, int kp_id, int k_id) const {
        std::vector<DoubleCoset> out;
        std::vector<char> seen(n, 0);
        for (int g : subgroups[h_id].elems) {
            if (seen[g]) continue;
            int count = 0;
            for (int a : subgroups[kp_id].elems)
                for (int b : subgroups[k_id].elems) {
                    int x = mul[mul[a][g]][b];
                    if (!seen[x]) { seen[x] = 1; ++count; }
                }
            int gKg = conj_subgroup(g, k_id);
            out.push_back({g, count, intersect(kp_id, gKg)});
        }
        return out;
    }
    // subgroup ids contained in the given subgroup
    std::vector<int> subgroups_of(int h_id) const {
        std::vector<int> out;
        for (int s = 0; s < int(subgroups.size()); ++s)
            if (leq(s, h_id)) out.push_back(s);
        return out;
    }
    // maximal proper subgroups of h
    std::vector<int> maximal_subgroups(int h_id) const {
        auto subs = subgroups_of(h_id);
        std::vector<int> out;
        for (int s : subs) {
            if (s == h_id) continue;
            bool maximal = true;
            for (int t : subs)
                if (t != s && t != h_id && leq(s, t) && order_of(t) > order_of(s)) {
                    maximal = false;
                    break;
                }
            if (maximal) out.push_back(s);
        }
        return out;
    }
    // classes of subgroups of h under h-conjugacy: returns {representative ids}
    std::vector<std::vector<int>> conj_classes_within(int h_id) const {
        auto subs = subgroups_of(h_id);
        std::set<int> remaining(subs.begin(), subs.end());
        std::vector<std::vector<int>> out;
        while (!remaining.empty()) {
            int s = *remaining.begin();
            std::vector<int> cls_list;
            for (int g : subgroups[h_id].elems) {
                int s2 = conj_subgroup(g, s);
                if (remaining.count(s2)) {
                    cls_list.push_back(s2);
                    remaining.erase(s2);
                }
            }
            std::sort(cls_list.begin(), cls_list.end());
            out.push_back(cls_list);
        }
        return out;
    }

    std::map<std::vector<int>, int> sub_index;

    void validate() const {
        if (n < 1) fail(ErrKind::validation, "group: empty table");
        if (n > kMaxGroupOrder)
            fail(ErrKind::validation, "group order " + std::to_string(n) +
                                          " exceeds cap " + std::to_string(kMaxGroupOrder));
        if (int(mul.size()) != n) fail(ErrKind::validation, "group: bad table height");
        for (auto& row : mul) {
            if (int(row.size()) != n) fail(ErrKind::validation, "group: bad table width");
            for (int v : row)
                if (v < 0 || v >= n) fail(ErrKind::validation, "group: entry out of range");
        }
        for (int a = 0; a < n; ++a)
            if (mul[e][a] != a || mul[a][e] != a)
                fail(ErrKind::validation, "group: identity law fails");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
                        fail(ErrKind::validation, "group: associativity fails");
        for (int a = 0; a < n; ++a)
            if (mul[a][inv[a]] != e || mul[inv[a]][a] != e)
                fail(ErrKind::validation, "group: inverse law fails");
    }

    void finalize() {
        validate();
        // enumerate all subgroups by closing generator sets (BFS over extensions)
        std::set<std::vector<int>> found;
        std::vector<std::vector<int>> queue;
        auto close = [&](std::vector<int> gens) {
            std::set<int> s(gens.begin(), gens.end());
            s.insert(e);
            bool grew = true;
            while (grew) {
                grew = false;
                std::vector<int> cur(s.begin(), s.end());
                for (int a : cur)
                    for (int b : cur)
                        if (!s.count(mul[a][b])) { s.insert(mul[a][b]); grew = true; }
            }
            return std::vector<int>(s.begin(), s.end());
        };
        auto triv = close({});
        found.insert(triv);
        queue.push_back(triv);
        while (!queue.empty()) {
            auto base = queue.back();
            queue.pop_back();
            for (int g = 0; g < n; ++g) {
                if (std::binary_search(base.begin(), base.end(), g)) continue;
                auto ext = base;
                ext.push_back(g);
                auto cl = close(ext);
                if (found.insert(cl).second) queue.push_back(cl);
            }
        }
        subgroups.clear();
        for (auto& s : found) subgroups.push_back({s, -1, -1});
        std::sort(subgroups.begin(), subgroups.end(), [](const Subgroup& a, const Subgroup& b) {
            if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
            return a.elems < b.elems;
        });
        sub_index.clear();
        for (int i = 0; i < int(subgroups.size()); ++i) sub_index[subgroups[i].elems] = i;
        triv_id = sub_index.at(std::vector<int>{e});
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        full_id = sub_index.at(all);

        // conjugacy classes; canonical representative = lexicographically least element set
        classes.clear();
        class_rep_subgroup.clear();
        conjugator_to_rep.assign(subgroups.size(), e);
        std::vector<char> assigned(subgroups.size(), 0);
        for (int s = 0; s < int(subgroups.size()); ++s) {
            if (assigned[s]) continue;
            std::vector<int> cls_list;
            for (int g = 0; g < n; ++g) {
                int s2 = conj_subgroup(g, s);
                if (!assigned[s2]) { assigned[s2] = 1; cls_list.push_back(s2); }
            }
            std::sort(cls_list.begin(), cls_list.end());
            int rep = cls_list.front(); // least id = lexicographically least elems at this size
            int cid = int(classes.size());
            classes.push_back(cls_list);
            class_rep_subgroup.push_back(rep);
            for (int m : cls_list) {
                subgroups[m].class_rep = rep;
                subgroups[m].class_id = cid;
            }
        }
        // chosen conjugators g: g S g^-1 = rep (identity on representatives)
        for (int s = 0; s < int(subgroups.size()); ++s) {
            int rep = subgroups[s].class_rep;
            for (int g = 0; g < n; ++g)
                if (conj_subgroup(g, s) == rep) { conjugator_to_rep[s] = g; break; }
        }
    }
};

inline Group cyclic_group(int m, const std::string& name = "") {
    Group g;
    g.n = m;
    g.e = 0;
    g.name = name.empty() ? "C" + std::to_string(m) : name;
    g.mul.assign(m, std::vector<int>(m));
    g.inv.assign(m, 0);
    for (int a = 0; a < m; ++a) {
        g.inv[a] = (m - a) % m;
        for (int b = 0; b < m; ++b) g.mul[a][b] = (a + b) % m;
    }
    g.finalize();
    return g;
}

inline Group trivial_group() { return cyclic_group(1, "e"); }

inline Group product_group(const Group& a, const Group& b, const std::string& name) {
    Group g;
    g.n = a.n * b.n;
    g.e = a.e * b.n + b.e;
    g.name = name;
    g.mul.assign(g.n, std::vector<int>(g.n));
    g.inv.assign(g.n, 0);
    for (int x = 0; x < g.n; ++x) {
        int x1 = x / b.n, x2 = x % b.n;
        g.inv[x] = a.inv[x1] * b.n + b.inv[x2];
        for (int y = 0; y < g.n; ++y) {
            int y1 = y / b.n, y2 = y % b.n;
            g.mul[x][y] = a.mul[x1][y1] * b.n + b.mul[x2][y2];
        }
    }
    g.finalize();
    return g;
}

inline Group klein_four() {
    return product_group(cyclic_group(2), cyclic_group(2), "K4");
}

// S3 as permutations of {0,1,2} in lexicographic one-line order.
inline Group symmetric3() {
    Group g;
    g.n = 6;
    g.name = "S3";
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p); while (std::next_permutation(p.begin(), p.end()));
    auto find = [&](const std::array<int, 3>& q) {
        for (int i = 0; i < 6; ++i)
            if (perms[i] == q) return i;
        return -1;
    };
    g.e = find({0, 1, 2});
    g.mul.assign(6, std::vector<int>(6));
    g.inv.assign(6, 0);
    for (int i = 0; i < 6; ++i) {
        std::array<int, 3> q{};
        for (int k = 0; k < 3; ++k) q[perms[i][k]] = k;
        g.inv[i] = find(q);
        for (int j = 0; j < 6; ++j) {
            std::array<int, 3> r{};
            for (int k = 0; k < 3; ++k) r[k] = perms[i][perms[j][k]]; // (i after j)
            g.mul[i][j] = find(r);
        }
    }
    g.finalize();
    return g;
}

} // namespace eqca
