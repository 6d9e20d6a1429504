#pragma once
// Commutative rings presented by generators with monomial rewrite rules and
// integer-coefficient torsion rules; weighted monomial order, confluence
// checking, additive bases per weight, multiplication matrices.
#include "abgrp.hpp"
#include <functional>
#include <map>
#include <sstream>
#include <string>

namespace eqca {

constexpr int kDefaultDegreeBound = 6;

using Monomial = std::vector<int>; // exponents, indexed by variable
using Poly = std::map<Monomial, Int>;

inline Monomial mono_one(int nvars) { return Monomial(nvars, 0); }
inline Monomial mono_var(int nvars, int i, int e = 1) {
    Monomial m(nvars, 0);
    m[i] = e;
    return m;
}
inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}
inline bool mono_divides(const Monomial& d, const Monomial& m) {
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}
inline Monomial mono_quot(const Monomial& m, const Monomial& d) {
    Monomial q(m.size());
    for (size_t i = 0; i < m.size(); ++i) q[i] = m[i] - d[i];
    return q;
}
inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
    return c;
}
inline bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}
inline bool mono_is_one(const Monomial& m) {
    for (int e : m)
        if (e) return false;
    return true;
}

inline Poly poly_zero() { return {}; }
inline Poly poly_const(int nvars, const Int& c) {
    Poly p;
    if (c != 0) p[mono_one(nvars)] = c;
    return p;
}
inline Poly poly_mono(const Monomial& m, const Int& c = 1) {
    Poly p;
    if (c != 0) p[m] = c;
    return p;
}
inline void poly_add_term(Poly& p, const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end())
        p[m] = c;
    else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}
inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b) poly_add_term(r, m, c);
    return r;
}
inline Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b) poly_add_term(r, m, -c);
    return r;
}
inline Poly poly_scale(const Poly& a, const Int& k) {
    Poly r;
    if (k == 0) return r;
    for (auto& [m, c] : a) r[m] = c * k;
    return r;
}
inline Poly poly_mul_raw(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [m1, c1] : a)
        for (auto& [m2, c2] : b) poly_add_term(r, mono_mul(m1, m2), c1 * c2);
    return r;
}
// reinterpret a polynomial in a ring with extra trailing variables
inline void pad_poly_vars(Poly& p, int nvars) {
    Poly q;
    for (auto& [m, c] : p) {
        Monomial mm = m;
        mm.resize(nvars, 0);
        q[mm] = c;
    }
    p = std::move(q);
}

struct MonoRule {
    Monomial lhs;
    Poly rhs;
};
struct CoefRule {
    Int c0; // c0 * lhs -> rhs
    Monomial lhs;
    Poly rhs;
};

struct RewriteRing {
    std::vector<std::string> var_names;
    std::vector<int> var_weights;
    std::vector<MonoRule> mono_rules;
    std::vector<CoefRule> coef_rules;
    int degree_bound = kDefaultDegreeBound;

    int nvars() const { return int(var_names.size()); }

    int weight(const Monomial& m) const {
        int w = 0;
        for (int i = 0; i < nvars(); ++i) w += m[i] * var_weights[i];
        return w;
    }
    // order: weight first, then exponents compared from the last variable down
    bool mono_less(const Monomial& a, const Monomial& b) const {
        int wa = weight(a), wb = weight(b);
        if (wa != wb) return wa < wb;
        for (int i = nvars() - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
    bool is_homogeneous(const Poly& p, int* w_out = nullptr) const {
        int w = -1;
        for (auto& [m, c] : p) {
            int wm = weight(m);
            if (w == -1) w = wm;
            else if (w != wm) return false;
        }
        if (w_out) *w_out = (w == -1 ? 0 : w);
        return true;
    }

    void check_rules() const {
        for (auto& r : mono_rules) {
            if (int(r.lhs.size()) != nvars()) fail(ErrKind::validation, "rule arity mismatch");
            int wl = weight(r.lhs);
            for (auto& [m, c] : r.rhs) {
                if (weight(m) != wl) fail(ErrKind::validation, "rewrite rule not weight-homogeneous");
                if (!mono_less(m, r.lhs))
                    fail(ErrKind::validation, "rewrite rule does not decrease monomial order");
            }
        }
        for (auto& r : coef_rules) {
            if (r.c0 <= 0) fail(ErrKind::validation, "coefficient rule needs positive modulus");
            int wl = weight(r.lhs);
            for (auto& [m, c] : r.rhs) {
                if (weight(m) != wl) fail(ErrKind::validation, "coefficient rule not weight-homogeneous");
                if (!mono_less(m, r.lhs))
                    fail(ErrKind::validation, "coefficient rule does not decrease monomial order");
            }
            for (auto& r2 : coef_rules)
                if (&r != &r2 && !mono_coprime(r.lhs, r2.lhs))
                    fail(ErrKind::unsupported, "overlapping coefficient rules");
        }
    }

    // reduce by monomial rules only (keeps coefficient-rule rows intact)
    Poly normalize_mono(Poly p) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = p.begin(); it != p.end() && !changed; ++it) {
                if (it->second == 0) {
                    p.erase(it);
                    changed = true;
                    break;
                }
                const Monomial m = it->first;
                for (auto& r : mono_rules)
                    if (mono_divides(r.lhs, m)) {
                        Int c = it->second;
                        Monomial q = mono_quot(m, r.lhs);
                        p.erase(it);
                        for (auto& [rm, rc] : r.rhs) poly_add_term(p, mono_mul(rm, q), rc * c);
                        changed = true;
                        break;
                    }
                if (changed) break; // the iterator is gone; restart the scan
            }
        }
        return p;
    }

    Poly normalize(Poly p) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = p.begin(); it != p.end() && !changed; ++it) {
                if (it->second == 0) {
                    p.erase(it);
                    changed = true;
                    break;
                }
                const Monomial m = it->first;
                for (auto& r : mono_rules)
                    if (mono_divides(r.lhs, m)) {
                        Int c = it->second;
                        Monomial q = mono_quot(m, r.lhs);
                        p.erase(it);
                        for (auto& [rm, rc] : r.rhs) poly_add_term(p, mono_mul(rm, q), rc * c);
                        changed = true;
                        break;
                    }
                if (changed) break;
                for (auto& r : coef_rules)
                    if (mono_divides(r.lhs, m)) {
                        Int c = it->second;
                        // c = c0*k + rem with 0 <= rem < c0
                        Int k = c / r.c0, rem = c % r.c0;
                        if (rem < 0) {
                            rem += r.c0;
                            k -= 1;
                        }
                        if (k != 0) {
                            Monomial q = mono_quot(m, r.lhs);
                            if (rem == 0)
                                p.erase(it);
                            else
                                it->second = rem;
                            for (auto& [rm, rc] : r.rhs) poly_add_term(p, mono_mul(rm, q), rc * k);
                            changed = true;
                            break;
                        }
                    }
                if (changed) break; // the iterator may be gone; restart the scan
            }
        }
        return p;
    }

    Poly mul(const Poly& a, const Poly& b) const { return normalize(poly_mul_raw(a, b)); }
    Poly pow(const Poly& a, int e) const {
        Poly r = poly_const(nvars(), 1);
        for (int i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }
    bool eq(const Poly& a, const Poly& b) const {
        return normalize(poly_sub(a, b)).empty();
    }

    // confluence of critical pairs up to the degree bound
    void check_confluence() const {
        auto reduce_pair = [&](const Poly& p1, const Poly& p2, const std::string& what) {
            if (!eq(p1, p2))
                fail(ErrKind::unsupported, "rewrite system not confluent: " + what);
        };
        for (size_t i = 0; i < mono_rules.size(); ++i)
            for (size_t j = i; j < mono_rules.size(); ++j) {
                if (i == j) continue;
                auto &a = mono_rules[i], &b = mono_rules[j];
                if (mono_coprime(a.lhs, b.lhs)) continue;
                Monomial L = mono_lcm(a.lhs, b.lhs);
                if (weight(L) > degree_bound) continue;
                Poly p1 = normalize(poly_mul_raw(a.rhs, poly_mono(mono_quot(L, a.lhs))));
                Poly p2 = normalize(poly_mul_raw(b.rhs, poly_mono(mono_quot(L, b.lhs))));
                reduce_pair(p1, p2, "mono/mono overlap");
            }
        for (auto& a : mono_rules)
            for (auto& b : coef_rules) {
                if (mono_coprime(a.lhs, b.lhs)) continue;
                Monomial L = mono_lcm(a.lhs, b.lhs);
                if (weight(L) > degree_bound) continue;
                // reduce c0*L by the mono rule first, then normalize
                Poly p1 = normalize(poly_mul_raw(a.rhs, poly_mono(mono_quot(L, a.lhs), b.c0)));
                // reduce by the coefficient rule first
                Poly p2 = normalize(poly_mul_raw(b.rhs, poly_mono(mono_quot(L, b.lhs))));
                reduce_pair(p1, p2, "mono/coefficient overlap");
            }
    }

    void validate() const {
        check_rules();
        check_confluence();
    }

    // --- additive bases per weight ------------------------------------------

    // cap on the exponent of a weight-zero variable, taken from a pure power rule
    int zero_weight_cap(int var) const {
        int cap = -1;
        for (auto& r : mono_rules) {
            bool pure = r.lhs[var] > 0;
            for (int j = 0; j < nvars() && pure; ++j)
                if (j != var && r.lhs[j] > 0) pure = false;
            if (pure) cap = (cap < 0) ? r.lhs[var] - 1 : std::min(cap, r.lhs[var] - 1);
        }
        if (cap < 0)
            fail(ErrKind::unsupported,
                 "weight-zero variable '" + var_names[var] + "' has no power bound");
        return cap;
    }

    bool irreducible(const Monomial& m) const {
        for (auto& r : mono_rules)
            if (mono_divides(r.lhs, m)) return false;
        return true;
    }

    std::vector<Monomial> basis(int w) const {
        std::vector<Monomial> out;
        Monomial cur(nvars(), 0);
        std::function<void(int, int)> rec = [&](int var, int remaining) {
            if (var == nvars()) {
                if (remaining == 0 && irreducible(cur)) out.push_back(cur);
                return;
            }
            int cap;
            if (var_weights[var] > 0)
                cap = remaining / var_weights[var];
            else
                cap = zero_weight_cap(var);
            for (int e = 0; e <= cap; ++e) {
                cur[var] = e;
                rec(var + 1, remaining - e * var_weights[var]);
            }
            cur[var] = 0;
        };
        rec(0, w);
        std::sort(out.begin(), out.end(),
                  [&](const Monomial& a, const Monomial& b) { return mono_less(a, b); });
        return out;
    }

    // additive group of the weight-w slice, with torsion from coefficient rules
    FPAb slice_group(int w) const {
        auto bs = basis(w);
        std::map<Monomial, int> idx;
        for (int i = 0; i < int(bs.size()); ++i) idx[bs[i]] = i;
        std::vector<Vec> rel_rows;
        for (auto& r : coef_rules) {
            int wl = weight(r.lhs);
            if (wl > w) continue;
            for (auto& u : basis(w - wl)) {
                Poly lhs = normalize_mono(poly_mono(mono_mul(r.lhs, u), r.c0));
                Poly rhs = normalize_mono(poly_mul_raw(r.rhs, poly_mono(u)));
                Poly rel = poly_sub(lhs, rhs);
                Vec row(bs.size(), 0);
                bool in_slice = true;
                for (auto& [m, c] : rel) {
                    auto it = idx.find(m);
                    if (it == idx.end()) { in_slice = false; break; }
                    row[it->second] = c;
                }
                if (in_slice && !is_zero(row)) rel_rows.push_back(row);
            }
        }
        FPAb g(int(bs.size()));
        g.rels = Mat::zero(int(rel_rows.size()), int(bs.size()));
        for (int i = 0; i < int(rel_rows.size()); ++i)
            for (int j = 0; j < int(bs.size()); ++j) g.rels.at(i, j) = rel_rows[i][j];
        return g;
    }

    Vec coords(const Poly& p, int w) const {
        auto bs = basis(w);
        std::map<Monomial, int> idx;
        for (int i = 0; i < int(bs.size()); ++i) idx[bs[i]] = i;
        Vec v(bs.size(), 0);
        for (auto& [m, c] : normalize(p)) {
            auto it = idx.find(m);
            if (it == idx.end()) fail(ErrKind::internal, "element not in requested weight slice");
            v[it->second] = c;
        }
        return v;
    }

    Poly from_coords(const Vec& v, int w) const {
        auto bs = basis(w);
        if (v.size() != bs.size()) fail(ErrKind::internal, "slice coordinate size mismatch");
        Poly p;
        for (int i = 0; i < int(bs.size()); ++i) poly_add_term(p, bs[i], v[i]);
        return p;
    }

    // multiplication by a homogeneous element, basis(w_from) -> basis(w_from + wt(s))
    Mat mul_matrix(const Poly& s, int w_from) const {
        int ws = 0;
        if (!is_homogeneous(s, &ws))
            fail(ErrKind::internal, "multiplication matrix needs a homogeneous element");
        auto src = basis(w_from);
        int w_to = w_from + ws;
        auto dst = basis(w_to);
        Mat m = Mat::zero(int(dst.size()), int(src.size()));
        for (int j = 0; j < int(src.size()); ++j) {
            Vec col = coords(mul(s, poly_mono(src[j])), w_to);
            for (int i = 0; i < int(dst.size()); ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    std::string mono_to_string(const Monomial& m) const {
        std::string s;
        for (int i = 0; i < nvars(); ++i) {
            if (!m[i]) continue;
            if (!s.empty()) s += "*";
            s += var_names[i];
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }
    std::string to_string(const Poly& p) const {
        if (p.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // print larger monomials first
        std::vector<std::pair<Monomial, Int>> terms(p.begin(), p.end());
        std::sort(terms.begin(), terms.end(),
                  [&](auto& a, auto& b) { return mono_less(b.first, a.first); });
        for (auto& [m, c] : terms) {
            Int cc = c;
            if (first) {
                if (cc < 0) { os << "-"; cc = -cc; }
            } else {
                os << (cc < 0 ? " - " : " + ");
                if (cc < 0) cc = -cc;
            }
            if (mono_is_one(m)) os << cc;
            else {
                if (cc != 1) os << cc << "*";
                os << mono_to_string(m);
            }
            first = false;
        }
        return os.str();
    }

    int var_index(const std::string& name) const {
        for (int i = 0; i < nvars(); ++i)
            if (var_names[i] == name) return i;
        fail(ErrKind::validation, "unknown variable '" + name + "'");
    }
    Poly var(const std::string& name) const { return poly_mono(mono_var(nvars(), var_index(name))); }
    Poly constant(const Int& c) const { return poly_const(nvars(), c); }
};

// ring homomorphism given by variable images
struct RingMap {
    const RewriteRing* src = nullptr;
    const RewriteRing* dst = nullptr;
    std::vector<Poly> var_images;

    Poly apply(const Poly& p) const {
        Poly out;
        for (auto& [m, c] : p) {
            Poly term = dst->constant(c);
            for (int i = 0; i < src->nvars(); ++i)
                for (int e = 0; e < m[i]; ++e) term = dst->mul(term, var_images[i]);
            out = poly_add(out, term);
        }
        return dst->normalize(out);
    }
    // a ring map must send each rule to a consequence (checked by normalizing)
    void validate() const {
        if (int(var_images.size()) != src->nvars())
            fail(ErrKind::validation, "ring map: wrong number of variable images");
        for (auto& r : src->mono_rules)
            if (!dst->eq(apply(poly_mono(r.lhs)), apply(r.rhs)))
                fail(ErrKind::validation, "ring map does not respect a rewrite rule");
        for (auto& r : src->coef_rules)
            if (!dst->eq(apply(poly_mono(r.lhs, r.c0)), apply(r.rhs)))
                fail(ErrKind::validation, "ring map does not respect a coefficient rule");
    }
};

inline RingMap compose(const RingMap& first, const RingMap& then) {
    if (first.dst != then.src) fail(ErrKind::internal, "ring map composition mismatch");
    RingMap r{first.src, then.dst, {}};
    for (auto& im : first.var_images) r.var_images.push_back(then.apply(im));
    return r;
}

} // namespace eqca
