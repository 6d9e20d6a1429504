#pragma once
// Arbitrary-precision integer substrate and common error type.
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqca {

using Int = boost::multiprecision::cpp_int;

enum class ErrKind { validation, unsupported, resource_cap, internal };

struct Error : std::runtime_error {
    ErrKind kind;
    Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a); b = abs_int(b);
    while (b != 0) { Int r = a % b; a = b; b = r; }
    return a;
}

// Binomial coefficient C(c, k) for arbitrary integer c, k >= 0.
inline Int binomial(const Int& c, int k) {
    Int num = 1;
    for (int i = 0; i < k; ++i) num *= (c - i);
    Int den = 1;
    for (int i = 2; i <= k; ++i) den *= i;
    return num / den;
}

using Vec = std::vector<Int>;

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec operator*(const Int& c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}
inline bool is_zero(const Vec& a) {
    for (auto& x : a) if (x != 0) return false;
    return true;
}

} // namespace eqca
