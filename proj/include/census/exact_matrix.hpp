// Exact unimodular 2x2 matrices over the integers, the carrier of group
// elements during ball enumeration. Entries are overflow-checked int64 by
// default; BigMatrix2 is the escalation backend with the same interface.
// Matrices are kept in a canonical projective form: the first nonzero
// entry in row-major order is positive, so matrix equality is equality
// of isometries in PSL(2,Z).
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "census/bigint.hpp"

namespace census {

struct OverflowError : std::runtime_error {
    OverflowError() : std::runtime_error("64-bit overflow in exact matrix arithmetic") {}
};

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw OverflowError();
    return r;
}

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw OverflowError();
    return r;
}

namespace detail {
inline std::int64_t mat_add(std::int64_t x, std::int64_t y) { return checked_add(x, y); }
inline std::int64_t mat_mul(std::int64_t x, std::int64_t y) { return checked_mul(x, y); }
inline BigInt mat_add(const BigInt& x, const BigInt& y) { return x + y; }
inline BigInt mat_mul(const BigInt& x, const BigInt& y) { return x * y; }
inline bool is_neg(std::int64_t x) { return x < 0; }
inline bool is_neg(const BigInt& x) { return x.sign() < 0; }
inline bool is_zero(std::int64_t x) { return x == 0; }
inline bool is_zero(const BigInt& x) { return x.is_zero(); }
inline double entry_to_double(std::int64_t x) { return static_cast<double>(x); }
inline double entry_to_double(const BigInt& x) { return x.to_double(); }
inline std::size_t entry_hash(std::int64_t x) { return std::hash<std::int64_t>{}(x); }
inline std::size_t entry_hash(const BigInt& x) { return x.hash(); }
}  // namespace detail

template <class I>
struct Matrix2 {
    I a{}, b{}, c{}, d{};

    static Matrix2 identity() { return {I(1), I(0), I(0), I(1)}; }

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        using namespace detail;
        return Matrix2{mat_add(mat_mul(x.a, y.a), mat_mul(x.b, y.c)),
                       mat_add(mat_mul(x.a, y.b), mat_mul(x.b, y.d)),
                       mat_add(mat_mul(x.c, y.a), mat_mul(x.d, y.c)),
                       mat_add(mat_mul(x.c, y.b), mat_mul(x.d, y.d))}
            .canonical();
    }

    // adjugate; inverse when det = 1
    Matrix2 inverse() const { return Matrix2{d, -b, -c, a}.canonical(); }

    I det() const {
        using namespace detail;
        return mat_add(mat_mul(a, d), -mat_mul(b, c));
    }

    I trace() const { return detail::mat_add(a, d); }

    bool is_identity() const {
        using namespace detail;
        return *this == identity().canonical();
    }

    // projective normal form: first nonzero of (a,b,c,d) positive
    Matrix2 canonical() const {
        using namespace detail;
        const I* entries[4] = {&a, &b, &c, &d};
        for (const I* e : entries) {
            if (is_zero(*e)) continue;
            if (is_neg(*e)) return Matrix2{-a, -b, -c, -d};
            break;
        }
        return *this;
    }

    friend bool operator==(const Matrix2& x, const Matrix2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Matrix2& x, const Matrix2& y) { return !(x == y); }
    friend bool operator<(const Matrix2& x, const Matrix2& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.c != y.c) return x.c < y.c;
        return x.d < y.d;
    }

    // Frobenius norm squared, as a double; 2 cosh d(i, g i) for unimodular g
    double frobenius2() const {
        using namespace detail;
        double da = entry_to_double(a), db = entry_to_double(b);
        double dc = entry_to_double(c), dd = entry_to_double(d);
        return da * da + db * db + dc * dc + dd * dd;
    }

    std::size_t hash() const {
        using namespace detail;
        std::size_t h = entry_hash(a);
        h = h * 0x9e3779b97f4a7c15ull + entry_hash(b);
        h = h * 0x9e3779b97f4a7c15ull + entry_hash(c);
        h = h * 0x9e3779b97f4a7c15ull + entry_hash(d);
        return h;
    }
};

using ExactIsometry2 = Matrix2<std::int64_t>;
using BigIsometry2 = Matrix2<BigInt>;

inline ExactIsometry2 make_exact(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    ExactIsometry2 m{a, b, c, d};
    if (m.det() != 1) throw std::invalid_argument("matrix must be unimodular (det = 1)");
    return m.canonical();
}

inline BigIsometry2 to_big(const ExactIsometry2& m) {
    return BigIsometry2{BigInt(m.a), BigInt(m.b), BigInt(m.c), BigInt(m.d)};
}

inline bool fits_exact(const BigIsometry2& m) {
    return m.a.fits_int64() && m.b.fits_int64() && m.c.fits_int64() && m.d.fits_int64();
}

inline ExactIsometry2 to_exact(const BigIsometry2& m) {
    if (!fits_exact(m)) throw OverflowError();
    return ExactIsometry2{m.a.to_int64(), m.b.to_int64(), m.c.to_int64(), m.d.to_int64()};
}

template <class I>
struct Matrix2Hash {
    std::size_t operator()(const Matrix2<I>& m) const { return m.hash(); }
};

}  // namespace census
