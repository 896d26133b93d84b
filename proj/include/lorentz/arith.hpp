#pragma once

// Exact arithmetic primitives shared across the library: arbitrary-precision
// integers/rationals, 4-vectors, and 4x4 integer matrices.

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace lorentz {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using Vec4 = std::array<Int, 4>;
using Vec3 = std::array<Int, 3>;
using Vec3R = std::array<Rat, 3>;

/// Floor of the square root of a nonnegative integer.
inline Int isqrt(const Int& x) {
    if (x < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(x);
}

inline bool is_perfect_square(const Int& x, Int& root) {
    if (x < 0) return false;
    root = isqrt(x);
    return root * root == x;
}

/// Row-major 4x4 integer matrix.
struct Mat4 {
    std::array<Int, 16> e{};

    Int& at(int i, int j) { return e[static_cast<size_t>(4 * i + j)]; }
    const Int& at(int i, int j) const { return e[static_cast<size_t>(4 * i + j)]; }

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m.at(i, i) = 1;
        return m;
    }

    Mat4 transposed() const {
        Mat4 t;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t.at(i, j) = at(j, i);
        return t;
    }

    Vec4 column(int j) const { return {at(0, j), at(1, j), at(2, j), at(3, j)}; }
    Vec4 row(int i) const { return {at(i, 0), at(i, 1), at(i, 2), at(i, 3)}; }

    friend Mat4 operator*(const Mat4& a, const Mat4& b) {
        Mat4 c;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Int s = 0;
                for (int k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j);
                c.at(i, j) = std::move(s);
            }
        return c;
    }

    friend bool operator==(const Mat4& a, const Mat4& b) { return a.e == b.e; }
    friend bool operator!=(const Mat4& a, const Mat4& b) { return !(a == b); }
    // Lexicographic on row-major entries; total order used for dedup and
    // canonical forms.
    friend bool operator<(const Mat4& a, const Mat4& b) { return a.e < b.e; }
};

inline Int det3(const Int& a, const Int& b, const Int& c,
                const Int& d, const Int& e, const Int& f,
                const Int& g, const Int& h, const Int& i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

inline Int det4(const Mat4& m) {
    Int s = 0;
    for (int j = 0; j < 4; ++j) {
        std::array<Int, 9> minor;
        int k = 0;
        for (int r = 1; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (c != j) minor[static_cast<size_t>(k++)] = m.at(r, c);
        Int d = det3(minor[0], minor[1], minor[2], minor[3], minor[4], minor[5],
                     minor[6], minor[7], minor[8]);
        if (j % 2 == 0)
            s += m.at(0, j) * d;
        else
            s -= m.at(0, j) * d;
    }
    return s;
}

struct Mat4Hash {
    size_t operator()(const Mat4& m) const {
        size_t seed = 0;
        for (const Int& v : m.e) boost::hash_combine(seed, v);
        return seed;
    }
};

inline std::string to_string(const Mat4& m) {
    std::string s = "[";
    for (int i = 0; i < 4; ++i) {
        s += i ? "; " : "";
        for (int j = 0; j < 4; ++j) {
            s += j ? " " : "";
            s += m.at(i, j).str();
        }
    }
    return s + "]";
}

}  // namespace lorentz
