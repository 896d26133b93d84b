#pragma once

// Elements of SO+(Q_n, Z): integer 4x4 matrices A with A^t Q_n A = Q_n,
// det A = +1 and a44 >= 1 (upper sheet preserved).  Validation happens at
// construction; everything downstream relies on the invariants.
//
// Structural constraints enforced beyond the defining equation, for n | ...:
//   * the first three columns have pseudolength 1, the last has -n,
//     all pairwise orthogonal (equivalent restatement of A^t Q A = Q);
//   * n divides a14, a24, a34 (integrality of the closed-form inverse);
//   * a44^2 = 1 (mod n);
//   * n * (a41^2 + a42^2 + a43^2) = a44^2 - 1 exactly.

#include <map>
#include <stdexcept>
#include <string>

#include "lorentz/arith.hpp"
#include "lorentz/quadform.hpp"

namespace lorentz {

class Isometry {
public:
    /// Validates all invariants; throws std::invalid_argument naming the
    /// first violated one.
    static Isometry from_matrix(const Mat4& m, const Int& n) {
        const Form f(n);
        for (int j = 0; j < 4; ++j) {
            const Int expected = (j < 3) ? Int(1) : Int(-n);
            if (pseudolength(f, m.column(j)) != expected)
                throw std::invalid_argument("Isometry: column " + std::to_string(j + 1) +
                                            " has pseudolength " +
                                            pseudolength(f, m.column(j)).str() +
                                            ", expected " + expected.str());
        }
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (bilinear(f, m.column(j), m.column(k)) != 0)
                    throw std::invalid_argument("Isometry: columns " + std::to_string(j + 1) +
                                                " and " + std::to_string(k + 1) +
                                                " are not orthogonal");
        if (m.at(3, 3) < 1)
            throw std::invalid_argument("Isometry: a44 = " + m.at(3, 3).str() +
                                        " does not preserve the upper sheet");
        if (det4(m) != 1)
            throw std::invalid_argument("Isometry: det = " + det4(m).str() + ", expected +1");
        for (int i = 0; i < 3; ++i)
            if (m.at(i, 3) % n != 0)
                throw std::invalid_argument("Isometry: a" + std::to_string(i + 1) +
                                            "4 not divisible by n");
        if ((m.at(3, 3) * m.at(3, 3) - 1) % n != 0)
            throw std::invalid_argument("Isometry: a44^2 != 1 (mod n)");
        Int bottom = m.at(3, 0) * m.at(3, 0) + m.at(3, 1) * m.at(3, 1) + m.at(3, 2) * m.at(3, 2);
        if (n * bottom != m.at(3, 3) * m.at(3, 3) - 1)
            throw std::invalid_argument("Isometry: bottom-row identity violated");
        return Isometry(m, n);
    }

    static Isometry identity(const Int& n) {
        if (n < 1) throw std::invalid_argument("Isometry: n must be >= 1");
        return Isometry(Mat4::identity(), n);
    }

    const Mat4& matrix() const { return m_; }
    const Int& form_n() const { return n_; }

    /// 1-indexed entry access (a_ij as in the structural facts).
    const Int& entry(int i, int j) const { return m_.at(i - 1, j - 1); }

    /// a44 = cosh of the hyperbolic displacement of the base point.
    const Int& displacement_cosh() const { return m_.at(3, 3); }

    bool is_identity() const { return m_ == Mat4::identity(); }

    /// True iff the right column is (0,0,0,1), i.e. the element fixes the
    /// base point (0,0,0,n^{-1/2}).
    bool fixes_basepoint() const {
        return m_.at(0, 3) == 0 && m_.at(1, 3) == 0 && m_.at(2, 3) == 0 && m_.at(3, 3) == 1;
    }

    /// Exact closed-form inverse  Q_n^{-1} A^t Q_n : transpose the 3x3 block,
    /// negate-and-scale the off entries.  Integral by construction.
    Isometry inverse() const {
        Mat4 r;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) r.at(i, j) = m_.at(j, i);
            r.at(i, 3) = -n_ * m_.at(3, i);
            r.at(3, i) = -m_.at(i, 3) / n_;
        }
        r.at(3, 3) = m_.at(3, 3);
        return Isometry(r, n_);
    }

    friend Isometry multiply(const Isometry& a, const Isometry& b) {
        if (a.n_ != b.n_)
            throw std::invalid_argument("multiply: mismatched forms n = " + a.n_.str() +
                                        " and n = " + b.n_.str());
        return Isometry(a.m_ * b.m_, a.n_);
    }

    friend bool operator==(const Isometry& a, const Isometry& b) {
        return a.n_ == b.n_ && a.m_ == b.m_;
    }
    friend bool operator!=(const Isometry& a, const Isometry& b) { return !(a == b); }
    friend bool operator<(const Isometry& a, const Isometry& b) { return a.m_ < b.m_; }

private:
    // Trusted path: products and inverses of valid elements stay in the group.
    Isometry(Mat4 m, Int n) : m_(std::move(m)), n_(std::move(n)) {}

    Mat4 m_;
    Int n_;
};

struct IsometryHash {
    size_t operator()(const Isometry& g) const { return Mat4Hash{}(g.matrix()); }
};

namespace detail {
inline Mat4 mat4_from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    Mat4 m;
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (int v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}
}  // namespace detail

/// The twelve published generator matrices for n = 7, keyed by their
/// conventional labels.  Each entry passes full validation.
inline const std::map<std::string, Isometry>& paper_catalog() {
    static const std::map<std::string, Isometry> catalog = [] {
        using detail::mat4_from_rows;
        std::map<std::string, Mat4> m;
        m["(12)"] = mat4_from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}});
        m["(1234)"] = mat4_from_rows({{0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}});
        m["A"] = mat4_from_rows({{-2, -2, 0, 7}, {-5, -2, 0, 14}, {0, 0, -1, 0}, {-2, -1, 0, 6}});
        m["A^-1"] = mat4_from_rows({{-2, -5, 0, 14}, {-2, -2, 0, 7}, {0, 0, -1, 0}, {-1, -2, 0, 6}});
        m["B"] = mat4_from_rows({{0, -1, 0, 0}, {-8, 0, 0, 21}, {0, 0, -1, 0}, {-3, 0, 0, 8}});
        m["B^-1"] = mat4_from_rows({{0, -8, 0, 21}, {-1, 0, 0, 0}, {0, 0, -1, 0}, {0, -3, 0, 8}});
        m["C"] = mat4_from_rows({{-4, -3, -2, 14}, {-3, -4, -2, 14}, {-2, -2, 0, 7}, {-2, -2, -1, 8}});
        m["D"] = mat4_from_rows({{-4, -3, -2, 14}, {-9, -4, -4, 28}, {-4, -2, -3, 14}, {-4, -2, -2, 13}});
        m["D^-1"] = mat4_from_rows({{-4, -9, -4, 28}, {-3, -4, -2, 14}, {-2, -4, -3, 14}, {-2, -4, -2, 13}});
        m["E"] = mat4_from_rows({{-7, -8, 0, 28}, {-8, -7, 0, 28}, {0, 0, -1, 0}, {-4, -4, 0, 15}});
        m["F"] = mat4_from_rows({{-10, -12, -10, 49}, {-2, -4, -3, 14}, {-3, -4, -2, 14}, {-4, -5, -4, 20}});
        m["F^-1"] = mat4_from_rows({{-10, -2, -3, 28}, {-12, -4, -4, 35}, {-10, -3, -2, 28}, {-7, -2, -2, 20}});
        std::map<std::string, Isometry> out;
        for (const auto& [name, mat] : m) out.emplace(name, Isometry::from_matrix(mat, 7));
        return out;
    }();
    return catalog;
}

}  // namespace lorentz
