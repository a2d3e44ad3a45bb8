#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "vortexlab/poly.hpp"

namespace vortexlab {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

/// Fraction-free determinant (Bareiss elimination with row pivoting).
/// All intermediate divisions are exact in the polynomial ring, so no
/// rational-function intermediates appear.
inline Poly fraction_free_det(Matrix<Poly> m) {
    std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("determinant of empty matrix");
    Var v = m[0][0].var();
    for (auto& row : m) {
        if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
        for (auto& e : row)
            if (e.var() != v) throw std::invalid_argument("variable tag mismatch in matrix");
    }
    int sign = 1;
    Poly prev(v, Scalar(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return Poly(v);  // singular
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = t.divide_exact(prev);
                if (!q) throw std::logic_error("Bareiss: inexact division");
                m[i][j] = *q;
            }
            m[i][k] = Poly(v);
        }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

/// Pfaffian of an antisymmetric even-dimensional polynomial matrix, by
/// memoized expansion along the first remaining row. Pf(m)^2 = det(m).
inline Poly fraction_free_pfaffian(const Matrix<Poly>& m) {
    std::size_t n = m.size();
    if (n % 2 != 0) throw std::invalid_argument("Pfaffian of odd-dimensional matrix");
    if (n == 0) throw std::invalid_argument("Pfaffian of empty matrix");
    if (n > 8 * sizeof(unsigned) - 2) throw std::invalid_argument("Pfaffian: matrix too large");
    Var v = m[0][0].var();
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("Pfaffian of non-square matrix");
        for (std::size_t j = 0; j < n; ++j)
            if (m[i][j] != -m[j][i])
                throw std::invalid_argument("Pfaffian of non-antisymmetric matrix");
    }
    std::unordered_map<unsigned, Poly> memo;
    auto rec = [&](auto&& self, unsigned mask) -> Poly {
        if (mask == 0) return Poly(v, Scalar(1));
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        unsigned i = 0;
        while (!(mask & (1u << i))) ++i;
        Poly r(v);
        int pos = 0;
        for (unsigned j = i + 1; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            Poly sub = self(self, mask & ~(1u << i) & ~(1u << j));
            Poly term = m[i][j] * sub;
            r = (pos % 2 == 0) ? r + term : r - term;
            ++pos;
        }
        memo.emplace(mask, r);
        return r;
    };
    return rec(rec, (n >= 32 ? ~0u : (1u << n) - 1u));
}

/// Result of an exact linear solve A x = b.
///
/// For underdetermined systems the particular solution sets every free
/// variable to zero and reports their indices. For inconsistent systems
/// the certificate lambda satisfies lambda^T A = 0 and lambda^T b != 0.
struct LinearSolution {
    enum class Status { unique, underdetermined, inconsistent };
    Status status = Status::unique;
    std::vector<Scalar> x;
    std::vector<std::size_t> free_indices;
    std::vector<Scalar> certificate;
    Scalar certificate_value;  // lambda^T b for the inconsistent row
};

inline LinearSolution solve_linear(Matrix<Scalar> a, std::vector<Scalar> b) {
    std::size_t rows = a.size();
    if (b.size() != rows) throw std::invalid_argument("solve_linear: size mismatch");
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    for (auto& r : a)
        if (r.size() != cols) throw std::invalid_argument("solve_linear: ragged matrix");

    // track row operations on an identity block for the certificate
    Matrix<Scalar> lam(rows, std::vector<Scalar>(rows, Scalar(0)));
    for (std::size_t i = 0; i < rows; ++i) lam[i][i] = Scalar(1);

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        std::swap(lam[p], lam[r]);
        Scalar inv = a[r][c].inv();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (auto& l : lam[r]) l *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
            for (std::size_t j = 0; j < rows; ++j) lam[i][j] -= f * lam[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }

    LinearSolution out;
    for (std::size_t i = r; i < rows; ++i) {
        if (!b[i].is_zero()) {
            out.status = LinearSolution::Status::inconsistent;
            out.certificate = lam[i];
            out.certificate_value = b[i];
            return out;
        }
    }
    out.x.assign(cols, Scalar(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) out.x[pivot_col[i]] = b[i];
    if (pivot_col.size() < cols) {
        out.status = LinearSolution::Status::underdetermined;
        std::size_t pi = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (pi < pivot_col.size() && pivot_col[pi] == c)
                ++pi;
            else
                out.free_indices.push_back(c);
        }
    }
    return out;
}

}  // namespace vortexlab
