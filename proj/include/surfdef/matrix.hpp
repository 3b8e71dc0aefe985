#pragma once

#include "surfdef/factor.hpp"
#include "surfdef/unipoly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sd {

template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, K(0)) {}
    Matrix(std::size_t r, std::size_t c, std::vector<K> data) : r_(r), c_(c), a_(std::move(data)) {
        if (a_.size() != r * c) throw MathError("matrix data size mismatch");
    }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.c_) throw MathError("ragged matrix rows");
            for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    K& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<K>& data() const { return a_; }

    std::vector<K> column(std::size_t j) const {
        std::vector<K> v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_column(std::size_t j, const std::vector<K>& v) {
        for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
    }
    Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }
    void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
        for (std::size_t i = 0; i < b.r_; ++i)
            for (std::size_t j = 0; j < b.c_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }
    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix m(idx.size(), c_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(idx[i], j);
        return m;
    }
    Matrix hcat(const Matrix& o) const {
        if (o.r_ != r_) throw MathError("hcat row mismatch");
        Matrix m(r_, c_ + o.c_);
        m.set_block(0, 0, *this);
        m.set_block(0, c_, o);
        return m;
    }
    Matrix vcat(const Matrix& o) const {
        if (o.c_ != c_) throw MathError("vcat column mismatch");
        Matrix m(r_ + o.r_, c_);
        m.set_block(0, 0, *this);
        m.set_block(r_, 0, o);
        return m;
    }
    Matrix transpose() const {
        Matrix m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    template <class F>
    auto map(F f) const -> Matrix<decltype(f(std::declval<K>()))> {
        using T = decltype(f(std::declval<K>()));
        Matrix<T> m(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        Matrix m = a;
        for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = m.a_[k] + b.a_[k];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        Matrix m = a;
        for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = m.a_[k] - b.a_[k];
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw MathError("matrix product dimension mismatch");
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const K& x = a(i, k);
                if (is_zero(x)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) = m(i, j) + x * b(k, j);
            }
        return m;
    }
    Matrix scaled(const K& s) const {
        Matrix m = *this;
        for (auto& x : m.a_) x = x * s;
        return m;
    }
    std::vector<K> apply(const std::vector<K>& v) const {
        if (v.size() != c_) throw MathError("matrix-vector dimension mismatch");
        std::vector<K> out(r_, K(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) return false;
        for (std::size_t k = 0; k < a.a_.size(); ++k)
            if (!is_zero(a.a_[k] - b.a_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
    bool is_zero_matrix() const {
        for (const auto& x : a_)
            if (!is_zero(x)) return false;
        return true;
    }
    Matrix pow(unsigned e) const {
        Matrix r = identity(r_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    // "rows cols field" header, then one row per line, entries separated by " ; "
    std::string serialize(const std::string& field) const {
        std::string s = std::to_string(r_) + " " + std::to_string(c_) + " " + field + "\n";
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < c_; ++j) {
                if (j) s += " ; ";
                s += to_string((*this)(i, j));
            }
            s += "\n";
        }
        return s;
    }

private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw MathError("matrix dimension mismatch");
    }
    std::size_t r_ = 0, c_ = 0;
    std::vector<K> a_;
};

// Reduced row echelon form with first-nonzero pivoting; returns pivot columns.
template <class K>
std::vector<std::size_t> rref_inplace(Matrix<K>& m) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        K inv = K(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            K f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (!is_zero(m(row, j))) m(i, j) = m(i, j) - f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

template <class K>
std::size_t rank(Matrix<K> m) {
    return rref_inplace(m).size();
}

template <class K>
std::vector<std::vector<K>> kernel_basis(Matrix<K> m) {
    auto piv = rref_inplace(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<K> v(m.cols(), K(0));
        v[f] = K(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves M X = B (B may have several columns). Returns none if inconsistent;
// free variables are set to zero.
template <class K>
std::optional<Matrix<K>> solve(const Matrix<K>& m, const Matrix<K>& b) {
    if (b.rows() != m.rows()) throw MathError("solve: row mismatch");
    Matrix<K> aug = m.hcat(b);
    auto piv = rref_inplace(aug);
    for (auto c : piv)
        if (c >= m.cols()) return std::nullopt;
    Matrix<K> x(m.cols(), b.cols());
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(r, m.cols() + j);
    return x;
}

template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& m, const std::vector<K>& b) {
    Matrix<K> bm(b.size(), 1, b);
    auto x = solve(m, bm);
    if (!x) return std::nullopt;
    return x->column(0);
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw MathError("inverse of non-square matrix");
    Matrix<K> aug = m.hcat(Matrix<K>::identity(m.rows()));
    auto piv = rref_inplace(aug);
    if (piv.size() < m.rows() || piv.back() >= m.cols()) return std::nullopt;
    return aug.block(0, m.cols(), m.rows(), m.cols());
}

template <class K>
K determinant(Matrix<K> m) {
    if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
    K det(1);
    std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m(p, c))) ++p;
        if (p == n) return K(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det = det * m(c, c);
        K inv = K(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c))) continue;
            K f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
        }
    }
    return det;
}

// det(xI - M) by fraction-free (Bareiss) elimination over K[x].
template <class K>
UniPoly<K> charpoly(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw MathError("charpoly of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return UniPoly<K>(1);
    std::vector<UniPoly<K>> a(n * n);
    auto at = [&](std::size_t i, std::size_t j) -> UniPoly<K>& { return a[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            at(i, j) = UniPoly<K>(-m(i, j));
            if (i == j) at(i, j) += UniPoly<K>::x();
        }
    bool neg = false;
    UniPoly<K> prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && at(p, k).is_zero()) ++p;
            if (p == n) return UniPoly<K>();
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                UniPoly<K> t = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                at(i, j) = t.exact_div(prev);
            }
            at(i, k) = UniPoly<K>();
        }
        prev = at(k, k);
    }
    UniPoly<K> d = at(n - 1, n - 1);
    return neg ? -d : d;
}

struct JordanBlocks {
    QPoly factor;
    std::vector<int> sizes; // descending
};
using JordanStructure = std::vector<JordanBlocks>;

inline Matrix<Rational> poly_of_matrix(const QPoly& p, const Matrix<Rational>& m) {
    Matrix<Rational> acc(m.rows(), m.cols());
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * m;
        for (std::size_t k = 0; k < m.rows(); ++k) acc(k, k) += p.coeff(static_cast<std::size_t>(i));
    }
    return acc;
}

// Block sizes for each irreducible factor from the rank sequence of p(M)^k.
inline JordanStructure jordan_structure(const Matrix<Rational>& m) {
    JordanStructure out;
    Factorization f = factor_over_Q(charpoly(m));
    std::size_t n = m.rows();
    for (const auto& [p, mult] : f.factors) {
        int d = p.degree();
        Matrix<Rational> pm = poly_of_matrix(p, m), cur = Matrix<Rational>::identity(n);
        // r[k] = rank p(M)^k
        std::vector<long> r{static_cast<long>(n)};
        for (int k = 1; k <= mult; ++k) {
            cur = cur * pm;
            r.push_back(static_cast<long>(rank(cur)));
            if (r.back() == r[r.size() - 2]) break;
        }
        while (static_cast<int>(r.size()) <= mult + 1) r.push_back(r.back());
        // number of blocks of size >= k is (r[k-1] - r[k]) / d
        std::vector<int> sizes;
        for (int k = 1; k <= mult; ++k) {
            long ge_k = (r[k - 1] - r[k]) / d;
            long ge_k1 = (r[k] - r[k + 1]) / d;
            for (long c = 0; c < ge_k - ge_k1; ++c) sizes.push_back(k);
        }
        std::sort(sizes.rbegin(), sizes.rend());
        out.push_back({p, sizes});
    }
    return out;
}

} // namespace sd
