#pragma once

// Dense exact linear algebra over GF(p).
//
// Column j of a matrix holds the image of the j-th basis vector. Tensor bases
// are ordered first-factor-major: e_a (x) f_b sits at index a * dim(F) + b.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "jordan/errors.hpp"
#include "jordan/partitions.hpp"

namespace jordan {

class PrimeFieldMatrix {
public:
    PrimeFieldMatrix(std::size_t rows, std::size_t cols, PrimeChar p)
        : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

    static PrimeFieldMatrix identity(std::size_t n, PrimeChar p) {
        PrimeFieldMatrix m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Builds from row-major integer rows, reducing every entry mod p.
    static PrimeFieldMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, PrimeChar p) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.front().size() : 0;
        PrimeFieldMatrix m(r, c, p);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw DomainError("ragged row list");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = p.reduce(rows[i][j]);
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] PrimeChar modulus() const noexcept { return p_; }

    Residue& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    Residue operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    /// Stores `v` reduced mod p.
    void set(std::size_t i, std::size_t j, std::int64_t v) { (*this)(i, j) = p_.reduce(v); }

    [[nodiscard]] std::span<const Residue> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::vector<Residue> column(std::size_t j) const {
        std::vector<Residue> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    [[nodiscard]] bool is_zero() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
    }

    [[nodiscard]] PrimeFieldMatrix transpose() const {
        PrimeFieldMatrix t(cols_, rows_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend PrimeFieldMatrix operator+(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
        a.require_same_shape(b);
        PrimeFieldMatrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.p_.add(a.data_[k], b.data_[k]);
        return c;
    }
    friend PrimeFieldMatrix operator-(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
        a.require_same_shape(b);
        PrimeFieldMatrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.p_.sub(a.data_[k], b.data_[k]);
        return c;
    }
    friend PrimeFieldMatrix operator*(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
        if (!(a.p_ == b.p_)) throw DomainError("modulus mismatch in matrix product");
        if (a.cols_ != b.rows_) throw DomainError("shape mismatch in matrix product");
        PrimeFieldMatrix c(a.rows_, b.cols_, a.p_);
        const std::uint64_t p = a.p_;
        std::vector<std::uint64_t> acc(b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                std::uint64_t aik = a(i, k);
                if (aik == 0) continue;
                const Residue* brow = b.data_.data() + k * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = static_cast<Residue>(acc[j]);
        }
        return c;
    }

    /// Matrix-vector product.
    [[nodiscard]] std::vector<Residue> apply(std::span<const Residue> v) const {
        if (v.size() != cols_) throw DomainError("shape mismatch in matrix-vector product");
        std::vector<Residue> out(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint64_t acc = 0;
            const Residue* r = data_.data() + i * cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (r[j] && v[j]) acc = (acc + std::uint64_t{r[j]} * v[j]) % p_;
            }
            out[i] = static_cast<Residue>(acc);
        }
        return out;
    }

    [[nodiscard]] PrimeFieldMatrix pow(std::size_t e) const {
        require_square("pow");
        PrimeFieldMatrix result = identity(rows_, p_);
        PrimeFieldMatrix base = *this;
        while (e) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    friend bool operator==(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const PrimeFieldMatrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << '[';
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
            os << "]\n";
        }
        return os;
    }

    void require_square(const char* what) const {
        if (!square()) throw DomainError(std::string(what) + " needs a square matrix");
    }

private:
    void require_same_shape(const PrimeFieldMatrix& b) const {
        if (!(p_ == b.p_)) throw DomainError("modulus mismatch");
        if (rows_ != b.rows_ || cols_ != b.cols_) throw DomainError("shape mismatch");
    }

    std::size_t rows_;
    std::size_t cols_;
    PrimeChar p_;
    std::vector<Residue> data_;
};

// --- Gaussian elimination ---------------------------------------------------

/// In-place reduction of a list of vectors (all of equal length) to an
/// echelon basis of their span. Pivots are taken at the lowest coordinate
/// index available. Returns the pivot column of each surviving vector.
inline std::vector<std::size_t> echelonize(std::vector<std::vector<Residue>>& vecs, PrimeChar p) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    const std::size_t width = vecs.empty() ? 0 : vecs.front().size();
    for (std::size_t col = 0; col < width && rank < vecs.size(); ++col) {
        std::size_t sel = rank;
        while (sel < vecs.size() && vecs[sel][col] == 0) ++sel;
        if (sel == vecs.size()) continue;
        std::swap(vecs[rank], vecs[sel]);
        auto& piv = vecs[rank];
        Residue inv = p.inv(piv[col]);
        for (std::size_t j = col; j < width; ++j) piv[j] = p.mul(piv[j], inv);
        for (std::size_t r = rank + 1; r < vecs.size(); ++r) {
            Residue f = vecs[r][col];
            if (f == 0) continue;
            auto& row = vecs[r];
            for (std::size_t j = col; j < width; ++j) {
                if (piv[j]) row[j] = p.sub(row[j], p.mul(f, piv[j]));
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    vecs.resize(rank);
    return pivots;
}

inline std::size_t rank(const PrimeFieldMatrix& m) {
    std::vector<std::vector<Residue>> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        rows.emplace_back(r.begin(), r.end());
    }
    return echelonize(rows, m.modulus()).size();
}

/// dim Ker M = cols - rank.
inline std::size_t kernel_dim(const PrimeFieldMatrix& m) {
    m.require_square("kernel_dim");
    return m.cols() - rank(m);
}

/// A basis of the right kernel {v : M v = 0}, one free variable per vector,
/// free variables taken in increasing index order.
inline std::vector<std::vector<Residue>> kernel_basis(const PrimeFieldMatrix& m) {
    const PrimeChar p = m.modulus();
    std::vector<std::vector<Residue>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        rows.emplace_back(r.begin(), r.end());
    }
    auto pivots = echelonize(rows, p);
    // back-substitute to reduced echelon form
    for (std::size_t k = pivots.size(); k-- > 0;) {
        for (std::size_t r = 0; r < k; ++r) {
            Residue f = rows[r][pivots[k]];
            if (f == 0) continue;
            for (std::size_t j = pivots[k]; j < m.cols(); ++j) {
                if (rows[k][j]) rows[r][j] = p.sub(rows[r][j], p.mul(f, rows[k][j]));
            }
        }
    }
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Residue>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Residue> v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = p.neg(rows[k][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Gauss-Jordan inverse; throws DomainError when M is singular.
inline PrimeFieldMatrix inverse(const PrimeFieldMatrix& m) {
    m.require_square("inverse");
    const std::size_t n = m.rows();
    const PrimeChar p = m.modulus();
    PrimeFieldMatrix a = m;
    PrimeFieldMatrix inv = PrimeFieldMatrix::identity(n, p);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && a(sel, col) == 0) ++sel;
        if (sel == n) throw DomainError("matrix is singular");
        if (sel != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(sel, j), a(col, j));
                std::swap(inv(sel, j), inv(col, j));
            }
        }
        Residue f = p.inv(a(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = p.mul(a(col, j), f);
            inv(col, j) = p.mul(inv(col, j), f);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Residue g = a(r, col);
            if (g == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (a(col, j)) a(r, j) = p.sub(a(r, j), p.mul(g, a(col, j)));
                if (inv(col, j)) inv(r, j) = p.sub(inv(r, j), p.mul(g, inv(col, j)));
            }
        }
    }
    return inv;
}

// --- constructions ----------------------------------------------------------

/// Single n x n unipotent Jordan block, u e_i = e_i + e_{i-1}.
inline PrimeFieldMatrix jordan_block(std::size_t n, PrimeChar p) {
    if (n == 0) throw DomainError("Jordan block of size 0");
    PrimeFieldMatrix m = PrimeFieldMatrix::identity(n, p);
    for (std::size_t i = 1; i < n; ++i) m(i - 1, i) = 1;
    return m;
}

/// Block-diagonal unipotent matrix with one Jordan block per summand of t,
/// summands in ascending size order.
inline PrimeFieldMatrix unipotent_of(const JordanType& t, PrimeChar p) {
    const std::size_t n = t.dimension();
    if (n == 0) throw DomainError("unipotent_of needs a nonempty Jordan type");
    PrimeFieldMatrix m = PrimeFieldMatrix::identity(n, p);
    std::size_t offset = 0;
    for (auto d : t.expanded()) {
        for (std::size_t i = 1; i < d; ++i) m(offset + i - 1, offset + i) = 1;
        offset += d;
    }
    return m;
}

/// Matrix of the contragredient action on the dual basis: (M^-1)^T.
inline PrimeFieldMatrix dual_action(const PrimeFieldMatrix& m) {
    return inverse(m).transpose();
}

/// A (x) B on the first-factor-major tensor basis.
inline PrimeFieldMatrix kronecker(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
    if (!(a.modulus() == b.modulus())) throw DomainError("modulus mismatch in kronecker");
    const PrimeChar p = a.modulus();
    PrimeFieldMatrix k(a.rows() * b.rows(), a.cols() * b.cols(), p);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Residue aij = a(i, j);
            if (aij == 0) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k(i * b.rows() + r, j * b.cols() + c) = p.mul(aij, b(r, c));
        }
    return k;
}

/// Position of e_i ^ e_j (i < j) in the lexicographic exterior basis.
inline std::size_t exterior_index(std::size_t i, std::size_t j, std::size_t n) {
    // rows before i contribute (n-1) + (n-2) + ... + (n-i)
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Position of e_i e_j (i <= j) in the lexicographic symmetric basis.
inline std::size_t symmetric_index(std::size_t i, std::size_t j, std::size_t n) {
    return i * n - i * (i - 1) / 2 + (j - i);
}

/// Induced map on the exterior square, basis {e_i ^ e_j : i < j}.
inline PrimeFieldMatrix exterior_square(const PrimeFieldMatrix& m) {
    m.require_square("exterior_square");
    const std::size_t n = m.rows();
    if (n < 2) throw DomainError("exterior square needs dimension >= 2");
    const PrimeChar p = m.modulus();
    PrimeFieldMatrix out(n * (n - 1) / 2, n * (n - 1) / 2, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t col = exterior_index(i, j, n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b) {
                    Residue v = p.sub(p.mul(m(a, i), m(b, j)), p.mul(m(b, i), m(a, j)));
                    if (v) out(exterior_index(a, b, n), col) = v;
                }
        }
    return out;
}

/// Induced map on the symmetric square, basis {e_i e_j : i <= j}. Requires
/// p > 2 so that S^2 is a direct summand of the tensor square.
inline PrimeFieldMatrix symmetric_square(const PrimeFieldMatrix& m) {
    m.require_square("symmetric_square");
    const PrimeChar p = m.modulus();
    if (p.value() == 2) throw CharacteristicError("symmetric square is only supported for p > 2");
    const std::size_t n = m.rows();
    PrimeFieldMatrix out(n * (n + 1) / 2, n * (n + 1) / 2, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::size_t col = symmetric_index(i, j, n);
            for (std::size_t a = 0; a < n; ++a) {
                Residue diag = p.mul(m(a, i), m(a, j));
                if (diag) out(symmetric_index(a, a, n), col) = diag;
                for (std::size_t b = a + 1; b < n; ++b) {
                    Residue v = p.add(p.mul(m(a, i), m(b, j)), p.mul(m(b, i), m(a, j)));
                    if (v) out(symmetric_index(a, b, n), col) = v;
                }
            }
        }
    return out;
}

} // namespace jordan
