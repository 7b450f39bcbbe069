#pragma once

// Ground-truth Jordan types from exact ranks.
//
// For a unipotent u with X = u - 1 the number of blocks of size m is
//     r_m = 2 dim Ker X^m - dim Ker X^(m+1) - dim Ker X^(m-1),
// so everything here reduces to kernel dimensions of powers of X.

#include <atomic>
#include <cstddef>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "jordan/errors.hpp"
#include "jordan/gfp_matrix.hpp"
#include "jordan/partitions.hpp"

namespace jordan {

// --- dense-matrix cap -------------------------------------------------------

inline std::atomic<std::size_t>& max_matrix_entries() {
    static std::atomic<std::size_t> cap{40000};
    return cap;
}

/// Temporarily overrides the dense-matrix entry cap.
class ScopedEntryCap {
public:
    explicit ScopedEntryCap(std::size_t cap) : saved_(max_matrix_entries().exchange(cap)) {}
    ~ScopedEntryCap() { max_matrix_entries() = saved_; }
    ScopedEntryCap(const ScopedEntryCap&) = delete;
    ScopedEntryCap& operator=(const ScopedEntryCap&) = delete;

private:
    std::size_t saved_;
};

inline void check_entry_cap(std::size_t rows, std::size_t cols, const char* what) {
    const std::size_t cap = max_matrix_entries();
    if (rows * cols > cap) {
        throw CapExceeded(std::string(what) + ": " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " matrix exceeds the cap of " + std::to_string(cap) + " entries");
    }
}

// --- Jordan type from kernel dimensions --------------------------------------

/// Turns the sequence dim Ker X^k (k = 0, 1, ..., K with X^K = 0) into block
/// multiplicities.
inline JordanType jordan_type_from_kernel_dims(const std::vector<std::size_t>& kd) {
    JordanType t;
    if (kd.size() < 2) return t;
    const std::size_t total = kd.back();
    auto at = [&](std::size_t k) { return k < kd.size() ? kd[k] : total; };
    for (std::size_t m = 1; m < kd.size(); ++m) {
        // 2 kd[m] - kd[m+1] - kd[m-1], never negative for a valid sequence
        std::size_t plus = 2 * at(m);
        std::size_t minus = at(m + 1) + at(m - 1);
        if (plus < minus) throw DomainError("inconsistent kernel dimension sequence");
        t.add(m, plus - minus);
    }
    return t;
}

/// dim Ker X^k for k = 0 .. K where K is the nilpotency index. The image of
/// X^k is tracked as an echelon basis and pushed through X once per step.
inline std::vector<std::size_t> nilpotent_kernel_dims(const PrimeFieldMatrix& x) {
    x.require_square("nilpotent_kernel_dims");
    const std::size_t n = x.rows();
    const PrimeChar p = x.modulus();
    std::vector<std::size_t> kd{0};
    std::vector<std::vector<Residue>> image;
    image.reserve(n);
    for (std::size_t j = 0; j < n; ++j) image.push_back(x.column(j));
    echelonize(image, p);
    std::size_t prev_rank = n;
    while (true) {
        std::size_t r = image.size();
        if (r == prev_rank && r != 0) throw DomainError("matrix is not unipotent: u - 1 is not nilpotent");
        kd.push_back(n - r);
        if (r == 0) break;
        prev_rank = r;
        for (auto& v : image) v = x.apply(v);
        echelonize(image, p);
    }
    return kd;
}

/// Jordan type of a unipotent matrix.
inline JordanType jordan_type_of(const PrimeFieldMatrix& u) {
    u.require_square("jordan_type_of");
    if (u.rows() == 0) throw DomainError("jordan_type_of on a 0x0 matrix");
    check_entry_cap(u.rows(), u.cols(), "jordan_type_of");
    PrimeFieldMatrix x = u - PrimeFieldMatrix::identity(u.rows(), u.modulus());
    return jordan_type_from_kernel_dims(nilpotent_kernel_dims(x));
}

// --- memo table ----------------------------------------------------------------

namespace detail {

class TypeMemo {
public:
    using Key = std::tuple<std::size_t, std::size_t, std::uint32_t>;

    template <class Compute>
    JordanType get(const Key& key, Compute&& compute) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        JordanType value = compute();
        std::unique_lock lock(mutex_);
        return table_.emplace(key, std::move(value)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<Key, JordanType> table_;
};

inline TypeMemo& tensor_memo() {
    static TypeMemo memo;
    return memo;
}
inline TypeMemo& ext2_memo() {
    static TypeMemo memo;
    return memo;
}
inline TypeMemo& sym2_memo() {
    static TypeMemo memo;
    return memo;
}

/// dim Ker z^k on K[x,y]/(x^m, y^n) for z = x + y. Multiplication by z has
/// degree one, so rank z^k splits into ranks of small binomial matrices
/// between homogeneous pieces.
inline std::vector<std::size_t> graded_tensor_kernel_dims(std::size_t m, std::size_t n, PrimeChar p) {
    const std::size_t dim = m * n;
    const std::size_t top = m + n - 2;  // highest nonzero degree
    auto lo = [&](std::size_t d) { return d >= n - 1 ? d - (n - 1) : std::size_t{0}; };
    auto hi = [&](std::size_t d) { return std::min(d, m - 1); };

    std::vector<std::size_t> kd{0};
    for (std::size_t k = 1;; ++k) {
        std::vector<Residue> binom(k + 1);
        for (std::size_t j = 0; j <= k; ++j) binom[j] = binom_mod_p(k, j, p);
        std::size_t total_rank = 0;
        for (std::size_t d = 0; d + k <= top; ++d) {
            const std::size_t src_lo = lo(d), src_hi = hi(d);
            const std::size_t dst_lo = lo(d + k), dst_hi = hi(d + k);
            if (src_lo > src_hi || dst_lo > dst_hi) continue;
            PrimeFieldMatrix piece(dst_hi - dst_lo + 1, src_hi - src_lo + 1, p);
            bool nonzero = false;
            for (std::size_t a = src_lo; a <= src_hi; ++a)
                for (std::size_t a2 = std::max(a, dst_lo); a2 <= std::min(a + k, dst_hi); ++a2) {
                    Residue c = binom[a2 - a];
                    if (c) {
                        piece(a2 - dst_lo, a - src_lo) = c;
                        nonzero = true;
                    }
                }
            if (nonzero) total_rank += rank(piece);
        }
        kd.push_back(dim - total_rank);
        if (total_rank == 0) break;
    }
    return kd;
}

} // namespace detail

// --- tensor products of indecomposables ----------------------------------------

/// Jordan type of J_m (x) J_n computed from the materialised Kronecker product.
/// Subject to the dense-matrix cap.
inline JordanType tensor_block_type_direct(std::size_t m, std::size_t n, PrimeChar p) {
    if (m == 0 || n == 0) throw DomainError("tensor_block_type needs positive sizes");
    check_entry_cap(m * n, m * n, "tensor_block_type_direct");
    return jordan_type_of(kronecker(jordan_block(m, p), jordan_block(n, p)));
}

/// Jordan type of V_m (x) V_n, memoised by (min, max, p).
///
/// V_m (x) V_n is the algebra K[x,y]/(x^m, y^n) with u acting as (1+x)(1+y).
/// The substitution y -> y(1+x) is an algebra automorphism taking x + y to
/// x + y + xy = u - 1, so the kernel dimensions come from the graded ranks of
/// x + y. Agreement with `tensor_block_type_direct` is covered by tests.
inline JordanType tensor_block_type(std::size_t m, std::size_t n, PrimeChar p) {
    if (m == 0 || n == 0) throw DomainError("tensor_block_type needs positive sizes");
    const std::size_t a = std::min(m, n), b = std::max(m, n);
    return detail::tensor_memo().get({a, b, p.value()}, [&] {
        return jordan_type_from_kernel_dims(detail::graded_tensor_kernel_dims(a, b, p));
    });
}

/// Jordan type of u on V (x) V*, where u has type t on V. Summands are
/// self-dual, so this is the sum of V_{d_i} (x) V_{d_j} over ordered pairs.
inline JordanType tensor_dual_type(const JordanType& t, PrimeChar p) {
    if (t.empty()) throw DomainError("tensor_dual_type needs a nonempty Jordan type");
    JordanType out;
    for (auto [a, ma] : t.blocks())
        for (auto [b, mb] : t.blocks()) out += tensor_block_type(a, b, p).times(ma * mb);
    return out;
}

/// Jordan type of the exterior square of a single block J_d (d >= 2).
inline JordanType ext2_block_type(std::size_t d, PrimeChar p) {
    if (d < 2) throw DomainError("exterior square of a block of size < 2 is zero");
    return detail::ext2_memo().get({d, d, p.value()}, [&] {
        const std::size_t dim = d * (d - 1) / 2;
        check_entry_cap(dim, dim, "ext2_block_type");
        return jordan_type_of(exterior_square(jordan_block(d, p)));
    });
}

/// Jordan type of the symmetric square of a single block J_d (p > 2).
inline JordanType sym2_block_type(std::size_t d, PrimeChar p) {
    if (p.value() == 2) throw CharacteristicError("symmetric squares are only supported for p > 2");
    if (d == 0) throw DomainError("Jordan block of size 0");
    return detail::sym2_memo().get({d, d, p.value()}, [&] {
        const std::size_t dim = d * (d + 1) / 2;
        check_entry_cap(dim, dim, "sym2_block_type");
        return jordan_type_of(symmetric_square(jordan_block(d, p)));
    });
}

namespace detail {

template <class SingleSquare>
JordanType square_type(const JordanType& t, PrimeChar p, SingleSquare&& single) {
    JordanType out;
    const auto& bl = t.blocks();
    for (auto it = bl.begin(); it != bl.end(); ++it) {
        auto [a, ma] = *it;
        out += single(a).times(ma);
        out += tensor_block_type(a, a, p).times(ma * (ma - 1) / 2);
        for (auto jt = std::next(it); jt != bl.end(); ++jt) out += tensor_block_type(a, jt->first, p).times(ma * jt->second);
    }
    return out;
}

} // namespace detail

/// Jordan type of u on the exterior square of V.
inline JordanType ext2_type(const JordanType& t, PrimeChar p) {
    if (t.dimension() < 2) throw DomainError("exterior square needs dim V >= 2");
    return detail::square_type(t, p, [&](std::size_t d) {
        return d < 2 ? JordanType{} : ext2_block_type(d, p);
    });
}

/// Jordan type of u on the symmetric square of V (p > 2).
inline JordanType sym2_type(const JordanType& t, PrimeChar p) {
    if (p.value() == 2) throw CharacteristicError("symmetric squares are only supported for p > 2");
    if (t.empty()) throw DomainError("sym2_type needs a nonempty Jordan type");
    return detail::square_type(t, p, [&](std::size_t d) { return sym2_block_type(d, p); });
}

} // namespace jordan
