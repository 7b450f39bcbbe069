#pragma once

// Coordinate-level model of V (x) V* for a unipotent u acting on
// V = W_1 + ... + W_t with u e_i = e_i + e_{i-1} on every summand.
//
// A vector of V (x) V* is stored either sparsely (TensorVector) or as an
// n x n "grid" C with C(a, b) the coefficient of e_a (x) e_b*. On grids the
// action of u is conjugation: (u (x) u^-T) vec(C) = vec(u C u^-1).

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jordan/errors.hpp"
#include "jordan/gfp_matrix.hpp"
#include "jordan/jordan_oracle.hpp"
#include "jordan/partitions.hpp"

namespace jordan {

/// Basis vector e_pos^(block) of V: summand index (0-based, summands in
/// ascending size order) and position inside the summand (1-based).
struct BasisIndex {
    std::size_t block = 0;
    std::size_t pos = 1;
    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

/// Summand sizes of V and the flat offset of each summand.
class BlockLayout {
public:
    explicit BlockLayout(const JordanType& t) : sizes_(t.expanded()) {
        if (sizes_.empty()) throw DomainError("BlockLayout needs a nonempty Jordan type");
        std::size_t off = 0;
        for (auto d : sizes_) {
            offsets_.push_back(off);
            off += d;
        }
        dim_ = off;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t blocks() const noexcept { return sizes_.size(); }
    [[nodiscard]] std::size_t size(std::size_t block) const { return sizes_.at(block); }
    [[nodiscard]] const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }

    /// Out-of-range positions (pos <= 0 or pos > size) denote the zero vector.
    [[nodiscard]] bool in_range(std::size_t block, std::int64_t pos) const {
        return block < sizes_.size() && pos >= 1 && static_cast<std::size_t>(pos) <= sizes_[block];
    }
    [[nodiscard]] std::size_t flat(BasisIndex b) const { return offsets_.at(b.block) + b.pos - 1; }
    [[nodiscard]] BasisIndex unflat(std::size_t k) const {
        std::size_t block = 0;
        while (block + 1 < offsets_.size() && offsets_[block + 1] <= k) ++block;
        return {block, k - offsets_[block] + 1};
    }

    friend bool operator==(const BlockLayout&, const BlockLayout&) = default;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> offsets_;
    std::size_t dim_ = 0;
};

/// Sparse vector of V (x) V*; key (v, f) is the coefficient of v (x) f*.
class TensorVector {
public:
    using Key = std::pair<BasisIndex, BasisIndex>;

    TensorVector(BlockLayout layout, PrimeChar p) : layout_(std::move(layout)), p_(p) {}

    [[nodiscard]] const BlockLayout& layout() const noexcept { return layout_; }
    [[nodiscard]] PrimeChar modulus() const noexcept { return p_; }
    [[nodiscard]] const std::map<Key, Residue>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds c * (e_i^(r) (x) e_j^(s)*). Out-of-range positions contribute
    /// nothing, matching the convention e_i = 0 outside 1..d.
    void add(std::size_t r, std::int64_t i, std::size_t s, std::int64_t j, std::int64_t c) {
        if (!layout_.in_range(r, i) || !layout_.in_range(s, j)) return;
        Key key{{r, static_cast<std::size_t>(i)}, {s, static_cast<std::size_t>(j)}};
        Residue v = p_.add(coefficient(key), p_.reduce(c));
        if (v == 0) {
            terms_.erase(key);
        } else {
            terms_[key] = v;
        }
    }

    [[nodiscard]] Residue coefficient(const Key& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? 0 : it->second;
    }

    [[nodiscard]] PrimeFieldMatrix to_grid() const {
        PrimeFieldMatrix g(layout_.dim(), layout_.dim(), p_);
        for (const auto& [k, c] : terms_) g(layout_.flat(k.first), layout_.flat(k.second)) = c;
        return g;
    }

    static TensorVector from_grid(const BlockLayout& layout, const PrimeFieldMatrix& g) {
        if (g.rows() != layout.dim() || g.cols() != layout.dim()) throw DomainError("grid shape does not match layout");
        TensorVector v(layout, g.modulus());
        for (std::size_t a = 0; a < g.rows(); ++a)
            for (std::size_t b = 0; b < g.cols(); ++b)
                if (g(a, b)) v.terms_[{layout.unflat(a), layout.unflat(b)}] = g(a, b);
        return v;
    }

    /// Flat coordinate vector in the first-factor-major basis of V (x) V*.
    [[nodiscard]] std::vector<Residue> flatten() const {
        std::vector<Residue> out(layout_.dim() * layout_.dim(), 0);
        for (const auto& [k, c] : terms_) out[layout_.flat(k.first) * layout_.dim() + layout_.flat(k.second)] = c;
        return out;
    }

    TensorVector& operator+=(const TensorVector& o) {
        for (const auto& [k, c] : o.terms_) add(k.first.block, k.first.pos, k.second.block, k.second.pos, c);
        return *this;
    }

    friend bool operator==(const TensorVector& a, const TensorVector& b) {
        return a.layout_ == b.layout_ && a.p_ == b.p_ && a.terms_ == b.terms_;
    }

    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            os << (first ? "" : " + ") << c << "*e" << k.first.pos << "^(" << k.first.block << ")(x)e" << k.second.pos
               << "*^(" << k.second.block << ")";
            first = false;
        }
        return first ? "0" : os.str();
    }

private:
    BlockLayout layout_;
    PrimeChar p_;
    std::map<Key, Residue> terms_;
};

/// u on V together with u^-1, applied to grids of V (x) V*.
class AdjointGridAction {
public:
    AdjointGridAction(const JordanType& t, PrimeChar p)
        : u_(unipotent_of(t, p)), u_inv_(inverse(u_)) {}

    [[nodiscard]] const PrimeFieldMatrix& u() const noexcept { return u_; }
    [[nodiscard]] const PrimeFieldMatrix& u_inverse() const noexcept { return u_inv_; }

    /// u0 . C = u C u^-1
    [[nodiscard]] PrimeFieldMatrix apply_u(const PrimeFieldMatrix& c) const { return u_ * c * u_inv_; }
    /// X . C = u C u^-1 - C
    [[nodiscard]] PrimeFieldMatrix apply_x(const PrimeFieldMatrix& c) const { return apply_u(c) - c; }
    [[nodiscard]] PrimeFieldMatrix apply_x_power(PrimeFieldMatrix c, std::size_t k) const {
        for (std::size_t i = 0; i < k && !c.is_zero(); ++i) c = apply_x(c);
        return c;
    }

private:
    PrimeFieldMatrix u_;
    PrimeFieldMatrix u_inv_;
};

// --- X-powers on basis vectors -----------------------------------------------

/// X^k e_i = e_{i-k} on a single block; nullopt stands for the zero vector.
inline std::optional<std::size_t> x_power_on_basis(std::size_t k, std::size_t i, std::size_t n) {
    if (i < 1 || i > n) throw DomainError("basis index out of range");
    if (k >= i) return std::nullopt;
    return i - k;
}

/// Coefficients (index j-1 holds the e_j* coefficient) of
///     X^k . e_i* = sum_{i+k <= j <= n} (-1)^(i+j) C(j-i-1, k-1) e_j*.
inline std::vector<Residue> x_power_on_dual(std::size_t k, std::size_t i, std::size_t n, PrimeChar p) {
    if (k < 1) throw DomainError("x_power_on_dual needs k >= 1");
    if (i < 1 || i > n) throw DomainError("dual basis index out of range");
    std::vector<Residue> out(n, 0);
    for (std::size_t j = i + k; j <= n; ++j) {
        Residue c = binom_mod_p(j - i - 1, k - 1, p);
        out[j - 1] = p.mul(p.sign(static_cast<std::int64_t>(i + j)), c);
    }
    return out;
}

/// X^k . (v (x) w) = sum_{0 <= s <= t <= k} C(k,t) C(t,s) X^t v (x) X^(k-s) w,
/// where `xv`, `xw` are the matrices of X on the two factors. Returns the
/// coefficient grid (dim v) x (dim w).
inline PrimeFieldMatrix x_power_on_tensor(std::size_t k, const std::vector<Residue>& v, const PrimeFieldMatrix& xv,
                                          const std::vector<Residue>& w, const PrimeFieldMatrix& xw) {
    const PrimeChar p = xv.modulus();
    if (!(xw.modulus() == p)) throw DomainError("modulus mismatch in x_power_on_tensor");
    std::vector<std::vector<Residue>> vp{v}, wp{w};
    for (std::size_t e = 1; e <= k; ++e) {
        vp.push_back(xv.apply(vp.back()));
        wp.push_back(xw.apply(wp.back()));
    }
    PrimeFieldMatrix out(v.size(), w.size(), p);
    for (std::size_t t = 0; t <= k; ++t) {
        Residue ct = binom_mod_p(k, t, p);
        if (ct == 0) continue;
        for (std::size_t s = 0; s <= t; ++s) {
            Residue c = p.mul(ct, binom_mod_p(t, s, p));
            if (c == 0) continue;
            const auto& a = vp[t];
            const auto& b = wp[k - s];
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] == 0) continue;
                Residue ca = p.mul(c, a[i]);
                for (std::size_t j = 0; j < b.size(); ++j)
                    if (b[j]) out(i, j) = p.add(out(i, j), p.mul(ca, b[j]));
            }
        }
    }
    return out;
}

// --- delta vectors --------------------------------------------------------------

/// Blockwise ladder vector
///     delta_beta = sum_r sum_{1<=i<=p^beta} sum_{0<=j<k_r} (-1)^(i+1) e_{j p^beta + i}^(r) (x) e_{j p^beta + 1}^(r)*
/// with d_r = p^beta k_r. delta_0 is sum_i e_i (x) e_i*, the invariant vector.
inline TensorVector delta(unsigned beta, const JordanType& t, PrimeChar p) {
    BlockLayout layout(t);
    const std::size_t q = ipow(p, beta);
    TensorVector out(layout, p);
    for (std::size_t r = 0; r < layout.blocks(); ++r) {
        const std::size_t d = layout.size(r);
        if (d % q != 0) {
            throw DomainError("delta: p^beta = " + std::to_string(q) + " does not divide block size " + std::to_string(d));
        }
        for (std::size_t j = 0; j < d / q; ++j)
            for (std::size_t i = 1; i <= q; ++i) {
                auto row = static_cast<std::int64_t>(j * q + i);
                auto col = static_cast<std::int64_t>(j * q + 1);
                out.add(r, row, r, col, (i % 2 == 1) ? 1 : -1);
            }
    }
    return out;
}

/// One rung of the ladder: delta_beta together with k_beta for each summand.
struct DeltaLadder {
    unsigned beta = 0;
    TensorVector vector;
    std::vector<std::size_t> k_per_block;
};

/// delta_0, ..., delta_alpha with alpha = alpha_of(t, p).
inline std::vector<DeltaLadder> delta_ladder(const JordanType& t, PrimeChar p) {
    std::vector<DeltaLadder> out;
    const unsigned alpha = alpha_of(t, p);
    for (unsigned beta = 0; beta <= alpha; ++beta) {
        const std::size_t q = ipow(p, beta);
        std::vector<std::size_t> ks;
        for (auto d : t.expanded()) ks.push_back(d / q);
        out.push_back({beta, delta(beta, t, p), std::move(ks)});
    }
    return out;
}

/// Trace functional phi(v (x) f) = f(v).
inline Residue trace_functional(const TensorVector& v) {
    const PrimeChar p = v.modulus();
    Residue acc = 0;
    for (const auto& [k, c] : v.terms())
        if (k.first == k.second) acc = p.add(acc, c);
    return acc;
}

struct LadderVerdict {
    bool passed = true;
    std::optional<unsigned> failing_beta;
    std::string detail;
};

/// Checks X^((p-1) p^(beta-1)) delta_beta = delta_(beta-1) and
/// X^(p^beta - 1) delta_beta = delta_0 for 1 <= beta <= alpha by applying u.
inline LadderVerdict verify_delta_ladder(const JordanType& t, PrimeChar p) {
    const unsigned alpha = alpha_of(t, p);
    LadderVerdict verdict;
    if (alpha == 0) {
        verdict.detail = "alpha = 0: nothing to check";
        return verdict;
    }
    AdjointGridAction action(t, p);
    const PrimeFieldMatrix d0 = delta(0, t, p).to_grid();
    PrimeFieldMatrix prev = d0;
    for (unsigned beta = 1; beta <= alpha; ++beta) {
        const PrimeFieldMatrix db = delta(beta, t, p).to_grid();
        const std::size_t step = (p - 1) * ipow(p, beta - 1);
        PrimeFieldMatrix stepped = action.apply_x_power(db, step);
        if (!(stepped == prev)) {
            verdict.passed = false;
            verdict.failing_beta = beta;
            verdict.detail = "X^" + std::to_string(step) + " delta_" + std::to_string(beta) + " != delta_" +
                             std::to_string(beta - 1);
            return verdict;
        }
        PrimeFieldMatrix full = action.apply_x_power(db, ipow(p, beta) - 1);
        if (!(full == d0)) {
            verdict.passed = false;
            verdict.failing_beta = beta;
            verdict.detail = "X^" + std::to_string(ipow(p, beta) - 1) + " delta_" + std::to_string(beta) + " != delta_0";
            return verdict;
        }
        prev = db;
    }
    verdict.detail = "ladder holds for beta = 1.." + std::to_string(alpha);
    return verdict;
}

// --- explicit subquotient construction --------------------------------------------

namespace detail {

/// Echelon span that accepts vectors one at a time.
class IncrementalSpan {
public:
    IncrementalSpan(std::size_t width, PrimeChar p) : width_(width), p_(p) {}

    /// Adds v if it is independent of what is already there.
    bool add(std::vector<Residue> v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Residue f = v[pivots_[k]];
            if (f == 0) continue;
            const auto& row = rows_[k];
            for (std::size_t j = 0; j < width_; ++j)
                if (row[j]) v[j] = p_.sub(v[j], p_.mul(f, row[j]));
        }
        std::size_t piv = 0;
        while (piv < width_ && v[piv] == 0) ++piv;
        if (piv == width_) return false;
        Residue inv = p_.inv(v[piv]);
        for (auto& x : v) x = p_.mul(x, inv);
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }
    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }

private:
    std::size_t width_;
    PrimeChar p_;
    std::vector<std::vector<Residue>> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace detail

/// Matrix of M on W/S, where S is spanned by `sub` and W by `sub` + `space`;
/// both must be M-invariant. The basis is built greedily in the given order
/// (S first, then W, then standard unit vectors for a complement).
inline PrimeFieldMatrix subquotient_action(const PrimeFieldMatrix& m, const std::vector<std::vector<Residue>>& sub,
                                           const std::vector<std::vector<Residue>>& space) {
    m.require_square("subquotient_action");
    const std::size_t n = m.rows();
    const PrimeChar p = m.modulus();
    detail::IncrementalSpan span(n, p);
    std::vector<std::vector<Residue>> basis;
    for (const auto& v : sub)
        if (span.add(v)) basis.push_back(v);
    const std::size_t s_dim = basis.size();
    for (const auto& v : space)
        if (span.add(v)) basis.push_back(v);
    const std::size_t w_dim = basis.size();
    for (std::size_t i = 0; i < n && basis.size() < n; ++i) {
        std::vector<Residue> e(n, 0);
        e[i] = 1;
        if (span.add(e)) basis.push_back(std::move(e));
    }
    PrimeFieldMatrix pm(n, n, p);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) pm(i, j) = basis[j][i];
    const PrimeFieldMatrix conj = inverse(pm) * m * pm;
    for (std::size_t j = 0; j < w_dim; ++j) {
        const std::size_t first_bad = j < s_dim ? s_dim : w_dim;
        for (std::size_t i = first_bad; i < n; ++i)
            if (conj(i, j)) throw DomainError("subquotient_action: subspace is not invariant");
    }
    PrimeFieldMatrix out(w_dim - s_dim, w_dim - s_dim, p);
    for (std::size_t i = s_dim; i < w_dim; ++i)
        for (std::size_t j = s_dim; j < w_dim; ++j) out(i - s_dim, j - s_dim) = conj(i, j);
    return out;
}

/// u0 = u (x) u^-T on V (x) V*.
inline PrimeFieldMatrix adjoint_carrier_action(const JordanType& t, PrimeChar p) {
    const std::size_t n = t.dimension();
    check_entry_cap(n * n, n * n, "adjoint_carrier_action");
    PrimeFieldMatrix u = unipotent_of(t, p);
    return kronecker(u, dual_action(u));
}

/// phi as a 1 x n^2 row on the first-factor-major basis.
inline PrimeFieldMatrix trace_row(std::size_t n, PrimeChar p) {
    PrimeFieldMatrix phi(1, n * n, p);
    for (std::size_t a = 0; a < n; ++a) phi(0, a * n + a) = 1;
    return phi;
}

/// Basis of Ker phi, one vector per free coordinate in increasing order.
inline std::vector<std::vector<Residue>> trace_kernel_basis(std::size_t n, PrimeChar p) {
    return kernel_basis(trace_row(n, p));
}

/// u0 restricted to Ker phi.
inline PrimeFieldMatrix trace_kernel_action(const JordanType& t, PrimeChar p) {
    return subquotient_action(adjoint_carrier_action(t, p), {}, trace_kernel_basis(t.dimension(), p));
}

/// u0 on (V (x) V*) / <delta_0>.
inline PrimeFieldMatrix identity_quotient_action(const JordanType& t, PrimeChar p) {
    const std::size_t n = t.dimension();
    std::vector<std::vector<Residue>> all;
    for (std::size_t i = 0; i < n * n; ++i) {
        std::vector<Residue> e(n * n, 0);
        e[i] = 1;
        all.push_back(std::move(e));
    }
    return subquotient_action(adjoint_carrier_action(t, p), {delta(0, t, p).flatten()}, all);
}

/// Action of u on the irreducible composition factor of V (x) V*: Ker phi
/// when p does not divide n, and Ker phi / <delta_0> when it does.
inline PrimeFieldMatrix build_adjoint_action(const JordanType& t, PrimeChar p) {
    const std::size_t n = t.dimension();
    if (n < 2) throw DomainError("build_adjoint_action needs dim V >= 2");
    const PrimeFieldMatrix u0 = adjoint_carrier_action(t, p);
    auto kernel = trace_kernel_basis(n, p);
    if (n % p != 0) return subquotient_action(u0, {}, kernel);
    return subquotient_action(u0, {delta(0, t, p).flatten()}, kernel);
}

} // namespace jordan
