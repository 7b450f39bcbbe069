#pragma once

// Closed-form identities for V_m (x) V_n. Each one is a fast path with stated
// hypotheses; the oracle in jordan_oracle.hpp stays the authority.

#include <cstddef>
#include <optional>

#include "jordan/jordan_oracle.hpp"
#include "jordan/partitions.hpp"

namespace jordan {

/// If V_m (x) V_n has type `base`, then V_{p^a m} (x) V_{p^a n} has every size
/// and every multiplicity of `base` multiplied by p^a.
inline JordanType gpx_scale(const JordanType& base, unsigned alpha, PrimeChar p) {
    const std::size_t q = ipow(p, alpha);
    JordanType out;
    for (auto [s, m] : base.blocks()) out.add(s * q, m * q);
    return out;
}

/// For m, n < q = p^a < m + n:
///     V_m (x) V_n = (m + n - q) V_q  +  V_{q-m} (x) V_{q-n}.
/// Returns nullopt when no such power of p exists.
inline std::optional<JordanType> reflect_rule(std::size_t m, std::size_t n, PrimeChar p) {
    if (m == 0 || n == 0) return std::nullopt;
    std::size_t q = 1;
    while (q <= std::max(m, n)) q *= p;
    if (q > m + n - 1) return std::nullopt;
    JordanType out = JordanType::single(q, m + n - q);
    out += tensor_block_type(q - m, q - n, p);
    return out;
}

/// V_m (x) V_{p^a} is free over the cyclic group of order p^a: m V_{p^a}.
inline JordanType free_rule(std::size_t m, unsigned alpha, PrimeChar p) {
    const std::size_t q = ipow(p, alpha);
    if (m == 0) throw DomainError("free_rule needs m >= 1");
    if (m > q) throw DomainError("free_rule needs m <= p^alpha");
    return JordanType::single(q, m);
}

/// Characteristic-zero decomposition V_{m+n-1} + V_{m+n-3} + ... + V_{|m-n|+1}.
/// Valid in characteristic p at least when m + n - 1 <= p.
inline JordanType clebsch_gordan(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) throw DomainError("clebsch_gordan needs positive sizes");
    JordanType out;
    const std::size_t lo = (m > n ? m - n : n - m) + 1;
    for (std::size_t s = m + n - 1; s >= lo; s -= 2) {
        out.add(s);
        if (s < 2) break;
    }
    return out;
}

} // namespace jordan
