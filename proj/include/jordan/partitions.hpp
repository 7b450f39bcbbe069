#pragma once

// Jordan types (partitions with multiplicities) and the number theory every
// other layer leans on: p-adic valuation and binomials mod p.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jordan/errors.hpp"

namespace jordan {

using Residue = std::uint32_t;

/// A prime characteristic. Primality is checked on construction; all field
/// arithmetic of GF(p) hangs off this type.
class PrimeChar {
public:
    explicit PrimeChar(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) {
            throw CharacteristicError("characteristic " + std::to_string(p) + " is not prime");
        }
    }

    [[nodiscard]] std::uint32_t value() const noexcept { return p_; }
    operator std::uint32_t() const noexcept { return p_; }

    [[nodiscard]] Residue reduce(std::int64_t a) const noexcept {
        auto r = a % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    [[nodiscard]] Residue add(Residue a, Residue b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    [[nodiscard]] Residue sub(Residue a, Residue b) const noexcept {
        return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p_ - b);
    }
    [[nodiscard]] Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    [[nodiscard]] Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(std::uint64_t{a} * b % p_);
    }
    [[nodiscard]] Residue pow(Residue a, std::uint64_t e) const noexcept {
        Residue r = 1 % p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    /// Multiplicative inverse; `a` must be nonzero mod p.
    [[nodiscard]] Residue inv(Residue a) const {
        if (a % p_ == 0) throw DomainError("zero has no inverse in GF(p)");
        return pow(a, p_ - 2);
    }
    /// (-1)^k as a residue.
    [[nodiscard]] Residue sign(std::int64_t k) const noexcept {
        return (k % 2 == 0) ? 1 % p_ : p_ - 1;
    }

    friend bool operator==(PrimeChar a, PrimeChar b) noexcept { return a.p_ == b.p_; }

    static bool is_prime(std::uint32_t n) noexcept {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    }

private:
    std::uint32_t p_;
};

/// Multiset of Jordan block sizes. `multiplicity(m)` is r_m: the number of
/// blocks of size m. Zero multiplicities are never stored.
///
/// A default-constructed JordanType is empty (dimension 0). It appears only as
/// an accumulator; `parse_jordan_type` never returns one.
class JordanType {
public:
    using Map = std::map<std::size_t, std::size_t>;

    JordanType() = default;
    JordanType(std::initializer_list<std::pair<const std::size_t, std::size_t>> init) {
        for (auto [size, mult] : init) add(size, mult);
    }

    /// n copies of a single block of the given size.
    static JordanType single(std::size_t size, std::size_t mult = 1) {
        JordanType t;
        t.add(size, mult);
        return t;
    }

    /// Builds the type from an explicit list of block sizes.
    static JordanType from_sizes(const std::vector<std::size_t>& sizes) {
        JordanType t;
        for (auto s : sizes) t.add(s, 1);
        return t;
    }

    void add(std::size_t size, std::size_t mult = 1) {
        if (size == 0) throw DomainError("Jordan block size must be positive");
        if (mult == 0) return;
        blocks_[size] += mult;
    }

    /// Removes `mult` blocks of `size`; throws if fewer are present.
    void remove(std::size_t size, std::size_t mult = 1) {
        auto it = blocks_.find(size);
        std::size_t have = it == blocks_.end() ? 0 : it->second;
        if (have < mult) {
            throw DomainError("cannot remove " + std::to_string(mult) + " block(s) of size " +
                              std::to_string(size) + ": only " + std::to_string(have) + " present");
        }
        if (have == mult) {
            blocks_.erase(it);
        } else {
            it->second -= mult;
        }
    }

    [[nodiscard]] std::size_t multiplicity(std::size_t size) const noexcept {
        auto it = blocks_.find(size);
        return it == blocks_.end() ? 0 : it->second;
    }

    [[nodiscard]] const Map& blocks() const noexcept { return blocks_; }
    [[nodiscard]] bool empty() const noexcept { return blocks_.empty(); }

    [[nodiscard]] std::size_t dimension() const noexcept {
        std::size_t d = 0;
        for (auto [s, m] : blocks_) d += s * m;
        return d;
    }
    [[nodiscard]] std::size_t block_count() const noexcept {
        std::size_t c = 0;
        for (auto [s, m] : blocks_) c += m;
        return c;
    }
    [[nodiscard]] std::size_t min_size() const {
        require_nonempty();
        return blocks_.begin()->first;
    }
    [[nodiscard]] std::size_t max_size() const {
        require_nonempty();
        return blocks_.rbegin()->first;
    }

    /// Every block size occurs exactly once.
    [[nodiscard]] bool multiplicity_free() const noexcept {
        for (auto [s, m] : blocks_) {
            if (m != 1) return false;
        }
        return true;
    }

    /// Block sizes with repetition, ascending.
    [[nodiscard]] std::vector<std::size_t> expanded() const {
        std::vector<std::size_t> out;
        for (auto [s, m] : blocks_) out.insert(out.end(), m, s);
        return out;
    }

    /// Dense r_1..r_max vector; index 0 is unused and always 0.
    [[nodiscard]] std::vector<std::size_t> dense() const {
        std::vector<std::size_t> r(empty() ? 1 : max_size() + 1, 0);
        for (auto [s, m] : blocks_) r[s] = m;
        return r;
    }

    /// Canonical rendering "d1^m1, d2^m2, ..." with ascending sizes; the
    /// exponent is omitted for multiplicity one.
    [[nodiscard]] std::string str() const {
        std::string out;
        for (auto [s, m] : blocks_) {
            if (!out.empty()) out += ", ";
            out += std::to_string(s);
            if (m != 1) {
                out += '^';
                out += std::to_string(m);
            }
        }
        return out;
    }

    JordanType& operator+=(const JordanType& other) {
        for (auto [s, m] : other.blocks_) blocks_[s] += m;
        return *this;
    }
    friend JordanType operator+(JordanType a, const JordanType& b) { return a += b; }

    /// Repeats every block `k` times.
    [[nodiscard]] JordanType times(std::size_t k) const {
        JordanType out;
        if (k == 0) return out;
        for (auto [s, m] : blocks_) out.blocks_[s] = m * k;
        return out;
    }

    friend bool operator==(const JordanType&, const JordanType&) = default;
    friend std::ostream& operator<<(std::ostream& os, const JordanType& t) {
        return os << (t.empty() ? std::string("(empty)") : t.str());
    }

private:
    void require_nonempty() const {
        if (blocks_.empty()) throw DomainError("empty Jordan type");
    }

    Map blocks_;
};

namespace detail {

inline std::size_t parse_positive(std::string_view digits, std::string_view term) {
    if (digits.empty()) {
        throw ParseError("malformed partition term '" + std::string(term) + "'");
    }
    std::size_t v = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ParseError("malformed partition term '" + std::string(term) + "'");
        }
        if (v > (SIZE_MAX - 9) / 10) throw ParseError("partition term too large: " + std::string(term));
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

} // namespace detail

/// Parses `term ("," term)*` with term = INT | INT "^" INT. Whitespace is
/// ignored and repeated sizes accumulate.
inline JordanType parse_jordan_type(std::string_view text) {
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (compact.empty()) throw ParseError("empty partition string");

    JordanType t;
    std::string_view rest = compact;
    while (true) {
        auto comma = rest.find(',');
        std::string_view term = rest.substr(0, comma);
        auto caret = term.find('^');
        std::size_t size = 0;
        std::size_t mult = 1;
        if (caret == std::string_view::npos) {
            size = detail::parse_positive(term, term);
        } else {
            size = detail::parse_positive(term.substr(0, caret), term);
            mult = detail::parse_positive(term.substr(caret + 1), term);
        }
        if (size == 0) throw ParseError("zero block size in term '" + std::string(term) + "'");
        if (mult == 0) throw ParseError("zero multiplicity in term '" + std::string(term) + "'");
        t.add(size, mult);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return t;
}

/// Largest k with p^k | a.
inline unsigned nu_p(std::uint64_t a, PrimeChar p) {
    if (a == 0) throw DomainError("nu_p is undefined at 0");
    unsigned k = 0;
    while (a % p == 0) {
        a /= p;
        ++k;
    }
    return k;
}

/// p^e as an integer.
inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

/// nu_p of the gcd of the (distinct) block sizes.
inline unsigned alpha_of(const JordanType& t, PrimeChar p) {
    if (t.empty()) throw DomainError("alpha_of needs a nonempty Jordan type");
    std::size_t g = 0;
    for (auto [s, m] : t.blocks()) g = std::gcd(g, s);
    return nu_p(g, p);
}

/// Smallest power of p that is >= d: the order of a unipotent element whose
/// largest Jordan block has size d.
inline std::uint64_t unipotent_order(std::size_t d, PrimeChar p) {
    std::uint64_t q = 1;
    while (q < d) q *= p;
    return q;
}

/// Binomial coefficient (a choose b) mod p by Lucas' theorem: the product of
/// digit binomials in base p. (a choose b) = 0 when a < b.
inline Residue binom_mod_p(std::uint64_t a, std::uint64_t b, PrimeChar p) {
    Residue result = 1 % p;
    while (b > 0 || a > 0) {
        std::uint64_t ad = a % p;
        std::uint64_t bd = b % p;
        if (bd > ad) return 0;
        // digit binomial via the multiplicative formula; all denominators < p
        Residue num = 1;
        Residue den = 1;
        for (std::uint64_t i = 0; i < bd; ++i) {
            num = p.mul(num, static_cast<Residue>(ad - i));
            den = p.mul(den, static_cast<Residue>(i + 1));
        }
        result = p.mul(result, p.mul(num, p.inv(den)));
        a /= p;
        b /= p;
    }
    return result;
}

/// All partitions of n in reverse lexicographic order of their descending
/// part lists: n; n-1,1; n-2,2; ... ; 1^n.
inline std::vector<JordanType> partitions_of(std::size_t n) {
    std::vector<JordanType> out;
    if (n == 0) return out;
    std::vector<std::size_t> parts{n};
    while (true) {
        out.push_back(JordanType::from_sizes(parts));
        // find rightmost part > 1
        std::size_t ones = 0;
        while (!parts.empty() && parts.back() == 1) {
            parts.pop_back();
            ++ones;
        }
        if (parts.empty()) break;
        std::size_t k = parts.back() - 1;
        parts.back() = k;
        std::size_t rem = ones + 1;
        while (rem > k) {
            parts.push_back(k);
            rem -= k;
        }
        if (rem > 0) parts.push_back(rem);
    }
    return out;
}

} // namespace jordan
