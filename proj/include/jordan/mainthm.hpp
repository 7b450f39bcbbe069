#pragma once

// From the Jordan type of u on a carrier module (V (x) V*, the exterior
// square or the symmetric square) to its type on the nontrivial irreducible
// composition factor.

#include <cstddef>
#include <optional>
#include <string>

#include "jordan/errors.hpp"
#include "jordan/jordan_oracle.hpp"
#include "jordan/partitions.hpp"
#include "jordan/structural.hpp"

namespace jordan {

enum class GroupKind { SL, Sp, SO };

inline std::string to_string(GroupKind k) {
    switch (k) {
    case GroupKind::SL: return "sl";
    case GroupKind::Sp: return "sp";
    case GroupKind::SO: return "so";
    }
    return "?";
}

inline GroupKind parse_group_kind(std::string_view s) {
    if (s == "sl" || s == "SL") return GroupKind::SL;
    if (s == "sp" || s == "Sp" || s == "SP") return GroupKind::Sp;
    if (s == "so" || s == "SO") return GroupKind::SO;
    throw ParseError("unknown group '" + std::string(s) + "' (expected sl, sp or so)");
}

/// Classical group G with natural module of dimension n over characteristic p.
/// Construction enforces the dimension hypotheses and good characteristic.
class GroupContext {
public:
    GroupContext(GroupKind kind, std::size_t n, PrimeChar p) : kind_(kind), n_(n), p_(p) {
        switch (kind) {
        case GroupKind::SL:
            if (n < 2) throw DomainError("SL(V) needs dim V >= 2");
            break;
        case GroupKind::Sp:
            if (n < 4 || n % 2 != 0) throw DomainError("Sp(V) needs dim V even and >= 4");
            break;
        case GroupKind::SO:
            if (n < 5) throw DomainError("SO(V) needs dim V >= 5");
            break;
        }
        if (kind != GroupKind::SL && p.value() == 2) {
            throw CharacteristicError(
                "p = 2 is not good for " + to_string(kind) +
                ": the Jordan type on the irreducible factor is not determined by the type on the carrier");
        }
    }

    [[nodiscard]] GroupKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] PrimeChar p() const noexcept { return p_; }

private:
    GroupKind kind_;
    std::size_t n_;
    PrimeChar p_;
};

struct ClassicalVerdict {
    bool ok = true;
    std::optional<std::size_t> offending_size;
    std::string message;
};

/// Which Jordan types occur for unipotent elements of the group: any partition
/// of n for SL; odd sizes with even multiplicity excluded for Sp; even sizes
/// with even multiplicity required for SO.
inline ClassicalVerdict validate_classical(const JordanType& t, const GroupContext& ctx) {
    ClassicalVerdict v;
    if (t.dimension() != ctx.n()) {
        v.ok = false;
        v.message = "Jordan type has dimension " + std::to_string(t.dimension()) + ", expected " + std::to_string(ctx.n());
        return v;
    }
    if (ctx.kind() == GroupKind::SL) return v;
    const bool odd_constrained = ctx.kind() == GroupKind::Sp;
    for (auto [s, m] : t.blocks()) {
        const bool constrained = (s % 2 == 1) == odd_constrained;
        if (constrained && m % 2 != 0) {
            v.ok = false;
            v.offending_size = s;
            v.message = std::string(odd_constrained ? "odd" : "even") + " block size " + std::to_string(s) +
                        " has odd multiplicity " + std::to_string(m) + " (not a " + to_string(ctx.kind()) + " class)";
            return v;
        }
    }
    return v;
}

inline void require_classical(const JordanType& t, const GroupContext& ctx) {
    auto v = validate_classical(t, ctx);
    if (!v.ok) throw DomainError(v.message);
}

enum class Rule { I, II, IIIa, IIIb, IIIc };

inline std::string to_string(Rule r) {
    switch (r) {
    case Rule::I: return "i";
    case Rule::II: return "ii";
    case Rule::IIIa: return "iii-a";
    case Rule::IIIb: return "iii-b";
    case Rule::IIIc: return "iii-c";
    }
    return "?";
}

/// The case split on (n, alpha, p); total and disjoint.
inline Rule select_rule(std::size_t n, unsigned alpha, PrimeChar p) {
    if (n % p != 0) return Rule::I;
    if (alpha == 0) return Rule::II;
    const std::size_t q = ipow(p, alpha);
    if ((n / q) % p == 0) return Rule::IIIa;
    return q > 2 ? Rule::IIIb : Rule::IIIc;
}

struct RuleOutcome {
    JordanType type;
    Rule rule;
};

/// Applies the selected rule to a carrier type. Throws DomainError if the
/// carrier lacks the blocks the rule removes.
inline RuleOutcome apply_rule(const JordanType& carrier, std::size_t n, unsigned alpha, PrimeChar p) {
    RuleOutcome out{carrier, select_rule(n, alpha, p)};
    const std::size_t q = ipow(p, alpha);
    try {
        switch (out.rule) {
        case Rule::I: out.type.remove(1, 1); break;
        case Rule::II: out.type.remove(1, 2); break;
        case Rule::IIIa:
            out.type.remove(q, 2);
            out.type.add(q - 1, 2);
            break;
        case Rule::IIIb:
            out.type.remove(q, 1);
            out.type.add(q - 2, 1);
            break;
        case Rule::IIIc: out.type.remove(2, 1); break;
        }
    } catch (const DomainError& e) {
        throw DomainError("carrier " + carrier.str() + " is inconsistent with rule " + to_string(out.rule) + ": " +
                          e.what());
    }
    return out;
}

/// SL(V): type on L(w1 + w_{n-1}) from the type on V (x) V*.
inline RuleOutcome adjoint_rule_outcome(const JordanType& carrier, const JordanType& t, const GroupContext& ctx) {
    if (ctx.kind() != GroupKind::SL) throw DomainError("adjoint_rule needs an SL context");
    require_classical(t, ctx);
    return apply_rule(carrier, ctx.n(), alpha_of(t, ctx.p()), ctx.p());
}

inline JordanType adjoint_rule(const JordanType& carrier, const JordanType& t, const GroupContext& ctx) {
    return adjoint_rule_outcome(carrier, t, ctx).type;
}

/// Sp(V): type on L(w2) from the type on the exterior square.
inline RuleOutcome sp_w2_rule_outcome(const JordanType& carrier, const JordanType& t, const GroupContext& ctx) {
    if (ctx.kind() != GroupKind::Sp) throw DomainError("sp_w2_rule needs an Sp context");
    require_classical(t, ctx);
    return apply_rule(carrier, ctx.n(), alpha_of(t, ctx.p()), ctx.p());
}

inline JordanType sp_w2_rule(const JordanType& carrier, const JordanType& t, const GroupContext& ctx) {
    return sp_w2_rule_outcome(carrier, t, ctx).type;
}

/// SO(V): type on L(2 w1) from the type on the symmetric square.
inline RuleOutcome so_2w1_rule_outcome(const JordanType& carrier, const JordanType& t, const GroupContext& ctx) {
    if (ctx.kind() != GroupKind::SO) throw DomainError("so_2w1_rule needs an SO context");
    require_classical(t, ctx);
    return apply_rule(carrier, ctx.n(), alpha_of(t, ctx.p()), ctx.p());
}

inline JordanType so_2w1_rule(const JordanType& carrier, const JordanType& t, const GroupContext& ctx) {
    return so_2w1_rule_outcome(carrier, t, ctx).type;
}

/// Restriction of u to an invariant hyperplane W with Ker X^m in W and
/// Ker X^(m+1) not in W: m = 0 drops a 1-block, m >= 1 shrinks one
/// (m+1)-block to an m-block.
inline JordanType restrict_codim1(const JordanType& t, std::size_t m) {
    if (t.multiplicity(m + 1) == 0) {
        throw DomainError("restrict_codim1: no block of size " + std::to_string(m + 1));
    }
    JordanType out = t;
    out.remove(m + 1, 1);
    if (m >= 1) out.add(m, 1);
    return out;
}

// --- reports -------------------------------------------------------------------

enum class Representation { Tensor, Ext2, Sym2, Irreducible };

inline std::string to_string(Representation r) {
    switch (r) {
    case Representation::Tensor: return "tensor";
    case Representation::Ext2: return "ext2";
    case Representation::Sym2: return "sym2";
    case Representation::Irreducible: return "irr";
    }
    return "?";
}

inline Representation parse_representation(std::string_view s) {
    if (s == "tensor") return Representation::Tensor;
    if (s == "ext2") return Representation::Ext2;
    if (s == "sym2") return Representation::Sym2;
    if (s == "irr") return Representation::Irreducible;
    throw ParseError("unknown representation '" + std::string(s) + "' (expected tensor, ext2, sym2 or irr)");
}

struct DecompositionReport {
    GroupContext context;
    Representation rep;
    JordanType input;
    /// Type on V (x) V*, the exterior square or the symmetric square.
    JordanType carrier;
    std::string carrier_name;
    std::optional<JordanType> irreducible;
    std::optional<Rule> rule;
    /// "oracle" for carrier-only reports, "closed-form" when a rule fired.
    std::string provenance;
    std::optional<bool> verified;
    std::string verification_detail;
};

namespace detail {

inline std::string carrier_name_for(GroupKind k) {
    switch (k) {
    case GroupKind::SL: return "tensor";
    case GroupKind::Sp: return "ext2";
    case GroupKind::SO: return "sym2";
    }
    return "?";
}

} // namespace detail

/// Computes the requested representation's Jordan type. With `verify` set the
/// result is cross-checked against an independent route:
///   tensor/ext2/sym2: materialised Kronecker or square matrix on all of V,
///   irr: the explicit Ker phi (/<delta_0>) construction, combined with the
///   complementary square for Sp and SO.
inline DecompositionReport decompose(const GroupContext& ctx, const JordanType& t, Representation rep, bool verify) {
    require_classical(t, ctx);
    const PrimeChar p = ctx.p();
    DecompositionReport r{ctx, rep, t, {}, {}, std::nullopt, std::nullopt, "oracle", std::nullopt, {}};

    auto direct_check = [&](const JordanType& claimed, const JordanType& direct, const std::string& what) {
        r.verified = claimed == direct;
        r.verification_detail = *r.verified ? what + " agrees" : what + " gives " + direct.str();
    };

    switch (rep) {
    case Representation::Tensor:
        r.carrier = tensor_dual_type(t, p);
        r.carrier_name = "tensor";
        if (verify) direct_check(r.carrier, jordan_type_of(adjoint_carrier_action(t, p)), "kronecker(u, u^-T)");
        return r;
    case Representation::Ext2:
        r.carrier = ext2_type(t, p);
        r.carrier_name = "ext2";
        if (verify) direct_check(r.carrier, jordan_type_of(exterior_square(unipotent_of(t, p))), "exterior_square(u)");
        return r;
    case Representation::Sym2:
        r.carrier = sym2_type(t, p);
        r.carrier_name = "sym2";
        if (verify) direct_check(r.carrier, jordan_type_of(symmetric_square(unipotent_of(t, p))), "symmetric_square(u)");
        return r;
    case Representation::Irreducible: break;
    }

    r.carrier_name = detail::carrier_name_for(ctx.kind());
    r.provenance = "closed-form";
    RuleOutcome outcome{{}, Rule::I};
    switch (ctx.kind()) {
    case GroupKind::SL:
        r.carrier = tensor_dual_type(t, p);
        outcome = adjoint_rule_outcome(r.carrier, t, ctx);
        break;
    case GroupKind::Sp:
        r.carrier = ext2_type(t, p);
        outcome = sp_w2_rule_outcome(r.carrier, t, ctx);
        break;
    case GroupKind::SO:
        r.carrier = sym2_type(t, p);
        outcome = so_2w1_rule_outcome(r.carrier, t, ctx);
        break;
    }
    r.irreducible = outcome.type;
    r.rule = outcome.rule;

    if (verify) {
        const JordanType structural = jordan_type_of(build_adjoint_action(t, p));
        JordanType combined = *r.irreducible;
        std::string what = "Ker phi construction";
        if (ctx.kind() == GroupKind::Sp) {
            combined += sym2_type(t, p);
            what += " (with symmetric square)";
        } else if (ctx.kind() == GroupKind::SO) {
            combined += ext2_type(t, p);
            what += " (with exterior square)";
        }
        r.verified = combined == structural;
        r.verification_detail = *r.verified ? what + " agrees" : what + " gives " + structural.str();
    }
    return r;
}

} // namespace jordan
