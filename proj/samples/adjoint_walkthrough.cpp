// Walks one unipotent class of SL(6) in characteristic 3 through every layer:
// carrier type, closed-form rule, explicit construction, delta ladder.

#include <iostream>

#include "jordan/jordan.hpp"

int main() {
    using namespace jordan;
    const PrimeChar p(3);
    const JordanType t = parse_jordan_type("6");
    const GroupContext ctx(GroupKind::SL, t.dimension(), p);

    const JordanType carrier = tensor_dual_type(t, p);
    const auto outcome = adjoint_rule_outcome(carrier, t, ctx);
    const JordanType built = jordan_type_of(build_adjoint_action(t, p));

    std::cout << "u on V          : " << t << '\n'
              << "u on V (x) V*   : " << carrier << '\n'
              << "closed form     : " << outcome.type << " (rule " << to_string(outcome.rule) << ")\n"
              << "Ker phi/<delta0>: " << built << '\n';

    const auto ladder = verify_delta_ladder(t, p);
    std::cout << "delta ladder    : " << (ladder.passed ? "ok" : "FAILED") << " (" << ladder.detail << ")\n";
    return outcome.type == built && ladder.passed ? 0 : 1;
}
