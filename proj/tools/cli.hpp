#pragma once

// Command implementations for the `jordan` tool. Kept in a header so the test
// suite can drive the exact same code paths in-process.

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jordan/jordan.hpp"
#include "jordan/reference_fixture.hpp"

namespace jordan::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,             // bad flags or malformed partition string
    kDomain = 3,            // partition not valid for the group, dimension mismatch
    kMismatch = 4,          // --verify or table reproduction disagreement
    kCharacteristic = 5,    // p not prime, or p = 2 for Sp/SO
    kResource = 6,          // dense-matrix cap exceeded
};

// --- JSON ------------------------------------------------------------------------

/// Partition as [[size, multiplicity], ...] ascending by size.
inline nlohmann::json to_json(const JordanType& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [s, m] : t.blocks()) arr.push_back({s, m});
    return arr;
}

inline JordanType jordan_type_from_json(const nlohmann::json& j) {
    JordanType t;
    for (const auto& pair : j) t.add(pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>());
    return t;
}

inline nlohmann::json to_json(const DecompositionReport& r) {
    nlohmann::json j;
    j["context"] = {{"group", to_string(r.context.kind())},
                    {"n", r.context.n()},
                    {"p", r.context.p().value()},
                    {"rep", to_string(r.rep)},
                    {"carrier_module", r.carrier_name}};
    j["input"] = to_json(r.input);
    j["carrier"] = to_json(r.carrier);
    j["irreducible"] = r.irreducible ? to_json(*r.irreducible) : nlohmann::json(nullptr);
    j["rule"] = r.rule ? nlohmann::json(to_string(*r.rule)) : nlohmann::json(nullptr);
    j["verified"] = r.verified ? nlohmann::json(*r.verified) : nlohmann::json(nullptr);
    return j;
}

// --- reference fixture ------------------------------------------------------------------

struct TableRow {
    std::size_t line = 0;
    std::size_t n = 0;
    std::uint32_t p = 0;
    JordanType input;
    JordanType tensor;
    JordanType irreducible;
};

/// Rows are `n;p;input_type;tensor_type;irr_type`. Blank lines and lines
/// starting with '#' are skipped.
inline std::vector<TableRow> parse_fixture(std::string_view text) {
    std::vector<TableRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ';')) fields.push_back(f);
        if (fields.size() != 5) {
            throw ParseError("fixture line " + std::to_string(lineno) + ": expected 5 ';'-separated fields");
        }
        TableRow row;
        row.line = lineno;
        try {
            row.n = std::stoul(fields[0]);
            row.p = static_cast<std::uint32_t>(std::stoul(fields[1]));
        } catch (const std::logic_error&) {
            throw ParseError("fixture line " + std::to_string(lineno) + ": bad n or p");
        }
        row.input = parse_jordan_type(fields[2]);
        row.tensor = parse_jordan_type(fields[3]);
        row.irreducible = parse_jordan_type(fields[4]);
        rows.push_back(std::move(row));
    }
    return rows;
}

struct RowCheck {
    bool passed = false;
    JordanType tensor;
    JordanType by_rule;
    JordanType by_construction;
    std::string rule;
    std::string problem;
};

/// Recomputes a fixture row: the tensor column from the oracle, the
/// irreducible column by the closed-form rules and by the explicit
/// subquotient construction.
inline RowCheck check_table_row(const TableRow& row) {
    RowCheck c;
    const PrimeChar p(row.p);
    if (row.input.dimension() != row.n) {
        c.problem = "input type has dimension " + std::to_string(row.input.dimension());
        return c;
    }
    GroupContext ctx(GroupKind::SL, row.n, p);
    c.tensor = tensor_dual_type(row.input, p);
    auto outcome = adjoint_rule_outcome(c.tensor, row.input, ctx);
    c.by_rule = outcome.type;
    c.rule = to_string(outcome.rule);
    c.by_construction = jordan_type_of(build_adjoint_action(row.input, p));
    std::vector<std::string> issues;
    if (!(c.tensor == row.tensor)) issues.push_back("tensor " + c.tensor.str() + " != " + row.tensor.str());
    if (!(c.by_rule == row.irreducible)) issues.push_back("rule " + c.by_rule.str() + " != " + row.irreducible.str());
    if (!(c.by_construction == row.irreducible)) {
        issues.push_back("construction " + c.by_construction.str() + " != " + row.irreducible.str());
    }
    for (const auto& s : issues) c.problem += (c.problem.empty() ? "" : "; ") + s;
    c.passed = issues.empty();
    return c;
}

// --- sweep -------------------------------------------------------------------------------

namespace detail {

inline std::size_t min_dimension(GroupKind k) {
    switch (k) {
    case GroupKind::SL: return 2;
    case GroupKind::Sp: return 4;
    case GroupKind::SO: return 5;
    }
    return 2;
}

inline bool dimension_allowed(GroupKind k, std::size_t n) {
    return n >= min_dimension(k) && (k != GroupKind::Sp || n % 2 == 0);
}

} // namespace detail

/// Irreducible-factor reports for every valid Jordan type of every allowed
/// n <= max_n, in (n, reverse-lexicographic partition) order. Work is spread
/// over `threads` workers; output order does not depend on scheduling.
inline std::vector<DecompositionReport> sweep(GroupKind kind, PrimeChar p, std::size_t max_n, unsigned threads = 1) {
    std::vector<std::pair<GroupContext, JordanType>> tasks;
    for (std::size_t n = detail::min_dimension(kind); n <= max_n; ++n) {
        if (!detail::dimension_allowed(kind, n)) continue;
        GroupContext ctx(kind, n, p);
        for (auto& t : partitions_of(n))
            if (validate_classical(t, ctx).ok) tasks.emplace_back(ctx, std::move(t));
    }
    std::vector<std::optional<DecompositionReport>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            try {
                results[i] = decompose(tasks[i].first, tasks[i].second, Representation::Irreducible, false);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    std::vector<DecompositionReport> out;
    out.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*results[i]));
    }
    return out;
}

// --- entry point -------------------------------------------------------------------------

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fixture file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CharacteristicError& e) {
        err << "error: " << e.what() << '\n';
        return kCharacteristic;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kResource;
    }
}

} // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jordan blocks of unipotent elements on tensor squares and their irreducible factors"};
    app.require_subcommand(1);

    std::uint32_t p = 0;
    std::string type_text;
    std::string group = "sl";
    std::string rep = "irr";
    bool verify = false;
    bool json = false;
    std::size_t cap = max_matrix_entries();

    auto* dec = app.add_subcommand("decompose", "Jordan type of one unipotent class on a chosen module");
    dec->add_option("--p", p, "prime characteristic")->required();
    dec->add_option("--type", type_text, "Jordan type on V, e.g. \"1^2, 4\"")->required();
    dec->add_option("--group", group, "sl, sp or so")->capture_default_str();
    dec->add_option("--rep", rep, "tensor, ext2, sym2 or irr")->capture_default_str();
    dec->add_flag("--verify", verify, "cross-check against an independent matrix computation");
    dec->add_flag("--json", json, "emit a JSON record");
    dec->add_option("--max-entries", cap, "dense-matrix entry cap")->capture_default_str();

    std::string fixture_path;
    auto* table = app.add_subcommand("reproduce-table", "recompute every row of the SL table fixture");
    table->add_option("--fixture", fixture_path, "fixture file (default: the embedded table)");
    table->add_flag("--json", json, "emit one JSON record per row");

    std::size_t max_n = 0;
    bool mult_free_only = false;
    unsigned threads = 1;
    auto* sw = app.add_subcommand("sweep", "all unipotent classes up to a dimension bound");
    sw->add_option("--p", p, "prime characteristic")->required();
    sw->add_option("--max-n", max_n, "largest dim V")->required();
    sw->add_option("--group", group, "sl, sp or so")->capture_default_str();
    sw->add_flag("--multiplicity-free-only", mult_free_only, "only rows whose irreducible type is multiplicity-free");
    sw->add_flag("--json", json, "emit one JSON record per line");
    sw->add_option("--threads", threads, "worker threads")->capture_default_str();
    sw->add_option("--max-entries", cap, "dense-matrix entry cap")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    ScopedEntryCap scoped_cap(cap);

    if (dec->parsed()) {
        return detail::guarded(err, [&] {
            const JordanType t = parse_jordan_type(type_text);
            const GroupKind kind = parse_group_kind(group);
            const Representation r = parse_representation(rep);
            const PrimeChar prime(p);
            GroupContext ctx(kind, t.dimension(), prime);
            auto report = decompose(ctx, t, r, verify);
            if (json) {
                out << to_json(report).dump() << '\n';
            } else {
                out << (report.irreducible ? *report.irreducible : report.carrier).str() << '\n';
                if (report.verified) {
                    out << "verify: " << (*report.verified ? "ok" : "MISMATCH") << " (" << report.verification_detail
                        << ")\n";
                }
            }
            return report.verified.value_or(true) ? kOk : kMismatch;
        });
    }

    if (table->parsed()) {
        return detail::guarded(err, [&] {
            const std::string text = fixture_path.empty() ? std::string(kReferenceFixture) : detail::read_file(fixture_path);
            auto rows = parse_fixture(text);
            std::size_t passed = 0;
            for (const auto& row : rows) {
                auto c = check_table_row(row);
                passed += c.passed;
                if (json) {
                    nlohmann::json j{{"line", row.line},
                                     {"n", row.n},
                                     {"p", row.p},
                                     {"input", to_json(row.input)},
                                     {"tensor", to_json(c.tensor)},
                                     {"irreducible_rule", to_json(c.by_rule)},
                                     {"irreducible_construction", to_json(c.by_construction)},
                                     {"rule", c.rule},
                                     {"passed", c.passed}};
                    out << j.dump() << '\n';
                } else {
                    out << (c.passed ? "PASS" : "FAIL") << "  n=" << row.n << " p=" << row.p << "  " << row.input.str()
                        << "  |  " << c.tensor.str() << "  |  " << c.by_rule.str() << "  [" << c.rule << "]";
                    if (!c.passed) out << "  -- " << c.problem;
                    out << '\n';
                }
            }
            if (!json) out << passed << "/" << rows.size() << " rows match\n";
            return passed == rows.size() ? kOk : kMismatch;
        });
    }

    return detail::guarded(err, [&] {
        const GroupKind kind = parse_group_kind(group);
        const PrimeChar prime(p);
        auto reports = sweep(kind, prime, max_n, threads);
        if (!json) out << "n\tinput\tcarrier\tirreducible\trule\n";
        for (const auto& r : reports) {
            if (mult_free_only && !r.irreducible->multiplicity_free()) continue;
            if (json) {
                out << to_json(r).dump() << '\n';
            } else {
                out << r.context.n() << '\t' << r.input.str() << '\t' << r.carrier.str() << '\t' << r.irreducible->str()
                    << '\t' << to_string(*r.rule) << '\n';
            }
        }
        return kOk;
    });
}

} // namespace jordan::cli
