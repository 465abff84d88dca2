#pragma once

// Command implementations behind the snakelemma executable. Each command
// returns a Report; the executable only parses arguments and prints.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snakelemma/diagram_io.hpp"
#include "snakelemma/generator.hpp"
#include "snakelemma/oracle.hpp"

namespace snakelemma {

enum class Status { ok, invalid_input, counterexample, internal_error };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::ok: return "ok";
    case Status::invalid_input: return "invalid-input";
    case Status::counterexample: return "counterexample";
    case Status::internal_error: return "internal-error";
    }
    return "internal-error";
}

inline int exit_code(Status s) {
    switch (s) {
    case Status::ok: return 0;
    case Status::invalid_input: return 2;
    case Status::counterexample: return 3;
    case Status::internal_error: return 4;
    }
    return 4;
}

struct Diagnostic {
    std::string kind, where, message;
};

struct Report {
    std::string command;
    Status status = Status::ok;
    std::vector<Check> checks;
    Json data = Json::object(); ///< command-specific payload
    std::vector<std::string> text; ///< human-readable body
    std::vector<Diagnostic> diagnostics;

    /// Demotes an ok report to counterexample if any check failed.
    void settle() {
        if (status == Status::ok && !all_ok(checks))
            status = Status::counterexample;
    }

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["status"] = status_name(status);
        Json cs = Json::array();
        for (const auto& c : checks)
            cs.push_back(Json{{"name", c.name}, {"ok", c.ok}});
        j["checks"] = std::move(cs);
        for (auto it = data.begin(); it != data.end(); ++it)
            j[it.key()] = *it;
        Json ds = Json::array();
        for (const auto& d : diagnostics)
            ds.push_back(Json{{"kind", d.kind}, {"where", d.where}, {"message", d.message}});
        j["diagnostics"] = std::move(ds);
        return j;
    }

    std::string json_text() const { return to_json().dump(2) + "\n"; }

    std::string human_text() const {
        std::string s = command + ": " + status_name(status) + "\n";
        for (const auto& line : text)
            s += line + "\n";
        if (!checks.empty()) {
            s += "checks:\n";
            for (const auto& c : checks)
                s += std::string("  [") + (c.ok ? "ok" : "FAIL") + "] " + c.name + "\n";
        }
        for (const auto& d : diagnostics)
            s += "error: " + d.kind + (d.where.empty() ? "" : " at " + d.where) + ": " + d.message + "\n";
        return s;
    }
};

namespace report_detail {

inline std::string matrix_text(const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += (j ? ", " : "") + m(i, j).get_str();
        s += "]";
    }
    return s + "]";
}

inline Json factors_json(const FpAbGroup& g) {
    Json f = Json::array();
    for (const auto& d : g.invariant_factors())
        f.push_back(io_detail::int_json(d));
    return f;
}

inline Json group_json(const FpAbGroup& g) {
    Json j{{"invariant_factors", factors_json(g)}};
    const Json p = to_json(g);
    j["gens"] = p["gens"];
    j["relations"] = p["relations"];
    return j;
}

inline Json sequence_json(const ExactSequence& s) {
    Json terms = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        Json t{{"label", s.labels()[i]}};
        const Json g = group_json(s.terms()[i]);
        for (auto it = g.begin(); it != g.end(); ++it)
            t[it.key()] = *it;
        if (i + 1 < s.size())
            t["map"] = to_json(s.maps()[i].matrix());
        terms.push_back(std::move(t));
    }
    Json exact = Json::array();
    for (bool b : s.certificate())
        exact.push_back(b);
    return Json{{"terms", std::move(terms)}, {"exact", std::move(exact)}};
}

inline void sequence_text(std::vector<std::string>& out, const std::string& title, const ExactSequence& s) {
    out.push_back(title + ":");
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::string line = "  " + s.labels()[i] + " = " + s.terms()[i].describe();
        if (i > 0 && i + 1 < s.size())
            line += s.certificate()[i - 1] ? "  (exact)" : "  (NOT exact)";
        out.push_back(line);
        if (i + 1 < s.size())
            out.push_back("    | " + matrix_text(s.maps()[i].matrix()));
    }
}

inline void exactness_checks(std::vector<Check>& checks, const std::string& prefix, const ExactSequence& s) {
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        checks.push_back({prefix + "exact at " + s.labels()[i], s.exact_at(i)});
}

inline void append(std::vector<Check>& into, const std::vector<Check>& from, const std::string& prefix = "") {
    for (const auto& c : from)
        into.push_back({prefix + c.name, c.ok});
}

} // namespace report_detail

/// Runs body and turns exceptions into a status plus diagnostics.
inline Report run_command(const std::string& command, const std::function<void(Report&)>& body) {
    Report r;
    r.command = command;
    auto fail = [&](Status s, std::string kind, std::string where, std::string message) {
        r.status = s;
        r.diagnostics.push_back({std::move(kind), std::move(where), std::move(message)});
    };
    try {
        body(r);
        r.settle();
    } catch (const ParseError& e) {
        fail(Status::invalid_input, "ParseError", e.position(), e.what());
    } catch (const DiagramError& e) {
        fail(Status::invalid_input, DiagramError::kind_name(e.kind()), e.where(), e.what());
    } catch (const IllDefined& e) {
        fail(Status::invalid_input, "IllDefined", "", e.what());
    } catch (const ContractViolation& e) {
        fail(Status::invalid_input, "ContractViolation", "", e.what());
    } catch (const InternalError& e) {
        fail(Status::internal_error, "InternalError", "", e.what());
    } catch (const std::exception& e) {
        fail(Status::internal_error, "InternalError", "", e.what());
    }
    return r;
}

inline Report cmd_check(const DiagramFile& file) {
    return run_command("check", [&](Report& r) {
        r.data["kind"] = file.kind;
        if (file.kind == "snake") {
            validate(snake_of(file));
            r.checks = {{"squares commute", true}, {"rows exact", true}};
        } else if (file.kind == "four") {
            validate_four(four_of(file));
            r.checks = {{"alpha surjective", true},
                        {"delta injective", true},
                        {"squares commute", true},
                        {"rows exact", true}};
        } else {
            const auto [alpha, beta] = ring_of(file);
            if (!(alpha.target() == beta.source()))
                throw ContractViolation("ring: alpha.target must equal beta.source");
            r.checks = {{"alpha and beta composable", true}};
        }
        r.text.push_back("diagram kind: " + file.kind);
    });
}

inline Report cmd_snake(const DiagramFile& file) {
    using namespace report_detail;
    return run_command("snake", [&](Report& r) {
        const ValidatedSnake v = validate(snake_of(file));
        const SnakeSequence s = snake_sequence(v);
        const SpecializationReport sp = classical_specialization(v, s);
        const ConnectingHom& c = s.connecting;

        exactness_checks(r.checks, "", s.sequence);
        append(r.checks, sp.checks, "specialization: ");

        r.data["sequence"] = sequence_json(s.sequence);
        Json dom = group_json(c.domain.group), cod = group_json(c.codomain.group);
        dom["inclusion"] = to_json(c.domain.inclusion.matrix());
        cod["projection"] = to_json(c.codomain.projection.matrix());
        r.data["delta"] = Json{{"domain", std::move(dom)},
                               {"codomain", std::move(cod)},
                               {"matrix", to_json(c.delta.matrix())},
                               {"injective", is_injective(c.delta)},
                               {"surjective", is_surjective(c.delta)}};
        Json spj{{"f1_injective", sp.f1_injective}, {"g_surjective", sp.g_surjective}};
        spj["classical"] = sp.classical ? sequence_json(*sp.classical) : Json(nullptr);
        r.data["specialization"] = std::move(spj);

        sequence_text(r.text, "sequence", s.sequence);
        r.text.push_back("delta: " + c.domain.group.describe() + " -> " + c.codomain.group.describe() +
                         ", matrix " + matrix_text(c.delta.matrix()));
        r.text.push_back("  domain inclusion into C: " + matrix_text(c.domain.inclusion.matrix()));
        r.text.push_back("  codomain projection from A1: " + matrix_text(c.codomain.projection.matrix()));
        r.text.push_back(std::string("f1 injective: ") + (sp.f1_injective ? "yes" : "no") +
                         ", g surjective: " + (sp.g_surjective ? "yes" : "no"));
        if (sp.classical)
            sequence_text(r.text, "classical sequence", *sp.classical);
    });
}

inline Report cmd_ring(const DiagramFile& file) {
    using namespace report_detail;
    return run_command("ring", [&](Report& r) {
        const auto [alpha, beta] = ring_of(file);
        if (!(alpha.target() == beta.source()))
            throw ContractViolation("ring: alpha.target must equal beta.source");
        const ExactSequence seq = ring_lemma(alpha, beta);
        const ExactRing ring = exact_ring(alpha, beta);
        exactness_checks(r.checks, "", seq);
        append(r.checks, ring.checks, "ring: ");
        r.data["sequence"] = sequence_json(seq);
        sequence_text(r.text, "sequence", seq);
    });
}

inline Report cmd_four(const DiagramFile& file) {
    using namespace report_detail;
    return run_command("four", [&](Report& r) {
        const FourLemmaResult res = four_lemma(validate_four(four_of(file)));
        append(r.checks, res.checks);
        append(r.checks, res.trace.checks, "proof: ");
        r.data["sequence_1"] = sequence_json(res.es1);
        r.data["sequence_2"] = sequence_json(res.es2);
        r.data["sequence_3"] = sequence_json(res.esr);
        Json ip = Json::object();
        for (const auto& c : res.checks)
            if (c.name.find("==") != std::string::npos)
                ip[c.name] = c.ok;
        r.data["in_particular"] = std::move(ip);
        sequence_text(r.text, "(1)", res.es1);
        sequence_text(r.text, "(2)", res.es2);
        sequence_text(r.text, "(3)", res.esr);
    });
}

/// Parses text and runs one of check, snake, ring, four on it.
inline Report run_file_command(const std::string& command, const std::string& text) {
    std::optional<DiagramFile> file;
    Report parsed = run_command(command, [&](Report&) { file = parse_diagram(text); });
    if (!file)
        return parsed;
    if (command == "check")
        return cmd_check(*file);
    if (command == "snake")
        return cmd_snake(*file);
    if (command == "ring")
        return cmd_ring(*file);
    if (command == "four")
        return cmd_four(*file);
    return run_command(command, [&](Report&) { throw ContractViolation("unknown command " + command); });
}

struct FuzzOptions {
    std::string kind = "snake"; ///< snake | four | ring
    std::size_t count = 100;
    std::uint64_t seed = 0;
    std::size_t cap = kDefaultEnumCap; ///< enumeration cap for the oracle
    bool finite = false;
    std::size_t max_gens = 4;
    std::int64_t entry_bound = 5;
    std::int64_t relation_bound = 6;
};

namespace fuzz_detail {

struct CaseResult {
    std::vector<Check> checks;
    bool oracle = false;
};

inline bool enumerable(const std::vector<FpAbGroup>& gs, std::size_t cap) {
    for (const auto& g : gs) {
        const auto o = g.order();
        if (!o || *o > cap)
            return false;
    }
    return true;
}

inline void oracle_sequence(CaseResult& out, const std::string& name, const ExactSequence& s, std::size_t cap) {
    out.checks.push_back({"oracle: " + name, enum_exactness(to_enum(s, cap)) == s.certificate()});
}

inline CaseResult snake_case(const SnakeDiagram& d, std::uint64_t seed, std::size_t cap) {
    CaseResult out;
    const ValidatedSnake v = validate(d);
    const SnakeSequence s = snake_sequence(v);
    report_detail::exactness_checks(out.checks, "", s.sequence);
    report_detail::append(out.checks, classical_specialization(v, s).checks, "specialization: ");
    Rng rng(mix_seed(seed));
    bool same = true;
    for (int k = 0; k < 3; ++k)
        same = same && connecting_hom(v, &rng).delta == s.connecting.delta;
    out.checks.push_back({"delta independent of witnesses", same});
    std::vector<FpAbGroup> all = s.sequence.terms();
    for (const auto* g : {&d.a(), &d.b(), &d.c(), &d.a1(), &d.b1(), &d.c1()})
        all.push_back(*g);
    if (enumerable(all, cap)) {
        out.oracle = true;
        oracle_sequence(out, "snake sequence", s.sequence, cap);
        const EnumConnecting ec = enum_connecting(v, cap);
        out.checks.push_back({"oracle: delta lift independence", ec.lift_independent});
        out.checks.push_back({"oracle: delta agrees", ec.matches_lattice});
    }
    return out;
}

inline CaseResult four_case(const FourDiagram& d, std::size_t cap) {
    CaseResult out;
    const FourLemmaResult r = four_lemma(validate_four(d));
    report_detail::append(out.checks, r.checks);
    report_detail::append(out.checks, r.trace.checks, "proof: ");
    std::vector<FpAbGroup> all = r.es1.terms();
    for (const auto* s : {&r.es2, &r.esr})
        all.insert(all.end(), s->terms().begin(), s->terms().end());
    if (enumerable(all, cap)) {
        out.oracle = true;
        oracle_sequence(out, "(1)", r.es1, cap);
        oracle_sequence(out, "(2)", r.es2, cap);
        oracle_sequence(out, "(3)", r.esr, cap);
    }
    return out;
}

inline CaseResult ring_case(const Hom& alpha, const Hom& beta, std::size_t cap) {
    CaseResult out;
    const ExactSequence seq = ring_lemma(alpha, beta);
    report_detail::exactness_checks(out.checks, "", seq);
    report_detail::append(out.checks, exact_ring(alpha, beta).checks, "ring: ");
    if (enumerable(seq.terms(), cap)) {
        out.oracle = true;
        oracle_sequence(out, "ring sequence", seq, cap);
    }
    return out;
}

/// Generates the diagram for cfg and returns it with a closure running the
/// invariant suite on it.
inline std::pair<DiagramFile, std::function<CaseResult()>> make_case(const std::string& kind, const GenConfig& cfg,
                                                                     std::size_t cap) {
    if (kind == "snake") {
        SnakeDiagram d = gen_snake(cfg);
        DiagramFile f = file_of(d);
        return {std::move(f), [d, seed = cfg.seed, cap] { return snake_case(d, seed, cap); }};
    }
    if (kind == "four") {
        FourDiagram d = gen_four(cfg);
        DiagramFile f = file_of(d);
        return {std::move(f), [d, cap] { return four_case(d, cap); }};
    }
    auto [alpha, beta] = gen_ring(cfg);
    DiagramFile f = file_of(alpha, beta);
    return {std::move(f), [alpha, beta, cap] { return ring_case(alpha, beta, cap); }};
}

} // namespace fuzz_detail

/// Seed of case i; independent of the other cases so a failure can be
/// replayed alone.
inline std::uint64_t fuzz_case_seed(std::uint64_t seed, std::size_t i) { return mix_seed(seed ^ mix_seed(i)); }

inline Report cmd_fuzz(const FuzzOptions& opt) {
    return run_command("fuzz", [&](Report& r) {
        if (opt.kind != "snake" && opt.kind != "four" && opt.kind != "ring")
            throw ContractViolation("fuzz: unknown kind " + opt.kind);
        if (opt.cap == 0)
            throw ContractViolation("fuzz: cap must be positive");
        GenConfig cfg;
        cfg.finite = opt.finite;
        cfg.order_cap = opt.cap;
        cfg.max_gens = opt.max_gens;
        cfg.entry_bound = opt.entry_bound;
        cfg.relation_bound = opt.relation_bound;

        std::size_t oracle_cases = 0, retries = 0, done = 0;
        Json failure = nullptr;
        for (std::size_t i = 0; i < opt.count && failure.is_null(); ++i) {
            cfg.seed = fuzz_case_seed(opt.seed, i);
            std::optional<std::pair<DiagramFile, std::function<fuzz_detail::CaseResult()>>> c;
            for (int attempt = 0; !c; ++attempt) {
                try {
                    c = fuzz_detail::make_case(opt.kind, cfg, opt.cap);
                } catch (const GenerationExhausted&) {
                    if (attempt >= 16)
                        throw InternalError("fuzz: generator exhausted repeatedly for case " + std::to_string(i));
                    ++retries;
                    cfg.seed = mix_seed(cfg.seed);
                }
            }
            ++done;
            std::string failed;
            Status bad = Status::counterexample;
            try {
                const fuzz_detail::CaseResult res = c->second();
                oracle_cases += res.oracle ? 1 : 0;
                for (const auto& ch : res.checks) {
                    if (!ch.ok) {
                        failed = ch.name;
                        break;
                    }
                }
            } catch (const InternalError& e) {
                failed = std::string("internal error: ") + e.what();
                bad = Status::internal_error;
            } catch (const std::exception& e) {
                failed = std::string("exception: ") + e.what();
            }
            if (failed.empty())
                continue;
            failure = Json{{"case", i}, {"seed", cfg.seed}, {"check", failed}, {"diagram", to_json(c->first)}};
            r.status = bad;
            r.diagnostics.push_back({bad == Status::internal_error ? "InternalError" : "Counterexample",
                                     "case " + std::to_string(i), failed});
        }
        r.checks.push_back({"all cases pass", failure.is_null()});
        r.data["kind"] = opt.kind;
        r.data["count"] = opt.count;
        r.data["seed"] = opt.seed;
        r.data["cap"] = opt.cap;
        r.data["finite"] = opt.finite;
        r.data["cases_run"] = done;
        r.data["oracle_cases"] = oracle_cases;
        r.data["generator_retries"] = retries;
        r.data["failure"] = failure;
        r.text.push_back("cases run: " + std::to_string(done) + " (" + opt.kind + ", seed " +
                         std::to_string(opt.seed) + ")");
        r.text.push_back("checked against the enumeration oracle: " + std::to_string(oracle_cases));
        if (!failure.is_null())
            r.text.push_back("first failure:\n" + failure.dump(2));
    });
}

} // namespace snakelemma
