// snakelemma: check diagrams, build snake / ring / four-lemma sequences, fuzz.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "snakelemma/commands.hpp"

namespace {

using snakelemma::Report;

int emit(const Report& r, bool json) {
    std::cout << (json ? r.json_text() : r.human_text());
    for (const auto& d : r.diagnostics)
        std::cerr << "snakelemma: " << d.kind << (d.where.empty() ? "" : " at " + d.where) << ": " << d.message
                  << "\n";
    return snakelemma::exit_code(r.status);
}

Report run_on_path(const std::string& command, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return snakelemma::run_command(command, [&](Report&) {
            throw snakelemma::ParseError(path, "cannot open file");
        });
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return snakelemma::run_file_command(command, ss.str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Snake lemma, ring lemma and four lemma over finitely presented abelian groups"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Print the report as JSON");

    std::string path;
    const std::pair<const char*, const char*> file_commands[] = {
        {"check", "Validate a diagram: commuting squares, exact rows, four-lemma hypotheses"},
        {"snake", "Ten-term kernel-cokernel sequence of a snake diagram, with delta"},
        {"ring", "Kernel-cokernel sequence of a composite beta.alpha"},
        {"four", "The three short exact sequences of a four-lemma diagram"}};
    for (const auto& [name, what] : file_commands) {
        auto* sub = app.add_subcommand(name, what);
        sub->add_option("file", path, "Diagram file (JSON)")->required();
        sub->add_flag("--json", json, "Print the report as JSON");
    }

    snakelemma::FuzzOptions fo;
    auto* fuzz = app.add_subcommand("fuzz", "Generate random diagrams and check every invariant");
    fuzz->add_option("--kind", fo.kind, "Diagram kind")->check(CLI::IsMember({"snake", "four", "ring"}));
    fuzz->add_option("--count", fo.count, "Number of cases")->capture_default_str();
    fuzz->add_option("--seed", fo.seed, "Base seed")->capture_default_str();
    fuzz->add_option("--cap", fo.cap, "Largest group order enumerated by the oracle")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    fuzz->add_flag("--finite", fo.finite, "Generate finite groups only (order <= cap)");
    fuzz->add_option("--max-gens", fo.max_gens, "Generators per group")->capture_default_str()->check(CLI::Range(1, 8));
    fuzz->add_option("--entry-bound", fo.entry_bound, "Bound on map entries")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));
    fuzz->add_option("--relation-bound", fo.relation_bound, "Bound on relation entries")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));
    fuzz->add_flag("--json", json, "Print the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return snakelemma::exit_code(snakelemma::Status::invalid_input);
    }

    if (fuzz->parsed())
        return emit(snakelemma::cmd_fuzz(fo), json);
    for (auto* sub : app.get_subcommands())
        return emit(run_on_path(sub->get_name(), path), json);
    return snakelemma::exit_code(snakelemma::Status::internal_error);
}
