// lorentz-genset: exact computation of generating sets for the integral
// Lorentz groups SO+(Q_n, Z), Q_n = x1^2 + x2^2 + x3^2 - n*x4^2, via bounded
// enumeration and Dirichlet fundamental domains.

#include <CLI11.hpp>

#include "lorentz/cli_app.hpp"

namespace {

long long flag_i64(const lorentz::Int& v) { return v.convert_to<long long>(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generating sets of SO+(Q_n, Z) via Dirichlet fundamental domains"};
    app.require_subcommand(1);

    lorentz::RunConfig cfg;
    long long n = flag_i64(cfg.n);
    long long bound = flag_i64(cfg.bound_T);
    std::string output;
    std::string input;
    std::string format = "json";

    auto add_common = [&](CLI::App* sub, bool with_bound = true) {
        sub->add_option("--n", n, "form parameter n in Q_n")->check(CLI::PositiveNumber);
        if (with_bound)
            sub->add_option("--bound", bound, "displacement bound T on a44")
                ->check(CLI::PositiveNumber);
        sub->add_option("-o,--output", output, "output path (default: stdout)");
        sub->add_option("--threads", cfg.threads,
                        "worker threads (0 = hardware concurrency)");
    };

    auto* enumerate = app.add_subcommand("enumerate", "list all elements with a44 <= bound");
    add_common(enumerate);
    enumerate->add_flag("--self-check", cfg.self_check,
                        "cross-check against the naive oracles first");

    auto* domain = app.add_subcommand("domain", "compute the certified Dirichlet domain");
    add_common(domain);
    domain->add_option("--max-doublings", cfg.max_doublings,
                       "bound-doubling attempts before giving up")
        ->check(CLI::PositiveNumber);
    domain->add_option("--format", format, "json | obj (obj also writes a sibling .obj)")
        ->check(CLI::IsMember({"json", "obj"}));

    auto* generators =
        app.add_subcommand("generators", "reduce the enumerated ball to generator classes");
    add_common(generators);
    generators->add_option("--max-doublings", cfg.max_doublings,
                           "bound-doubling attempts before giving up")
        ->check(CLI::PositiveNumber);
    generators->add_option("--bfs-radius", cfg.bfs_radius,
                           "word-length radius for witness search")
        ->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand(
        "verify-paper", "validate the bundled catalog, relation table and inverse pairs");
    verify->add_option("-o,--output", output, "output path (default: stdout)");

    auto* exp = app.add_subcommand("export", "re-emit a stored domain JSON as an OBJ mesh");
    exp->add_option("input", input, "domain JSON produced by the domain command")->required();
    exp->add_option("-o,--output", output, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.n = n;
    cfg.bound_T = bound;
    if (!output.empty()) cfg.output_path = output;
    if (!input.empty()) cfg.input_path = input;
    cfg.format = format == "obj" ? lorentz::OutputFormat::obj : lorentz::OutputFormat::json;

    if (enumerate->parsed()) cfg.command = lorentz::Command::enumerate;
    if (domain->parsed()) cfg.command = lorentz::Command::domain;
    if (generators->parsed()) cfg.command = lorentz::Command::generators;
    if (verify->parsed()) cfg.command = lorentz::Command::verify_paper;
    if (exp->parsed()) cfg.command = lorentz::Command::export_obj;

    return lorentz::run(cfg);
}
