#include "config.hpp"

#include <cstdlib>
#include <map>
#include <ostream>

#include <CLI11.hpp>

namespace charsum::cli {

std::string_view to_string(ModeRequest m) noexcept {
    switch (m) {
        case ModeRequest::exact: return "exact";
        case ModeRequest::numeric: return "numeric";
        case ModeRequest::automatic: return "auto";
    }
    return "auto";
}

namespace {

const std::map<std::string, ModeRequest> kModes{
    {"exact", ModeRequest::exact}, {"numeric", ModeRequest::numeric}, {"auto", ModeRequest::automatic}};
const std::map<std::string, Format> kFormats{{"jsonl", Format::jsonl}, {"json-lines", Format::jsonl}, {"csv", Format::csv}};

void add_common(CLI::App* app, RunConfig& cfg) {
    app->add_option("--mode", cfg.mode, "exact, numeric or auto")
        ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
    app->add_option("--seed", cfg.seed, "seed for random sets and weights");
    app->add_option("--workers", cfg.workers, "worker threads (CHARSUM_WORKERS overrides)")
        ->check(CLI::Range(1u, 1024u));
    app->add_option("-o,--output", cfg.output, "output file (default stdout)");
    app->add_option("--format", cfg.format, "jsonl or csv")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

}  // namespace

ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Multiplicative character sums over subgroups of F_p*", "charsum"};
    app.require_subcommand(1);

    auto* sum = app.add_subcommand("sum", "evaluate one sum");
    sum->add_option("--p", cfg.p, "odd prime")->required();
    sum->add_option("--kind", cfg.kind, "shifted, nonlinear, product, kloosterman, inverse-shift or exp")
        ->check(CLI::IsMember({"shifted", "nonlinear", "product", "kloosterman", "inverse-shift", "exp"}));
    sum->add_option("--chi", cfg.chi, "character index or 'quadratic'");
    sum->add_option("--subgroup-order,--subgroup", cfg.subgroup, "subgroup order or 'near-sqrt'");
    sum->add_option("--d", cfg.d, "explicit set instead of a subgroup")->delimiter(',');
    sum->add_option("--q", cfg.q, "modulus for --kind exp (default p)");
    sum->add_option("--a", cfg.a, "shift");
    sum->add_option("--b", cfg.b, "second shift (product)");
    sum->add_option("--k", cfg.k, "frequency (kloosterman, inverse-shift)");
    sum->add_option("--l", cfg.l, "second frequency (kloosterman)");
    add_common(sum, cfg);

    auto* verify = app.add_subcommand("verify", "run the claim checkers over a prime range");
    verify->add_option("--p-min", cfg.p_min, "smallest modulus");
    verify->add_option("--p-max", cfg.p_max, "largest modulus");
    verify->add_option("--claims", cfg.claims, "comma-separated claim keys")->delimiter(',');
    verify->add_option("--budget", cfg.budget, "stop after this many verdicts");
    verify->add_option("--eps", cfg.epsilon, "epsilon for eps_corollary")->check(CLI::PositiveNumber);
    add_common(verify, cfg);

    auto* scan = app.add_subcommand("scan", "extremal statistics for the open problems");
    scan->add_option("--problem", cfg.problem, "1, 5, 6a or 6b")->check(CLI::IsMember({"1", "5", "6a", "6b"}));
    scan->add_option("--p-min", cfg.p_min, "smallest prime");
    scan->add_option("--p-max", cfg.p_max, "largest prime");
    scan->add_option("--chi", cfg.chi, "character index or 'quadratic'");
    add_common(scan, cfg);

    auto* table = app.add_subcommand("table", "summarize a verify or scan output file as CSV");
    table->add_option("input", cfg.input, "json-lines file")->required();
    table->add_option("-o,--output", cfg.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (sum->parsed()) cfg.command = Command::sum;
    else if (verify->parsed()) cfg.command = Command::verify;
    else if (scan->parsed()) cfg.command = Command::scan;
    else cfg.command = Command::table;

    if (const char* env = std::getenv("CHARSUM_WORKERS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (*end != '\0' || n < 1 || n > 1024) {
            err << "error: CHARSUM_WORKERS must be an integer in [1, 1024]\n";
            return 2;
        }
        cfg.workers = static_cast<unsigned>(n);
    }
    return cfg;
}

}  // namespace charsum::cli
