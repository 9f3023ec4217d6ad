// gblab: Goldbach representation counts against circle-method predictions.
//
//   gblab sieve   --limit 1000000 --cache primes.gbsv
//   gblab count   --n-min 6 --n-max 100
//   gblab compare --n-min 900000 --n-max 1000000 --step 1000 --variant HARDY_LITTLEWOOD
//   gblab series  30 --trunc-q 100000
//   gblab arcs    10000000000000000000 --tau-c 7
//   gblab probe   lemma3 10000
//
// Options may also come from an INI/TOML file given by --config; flags on the
// command line take precedence.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gblab/cli.hpp"

namespace {

using gblab::cli::RunConfig;

void add_shared_options(CLI::App& app, RunConfig& cfg, std::vector<std::string>& variants,
                        std::vector<std::string>& modes, std::string& format, std::string& cache,
                        double& tau_c) {
    app.add_option("--limit", cfg.limit, "Sieve limit (default: what the command needs)");
    app.add_option("--n-min", cfg.n_min, "Smallest even N");
    app.add_option("--n-max", cfg.n_max, "Largest even N");
    app.add_option("--step", cfg.step, "Even stride between N values");
    app.add_option("--variant", variants, "Singular-series variant (repeatable)")
        ->check(CLI::IsMember({"PAPER_CLOSED", "PAPER_DIVISOR", "SUM_OVER_Q", "PRODUCT_OVER_P", "HARDY_LITTLEWOOD"}));
    app.add_option("--mode", modes, "Coefficient mode for SUM_OVER_Q / PRODUCT_OVER_P (repeatable)")
        ->check(CLI::IsMember({"mu", "mu2"}));
    app.add_option("--trunc-p", cfg.trunc_p, "Prime bound P for product forms");
    app.add_option("--trunc-q", cfg.trunc_q, "Modulus bound Q for the sum over q");
    app.add_option("--tau-c", tau_c, "Exponent c in tau = N r^-c");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--cache", cache, "Sieve cache file");
    app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--tol", cfg.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    app.add_flag("--verbose", cfg.verbose, "Extra columns / per-point probe lines");
    app.add_flag("--list", cfg.list_arcs, "arcs: print every major arc");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goldbach circle-method laboratory"};
    app.set_config("--config", "", "Read options from a config file");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::vector<std::string> variants, modes;
    std::string format = "csv";
    std::string cache;
    double tau_c = 0.0;
    add_shared_options(app, cfg, variants, modes, format, cache, tau_c);

    auto* sieve = app.add_subcommand("sieve", "Build or load the sieve and print pi(limit)");
    auto* count = app.add_subcommand("count", "Exact odd-prime representation counts");
    auto* compare = app.add_subcommand("compare", "Exact counts against singular-series predictions");
    auto* series = app.add_subcommand("series", "Every singular-series variant for one N");
    auto* arcs = app.add_subcommand("arcs", "Major/minor arc dissection for one N");
    auto* probe = app.add_subcommand("probe", "Numerical probes of the circle-method estimates");

    std::int64_t series_n = 0;
    series->add_option("N", series_n, "Even N")->required();
    std::uint64_t arcs_n = 0;
    arcs->add_option("N", arcs_n, "Even N")->required();
    std::string probe_name;
    std::optional<std::uint64_t> probe_n;
    probe->add_option("which", probe_name, "Probe to run")
        ->required()
        ->check(CLI::IsMember({"lemma2", "lemma3", "lemma4", "orthogonality", "page", "minor"}));
    probe->add_option("N", probe_n, "N for the probe");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    for (const auto& v : variants) cfg.variants.push_back(*gblab::parse_tag(v));
    for (const auto& m : modes) cfg.modes.push_back(*gblab::parse_mode(m));
    cfg.format = format == "json" ? gblab::cli::OutputFormat::Json : gblab::cli::OutputFormat::Csv;
    if (!cache.empty()) cfg.cache = cache;
    if (app.count("--tau-c")) cfg.tau_c = tau_c;

    if (*sieve) return gblab::cli::cmd_sieve(cfg, std::cout, std::cerr);
    if (*count) return gblab::cli::cmd_count(cfg, std::cout, std::cerr);
    if (*compare) return gblab::cli::cmd_compare(cfg, std::cout, std::cerr);
    if (*series) return gblab::cli::cmd_series(cfg, series_n, std::cout, std::cerr);
    if (*arcs) return gblab::cli::cmd_arcs(cfg, arcs_n, std::cout, std::cerr);
    return gblab::cli::cmd_probe(cfg, *gblab::cli::parse_probe(probe_name), probe_n, std::cout, std::cerr);
}
