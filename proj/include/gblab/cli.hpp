#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gblab/primes.hpp"
#include "gblab/series.hpp"

namespace gblab::cli {

/// Bad flag values or combinations. Commands map it to exit status 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::uint64_t limit = 0;  // 0: derived from what the command needs
    std::uint64_t n_min = 6;
    std::uint64_t n_max = 6;
    std::uint64_t step = 2;
    std::vector<SeriesTag> variants;         // empty: every variant
    std::vector<CoefficientMode> modes;      // empty: both modes
    std::uint64_t trunc_p = kDefaultTruncation;
    std::uint64_t trunc_q = kDefaultTruncation;
    std::optional<double> tau_c;             // arcs default 7, lemma3 default 2
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::filesystem::path> cache;
    unsigned workers = 1;
    double tol = 1e-6;
    bool verbose = false;
    bool list_arcs = false;

    /// Range invariants for the table commands: 6 <= n_min <= n_max <= limit
    /// (when limit is set), step even and >= 2.
    void validate_range() const;

    /// Variant list expanded over the requested modes, in output order.
    std::vector<SeriesVariant> expanded_variants() const;
};

/// Exact counts joined with the asymptotic predictions for one n and variant.
/// pred_paper = n/(2 r^2) * S_variant(n), pred_hl = S_HL(n) * n / r^2,
/// both ratios are r_ordered / prediction (NaN when the prediction is <= 0).
struct ComparisonRow {
    std::uint64_t n = 0;
    std::uint64_t r_ordered = 0;
    std::uint64_t r_unordered = 0;
    double pred_paper = 0.0;
    double pred_hl = 0.0;
    double ratio_paper = 0.0;
    double ratio_hl = 0.0;
    std::string variant_tag;
    double ratio_paper_unordered = 0.0;  // verbose column
};

inline constexpr const char* kCompareHeader =
    "N,r_ordered,r_unordered,pred_paper,pred_hl,ratio_paper,ratio_hl,variant";

/// Builds the sieve (or loads config.cache when it covers `needed`).
PrimeSieve obtain_sieve(const RunConfig& config, std::uint64_t needed, std::ostream& diag);

std::vector<ComparisonRow> compare_rows(const PrimeSieve& sieve, const RunConfig& config);
void write_compare_csv(std::ostream& out, const std::vector<ComparisonRow>& rows, bool verbose);
void write_compare_json(std::ostream& out, const std::vector<ComparisonRow>& rows, bool verbose);

/// 17 significant digits; "nan"/"inf" for non-finite values.
std::string format_real(double value);

enum class Probe { Lemma2, Lemma3, Lemma4, Orthogonality, Page, Minor };
std::optional<Probe> parse_probe(const std::string& name);

// Each command writes data to `out`, diagnostics to `err`, and returns the
// process exit status: 0 success, 1 runtime or invariant failure, 2 usage.
int cmd_sieve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_count(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_series(const RunConfig& config, std::int64_t n, std::ostream& out, std::ostream& err);
int cmd_arcs(const RunConfig& config, std::uint64_t n, std::ostream& out, std::ostream& err);
int cmd_probe(const RunConfig& config, Probe which, std::optional<std::uint64_t> n, std::ostream& out,
              std::ostream& err);

}  // namespace gblab::cli
