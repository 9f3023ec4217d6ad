#include "gblab/cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

#include "gblab/circle.hpp"
#include "gblab/errors.hpp"
#include "gblab/goldbach.hpp"
#include "gblab/parallel.hpp"

namespace gblab::cli {

namespace {

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

constexpr std::uint64_t kBulkCountThreshold = 256;

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string json_real(double value) { return std::isfinite(value) ? format_real(value) : "null"; }

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

double safe_ratio(std::uint64_t exact, double predicted) {
    return predicted > 0.0 ? static_cast<double>(exact) / predicted : std::numeric_limits<double>::quiet_NaN();
}

struct Stats {
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
    std::size_t finite = 0;
    std::size_t undefined = 0;
};

Stats summarize(std::vector<double> values) {
    Stats s;
    std::vector<double> finite;
    for (const double v : values) {
        if (std::isfinite(v))
            finite.push_back(v);
        else
            ++s.undefined;
    }
    s.finite = finite.size();
    if (finite.empty()) {
        s.mean = s.median = s.max = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.mean = pairwise_sum<double>(finite) / static_cast<double>(finite.size());
    s.max = *std::ranges::max_element(finite);
    std::ranges::sort(finite);
    const std::size_t mid = finite.size() / 2;
    s.median = finite.size() % 2 ? finite[mid] : 0.5 * (finite[mid - 1] + finite[mid]);
    return s;
}

void print_stats(std::ostream& err, const std::string& name, const Stats& s) {
    err << "summary " << name << ": mean=" << format_real(s.mean) << " median=" << format_real(s.median)
        << " max=" << format_real(s.max) << " n=" << s.finite;
    if (s.undefined) err << " undefined=" << s.undefined;
    err << "\n";
}

std::vector<std::uint64_t> requested_ns(const RunConfig& config) {
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = config.n_min; n <= config.n_max; n += config.step) ns.push_back(n);
    return ns;
}

std::vector<GoldbachCount> counts_for(const PrimeSieve& sieve, const std::vector<std::uint64_t>& ns,
                                      unsigned workers) {
    std::vector<GoldbachCount> out(ns.size());
    if (ns.size() >= kBulkCountThreshold) {
        CountRangeOptions options;
        options.workers = workers;
        const auto all = count_range(sieve, ns.back(), options);
        for (std::size_t i = 0; i < ns.size(); ++i) out[i] = all[(ns[i] - 6) / 2];
    } else {
        parallel_for(ns.size(), workers, [&](std::size_t i0, std::size_t i1) {
            for (std::size_t i = i0; i < i1; ++i) out[i] = count_one(sieve, ns[i]);
        });
    }
    return out;
}

std::uint64_t isqrt_ceil(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r < n) ++r;
    return r;
}

void require_truncations(const RunConfig& config) {
    if (config.trunc_p < 3) throw UsageError("--trunc-p must be >= 3");
    if (config.trunc_q < 1) throw UsageError("--trunc-q must be >= 1");
}

}  // namespace

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void RunConfig::validate_range() const {
    if (step < 2 || step % 2 != 0) throw UsageError("--step must be even and >= 2");
    if (n_min % 2 != 0 || n_max % 2 != 0) throw UsageError("--n-min and --n-max must be even");
    if (n_min < 6) throw UsageError("--n-min must be >= 6");
    if (n_min > n_max) throw UsageError("--n-min must not exceed --n-max");
    if (limit != 0 && n_max > limit) throw UsageError("--n-max must not exceed --limit");
}

std::vector<SeriesVariant> RunConfig::expanded_variants() const {
    const std::vector<SeriesTag> all_tags{SeriesTag::PaperClosed, SeriesTag::PaperDivisor, SeriesTag::SumOverQ,
                                          SeriesTag::ProductOverP, SeriesTag::HardyLittlewood};
    const std::vector<CoefficientMode> all_modes{CoefficientMode::MuAsWritten, CoefficientMode::MuSquared};
    const auto& tags = variants.empty() ? all_tags : variants;
    const auto& mode_list = modes.empty() ? all_modes : modes;
    std::vector<SeriesVariant> out;
    for (const auto tag : tags) {
        SeriesVariant v{tag, CoefficientMode::MuSquared};
        if (!v.uses_mode()) {
            if (std::ranges::find(out, v) == out.end()) out.push_back(v);
            continue;
        }
        for (const auto mode : mode_list) {
            v.mode = mode;
            if (std::ranges::find(out, v) == out.end()) out.push_back(v);
        }
    }
    return out;
}

std::optional<Probe> parse_probe(const std::string& name) {
    static const std::map<std::string, Probe> names{{"lemma2", Probe::Lemma2}, {"lemma3", Probe::Lemma3},
                                                    {"lemma4", Probe::Lemma4}, {"orthogonality", Probe::Orthogonality},
                                                    {"page", Probe::Page},     {"minor", Probe::Minor}};
    const auto it = names.find(name);
    if (it == names.end()) return std::nullopt;
    return it->second;
}

PrimeSieve obtain_sieve(const RunConfig& config, std::uint64_t needed, std::ostream& diag) {
    const std::uint64_t limit = std::max(config.limit, needed);
    if (limit < 2) throw UsageError("--limit must be >= 2");
    if (config.cache && std::filesystem::exists(*config.cache)) {
        PrimeSieve loaded = read_sieve_cache(*config.cache);
        if (loaded.limit() >= limit) {
            diag << "loaded sieve cache " << config.cache->string() << " (limit " << loaded.limit() << ")\n";
            return loaded;
        }
        diag << "sieve cache limit " << loaded.limit() << " < " << limit << ", rebuilding\n";
    }
    return PrimeSieve::build(limit, config.workers);
}

std::vector<ComparisonRow> compare_rows(const PrimeSieve& sieve, const RunConfig& config) {
    config.validate_range();
    require_truncations(config);
    if (config.n_max > sieve.limit()) throw DomainError("compare: n_max exceeds sieve limit");

    const auto ns = requested_ns(config);
    const auto counts = counts_for(sieve, ns, config.workers);
    const auto variants = config.expanded_variants();
    const bool need_table = std::ranges::any_of(variants, [](const auto& v) { return v.tag == SeriesTag::SumOverQ; });
    const std::optional<ArithmeticTable> table =
        need_table ? std::optional<ArithmeticTable>(ArithmeticTable(config.trunc_q)) : std::nullopt;
    const double c2 = twin_prime_constant(sieve, config.trunc_p);

    std::vector<ComparisonRow> rows(ns.size() * variants.size());
    parallel_for(ns.size(), config.workers, [&](std::size_t i0, std::size_t i1) {
        for (std::size_t i = i0; i < i1; ++i) {
            const std::uint64_t n = ns[i];
            const auto f = sieve.factorize(n);
            const double nd = static_cast<double>(n);
            const double r = std::log(nd);
            double s_hl = 2.0 * c2;
            for (const auto& pp : f.factors)
                if (pp.prime > 2) s_hl *= static_cast<double>(pp.prime - 1) / static_cast<double>(pp.prime - 2);
            const double pred_hl = s_hl * nd / (r * r);
            for (std::size_t v = 0; v < variants.size(); ++v) {
                const auto& variant = variants[v];
                double s = 0.0;
                switch (variant.tag) {
                    case SeriesTag::SumOverQ:
                        s = series_sum_over_q(*table, n, config.trunc_q, variant.mode).value;
                        break;
                    case SeriesTag::HardyLittlewood: s = s_hl; break;
                    case SeriesTag::PaperDivisor: s = series_paper_divisor(f).value; break;
                    default: s = evaluate_series(sieve, n, variant, config.trunc_p, config.trunc_q).value;
                }
                ComparisonRow& row = rows[i * variants.size() + v];
                row.n = n;
                row.r_ordered = counts[i].ordered;
                row.r_unordered = counts[i].unordered;
                row.pred_paper = nd / (2.0 * r * r) * s;
                row.pred_hl = pred_hl;
                row.ratio_paper = safe_ratio(row.r_ordered, row.pred_paper);
                row.ratio_paper_unordered = safe_ratio(row.r_unordered, row.pred_paper);
                row.ratio_hl = safe_ratio(row.r_ordered, pred_hl);
                row.variant_tag = variant.label();
            }
        }
    });
    return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<ComparisonRow>& rows, bool verbose) {
    out << kCompareHeader << (verbose ? ",ratio_paper_unordered" : "") << "\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.r_ordered << ',' << row.r_unordered << ',' << format_real(row.pred_paper) << ','
            << format_real(row.pred_hl) << ',' << format_real(row.ratio_paper) << ',' << format_real(row.ratio_hl)
            << ',' << row.variant_tag;
        if (verbose) out << ',' << format_real(row.ratio_paper_unordered);
        out << "\n";
    }
}

void write_compare_json(std::ostream& out, const std::vector<ComparisonRow>& rows, bool verbose) {
    out << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        out << (i ? ",\n " : "\n ") << "{\"N\":" << row.n << ",\"r_ordered\":" << row.r_ordered
            << ",\"r_unordered\":" << row.r_unordered << ",\"pred_paper\":" << json_real(row.pred_paper)
            << ",\"pred_hl\":" << json_real(row.pred_hl) << ",\"ratio_paper\":" << json_real(row.ratio_paper)
            << ",\"ratio_hl\":" << json_real(row.ratio_hl) << ",\"variant\":" << json_string(row.variant_tag);
        if (verbose) out << ",\"ratio_paper_unordered\":" << json_real(row.ratio_paper_unordered);
        out << "}";
    }
    out << "\n]\n";
}

int cmd_sieve(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const bool have_cache = config.cache && std::filesystem::exists(*config.cache);
        // limit 0 means "not given", which is fine when an existing cache supplies it
        if (config.limit < 2 && !(config.limit == 0 && have_cache))
            throw UsageError("sieve: --limit must be >= 2");
        if (have_cache) {
            const PrimeSieve sieve = read_sieve_cache(*config.cache);
            err << "loaded sieve cache " << config.cache->string() << "\n";
            if (config.limit != 0 && sieve.limit() != config.limit)
                err << "note: cache limit " << sieve.limit() << " differs from --limit " << config.limit << "\n";
            out << sieve.prime_count(sieve.limit()) << "\n";
            return 0;
        }
        const PrimeSieve sieve = PrimeSieve::build(config.limit, config.workers);
        if (config.cache) {
            write_sieve_cache(sieve, *config.cache);
            err << "wrote sieve cache " << config.cache->string() << "\n";
        }
        out << sieve.prime_count(sieve.limit()) << "\n";
        return 0;
    });
}

int cmd_count(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate_range();
        const PrimeSieve sieve = obtain_sieve(config, config.n_max, err);
        const auto ns = requested_ns(config);
        const auto counts = counts_for(sieve, ns, config.workers);
        if (config.format == OutputFormat::Json) {
            out << "[";
            for (std::size_t i = 0; i < counts.size(); ++i)
                out << (i ? ",\n " : "\n ") << "{\"N\":" << counts[i].n << ",\"r_ordered\":" << counts[i].ordered
                    << ",\"r_unordered\":" << counts[i].unordered << "}";
            out << "\n]\n";
        } else {
            out << "N,r_ordered,r_unordered\n";
            for (const auto& c : counts) out << c.n << ',' << c.ordered << ',' << c.unordered << "\n";
        }
        for (const auto n : goldbach_exceptions(counts))
            err << "FALSIFYING EVENT: no odd-prime representation for N = " << n << "\n";
        return 0;
    });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate_range();
        require_truncations(config);
        const PrimeSieve sieve = obtain_sieve(config, std::max(config.n_max, config.trunc_p), err);
        const auto rows = compare_rows(sieve, config);
        if (config.format == OutputFormat::Json)
            write_compare_json(out, rows, config.verbose);
        else
            write_compare_csv(out, rows, config.verbose);

        std::map<std::string, std::vector<double>> by_variant;
        std::vector<std::string> order;
        std::vector<double> hl;
        for (const auto& row : rows) {
            if (!by_variant.contains(row.variant_tag)) order.push_back(row.variant_tag);
            by_variant[row.variant_tag].push_back(row.ratio_paper);
            if (row.variant_tag == order.front()) hl.push_back(row.ratio_hl);
        }
        for (const auto& tag : order) print_stats(err, "ratio_paper[" + tag + "]", summarize(by_variant[tag]));
        print_stats(err, "ratio_hl", summarize(hl));
        return 0;
    });
}

int cmd_series(const RunConfig& config, std::int64_t n_signed, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (n_signed < 4 || n_signed % 2 != 0) throw UsageError("series: N must be even and >= 4");
        require_truncations(config);
        const auto n = static_cast<std::uint64_t>(n_signed);
        const PrimeSieve sieve = obtain_sieve(config, std::max(config.trunc_p, isqrt_ceil(n)), err);
        if (config.format == OutputFormat::Json) out << "[";
        else out << "N,variant,value,truncation,tail_note\n";
        bool first = true;
        for (const auto& variant : config.expanded_variants()) {
            const auto v = evaluate_series(sieve, n, variant, config.trunc_p, config.trunc_q);
            if (config.format == OutputFormat::Json) {
                out << (first ? "\n " : ",\n ") << "{\"N\":" << v.n << ",\"variant\":" << json_string(v.variant.label())
                    << ",\"value\":" << json_real(v.value) << ",\"truncation\":" << v.truncation
                    << ",\"tail_note\":" << json_real(v.tail_note) << "}";
            } else {
                out << v.n << ',' << v.variant.label() << ',' << format_real(v.value) << ',' << v.truncation << ','
                    << format_real(v.tail_note) << "\n";
            }
            first = false;
        }
        if (config.format == OutputFormat::Json) out << "\n]\n";
        return 0;
    });
}

int cmd_arcs(const RunConfig& config, std::uint64_t n, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (n < 4 || n % 2 != 0) throw UsageError("arcs: N must be even and >= 4");
        const ArcParams params = make_arc_params(n, config.tau_c.value_or(7.0));
        ArcDissection d;
        try {
            d = dissect_arcs(params);
        } catch (const ArcOverlapError& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
        if (config.format == OutputFormat::Json) {
            out << "{\"n\":" << n << ",\"r\":" << json_real(params.r) << ",\"c\":" << json_real(params.c)
                << ",\"tau\":" << json_real(params.tau) << ",\"q_major_bound\":" << json_real(params.q_major_bound)
                << ",\"arc_count\":" << d.major.size() << ",\"major_measure\":" << json_real(d.major_measure)
                << ",\"minor_gaps\":" << d.minor.size();
            if (config.list_arcs) {
                out << ",\"arcs\":[";
                for (std::size_t i = 0; i < d.major.size(); ++i) {
                    const auto& a = d.major[i];
                    out << (i ? "," : "") << "\n  {\"a\":" << a.a << ",\"q\":" << a.q
                        << ",\"class\":\"MAJOR\",\"center\":" << json_real(a.center)
                        << ",\"halfwidth\":" << json_real(a.halfwidth) << "}";
                }
                out << "\n ]";
            }
            out << "}\n";
        } else {
            out << "key,value\n"
                << "n," << n << "\nr," << format_real(params.r) << "\nc," << format_real(params.c) << "\ntau,"
                << format_real(params.tau) << "\nq_major_bound," << format_real(params.q_major_bound)
                << "\narc_count," << d.major.size() << "\nmajor_measure," << format_real(d.major_measure)
                << "\nminor_gaps," << d.minor.size() << "\n";
            if (config.list_arcs) {
                out << "\na,q,class,center,halfwidth\n";
                for (const auto& a : d.major)
                    out << a.a << ',' << a.q << ",MAJOR," << format_real(a.center) << ','
                        << format_real(a.halfwidth) << "\n";
            }
        }
        return 0;
    });
}

int cmd_probe(const RunConfig& config, Probe which, std::optional<std::uint64_t> n_opt, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&]() -> int {
        switch (which) {
            case Probe::Orthogonality: {
                const std::uint64_t n = n_opt.value_or(1000);
                if (n < 4 || n % 2 != 0) throw UsageError("probe orthogonality: N must be even and >= 4");
                const PrimeSieve sieve = obtain_sieve(config, n, err);
                const std::uint64_t m = std::bit_ceil(2 * n);
                const auto exact = count_one(sieve, n).ordered;
                const auto integral = rep_count_via_orthogonality(sieve, n, m, config.workers);
                out << "n=" << n << ", m=" << m << ", exact=" << exact << ", integral=" << integral
                    << ", match=" << bool_text(exact == integral) << "\n";
                return exact == integral ? 0 : 1;
            }
            case Probe::Lemma3: {
                const std::uint64_t n = n_opt.value_or(10'000);
                const double c = config.tau_c.value_or(2.0);
                const auto R = integral_R(n, c, config.tol, config.workers);
                const double r = std::log(static_cast<double>(n));
                const double scaled = R.real() * r * r / static_cast<double>(n);
                const double deviation = std::abs(scaled - 1.0);
                const bool im_ok = std::abs(R.imag()) < 10.0 * config.tol;
                out << "n=" << n << ", c=" << format_real(c) << ", re_R=" << format_real(R.real())
                    << ", im_R=" << format_real(R.imag()) << ", R*r^2/N=" << format_real(scaled)
                    << ", deviation=" << format_real(deviation) << ", bound_3_over_r=" << format_real(3.0 / r)
                    << ", within=" << bool_text(deviation < 3.0 / r) << ", im_ok=" << bool_text(im_ok) << "\n";
                return im_ok ? 0 : 1;
            }
            case Probe::Lemma4: {
                const std::uint64_t n = n_opt.value_or(100);
                if (n < 3) throw UsageError("probe lemma4: N must be >= 3");
                const PrimeSieve sieve = obtain_sieve(config, n, err);
                const std::uint64_t grid = std::max<std::uint64_t>(1024, std::bit_ceil(4 * n));
                const double estimate = lemma4_probe(sieve, n, grid, config.workers);
                const double claimed = 1.0 / std::sqrt(std::log(static_cast<double>(n)));
                out << "n=" << n << ", grid=" << grid << ", integral_abs_S=" << format_real(estimate)
                    << ", claimed_bound=" << format_real(claimed) << ", ratio=" << format_real(estimate / claimed)
                    << "\n";
                return 0;
            }
            case Probe::Lemma2: {
                const std::uint64_t n = n_opt.value_or(10'000);
                if (n < 3) throw UsageError("probe lemma2: N must be >= 3");
                const ArcParams params = make_arc_params(n, config.tau_c.value_or(7.0));
                const double lo = std::log10(0.1 / static_cast<double>(n));
                const double hi = std::log10(0.5);
                constexpr int kPoints = 41;
                double max_j = 0.0, max_i = 0.0, worst_z = 0.0;
                for (int k = 0; k < kPoints; ++k) {
                    const double z = std::pow(10.0, lo + (hi - lo) * k / (kPoints - 1));
                    const double zb = bound_Z(params, z);
                    const double rj = std::abs(integral_J(n, z, config.tol)) / zb;
                    const double ri = std::abs(integral_I(n, z)) / zb;
                    if (config.verbose)
                        out << "z=" << format_real(z) << ", Z=" << format_real(zb) << ", J_over_Z=" << format_real(rj)
                            << ", I_over_Z=" << format_real(ri) << "\n";
                    if (rj > max_j) max_j = rj, worst_z = z;
                    max_i = std::max(max_i, ri);
                }
                out << "n=" << n << ", max_J_over_Z=" << format_real(max_j) << " at z=" << format_real(worst_z)
                    << ", max_I_over_Z=" << format_real(max_i) << "\n";
                return 0;
            }
            case Probe::Page: {
                const std::uint64_t n = n_opt.value_or(1'000'000);
                const PrimeSieve sieve = obtain_sieve(config, n, err);
                const double li = log_integral(static_cast<double>(n), 1e-9);
                double worst = 0.0;
                std::uint64_t worst_q = 1, worst_l = 0;
                for (std::uint64_t q = 1; q <= 20; ++q) {
                    const double expected = li / static_cast<double>(euler_phi(sieve.factorize(q)));
                    for (std::uint64_t l = 0; l < q; ++l) {
                        if (std::gcd(l, q) != 1) continue;
                        const auto count = sieve.prime_count_ap(n, q, l);
                        const double rel = std::abs(static_cast<double>(count) - expected) / expected;
                        if (config.verbose)
                            out << "q=" << q << ", l=" << l << ", count=" << count
                                << ", expected=" << format_real(expected) << ", rel_error=" << format_real(rel) << "\n";
                        if (rel > worst) worst = rel, worst_q = q, worst_l = l;
                    }
                }
                out << "n=" << n << ", max_rel_error=" << format_real(worst) << " at q=" << worst_q << ", l=" << worst_l
                    << ", within_5pct=" << bool_text(worst < 0.05) << "\n";
                return 0;
            }
            case Probe::Minor: {
                const std::uint64_t n = n_opt.value_or(10'000);
                const PrimeSieve sieve = obtain_sieve(config, n, err);
                const ArcParams params = make_arc_params(n, config.tau_c.value_or(2.0));
                const auto report = minor_bound_report(sieve, params, 4096, 0.0, config.workers);
                out << "n=" << n << ", c=" << format_real(params.c) << ", minor_samples=" << report.samples
                    << ", max_ratio=" << format_real(report.max_ratio)
                    << ", worst_alpha=" << format_real(report.worst_alpha) << "\n";
                return 0;
            }
        }
        throw UsageError("unknown probe");
    });
}

}  // namespace gblab::cli
