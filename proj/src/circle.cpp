#include "gblab/circle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gblab/errors.hpp"
#include "gblab/parallel.hpp"
#include "gblab/quadrature.hpp"

namespace gblab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxRefinements = 12;

/// e^{2 pi i t}, with t reduced mod 1 first.
std::complex<double> unit_phase(long double t) {
    const long double frac = t - std::floor(t);
    return std::polar(1.0, kTwoPi * static_cast<double>(frac));
}

std::uint64_t major_denominator_bound(const ArcParams& params) {
    // largest integer q with q < r^2
    const double bound = params.q_major_bound;
    auto q = static_cast<std::uint64_t>(std::ceil(bound));
    return q == 0 ? 0 : q - 1;
}

/// Composite Gauss-Legendre grid for e^{2 pi i z x} / ln x on [2, n].
///
/// Near x = 2 the panel width is at most x - 1 so that the pole of 1/ln x at
/// x = 1 stays well outside each panel's Bernstein ellipse; elsewhere panels
/// are at most max_width wide. Every panel is split into 2^level equal parts.
class LogKernelGrid {
public:
    LogKernelGrid(double lo, double hi, double max_width, int level) {
        const auto& rule = gauss_legendre_10();
        nodes_ = rule.nodes;
        const double split = std::ldexp(1.0, -level);
        double x = lo;
        while (x < hi) {
            const double width = std::min({max_width, std::max(1.0, x - 1.0), hi - x});
            const double sub = width * split;
            for (int s = 0; s < (1 << level); ++s) {
                const double a = x + s * sub;
                const double half = 0.5 * sub;
                const double mid = a + half;
                panels_.push_back({mid, half});
                for (std::size_t m = 0; m < nodes_.size(); ++m)
                    amp_.push_back(rule.weights[m] * half / std::log(mid + half * nodes_[m]));
            }
            x += width;
        }
    }

    std::complex<double> eval(double z) const {
        std::array<std::complex<double>, 10> node_phase{};
        double current_half = std::numeric_limits<double>::quiet_NaN();
        std::complex<double> acc{};
        const std::size_t nn = nodes_.size();
        for (std::size_t j = 0; j < panels_.size(); ++j) {
            const auto& [mid, half] = panels_[j];
            if (half != current_half) {
                current_half = half;
                for (std::size_t m = 0; m < nn; ++m)
                    node_phase[m] = std::polar(1.0, kTwoPi * z * half * nodes_[m]);
            }
            std::complex<double> panel{};
            const double* amp = &amp_[j * nn];
            for (std::size_t m = 0; m < nn; ++m) panel += amp[m] * node_phase[m];
            acc += unit_phase(static_cast<long double>(z) * mid) * panel;
        }
        return acc;
    }

private:
    struct Panel {
        double mid;
        double half;
    };
    std::vector<double> nodes_;
    std::vector<Panel> panels_;
    std::vector<double> amp_;
};

double oscillation_width(double z_max) {
    return z_max == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (8.0 * std::abs(z_max));
}

}  // namespace

ArcParams make_arc_params(std::uint64_t n, double c) {
    if (n < 3) throw DomainError("arc params: n must be >= 3");
    if (!(c > 0)) throw DomainError("arc params: tau exponent c must be positive");
    ArcParams p;
    p.n = n;
    p.r = std::log(static_cast<double>(n));
    p.c = c;
    p.tau = static_cast<double>(n) * std::pow(p.r, -c);
    p.q_major_bound = p.r * p.r;
    return p;
}

std::vector<ArcLabel> enumerate_major_arcs(const ArcParams& params) {
    if (params.q_major_bound < 1.0) throw DomainError("dissect_arcs: requires r^2 >= 1");
    const std::uint64_t order = major_denominator_bound(params);
    std::vector<ArcLabel> arcs;
    if (order == 0) return arcs;
    const double halfwidth = 1.0 / params.tau;
    // Farey sequence of the given order, 0/1 up to but excluding 1/1
    std::uint64_t a = 0, b = 1, c = 1, d = order;
    arcs.push_back({0, 1, ArcClass::Major, 0.0, halfwidth});
    while (!(c == 1 && d == 1)) {
        arcs.push_back({c, d, ArcClass::Major, static_cast<double>(c) / static_cast<double>(d), halfwidth});
        const std::uint64_t k = (order + b) / d;
        const std::uint64_t next_c = k * c - a;
        const std::uint64_t next_d = k * d - b;
        a = c;
        b = d;
        c = next_c;
        d = next_d;
    }
    return arcs;
}

double major_arc_measure(const ArcParams& params) {
    const std::uint64_t order = major_denominator_bound(params);
    if (order == 0) return 0.0;
    const ArithmeticTable table(order);
    std::uint64_t count = 0;
    for (std::uint64_t q = 1; q <= order; ++q) count += table.phi(q);
    return 2.0 / params.tau * static_cast<double>(count);
}

ArcDissection dissect_arcs(const ArcParams& params) {
    ArcDissection out;
    out.params = params;
    out.major = enumerate_major_arcs(params);
    out.major_measure = 2.0 / params.tau * static_cast<double>(out.major.size());
    if (out.major.empty()) {
        out.minor.push_back({0.0, 1.0});
        return out;
    }
    const long double tau = params.tau;
    for (std::size_t i = 0; i < out.major.size(); ++i) {
        const ArcLabel& left = out.major[i];
        const bool wrap = i + 1 == out.major.size();
        // right neighbour; after the last arc comes 1/1, the image of 0/1
        const std::uint64_t ra = wrap ? 1 : out.major[i + 1].a;
        const std::uint64_t rq = wrap ? 1 : out.major[i + 1].q;
        // gap = (ra*lq - la*rq) / (lq*rq); arcs are disjoint iff gap > 2/tau
        const long double num = static_cast<long double>(ra) * left.q - static_cast<long double>(left.a) * rq;
        const long double den = static_cast<long double>(left.q) * rq;
        if (!(num * tau > 2.0L * den))
            throw ArcOverlapError("major arcs " + std::to_string(left.a) + "/" + std::to_string(left.q) + " and " +
                                  std::to_string(ra) + "/" + std::to_string(rq) + " overlap at n = " +
                                  std::to_string(params.n) + " (gap " + std::to_string(static_cast<double>(num / den)) +
                                  " <= 2/tau = " + std::to_string(2.0 / params.tau) + ")");
        const double right_center = wrap ? 1.0 : out.major[i + 1].center;
        out.minor.push_back({left.center + left.halfwidth, right_center - left.halfwidth});
    }
    return out;
}

ArcLabel classify_alpha(const ArcParams& params, double alpha) {
    alpha -= std::floor(alpha);
    const auto max_q = static_cast<std::uint64_t>(std::max(1.0, std::floor(params.tau)));
    // continued-fraction convergents h/k with k <= max_q
    std::uint64_t h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    std::uint64_t best_h = 0, best_k = 1;
    double x = alpha;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(x);
        const auto ai = static_cast<std::uint64_t>(fl);
        const std::uint64_t h = ai * h1 + h2;
        const std::uint64_t k = ai * k1 + k2;
        if (k > max_q) break;
        best_h = h;
        best_k = k;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        const double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
        if (x > 1e18) break;
    }
    double z = alpha - static_cast<double>(best_h) / static_cast<double>(best_k);
    if (best_h == best_k) best_h = 0;  // 1/1 is 0/1 on the circle
    ArcLabel label;
    label.a = best_h;
    label.q = best_k;
    label.center = static_cast<double>(best_h) / static_cast<double>(best_k);
    const bool major = static_cast<double>(best_k) < params.q_major_bound && std::abs(z) < 1.0 / params.tau;
    label.cls = major ? ArcClass::Major : ArcClass::Minor;
    label.halfwidth = major ? 1.0 / params.tau : 1.0 / (static_cast<double>(best_k) * params.tau);
    return label;
}

ExpSumSample exp_sum_primes(const PrimeSieve& sieve, std::uint64_t n, double alpha) {
    if (n > sieve.limit()) throw DomainError("exp_sum_primes: n exceeds sieve limit");
    if (!std::isfinite(alpha)) throw DomainError("exp_sum_primes: alpha must be finite");
    const long double a = static_cast<long double>(alpha) - std::floor(static_cast<long double>(alpha));
    std::complex<double> acc{};
    for (const auto p : sieve.primes()) {
        if (p > n) break;
        if (p == 2) continue;
        acc += unit_phase(a * static_cast<long double>(p));
    }
    return {static_cast<double>(a), acc, n};
}

std::vector<std::complex<double>> exp_sum_grid(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t m,
                                               unsigned workers) {
    if (n > sieve.limit()) throw DomainError("exp_sum_grid: n exceeds sieve limit");
    if (m <= n) throw DomainError("exp_sum_grid: grid size must exceed n");
    std::vector<std::complex<double>> twiddle(m);
    for (std::uint64_t k = 0; k < m; ++k)
        twiddle[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(m));

    const auto all = sieve.primes();
    const auto count = static_cast<std::size_t>(std::ranges::upper_bound(all, n) - all.begin());
    const auto odd = count > 1 ? all.subspan(1, count - 1) : std::span<const std::uint64_t>{};
    std::vector<std::complex<double>> out(m);
    parallel_for(m, workers, [&](std::size_t k0, std::size_t k1) {
        for (const auto p : odd) {
            auto idx = static_cast<std::uint64_t>(static_cast<unsigned __int128>(p) * k0 % m);
            for (std::size_t k = k0; k < k1; ++k) {
                out[k] += twiddle[idx];
                idx += p;
                if (idx >= m) idx -= m;
            }
        }
    });
    return out;
}

std::complex<double> integral_I(std::uint64_t n, double z) {
    if (n < 3) throw DomainError("integral_I: n must be >= 3");
    const double r = std::log(static_cast<double>(n));
    const double len = static_cast<double>(n - 2);
    if (z == 0.0) return len / r;
    // (e^{2 pi i z n} - e^{4 pi i z}) / (2 pi i z r), rewritten without cancellation
    const double arg = std::numbers::pi * z;
    const double amplitude = std::sin(arg * len) / (arg * r);
    return unit_phase(0.5L * static_cast<long double>(z) * static_cast<long double>(n + 2)) * amplitude;
}

std::complex<double> integral_J(std::uint64_t n, double z, double tol) {
    if (n < 3) throw DomainError("integral_J: n must be >= 3");
    if (!(tol > 0)) throw DomainError("integral_J: tol must be positive");
    if (z == 0.0) return log_integral(static_cast<double>(n), tol);
    const double hi = static_cast<double>(n);
    const double width = oscillation_width(z);
    std::complex<double> coarse = LogKernelGrid(2.0, hi, width, 0).eval(z);
    for (int level = 1; level <= kMaxRefinements; ++level) {
        const std::complex<double> fine = LogKernelGrid(2.0, hi, width, level).eval(z);
        if (std::abs(fine - coarse) <= tol) return fine;
        coarse = fine;
    }
    throw NumericalError("integral_J: no convergence at z = " + std::to_string(z));
}

double bound_Z(const ArcParams& params, double z) {
    const double nd = static_cast<double>(params.n);
    if (std::abs(z) <= 1.0 / nd) return nd / params.r;
    return 1.0 / (std::abs(z) * params.r);
}

std::complex<double> integral_R(std::uint64_t n, double c, double tol, unsigned workers) {
    if (n < 100) throw DomainError("integral_R: n must be >= 100");
    if (!(c >= 2.0)) throw DomainError("integral_R: c must be >= 2");
    if (!(tol > 0)) throw DomainError("integral_R: tol must be positive");
    const ArcParams params = make_arc_params(n, c);
    const double z_max = 1.0 / params.tau;
    const double nd = static_cast<double>(n);
    const auto& rule = gauss_legendre_10();
    // the integrand oscillates in z with frequency up to n: >= 8 panels per period
    const auto base_panels = static_cast<std::size_t>(std::ceil(8.0 * 2.0 * z_max * nd));

    auto evaluate = [&](int level) {
        const LogKernelGrid grid(2.0, nd, oscillation_width(z_max), level);
        const std::size_t panels = std::max<std::size_t>(16, base_panels) << level;
        const double half = z_max / static_cast<double>(panels);
        const std::size_t nodes = panels * rule.nodes.size();
        std::vector<std::complex<double>> terms(nodes);
        parallel_for(nodes, workers, [&](std::size_t i0, std::size_t i1) {
            for (std::size_t i = i0; i < i1; ++i) {
                const std::size_t j = i / rule.nodes.size();
                const std::size_t m = i % rule.nodes.size();
                const double z = -z_max + (2.0 * static_cast<double>(j) + 1.0 + rule.nodes[m]) * half;
                const std::complex<double> jz = grid.eval(z);
                terms[i] = rule.weights[m] * half * jz * jz * unit_phase(-static_cast<long double>(z) * n);
            }
        });
        return pairwise_sum<std::complex<double>>(terms);
    };

    std::complex<double> coarse = evaluate(0);
    for (int level = 1; level <= 6; ++level) {
        const std::complex<double> fine = evaluate(level);
        if (std::abs(fine - coarse) <= tol) return fine;
        coarse = fine;
    }
    throw NumericalError("integral_R: quadrature did not reach tol");
}

std::uint64_t rep_count_via_orthogonality(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t m,
                                          unsigned workers) {
    if (m < 2 * n) throw DomainError("rep_count_via_orthogonality: need m >= 2n");
    const auto grid = exp_sum_grid(sieve, n, m, workers);
    std::vector<std::complex<double>> terms(m);
    for (std::uint64_t k = 0; k < m; ++k) {
        const auto idx = static_cast<std::uint64_t>(static_cast<unsigned __int128>(k) * n % m);
        terms[k] = grid[k] * grid[k] *
                   std::polar(1.0, -kTwoPi * static_cast<double>(idx) / static_cast<double>(m));
    }
    const std::complex<double> value = pairwise_sum<std::complex<double>>(terms) / static_cast<double>(m);
    const double rounded = std::round(value.real());
    const double residue = std::abs(value - std::complex<double>(rounded, 0.0));
    if (residue > 1e-3 || rounded < 0)
        throw NumericalError("rep_count_via_orthogonality: rounding residue " + std::to_string(residue) +
                             " at n = " + std::to_string(n));
    return static_cast<std::uint64_t>(rounded);
}

double lemma4_probe(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t grid, unsigned workers) {
    if (grid < 4 * n) throw DomainError("lemma4_probe: grid must be >= 4n");
    const auto values = exp_sum_grid(sieve, n, grid, workers);
    std::vector<double> magnitudes(values.size());
    std::ranges::transform(values, magnitudes.begin(), [](const auto& v) { return std::abs(v); });
    return pairwise_sum<double>(magnitudes) / static_cast<double>(grid);
}

double minor_bound(const ArcParams& params, std::uint64_t q, double delta, double eps) {
    if (q < 1) throw DomainError("minor_bound: q must be >= 1");
    if (!(delta >= 0)) throw DomainError("minor_bound: delta must be >= 0");
    const double base =
        static_cast<double>(params.n) * std::pow(params.r, -1.0 + eps) / std::sqrt(static_cast<double>(q));
    return delta >= 1.0 ? base * std::sqrt(delta) : base;
}

MinorBoundReport minor_bound_report(const PrimeSieve& sieve, const ArcParams& params, std::uint64_t grid,
                                    double eps, unsigned workers) {
    if (grid == 0) throw DomainError("minor_bound_report: grid must be positive");
    std::vector<double> ratio(grid, -1.0);
    parallel_for(grid, workers, [&](std::size_t k0, std::size_t k1) {
        for (std::size_t k = k0; k < k1; ++k) {
            const double alpha = (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
            const ArcLabel label = classify_alpha(params, alpha);
            if (label.cls != ArcClass::Minor) continue;
            double z = alpha - label.center;
            if (z > 0.5) z -= 1.0;
            const double delta = std::abs(z) * static_cast<double>(params.n);
            ratio[k] = std::abs(exp_sum_primes(sieve, params.n, alpha).value) /
                       minor_bound(params, label.q, delta, eps);
        }
    });
    MinorBoundReport report;
    for (std::size_t k = 0; k < grid; ++k) {
        if (ratio[k] < 0) continue;
        ++report.samples;
        if (ratio[k] > report.max_ratio) {
            report.max_ratio = ratio[k];
            report.worst_alpha = (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
        }
    }
    return report;
}

}  // namespace gblab
