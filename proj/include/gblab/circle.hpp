#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gblab/primes.hpp"

namespace gblab {

/// Dissection parameters for even n: r = ln n, tau = n r^-c, major arcs have
/// denominators q < r^2.
struct ArcParams {
    std::uint64_t n = 0;
    double r = 0.0;
    double c = 7.0;
    double tau = 0.0;
    double q_major_bound = 0.0;
};

ArcParams make_arc_params(std::uint64_t n, double c = 7.0);

enum class ArcClass { Major, Minor };

/// Arc around a/q, gcd(a, q) = 1, 0 <= a < q (a = 0 only for q = 1).
struct ArcLabel {
    std::uint64_t a = 0;
    std::uint64_t q = 1;
    ArcClass cls = ArcClass::Major;
    double center = 0.0;
    double halfwidth = 0.0;
};

struct ArcGap {
    double begin = 0.0;
    double end = 0.0;
};

struct ArcDissection {
    ArcParams params;
    std::vector<ArcLabel> major;  // ascending centers
    std::vector<ArcGap> minor;    // complement in [0, 1), between consecutive major arcs
    double major_measure = 0.0;
};

/// Every a/q with 1 <= q < r^2 in ascending order (Farey recurrence), without
/// the overlap check.
std::vector<ArcLabel> enumerate_major_arcs(const ArcParams& params);

/// 2/tau * sum_{q < r^2} phi(q).
double major_arc_measure(const ArcParams& params);

/// Major arcs plus the minor gaps. Throws ArcOverlapError naming the first
/// colliding pair when two major arcs (including the wrap at 1) intersect.
ArcDissection dissect_arcs(const ArcParams& params);

/// Places alpha by its best rational approximation with denominator <= tau.
/// Major iff q < r^2 and |alpha - a/q| < 1/tau; minor labels carry the
/// halfwidth 1/(q tau).
ArcLabel classify_alpha(const ArcParams& params, double alpha);

struct ExpSumSample {
    double alpha = 0.0;
    std::complex<double> value;
    std::uint64_t n = 0;
};

/// sum over odd primes 3 <= p <= n of e^{2 pi i alpha p}; alpha reduced mod 1
/// and each phase taken from frac(alpha * p).
ExpSumSample exp_sum_primes(const PrimeSieve& sieve, std::uint64_t n, double alpha);

/// S(k/m) for k = 0..m-1 with exact integer phase reduction (p k mod m).
/// Requires m > n.
std::vector<std::complex<double>> exp_sum_grid(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t m,
                                               unsigned workers = 1);

/// integral of e^{2 pi i z x} / ln(n) over [2, n], closed form.
std::complex<double> integral_I(std::uint64_t n, double z);

/// integral of e^{2 pi i z x} / ln(x) over [2, n] by composite Gauss-Legendre
/// panels (>= 8 per period), doubled until successive estimates agree to tol.
std::complex<double> integral_J(std::uint64_t n, double z, double tol);

/// Envelope: n/r for |z| <= 1/n, else 1/(|z| r).
double bound_Z(const ArcParams& params, double z);

/// integral of J(z)^2 e^{-2 pi i z n} over |z| <= 1/tau, tau = n r^-c.
/// The exact value is real; the imaginary part measures quadrature quality.
std::complex<double> integral_R(std::uint64_t n, double c, double tol, unsigned workers = 1);

/// Ordered odd-prime representation count of n from the discrete
/// orthogonality relation on m >= 2n equispaced points. Throws
/// NumericalError if the result is not within 1e-3 of an integer.
std::uint64_t rep_count_via_orthogonality(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t m,
                                          unsigned workers = 1);

/// Riemann sum of |S_alpha| over [0, 1) on `grid` points, grid >= 4n.
double lemma4_probe(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t grid, unsigned workers = 1);

/// n r^{-1+eps} q^{-1/2}, times delta^{1/2} when delta >= 1.
double minor_bound(const ArcParams& params, std::uint64_t q, double delta, double eps);

struct MinorBoundReport {
    std::uint64_t samples = 0;      // minor-arc points examined
    double max_ratio = 0.0;         // max |S_alpha| / minor_bound
    double worst_alpha = 0.0;
};

/// Samples alpha = (k + 1/2)/grid, keeps the minor-arc points, and compares
/// |S_alpha| with minor_bound at delta = |z| n.
MinorBoundReport minor_bound_report(const PrimeSieve& sieve, const ArcParams& params, std::uint64_t grid,
                                    double eps, unsigned workers = 1);

}  // namespace gblab
