#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gblab/errors.hpp"

namespace gblab {

/// Nodes and weights on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed by Newton iteration on P_n.
QuadratureRule make_gauss_legendre(unsigned n);

/// The 10-point rule used throughout the library.
const QuadratureRule& gauss_legendre_10();

/// Sum of f over the rule mapped to [a, b].
template <class F>
auto apply_rule(const QuadratureRule& rule, F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    decltype(f(a)) acc{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return acc * half;
}

namespace detail {

template <class F>
double adaptive_step(F& f, double a, double b, double whole, double tol, int depth) {
    const auto& rule = gauss_legendre_10();
    const double m = 0.5 * (a + b);
    const double left = apply_rule(rule, f, a, m);
    const double right = apply_rule(rule, f, m, b);
    const double refined = left + right;
    if (std::abs(refined - whole) <= tol) return refined;
    if (depth == 0)
        throw NumericalError("adaptive quadrature: maximum bisection depth reached");
    return adaptive_step(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive bisection: a panel is accepted once its two halves agree with
/// the whole-panel estimate to within the panel's share of tol.
template <class F>
double adaptive_gauss_legendre(F&& f, double a, double b, double tol, int max_depth = 60) {
    if (!(tol > 0)) throw DomainError("adaptive quadrature: tol must be positive");
    if (a == b) return 0.0;
    const double whole = apply_rule(gauss_legendre_10(), f, a, b);
    return detail::adaptive_step(f, a, b, whole, tol, max_depth);
}

}  // namespace gblab
