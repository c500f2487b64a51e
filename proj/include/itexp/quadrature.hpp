#pragma once

#include <cstddef>
#include <vector>

namespace itexp {

/// Gauss-Legendre rule. Nodes ascend.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// n-point rule on [-1, 1], exact for polynomials of degree 2n-1.
/// Rules are computed once and cached; the reference stays valid for the
/// lifetime of the program.
const GaussRule& gauss_legendre(std::size_t n);

/// The n-point rule affinely mapped onto [a, b].
GaussRule gauss_legendre(std::size_t n, double a, double b);

/// Composite rule: `panels` equal panels on [a, b], each with an
/// n-point Gauss rule.
GaussRule composite_gauss(std::size_t n, std::size_t panels, double a, double b);

}  // namespace itexp
