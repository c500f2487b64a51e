#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "itexp/expansions.hpp"
#include "itexp/kernel_coeffs.hpp"

namespace itexp {

enum class ErrorKind { exact, closed_form, bound, identity_residual };

struct ErrorReport {
    ErrorKind kind;
    double value;
    BasisKind basis;
    std::vector<int> exponents;
    ComponentIndices indices;
    std::size_t truncation;
    std::string formula_id;
};

/// Exact mean-square error of the Ito expansion on a box table:
/// I_k - sum_j C_j sum_{sigma} C_{sigma(j)}, sigma over slot permutations that
/// keep the component pattern. Components must be >= 1 and orders equal.
double exact_error(const CoefficientTable& table, const ComponentIndices& idx);

/// k! (I_k - sum C^2).
double error_bound(const CoefficientTable& table, const ComponentIndices& idx);

/// Mean-square errors of the trig catalog displays, distinct components unless
/// noted. The *_series forms carry the infinite double sums as limit minus
/// partial sum. i01_repeated is the published value for I01 and I10 with both
/// components equal; it is about twice the measured error of those displays.
enum class ClosedForm { i00, i000_series, i01_series, i10_series, i000, i10, i01, i01_repeated };

std::string_view to_string(ClosedForm form);
ClosedForm parse_closed_form(std::string_view text);

/// Finite double sums over r != l <= q:
///   s1 = (l^2 + k^2) / (k^2 (l^2 - k^2)^2)
///   s2 = (l^2 + k^2) / (l^2 (l^2 - k^2)^2)
///   s3 = (5 l^4 + 4 r^4 - 3 r^2 l^2) / (r^2 l^2 (r^2 - l^2)^2)
struct DoubleSums {
    double s1;
    double s2;
    double s3;
};

/// One pass over shells max(r, l) = n with compensated accumulation; entry t
/// holds the sums at qs[t]. qs must be nondecreasing.
std::vector<DoubleSums> double_sums(std::span<const std::size_t> qs);
DoubleSums double_sums(std::size_t q);

double closed_form_error(ClosedForm form, const Interval& iv, std::size_t q);
std::vector<double> closed_form_errors(ClosedForm form, const Interval& iv,
                                       std::span<const std::size_t> qs);

ErrorReport exact_error_report(const CoefficientTable& table, const ComponentIndices& idx);
ErrorReport bound_report(const CoefficientTable& table, const ComponentIndices& idx);
/// Distinct components except for i01_repeated.
ErrorReport closed_form_report(ClosedForm form, const Interval& iv, std::size_t q);

enum class Identity { pi4_48, ninepi4_80 };

/// |partial double sum at q - limit|; pi4_48 uses s1.
double identity_residual(Identity which, std::size_t q);
std::vector<double> identity_residuals(Identity which, std::span<const std::size_t> qs);

}  // namespace itexp
