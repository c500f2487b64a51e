#pragma once

#include <cstddef>
#include <vector>

#include "itexp/gaussian_source.hpp"
#include "itexp/kernel_coeffs.hpp"

namespace itexp {

/// (i_1, ..., i_k); 0 is the time component w_tau = tau.
using ComponentIndices = std::vector<std::size_t>;

enum class IntegralKind { ito, stratonovich };

struct TruncatedIntegral {
    double value;
    IntegralKind kind;
    WeightedKernel kernel;
    ComponentIndices indices;
    std::vector<std::size_t> orders;
};

/// zeta_j^{(i)} for i >= 1; for i = 0 it is sqrt(T - t) at j = 0 and 0 otherwise.
double zeta_eff(const GaussianDraw& draw, std::size_t i, std::size_t j, const Interval& iv);

/// Prelimit Ito sum: products of zetas minus the pairing corrections
/// 1{i_a = i_b != 0} 1{j_a = j_b} for k = 2, 3, 4.
TruncatedIntegral ito_truncated(const CoefficientTable& table, const ComponentIndices& idx,
                                const GaussianDraw& draw);

/// Prelimit Stratonovich sum (no corrections).
///
/// k = 3 with unequal orders or any zero component needs unit weights; k = 4
/// needs equal orders and unit weights. Violations throw ContractError.
TruncatedIntegral stratonovich_truncated(const CoefficientTable& table, const ComponentIndices& idx,
                                         const GaussianDraw& draw);

/// Stratonovich sum over an explicit coefficient list.
double stratonovich_sparse(const SparseCoefficients& coeffs, const ComponentIndices& idx,
                           const GaussianDraw& draw);

}  // namespace itexp
