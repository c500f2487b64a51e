#include "itexp/expansions.hpp"

#include <cmath>
#include <string>

#include "itexp/exceptions.hpp"
#include "itexp/summation.hpp"

namespace itexp {

namespace {

void check_arity(std::size_t k, const ComponentIndices& idx) {
    if (idx.size() != k) {
        throw ContractError("component indices have length " + std::to_string(idx.size()) +
                            ", kernel multiplicity is " + std::to_string(k));
    }
    if (k > 4) {
        throw UnsupportedError("multiplicity above 4 is not supported");
    }
}

// zeta_eff for every slot and every index up to orders[l].
std::vector<std::vector<double>> slot_zetas(const GaussianDraw& draw, const ComponentIndices& idx,
                                            std::span<const std::size_t> orders, const Interval& iv) {
    std::vector<std::vector<double>> z(idx.size());
    for (std::size_t l = 0; l < idx.size(); ++l) {
        if (idx[l] > draw.components()) {
            throw ContractError("component " + std::to_string(idx[l]) + " exceeds draw components " +
                                std::to_string(draw.components()));
        }
        if (idx[l] != 0 && orders[l] > draw.max_index()) {
            throw ContractError("draw covers indices up to " + std::to_string(draw.max_index()) +
                                ", table needs " + std::to_string(orders[l]));
        }
        z[l].resize(orders[l] + 1);
        for (std::size_t j = 0; j <= orders[l]; ++j) {
            z[l][j] = zeta_eff(draw, idx[l], j, iv);
        }
    }
    return z;
}

bool paired(const ComponentIndices& idx, std::size_t a, std::size_t b) {
    return idx[a] == idx[b] && idx[a] != 0;
}

double summand(const std::vector<std::vector<double>>& z, const ComponentIndices& idx,
               std::span<const std::size_t> mi, bool ito) {
    const std::size_t k = mi.size();
    double prod = 1.0;
    for (std::size_t l = 0; l < k; ++l) {
        prod *= z[l][mi[l]];
    }
    if (!ito || k == 1) {
        return prod;
    }
    auto pair = [&](std::size_t a, std::size_t b) {
        return paired(idx, a, b) && mi[a] == mi[b] ? 1.0 : 0.0;
    };
    if (k == 2) {
        return prod - pair(0, 1);
    }
    if (k == 3) {
        return prod - pair(0, 1) * z[2][mi[2]] - pair(1, 2) * z[0][mi[0]] -
               pair(0, 2) * z[1][mi[1]];
    }
    const double zz[4] = {z[0][mi[0]], z[1][mi[1]], z[2][mi[2]], z[3][mi[3]]};
    return prod - pair(0, 1) * zz[2] * zz[3] - pair(0, 2) * zz[1] * zz[3] -
           pair(0, 3) * zz[1] * zz[2] - pair(1, 2) * zz[0] * zz[3] -
           pair(1, 3) * zz[0] * zz[2] - pair(2, 3) * zz[0] * zz[1] +
           pair(0, 1) * pair(2, 3) + pair(0, 2) * pair(1, 3) + pair(0, 3) * pair(1, 2);
}

double table_sum(const CoefficientTable& table, const ComponentIndices& idx,
                 const GaussianDraw& draw, bool ito) {
    const auto z = slot_zetas(draw, idx, table.orders(), table.kernel().interval());
    const std::size_t k = table.multiplicity();
    MultiIndex mi(k, 0);
    CompensatedSum acc;
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        const double c = table[flat];
        if (c != 0.0) {
            acc += c * summand(z, idx, mi, ito);
        }
        // Odometer over the row-major layout.
        for (std::size_t l = k; l-- > 0;) {
            if (++mi[l] <= table.orders()[l]) {
                break;
            }
            mi[l] = 0;
        }
    }
    return acc.value();
}

}  // namespace

double zeta_eff(const GaussianDraw& draw, std::size_t i, std::size_t j, const Interval& iv) {
    if (i == 0) {
        return j == 0 ? std::sqrt(iv.length()) : 0.0;
    }
    return draw.zeta(i, j);
}

TruncatedIntegral ito_truncated(const CoefficientTable& table, const ComponentIndices& idx,
                                const GaussianDraw& draw) {
    check_arity(table.multiplicity(), idx);
    const double value = table_sum(table, idx, draw, true);
    return {value, IntegralKind::ito, table.kernel(), idx,
            std::vector<std::size_t>(table.orders().begin(), table.orders().end())};
}

TruncatedIntegral stratonovich_truncated(const CoefficientTable& table, const ComponentIndices& idx,
                                         const GaussianDraw& draw) {
    const std::size_t k = table.multiplicity();
    check_arity(k, idx);
    bool equal_orders = true;
    bool any_zero = false;
    for (std::size_t l = 0; l < k; ++l) {
        equal_orders = equal_orders && table.orders()[l] == table.orders()[0];
        any_zero = any_zero || idx[l] == 0;
    }
    const bool unit = table.kernel().unit_weights();
    if (k == 3 && (!equal_orders || any_zero) && !unit) {
        throw ContractError(
            "Stratonovich k=3 with unequal orders or a time component requires unit weights");
    }
    if (k == 4 && (!equal_orders || !unit)) {
        throw ContractError("Stratonovich k=4 requires a single order p and unit weights");
    }
    const double value = table_sum(table, idx, draw, false);
    return {value, IntegralKind::stratonovich, table.kernel(), idx,
            std::vector<std::size_t>(table.orders().begin(), table.orders().end())};
}

double stratonovich_sparse(const SparseCoefficients& coeffs, const ComponentIndices& idx,
                           const GaussianDraw& draw) {
    const std::size_t k = coeffs.kernel.multiplicity();
    check_arity(k, idx);
    const Interval& iv = coeffs.kernel.interval();
    CompensatedSum acc;
    for (std::size_t n = 0; n < coeffs.indices.size(); ++n) {
        double prod = coeffs.values[n];
        for (std::size_t l = 0; l < k && prod != 0.0; ++l) {
            prod *= zeta_eff(draw, idx[l], coeffs.indices[n][l], iv);
        }
        acc += prod;
    }
    return acc.value();
}

}  // namespace itexp
