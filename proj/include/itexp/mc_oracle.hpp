#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "itexp/basis.hpp"
#include "itexp/catalog.hpp"
#include "itexp/expansions.hpp"
#include "itexp/kernel_coeffs.hpp"

namespace itexp {

/// Increments of m independent Wiener components on N equal steps of [t, T].
class WienerPath {
public:
    WienerPath(Interval iv, std::size_t steps, std::size_t m, std::vector<double> increments,
               std::uint64_t seed = 0);

    const Interval& interval() const { return iv_; }
    std::size_t steps() const { return steps_; }
    std::size_t components() const { return m_; }
    std::uint64_t seed() const { return seed_; }
    double step() const { return iv_.length() / static_cast<double>(steps_); }
    /// Left end of step n.
    double node(std::size_t n) const;
    /// Component i in 1..m.
    std::span<const double> increments(std::size_t i) const;
    /// W_T - W_t for component i.
    double total(std::size_t i) const;

private:
    Interval iv_;
    std::size_t steps_;
    std::size_t m_;
    std::vector<double> dw_;
    std::uint64_t seed_;
};

/// Increments sqrt(step) * N(0, 1) on counters (seed, path, i, n).
WienerPath simulate_path(const Interval& iv, std::size_t steps, std::size_t m, std::uint64_t seed);

/// Nested sums over the grid. Ito: left-point values of the weight and the
/// inner accumulated integral. Stratonovich: midpoint weight and the average
/// of the inner integral at both ends of the step. Component 0 uses the step
/// length instead of an increment.
double simulate_iterated(const WienerPath& path, const WeightedKernel& kernel,
                         const ComponentIndices& idx, IntegralKind kind);

/// Left-point sum of phi_j against the increments of component i >= 1.
double zeta_from_path(const WienerPath& path, BasisKind basis, std::size_t j, std::size_t i);

/// zeta_0..zeta_p for components 1..m plus tail variables at cut q, with the
/// infinite tails replaced by partial sums over r = q+1..rcap (trig only;
/// Legendre draws get zero tails).
GaussianDraw draw_from_path(const WienerPath& path, BasisKind basis, std::size_t p, std::size_t q,
                            std::size_t rcap);

struct MCEstimate {
    double mean;           // average of (truth - approximation)
    double second_moment;  // average of (truth - approximation)^2
    double stderr_;        // sample std of the squared difference / sqrt(trials)
    std::size_t trials;
    std::size_t grid_N;
};

struct MCConfig {
    std::size_t trials = 10000;
    std::size_t grid_N = 10000;
    std::uint64_t seed = 1;
    /// 0 selects 16 q + 1000.
    std::size_t rcap = 0;
    /// 0 selects hardware concurrency. Results do not depend on the count.
    std::size_t threads = 1;
};

/// 3 (T - t)^k / N.
double grid_allowance(std::size_t k, const Interval& iv, std::size_t grid_N);

/// Catalog display at cut q (tails on) against the Stratonovich grid integral.
MCEstimate ms_error_vs_truth(const CatalogId& id, const Interval& iv, const ComponentIndices& idx,
                             std::size_t q, const MCConfig& config);

/// Table-driven expansion of the given kind against the grid integral of the same kind.
MCEstimate ms_error_vs_truth(const CoefficientTable& table, const ComponentIndices& idx,
                             IntegralKind kind, const MCConfig& config);

}  // namespace itexp
