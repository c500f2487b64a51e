#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "itexp/basis.hpp"

namespace itexp {

class CoefficientTable;
class WeightedKernel;
CoefficientTable build_table(BasisKind kind, const WeightedKernel& kernel,
                             std::vector<std::size_t> orders);

/// Kernel K(t_1..t_k) = prod_l psi_l(t_l) on t_1 < ... < t_k (zero elsewhere),
/// with psi_l(tau) = (t - tau)^{l_l}.
class WeightedKernel {
public:
    static constexpr std::size_t max_multiplicity = 4;
    static constexpr int max_exponent = 4;

    WeightedKernel(std::vector<int> exponents, Interval iv);

    std::size_t multiplicity() const { return exponents_.size(); }
    std::span<const int> exponents() const { return exponents_; }
    int exponent(std::size_t slot) const { return exponents_.at(slot); }
    const Interval& interval() const { return iv_; }

    int total_degree() const;
    bool unit_weights() const;

    /// psi_slot(tau) = (t - tau)^{l_slot}; slot is 0-based.
    double weight(std::size_t slot, double tau) const;

    /// Factor relating coefficients on [t, T] to those on [0, 1]:
    /// (T - t)^{k/2 + sum l}.
    double scale() const;

    /// Same exponents on a different interval.
    WeightedKernel on(const Interval& iv) const { return WeightedKernel(exponents_, iv); }

private:
    std::vector<int> exponents_;
    Interval iv_;
};

/// (j_1, ..., j_k); position l holds the basis index paired with t_{l+1}.
using MultiIndex = std::vector<std::size_t>;

/// Dense tensor of Fourier coefficients C_{j_k...j_1} for 0 <= j_l <= p_l.
/// Row-major with j_1 varying slowest. Immutable once built.
class CoefficientTable {
public:
    BasisKind kind() const { return kind_; }
    const WeightedKernel& kernel() const { return kernel_; }
    std::size_t multiplicity() const { return orders_.size(); }
    std::span<const std::size_t> orders() const { return orders_; }
    std::span<const std::size_t> strides() const { return strides_; }
    std::span<const double> values() const { return *values_; }
    std::size_t size() const { return values_->size(); }

    double operator[](std::size_t flat) const { return (*values_)[flat]; }
    double at(std::span<const std::size_t> mi) const;
    std::size_t flat_index(std::span<const std::size_t> mi) const;
    MultiIndex unflatten(std::size_t flat) const;

    std::size_t max_order() const;
    /// The shared order p; throws ContractError if the orders differ.
    std::size_t common_order() const;

    /// Builds a table from explicit values (row-major, j_1 slowest).
    static CoefficientTable from_values(BasisKind kind, WeightedKernel kernel,
                                        std::vector<std::size_t> orders,
                                        std::vector<double> values);

private:
    friend CoefficientTable build_table(BasisKind, const WeightedKernel&, std::vector<std::size_t>);

    CoefficientTable(BasisKind kind, WeightedKernel kernel, std::vector<std::size_t> orders,
                     std::shared_ptr<const std::vector<double>> values);

    BasisKind kind_;
    WeightedKernel kernel_;
    std::vector<std::size_t> orders_;
    std::vector<std::size_t> strides_;
    std::shared_ptr<const std::vector<double>> values_;
};

/// Coefficients for an explicit list of multi-indices.
struct SparseCoefficients {
    BasisKind kind;
    WeightedKernel kernel;
    std::vector<MultiIndex> indices;
    std::vector<double> values;
};

/// C_{j_k...j_1} = integral of K * prod phi_{j_l}(t_l) over [t, T]^k.
double fourier_coefficient(BasisKind kind, const WeightedKernel& kernel, const MultiIndex& mi);

/// Batch evaluation sharing quadrature work across the list.
SparseCoefficients fourier_coefficients(BasisKind kind, const WeightedKernel& kernel,
                                        std::vector<MultiIndex> indices);

/// All coefficients with j_l <= orders[l]. Guards: p <= 1e4 for k <= 2,
/// p <= 200 for k = 3, p <= 50 for k = 4 (CapacityError otherwise).
/// Unit-interval tables are cached; repeated calls are cheap.
CoefficientTable build_table(BasisKind kind, const WeightedKernel& kernel,
                             std::vector<std::size_t> orders);

/// I_k = ||K||^2, in closed form.
double kernel_norm_sq(const WeightedKernel& kernel);

/// Sum of squares of every coefficient in the table (compensated).
double parseval_partial(const CoefficientTable& table);

/// CSV dump: header `j1,...,jk,C`, rows in storage order, 17 significant digits.
void write_csv(const CoefficientTable& table, std::ostream& out);

/// Gauss nodes used per dimension for the given orders. Exposed for tests.
std::size_t quadrature_nodes(BasisKind kind, const WeightedKernel& kernel,
                             std::span<const std::size_t> max_indices);

}  // namespace itexp
