#include "itexp/kernel_coeffs.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>

#include "itexp/exceptions.hpp"
#include "itexp/quadrature.hpp"
#include "itexp/summation.hpp"

namespace itexp {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double signed_power(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) {
        r *= x;
    }
    return r;
}

// Expansion of ((1+x)/2)^e P_j(x) in P_{j-e..j+e}, for every j < cols.
// Heads on [0,1] then follow from the antiderivative identity for P_n.
class LegendreHeadPlan {
public:
    LegendreHeadPlan(int e, std::size_t cols) : e_(e), cols_(cols), width_(2 * e + 1) {
        coef_.assign(cols * width_, 0.0);
        std::vector<double> cur(width_);
        std::vector<double> next(width_);
        for (std::size_t j = 0; j < cols; ++j) {
            std::fill(cur.begin(), cur.end(), 0.0);
            cur[e] = 1.0;
            const long base = static_cast<long>(j) - e;
            for (int step = 0; step < e; ++step) {
                std::fill(next.begin(), next.end(), 0.0);
                for (int m = 0; m < width_; ++m) {
                    const long n = base + m;
                    if (n < 0 || cur[m] == 0.0) {
                        continue;
                    }
                    const double c = 0.5 * cur[m];
                    const double nd = static_cast<double>(n);
                    next[m] += c;
                    if (m + 1 < width_) {
                        next[m + 1] += c * (nd + 1.0) / (2.0 * nd + 1.0);
                    }
                    if (m >= 1 && n >= 1) {
                        next[m - 1] += c * nd / (2.0 * nd + 1.0);
                    }
                }
                std::swap(cur, next);
            }
            const double pref = std::sqrt(2.0 * static_cast<double>(j) + 1.0) *
                                ((e % 2 == 0) ? 0.5 : -0.5);
            for (int m = 0; m < width_; ++m) {
                coef_[j * width_ + m] = pref * cur[m];
            }
        }
    }

    // out[j] = integral over [0, y] of phi_j(s) (-s)^e ds.
    void heads(double y, double* out, std::vector<double>& legendre,
               std::vector<double>& antider) const {
        const double x = 2.0 * y - 1.0;
        const std::size_t top = cols_ + static_cast<std::size_t>(e_);  // need P_0..P_top
        legendre.resize(top + 1);
        legendre[0] = 1.0;
        if (top >= 1) {
            legendre[1] = x;
        }
        for (std::size_t n = 2; n <= top; ++n) {
            const double nd = static_cast<double>(n);
            legendre[n] = ((2.0 * nd - 1.0) * x * legendre[n - 1] - (nd - 1.0) * legendre[n - 2]) / nd;
        }
        antider.resize(top);
        antider[0] = x + 1.0;
        for (std::size_t n = 1; n < top; ++n) {
            antider[n] = (legendre[n + 1] - legendre[n - 1]) / (2.0 * static_cast<double>(n) + 1.0);
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            const long base = static_cast<long>(j) - e_;
            const double* c = &coef_[j * width_];
            double acc = 0.0;
            for (int m = 0; m < width_; ++m) {
                const long n = base + m;
                if (n >= 0) {
                    acc += c[m] * antider[static_cast<std::size_t>(n)];
                }
            }
            out[j] = acc;
        }
    }

private:
    int e_;
    std::size_t cols_;
    int width_;
    std::vector<double> coef_;
};

void trig_heads(int e, std::size_t cols, double y, double* out) {
    if (cols == 0) {
        return;
    }
    const double sign = (e % 2 == 0) ? 1.0 : -1.0;
    out[0] = sign * signed_power(y, e + 1) / static_cast<double>(e + 1);
    const std::complex<double> i_unit(0.0, 1.0);
    for (std::size_t r = 1; 2 * r - 1 < cols; ++r) {
        const double omega = 2.0 * std::numbers::pi * static_cast<double>(r);
        const double theta = omega * y;
        const double half = std::sin(0.5 * theta);
        const std::complex<double> rot(std::cos(theta), std::sin(theta));
        // E_0 = (e^{i theta} - 1) / (i omega), written without cancellation.
        std::complex<double> acc(std::sin(theta) / omega, 2.0 * half * half / omega);
        double ypow = 1.0;
        for (int l = 1; l <= e; ++l) {
            ypow *= y;
            acc = (ypow * rot - static_cast<double>(l) * acc) / (i_unit * omega);
        }
        const double scale = sign * std::numbers::sqrt2;
        out[2 * r - 1] = scale * acc.imag();
        if (2 * r < cols) {
            out[2 * r] = scale * acc.real();
        }
    }
}

// Per-axis profile on [0,1] for weight (-s)^e and indices 0..cols-1.
class AxisProfile {
public:
    AxisProfile(BasisKind kind, int e, std::size_t cols) : kind_(kind), e_(e), cols_(cols) {
        if (kind == BasisKind::legendre) {
            plan_.emplace(e, cols);
        }
        totals_.resize(cols);
        heads_at(1.0, totals_.data());
    }

    std::size_t cols() const { return cols_; }
    double total(std::size_t j) const { return totals_[j]; }
    std::span<const double> totals() const { return totals_; }

    void heads_at(double y, double* out) {
        if (plan_) {
            plan_->heads(y, out, scratch_a_, scratch_b_);
        } else {
            trig_heads(e_, cols_, y, out);
        }
    }
    void tails_at(double y, double* out) {
        heads_at(y, out);
        for (std::size_t j = 0; j < cols_; ++j) {
            out[j] = totals_[j] - out[j];
        }
    }
    void values_at(double y, double* out) const {
        eval_phi_unit(kind_, y, std::span<double>(out, cols_));
        const double w = signed_power(-y, e_);
        for (std::size_t j = 0; j < cols_; ++j) {
            out[j] *= w;
        }
    }

    // Row-major nodes x cols.
    RowMatrix heads(std::span<const double> nodes) {
        RowMatrix m(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(cols_));
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            heads_at(nodes[n], m.row(static_cast<Eigen::Index>(n)).data());
        }
        return m;
    }
    RowMatrix tails(std::span<const double> nodes) {
        RowMatrix m(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(cols_));
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            tails_at(nodes[n], m.row(static_cast<Eigen::Index>(n)).data());
        }
        return m;
    }
    RowMatrix values(std::span<const double> nodes) const {
        RowMatrix m(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(cols_));
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            values_at(nodes[n], m.row(static_cast<Eigen::Index>(n)).data());
        }
        return m;
    }

private:
    BasisKind kind_;
    int e_;
    std::size_t cols_;
    std::optional<LegendreHeadPlan> plan_;
    std::vector<double> totals_;
    std::vector<double> scratch_a_;
    std::vector<double> scratch_b_;
};

constexpr std::size_t node_block = 256;

std::vector<double> unit_table_k1(BasisKind kind, std::span<const int> e, std::size_t p1) {
    AxisProfile a1(kind, e[0], p1 + 1);
    return {a1.totals().begin(), a1.totals().end()};
}

std::vector<double> unit_table_k2(BasisKind kind, std::span<const int> e,
                                  std::span<const std::size_t> orders, std::size_t nodes) {
    AxisProfile a1(kind, e[0], orders[0] + 1);
    AxisProfile a2(kind, e[1], orders[1] + 1);
    const GaussRule& rule = gauss_legendre(nodes);
    RowMatrix acc = RowMatrix::Zero(static_cast<Eigen::Index>(a1.cols()),
                                    static_cast<Eigen::Index>(a2.cols()));
    for (std::size_t start = 0; start < rule.size(); start += node_block) {
        const std::size_t len = std::min(node_block, rule.size() - start);
        std::vector<double> x(len);
        Eigen::VectorXd w(static_cast<Eigen::Index>(len));
        for (std::size_t n = 0; n < len; ++n) {
            x[n] = 0.5 * (rule.nodes[start + n] + 1.0);
            w[static_cast<Eigen::Index>(n)] = 0.5 * rule.weights[start + n];
        }
        const RowMatrix d1 = a1.heads(x);
        const RowMatrix b2 = a2.values(x);
        acc.noalias() += (w.asDiagonal() * d1).transpose() * b2;
    }
    return {acc.data(), acc.data() + acc.size()};
}

std::vector<double> unit_table_k3(BasisKind kind, std::span<const int> e,
                                  std::span<const std::size_t> orders, std::size_t nodes) {
    AxisProfile a1(kind, e[0], orders[0] + 1);
    AxisProfile a2(kind, e[1], orders[1] + 1);
    AxisProfile a3(kind, e[2], orders[2] + 1);
    const auto p1 = static_cast<Eigen::Index>(a1.cols());
    const auto p2 = static_cast<Eigen::Index>(a2.cols());
    const auto p3 = static_cast<Eigen::Index>(a3.cols());
    const GaussRule& rule = gauss_legendre(nodes);
    std::vector<double> x(rule.size());
    Eigen::VectorXd w(static_cast<Eigen::Index>(rule.size()));
    for (std::size_t n = 0; n < rule.size(); ++n) {
        x[n] = 0.5 * (rule.nodes[n] + 1.0);
        w[static_cast<Eigen::Index>(n)] = 0.5 * rule.weights[n];
    }
    const RowMatrix wd1 = w.asDiagonal() * a1.heads(x);
    const RowMatrix b2 = a2.values(x);
    const RowMatrix t3 = a3.tails(x);
    std::vector<double> out(static_cast<std::size_t>(p1 * p2 * p3));
    RowMatrix slice(p1, p2);
    for (Eigen::Index j3 = 0; j3 < p3; ++j3) {
        slice.noalias() = (t3.col(j3).asDiagonal() * wd1).transpose() * b2;
        for (Eigen::Index j1 = 0; j1 < p1; ++j1) {
            for (Eigen::Index j2 = 0; j2 < p2; ++j2) {
                out[static_cast<std::size_t>((j1 * p2 + j2) * p3 + j3)] = slice(j1, j2);
            }
        }
    }
    return out;
}

// Outer variable is t_3; the inner pair uses a rule mapped onto [0, t_3].
std::vector<double> unit_table_k4(BasisKind kind, std::span<const int> e,
                                  std::span<const std::size_t> orders, std::size_t nodes) {
    AxisProfile a1(kind, e[0], orders[0] + 1);
    AxisProfile a2(kind, e[1], orders[1] + 1);
    AxisProfile a3(kind, e[2], orders[2] + 1);
    AxisProfile a4(kind, e[3], orders[3] + 1);
    const auto p12 = static_cast<Eigen::Index>(a1.cols() * a2.cols());
    const auto p34 = static_cast<Eigen::Index>(a3.cols() * a4.cols());
    const GaussRule& rule = gauss_legendre(nodes);
    const std::size_t n = rule.size();
    RowMatrix u(static_cast<Eigen::Index>(n), p12);
    RowMatrix v(static_cast<Eigen::Index>(n), p34);
    std::vector<double> inner(n);
    Eigen::VectorXd inner_w(static_cast<Eigen::Index>(n));
    std::vector<double> b3(a3.cols());
    std::vector<double> t4(a4.cols());
    for (std::size_t a = 0; a < n; ++a) {
        const double xa = 0.5 * (rule.nodes[a] + 1.0);
        for (std::size_t b = 0; b < n; ++b) {
            inner[b] = xa * 0.5 * (rule.nodes[b] + 1.0);
            inner_w[static_cast<Eigen::Index>(b)] = xa * 0.5 * rule.weights[b];
        }
        const RowMatrix ua = (inner_w.asDiagonal() * a1.heads(inner)).transpose() * a2.values(inner);
        u.row(static_cast<Eigen::Index>(a)) = Eigen::Map<const Eigen::RowVectorXd>(ua.data(), p12);
        a3.values_at(xa, b3.data());
        a4.tails_at(xa, t4.data());
        for (std::size_t j3 = 0; j3 < b3.size(); ++j3) {
            for (std::size_t j4 = 0; j4 < t4.size(); ++j4) {
                v(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j3 * t4.size() + j4)) =
                    0.5 * rule.weights[a] * b3[j3] * t4[j4];
            }
        }
    }
    const RowMatrix c = u.transpose() * v;
    return {c.data(), c.data() + c.size()};
}

using CacheKey = std::tuple<BasisKind, std::vector<int>, std::vector<std::size_t>>;

std::mutex cache_mutex;
std::map<CacheKey, std::shared_ptr<const std::vector<double>>>& unit_cache() {
    static std::map<CacheKey, std::shared_ptr<const std::vector<double>>> cache;
    return cache;
}

void check_orders(const WeightedKernel& kernel, std::span<const std::size_t> orders) {
    if (orders.size() != kernel.multiplicity()) {
        throw ContractError("orders length " + std::to_string(orders.size()) +
                            " does not match kernel multiplicity " +
                            std::to_string(kernel.multiplicity()));
    }
}

std::size_t resource_limit(std::size_t k) {
    if (k <= 2) {
        return 10000;
    }
    return k == 3 ? 200 : 50;
}

}  // namespace

WeightedKernel::WeightedKernel(std::vector<int> exponents, Interval iv)
    : exponents_(std::move(exponents)), iv_(iv) {
    if (exponents_.empty() || exponents_.size() > max_multiplicity) {
        throw ContractError("kernel multiplicity must be in 1..4, got " +
                            std::to_string(exponents_.size()));
    }
    for (int e : exponents_) {
        if (e < 0 || e > max_exponent) {
            throw ContractError("kernel exponent must be in 0..4, got " + std::to_string(e));
        }
    }
}

int WeightedKernel::total_degree() const {
    int s = 0;
    for (int e : exponents_) {
        s += e;
    }
    return s;
}

bool WeightedKernel::unit_weights() const { return total_degree() == 0; }

double WeightedKernel::weight(std::size_t slot, double tau) const {
    return signed_power(iv_.t() - tau, exponents_.at(slot));
}

double WeightedKernel::scale() const {
    const double h = iv_.length();
    return std::pow(h, 0.5 * static_cast<double>(multiplicity()) + total_degree());
}

CoefficientTable::CoefficientTable(BasisKind kind, WeightedKernel kernel,
                                   std::vector<std::size_t> orders,
                                   std::shared_ptr<const std::vector<double>> values)
    : kind_(kind), kernel_(std::move(kernel)), orders_(std::move(orders)),
      values_(std::move(values)) {
    strides_.assign(orders_.size(), 1);
    for (std::size_t l = orders_.size(); l-- > 1;) {
        strides_[l - 1] = strides_[l] * (orders_[l] + 1);
    }
}

CoefficientTable CoefficientTable::from_values(BasisKind kind, WeightedKernel kernel,
                                               std::vector<std::size_t> orders,
                                               std::vector<double> values) {
    check_orders(kernel, orders);
    std::size_t expected = 1;
    for (std::size_t p : orders) {
        expected *= p + 1;
    }
    if (values.size() != expected) {
        throw ContractError("table needs " + std::to_string(expected) + " values, got " +
                            std::to_string(values.size()));
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ContractError("table values must be finite");
        }
    }
    return CoefficientTable(kind, std::move(kernel), std::move(orders),
                            std::make_shared<const std::vector<double>>(std::move(values)));
}

std::size_t CoefficientTable::flat_index(std::span<const std::size_t> mi) const {
    if (mi.size() != orders_.size()) {
        throw ContractError("multi-index length does not match table multiplicity");
    }
    std::size_t flat = 0;
    for (std::size_t l = 0; l < mi.size(); ++l) {
        if (mi[l] > orders_[l]) {
            throw ContractError("multi-index entry " + std::to_string(mi[l]) +
                                " exceeds table order " + std::to_string(orders_[l]));
        }
        flat += mi[l] * strides_[l];
    }
    return flat;
}

double CoefficientTable::at(std::span<const std::size_t> mi) const {
    return (*values_)[flat_index(mi)];
}

MultiIndex CoefficientTable::unflatten(std::size_t flat) const {
    MultiIndex mi(orders_.size());
    for (std::size_t l = 0; l < orders_.size(); ++l) {
        mi[l] = flat / strides_[l];
        flat %= strides_[l];
    }
    return mi;
}

std::size_t CoefficientTable::max_order() const {
    return *std::max_element(orders_.begin(), orders_.end());
}

std::size_t CoefficientTable::common_order() const {
    for (std::size_t p : orders_) {
        if (p != orders_.front()) {
            throw ContractError("table orders differ; a single order p is required");
        }
    }
    return orders_.front();
}

std::size_t quadrature_nodes(BasisKind kind, const WeightedKernel& kernel,
                             std::span<const std::size_t> max_indices) {
    std::size_t maxj = 0;
    std::size_t sum_j = 0;
    std::size_t freq = 0;
    for (std::size_t j : max_indices) {
        maxj = std::max(maxj, j);
        sum_j += j;
        freq += (j + 1) / 2;
    }
    const std::size_t k = kernel.multiplicity();
    const auto poly = static_cast<std::size_t>(kernel.total_degree()) + k;
    std::size_t needed = 0;
    if (kind == BasisKind::legendre) {
        needed = (sum_j + poly + 2) / 2 + 2;
    } else {
        const double band = std::numbers::pi * static_cast<double>(freq) + static_cast<double>(poly);
        needed = static_cast<std::size_t>(std::ceil(0.5 * band + 2.0 * std::cbrt(band))) + 20;
    }
    return std::max({std::size_t{64}, 2 * maxj + 10, needed});
}

CoefficientTable build_table(BasisKind kind, const WeightedKernel& kernel,
                             std::vector<std::size_t> orders) {
    check_orders(kernel, orders);
    const std::size_t k = kernel.multiplicity();
    const std::size_t limit = resource_limit(k);
    for (std::size_t p : orders) {
        if (p > limit) {
            throw CapacityError("order " + std::to_string(p) + " exceeds the limit " +
                                std::to_string(limit) + " for multiplicity " + std::to_string(k));
        }
    }
    const std::vector<int> exps(kernel.exponents().begin(), kernel.exponents().end());
    CacheKey key{kind, exps, orders};
    std::shared_ptr<const std::vector<double>> unit;
    {
        std::lock_guard lock(cache_mutex);
        auto it = unit_cache().find(key);
        if (it != unit_cache().end()) {
            unit = it->second;
        }
    }
    if (!unit) {
        const std::size_t nodes = quadrature_nodes(kind, kernel, orders);
        std::vector<double> values;
        switch (k) {
            case 1: values = unit_table_k1(kind, exps, orders[0]); break;
            case 2: values = unit_table_k2(kind, exps, orders, nodes); break;
            case 3: values = unit_table_k3(kind, exps, orders, nodes); break;
            default: values = unit_table_k4(kind, exps, orders, nodes); break;
        }
        auto fresh = std::make_shared<const std::vector<double>>(std::move(values));
        std::lock_guard lock(cache_mutex);
        unit = unit_cache().try_emplace(key, std::move(fresh)).first->second;
    }
    const double scale = kernel.scale();
    std::vector<double> scaled(unit->size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        scaled[i] = scale * (*unit)[i];
    }
    return CoefficientTable(kind, kernel, std::move(orders),
                            std::make_shared<const std::vector<double>>(std::move(scaled)));
}

SparseCoefficients fourier_coefficients(BasisKind kind, const WeightedKernel& kernel,
                                        std::vector<MultiIndex> indices) {
    const std::size_t k = kernel.multiplicity();
    std::vector<std::size_t> maxj(k, 0);
    for (const auto& mi : indices) {
        if (mi.size() != k) {
            throw ContractError("multi-index length " + std::to_string(mi.size()) +
                                " does not match kernel multiplicity " + std::to_string(k));
        }
        for (std::size_t l = 0; l < k; ++l) {
            maxj[l] = std::max(maxj[l], mi[l]);
        }
    }
    SparseCoefficients out{kind, kernel, std::move(indices), {}};
    out.values.resize(out.indices.size());
    if (out.indices.empty()) {
        return out;
    }
    std::vector<AxisProfile> axes;
    for (std::size_t l = 0; l < k; ++l) {
        axes.emplace_back(kind, kernel.exponent(l), maxj[l] + 1);
    }
    const double scale = kernel.scale();
    if (k == 1) {
        for (std::size_t i = 0; i < out.indices.size(); ++i) {
            out.values[i] = scale * axes[0].total(out.indices[i][0]);
        }
        return out;
    }
    const GaussRule& rule = gauss_legendre(quadrature_nodes(kind, kernel, maxj));
    const std::size_t n = rule.size();
    std::vector<double> x(n);
    std::vector<double> w(n);
    for (std::size_t a = 0; a < n; ++a) {
        x[a] = 0.5 * (rule.nodes[a] + 1.0);
        w[a] = 0.5 * rule.weights[a];
    }
    if (k <= 3) {
        const RowMatrix d1 = axes[0].heads(x);
        const RowMatrix b2 = axes[1].values(x);
        const RowMatrix t3 = k == 3 ? axes[2].tails(x) : RowMatrix();
        for (std::size_t i = 0; i < out.indices.size(); ++i) {
            const auto& mi = out.indices[i];
            const auto j1 = static_cast<Eigen::Index>(mi[0]);
            const auto j2 = static_cast<Eigen::Index>(mi[1]);
            CompensatedSum acc;
            for (std::size_t a = 0; a < n; ++a) {
                const auto r = static_cast<Eigen::Index>(a);
                double term = w[a] * d1(r, j1) * b2(r, j2);
                if (k == 3) {
                    term *= t3(r, static_cast<Eigen::Index>(mi[2]));
                }
                acc += term;
            }
            out.values[i] = scale * acc.value();
        }
        return out;
    }
    // k = 4: inner pair on [0, x_a], outer t_3.
    std::vector<RowMatrix> d1(n);
    std::vector<RowMatrix> b2(n);
    std::vector<double> inner(n);
    std::vector<double> inner_w(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            inner[b] = x[a] * x[b];
        }
        d1[a] = axes[0].heads(inner);
        b2[a] = axes[1].values(inner);
    }
    const RowMatrix b3 = axes[2].values(x);
    const RowMatrix t4 = axes[3].tails(x);
    for (std::size_t i = 0; i < out.indices.size(); ++i) {
        const auto& mi = out.indices[i];
        const auto j1 = static_cast<Eigen::Index>(mi[0]);
        const auto j2 = static_cast<Eigen::Index>(mi[1]);
        const auto j3 = static_cast<Eigen::Index>(mi[2]);
        const auto j4 = static_cast<Eigen::Index>(mi[3]);
        CompensatedSum outer;
        for (std::size_t a = 0; a < n; ++a) {
            const auto r = static_cast<Eigen::Index>(a);
            double acc = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                const auto s = static_cast<Eigen::Index>(b);
                acc += w[b] * d1[a](s, j1) * b2[a](s, j2);
            }
            outer += w[a] * x[a] * acc * b3(r, j3) * t4(r, j4);
        }
        out.values[i] = scale * outer.value();
    }
    return out;
}

double fourier_coefficient(BasisKind kind, const WeightedKernel& kernel, const MultiIndex& mi) {
    return fourier_coefficients(kind, kernel, {mi}).values.front();
}

double kernel_norm_sq(const WeightedKernel& kernel) {
    double denom = 1.0;
    int running = 0;
    for (std::size_t m = 0; m < kernel.multiplicity(); ++m) {
        running += 2 * kernel.exponent(m) + 1;
        denom *= static_cast<double>(running);
    }
    const double h = kernel.interval().length();
    return std::pow(h, static_cast<double>(running)) / denom;
}

double parseval_partial(const CoefficientTable& table) {
    CompensatedSum acc;
    for (double v : table.values()) {
        acc += v * v;
    }
    return acc.value();
}

void write_csv(const CoefficientTable& table, std::ostream& out) {
    for (std::size_t l = 0; l < table.multiplicity(); ++l) {
        out << 'j' << (l + 1) << ',';
    }
    out << "C\n";
    char buf[40];
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        for (std::size_t j : table.unflatten(flat)) {
            out << j << ',';
        }
        // Shortest round-trip form.
        const auto res = std::to_chars(buf, buf + sizeof buf, table[flat]);
        out.write(buf, res.ptr - buf);
        out << '\n';
    }
}

}  // namespace itexp
