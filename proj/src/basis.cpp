#include "itexp/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "itexp/exceptions.hpp"
#include "itexp/quadrature.hpp"

namespace itexp {

Interval::Interval(double t, double T) : t_(t), T_(T) {
    if (!std::isfinite(t) || !std::isfinite(T)) {
        throw ContractError("Interval: endpoints must be finite");
    }
    if (!(T - t >= 1e-12)) {
        throw ContractError("Interval: need T - t >= 1e-12, got [" + std::to_string(t) + ", " +
                            std::to_string(T) + "]");
    }
}

bool Interval::contains(double s) const {
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::fabs(t_), std::fabs(T_), length()});
    return s >= t_ - slack && s <= T_ + slack;
}

std::string_view to_string(BasisKind kind) {
    return kind == BasisKind::legendre ? "legendre" : "trig";
}

BasisKind parse_basis(std::string_view name) {
    if (name == "legendre") {
        return BasisKind::legendre;
    }
    if (name == "trig" || name == "trigonometric") {
        return BasisKind::trigonometric;
    }
    throw ContractError("unknown basis '" + std::string(name) + "'");
}

void eval_phi_unit(BasisKind kind, double u, std::span<double> out) {
    const std::size_t count = out.size();
    if (count == 0) {
        return;
    }
    if (kind == BasisKind::legendre) {
        const double x = 2.0 * u - 1.0;
        double p0 = 1.0;
        double p1 = x;
        out[0] = 1.0;
        if (count > 1) {
            out[1] = std::sqrt(3.0) * x;
        }
        for (std::size_t j = 2; j < count; ++j) {
            const double jj = static_cast<double>(j);
            const double p2 = ((2.0 * jj - 1.0) * x * p1 - (jj - 1.0) * p0) / jj;
            out[j] = std::sqrt(2.0 * jj + 1.0) * p2;
            p0 = p1;
            p1 = p2;
        }
        return;
    }
    out[0] = 1.0;
    for (std::size_t j = 1; j < count; ++j) {
        const std::size_t r = (j + 1) / 2;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) * u;
        out[j] = std::numbers::sqrt2 * ((j % 2 == 1) ? std::sin(angle) : std::cos(angle));
    }
}

void eval_phi_all(BasisKind kind, const Interval& iv, double s, std::span<double> out) {
    if (!iv.contains(s)) {
        throw DomainError("eval_phi: s = " + std::to_string(s) + " outside [" +
                          std::to_string(iv.t()) + ", " + std::to_string(iv.T()) + "]");
    }
    const double u = std::clamp(iv.to_unit(s), 0.0, 1.0);
    eval_phi_unit(kind, u, out);
    const double scale = 1.0 / std::sqrt(iv.length());
    for (double& v : out) {
        v *= scale;
    }
}

double eval_phi(BasisKind kind, const Interval& iv, std::size_t j, double s) {
    if (kind == BasisKind::trigonometric) {
        if (!iv.contains(s)) {
            throw DomainError("eval_phi: s = " + std::to_string(s) + " outside [" +
                              std::to_string(iv.t()) + ", " + std::to_string(iv.T()) + "]");
        }
        const double scale = 1.0 / std::sqrt(iv.length());
        if (j == 0) {
            return scale;
        }
        const std::size_t r = (j + 1) / 2;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) * iv.to_unit(s);
        return scale * std::numbers::sqrt2 * ((j % 2 == 1) ? std::sin(angle) : std::cos(angle));
    }
    std::vector<double> values(j + 1);
    eval_phi_all(kind, iv, s, values);
    return values[j];
}

namespace {

double residual_with_rule(BasisKind kind, const Interval& iv, std::size_t jmax,
                          const GaussRule& rule) {
    const std::size_t count = jmax + 1;
    std::vector<double> gram(count * count, 0.0);
    std::vector<double> values(count);
    for (std::size_t n = 0; n < rule.size(); ++n) {
        eval_phi_all(kind, iv, rule.nodes[n], values);
        const double w = rule.weights[n];
        for (std::size_t i = 0; i < count; ++i) {
            const double wi = w * values[i];
            for (std::size_t j = i; j < count; ++j) {
                gram[i * count + j] += wi * values[j];
            }
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i; j < count; ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::fabs(gram[i * count + j] - target));
        }
    }
    return worst;
}

}  // namespace

double orthonormality_residual(BasisKind kind, const Interval& iv, std::size_t jmax) {
    constexpr std::size_t panel_nodes = 50;
    const std::size_t total = std::max<std::size_t>(200, 4 * jmax);
    const std::size_t panels = (total + panel_nodes - 1) / panel_nodes;
    return residual_with_rule(kind, iv, jmax, composite_gauss(panel_nodes, panels, iv.t(), iv.T()));
}

double orthonormality_residual(BasisKind kind, const Interval& iv, std::size_t jmax,
                               std::size_t nodes) {
    return residual_with_rule(kind, iv, jmax, gauss_legendre(nodes, iv.t(), iv.T()));
}

}  // namespace itexp
