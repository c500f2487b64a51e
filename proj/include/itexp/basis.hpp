#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace itexp {

/// Time interval [t, T] with T - t >= 1e-12.
class Interval {
public:
    Interval(double t, double T);

    double t() const { return t_; }
    double T() const { return T_; }
    double length() const { return T_ - t_; }

    /// Maps s in [t, T] to (s - t) / (T - t) in [0, 1].
    double to_unit(double s) const { return (s - t_) / length(); }
    double from_unit(double u) const { return t_ + u * length(); }

    bool contains(double s) const;

private:
    double t_;
    double T_;
};

enum class BasisKind { legendre, trigonometric };

std::string_view to_string(BasisKind kind);
BasisKind parse_basis(std::string_view name);

/// phi_j(s) of the orthonormal system on [t, T].
///
/// Trigonometric indices follow the layout j = 0 constant, j = 2r - 1 the
/// sine of frequency r, j = 2r the cosine. Legendre values come from the
/// three-term recurrence for P_j at the affinely mapped point.
double eval_phi(BasisKind kind, const Interval& iv, std::size_t j, double s);

/// phi_0(s), ..., phi_{out.size()-1}(s) in one pass.
void eval_phi_all(BasisKind kind, const Interval& iv, double s, std::span<double> out);

/// Unit-interval version of eval_phi_all without domain checks; u in [0, 1].
void eval_phi_unit(BasisKind kind, double u, std::span<double> out);

/// max_{i,j <= jmax} |<phi_i, phi_j> - delta_ij| by composite Gauss quadrature
/// with max(200, 4 jmax) nodes.
double orthonormality_residual(BasisKind kind, const Interval& iv, std::size_t jmax);

/// Same residual with a caller-chosen single Gauss rule of `nodes` points.
double orthonormality_residual(BasisKind kind, const Interval& iv, std::size_t jmax,
                               std::size_t nodes);

}  // namespace itexp
