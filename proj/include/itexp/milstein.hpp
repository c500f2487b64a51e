#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "itexp/gaussian_source.hpp"

namespace itexp {

/// Bridge Fourier coefficients on [0, Delta]: a_{i,r} (r = 0..R) and b_{i,r} (r = 1..R).
class KLCoefficients {
public:
    KLCoefficients(std::size_t m, std::size_t R, double delta);

    std::size_t components() const { return m_; }
    std::size_t max_order() const { return R_; }
    double delta() const { return delta_; }

    /// i in 1..m, r in 0..R (b at r = 0 is 0).
    double a(std::size_t i, std::size_t r) const;
    double b(std::size_t i, std::size_t r) const;
    double& a(std::size_t i, std::size_t r);
    double& b(std::size_t i, std::size_t r);

private:
    std::size_t slot(std::size_t i, std::size_t r) const;

    std::size_t m_;
    std::size_t R_;
    double delta_;
    std::vector<double> a_;
    std::vector<double> b_;
};

/// a_{i,r} = -sqrt(Delta/2)/(pi r) zeta_{2r-1}, b_{i,r} = sqrt(Delta/2)/(pi r) zeta_{2r},
/// a_{i,0} = sqrt(2 Delta)/pi (sum_{r<=q} zeta_{2r-1}/r + sqrt(alpha_q) xi_q), q = draw.tail_cut().
/// Needs draw.max_index() >= 2 max(R, q).
KLCoefficients kl_from_draw(const GaussianDraw& draw, double delta, std::size_t R);

double milstein_I1(const GaussianDraw& draw, std::size_t i1, std::size_t q, double delta);
double milstein_I00(const GaussianDraw& draw, std::size_t i1, std::size_t i2, std::size_t q,
                    double delta);
double milstein_I2(const GaussianDraw& draw, std::size_t i1, std::size_t q, double delta);

/// The (0, i2, i3) integral inside the triple expansion. `as_printed` keeps
/// the leading J1 J1 / 6 term without a factor Delta; `scaled` restores it.
enum class J011Form { as_printed, scaled };

struct TripleBlocks {
    double A12;   // A_{i1 i2}
    double A23;   // A_{i2 i3}
    double B13;   // B_{i1 i3}
    double B23;   // B_{i2 i3}
    double C21;   // C_{i2 i1}
    double C23;   // C_{i2 i3}
    double b1;    // b_{i1}
    double b2;    // b_{i2}
    double b3;    // b_{i3}
    double D;     // D^{(q)}_{i1 i2 i3}
    double J011;  // (0, i2, i3) integral
};

/// Series blocks truncated at q; D uses the printed double sums (indices up to 2q).
TripleBlocks triple_blocks(const GaussianDraw& draw, std::array<std::size_t, 3> idx, std::size_t q,
                           double delta, J011Form form = J011Form::as_printed);

/// Triple Stratonovich integral by the bridge route. The double integral
/// inside is milstein_I00 at the same q (tail variables included); a_{i,0}
/// is exact. Needs draw.max_index() >= 4q and all components >= 1.
double milstein_triple(const GaussianDraw& draw, std::array<std::size_t, 3> idx, std::size_t q,
                       double delta, J011Form form = J011Form::as_printed);

}  // namespace itexp
