#include "itexp/milstein.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "itexp/exceptions.hpp"
#include "itexp/summation.hpp"

namespace itexp {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

void check_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ContractError("Delta must be positive and finite");
    }
}

void check_cut(const GaussianDraw& draw, std::size_t q, std::size_t need) {
    if (draw.tail_cut() != q) {
        throw ContractError("draw tail variables belong to cut " + std::to_string(draw.tail_cut()) +
                            ", requested " + std::to_string(q));
    }
    if (draw.max_index() < need) {
        throw ContractError("draw covers indices up to " + std::to_string(draw.max_index()) +
                            ", need " + std::to_string(need));
    }
}

double odd_series(const GaussianDraw& draw, std::size_t i, std::size_t q) {
    CompensatedSum s;
    for (std::size_t r = 1; r <= q; ++r) {
        s += draw.zeta(i, 2 * r - 1) / static_cast<double>(r);
    }
    s += std::sqrt(tail_weights(q).alpha) * draw.xi(i);
    return s.value();
}

double even_series(const GaussianDraw& draw, std::size_t i, std::size_t q) {
    CompensatedSum s;
    for (std::size_t r = 1; r <= q; ++r) {
        const double rr = static_cast<double>(r);
        s += draw.zeta(i, 2 * r) / (rr * rr);
    }
    s += std::sqrt(tail_weights(q).beta) * draw.mu(i);
    return s.value();
}

}  // namespace

KLCoefficients::KLCoefficients(std::size_t m, std::size_t R, double delta)
    : m_(m), R_(R), delta_(delta), a_(m * (R + 1), 0.0), b_(m * (R + 1), 0.0) {
    check_delta(delta);
}

std::size_t KLCoefficients::slot(std::size_t i, std::size_t r) const {
    if (i < 1 || i > m_ || r > R_) {
        throw ContractError("KL coefficient (" + std::to_string(i) + ", " + std::to_string(r) +
                            ") outside 1.." + std::to_string(m_) + " x 0.." + std::to_string(R_));
    }
    return (i - 1) * (R_ + 1) + r;
}

double KLCoefficients::a(std::size_t i, std::size_t r) const { return a_[slot(i, r)]; }
double KLCoefficients::b(std::size_t i, std::size_t r) const { return b_[slot(i, r)]; }
double& KLCoefficients::a(std::size_t i, std::size_t r) { return a_[slot(i, r)]; }
double& KLCoefficients::b(std::size_t i, std::size_t r) { return b_[slot(i, r)]; }

KLCoefficients kl_from_draw(const GaussianDraw& draw, double delta, std::size_t R) {
    check_delta(delta);
    const std::size_t q = draw.tail_cut();
    if (draw.max_index() < 2 * std::max(R, q)) {
        throw ContractError("KL order " + std::to_string(R) + " at cut " + std::to_string(q) +
                            " needs draw indices up to " + std::to_string(2 * std::max(R, q)));
    }
    KLCoefficients kl(draw.components(), R, delta);
    const double half = std::sqrt(delta / 2.0) / pi;
    for (std::size_t i = 1; i <= draw.components(); ++i) {
        kl.a(i, 0) = std::sqrt(2.0 * delta) / pi * odd_series(draw, i, q);
        for (std::size_t r = 1; r <= R; ++r) {
            const double rr = static_cast<double>(r);
            kl.a(i, r) = -half / rr * draw.zeta(i, 2 * r - 1);
            kl.b(i, r) = half / rr * draw.zeta(i, 2 * r);
        }
    }
    return kl;
}

double milstein_I1(const GaussianDraw& draw, std::size_t i1, std::size_t q, double delta) {
    check_delta(delta);
    check_cut(draw, q, 2 * q);
    return -std::pow(delta, 1.5) / 2.0 *
           (draw.zeta(i1, 0) - sqrt2 / pi * odd_series(draw, i1, q));
}

double milstein_I00(const GaussianDraw& draw, std::size_t i1, std::size_t i2, std::size_t q,
                    double delta) {
    check_delta(delta);
    check_cut(draw, q, 2 * q);
    CompensatedSum s;
    s += draw.zeta(i1, 0) * draw.zeta(i2, 0);
    CompensatedSum series;
    for (std::size_t r = 1; r <= q; ++r) {
        series += (draw.zeta(i1, 2 * r) * draw.zeta(i2, 2 * r - 1) -
                   draw.zeta(i1, 2 * r - 1) * draw.zeta(i2, 2 * r) +
                   sqrt2 * (draw.zeta(i1, 2 * r - 1) * draw.zeta(i2, 0) -
                            draw.zeta(i1, 0) * draw.zeta(i2, 2 * r - 1))) /
                  static_cast<double>(r);
    }
    s += series.value() / pi;
    s += sqrt2 / pi * std::sqrt(tail_weights(q).alpha) *
         (draw.xi(i1) * draw.zeta(i2, 0) - draw.zeta(i1, 0) * draw.xi(i2));
    return delta / 2.0 * s.value();
}

double milstein_I2(const GaussianDraw& draw, std::size_t i1, std::size_t q, double delta) {
    check_delta(delta);
    check_cut(draw, q, 2 * q);
    return std::pow(delta, 2.5) *
           (draw.zeta(i1, 0) / 3.0 + even_series(draw, i1, q) / (sqrt2 * pi * pi) -
            odd_series(draw, i1, q) / (sqrt2 * pi));
}

TripleBlocks triple_blocks(const GaussianDraw& draw, std::array<std::size_t, 3> idx, std::size_t q,
                           double delta, J011Form form) {
    check_delta(delta);
    for (std::size_t i : idx) {
        if (i == 0) {
            throw UnsupportedError("bridge-route triple expansion covers Wiener components only");
        }
    }
    check_cut(draw, q, 4 * q);
    const KLCoefficients kl = kl_from_draw(draw, delta, 2 * q);
    const auto [i1, i2, i3] = idx;
    auto A = [&](std::size_t x, std::size_t y) {
        CompensatedSum s;
        for (std::size_t r = 1; r <= q; ++r) {
            s += static_cast<double>(r) * (kl.a(x, r) * kl.b(y, r) - kl.b(x, r) * kl.a(y, r));
        }
        return pi / delta * s.value();
    };
    auto B = [&](std::size_t x, std::size_t y) {
        CompensatedSum s;
        for (std::size_t r = 1; r <= q; ++r) {
            s += kl.a(x, r) * kl.a(y, r) + kl.b(x, r) * kl.b(y, r);
        }
        return s.value() / (2.0 * delta);
    };
    auto C = [&](std::size_t x, std::size_t y) {
        CompensatedSum s;
        for (std::size_t l = 1; l <= q; ++l) {
            for (std::size_t r = 1; r <= q; ++r) {
                if (r == l) {
                    continue;
                }
                const double rr = static_cast<double>(r);
                const double ll = static_cast<double>(l);
                s += rr / (rr * rr - ll * ll) *
                     (rr * kl.a(x, r) * kl.a(y, l) + ll * kl.b(x, r) * kl.b(y, l));
            }
        }
        return -s.value() / delta;
    };
    auto bsum = [&](std::size_t x) {
        CompensatedSum s;
        for (std::size_t r = 1; r <= q; ++r) {
            s += kl.b(x, r) / static_cast<double>(r);
        }
        return s.value();
    };

    CompensatedSum d;
    for (std::size_t l = 1; l <= q; ++l) {
        const double ll = static_cast<double>(l);
        for (std::size_t r = 1; r <= q; ++r) {
            d += -ll * (kl.a(i2, l) * (kl.a(i3, l + r) * kl.b(i1, r) - kl.a(i1, r) * kl.b(i3, l + r)) +
                        kl.b(i2, l) * (kl.a(i1, r) * kl.a(i3, r + l) + kl.b(i1, r) * kl.b(i3, l + r)));
        }
        for (std::size_t r = 1; r + 1 <= l; ++r) {
            d += ll * (kl.a(i2, l) * (kl.a(i1, r) * kl.b(i3, l - r) + kl.a(i3, l - r) * kl.b(i1, r)) -
                       kl.b(i2, l) * (kl.a(i1, r) * kl.a(i3, l - r) - kl.b(i1, r) * kl.b(i3, l - r)));
        }
        for (std::size_t r = l + 1; r <= q; ++r) {
            d += ll * (kl.a(i2, l) * (kl.a(i3, r - l) * kl.b(i1, r) - kl.a(i1, r) * kl.b(i3, r - l)) +
                       kl.b(i2, l) * (kl.a(i1, r) * kl.a(i3, r - l) + kl.b(i1, r) * kl.b(i3, r - l)));
        }
    }

    TripleBlocks t{};
    t.A12 = A(i1, i2);
    t.A23 = A(i2, i3);
    t.B13 = B(i1, i3);
    t.B23 = B(i2, i3);
    t.C21 = C(i2, i1);
    t.C23 = C(i2, i3);
    t.b1 = bsum(i1);
    t.b2 = bsum(i2);
    t.b3 = bsum(i3);
    t.D = pi / (2.0 * std::pow(delta, 1.5)) * d.value();

    const double root = std::sqrt(delta);
    const double j2 = root * draw.zeta(i2, 0);
    const double j3 = root * draw.zeta(i3, 0);
    const double lead = form == J011Form::scaled ? delta / 6.0 : 1.0 / 6.0;
    t.J011 = lead * j2 * j3 - delta / pi * j3 * t.b2 + delta * delta * t.B23 -
             0.25 * delta * kl.a(i3, 0) * j2 + delta / (2.0 * pi) * t.b3 * j2 +
             delta * delta * t.C23 + 0.5 * delta * delta * t.A23;
    return t;
}

double milstein_triple(const GaussianDraw& draw, std::array<std::size_t, 3> idx, std::size_t q,
                       double delta, J011Form form) {
    const TripleBlocks t = triple_blocks(draw, idx, q, delta, form);
    const KLCoefficients kl = kl_from_draw(draw, delta, 0);
    const auto [i1, i2, i3] = idx;
    const double root = std::sqrt(delta);
    // Single integrals are the endpoint values f_Delta = sqrt(Delta) zeta_0.
    const double j1 = root * draw.zeta(i1, 0);
    const double j2 = root * draw.zeta(i2, 0);
    const double j3 = root * draw.zeta(i3, 0);
    const double j11 = milstein_I00(draw, i2, i3, q, delta);
    return j1 * t.J011 / delta + 0.5 * kl.a(i1, 0) * j11 + t.b1 * j2 * j3 / (2.0 * pi) -
           delta * j2 * t.B13 + delta * j3 * (0.5 * t.A12 - t.C21) + std::pow(delta, 1.5) * t.D;
}

}  // namespace itexp
