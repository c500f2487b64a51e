#include "itexp/gaussian_source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "itexp/exceptions.hpp"
#include "itexp/summation.hpp"

namespace itexp {

namespace {

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t tag, std::uint64_t a,
                           std::uint64_t b, std::uint64_t lane) {
    std::uint64_t h = mix64(seed + golden);
    h = mix64(h ^ (tag * golden + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ (a + 0x8cb92ba72f3d8dd7ULL));
    h = mix64(h ^ (b * 2 + lane + 0x1d8e4e27c47d124fULL));
    return h;
}

}  // namespace

double counter_normal(std::uint64_t seed, StreamTag tag, std::uint64_t a, std::uint64_t b) {
    const auto t = static_cast<std::uint64_t>(tag);
    constexpr double unit = 0x1.0p-53;
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = static_cast<double>((hash_counter(seed, t, a, b, 0) >> 11) + 1) * unit;
    const double u2 = static_cast<double>(hash_counter(seed, t, a, b, 1) >> 11) * unit;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t a) {
    return hash_counter(seed, static_cast<std::uint64_t>(tag), a, 0, 2);
}

TailWeights tail_weights(std::size_t q) {
    // Smallest terms first.
    CompensatedSum s2;
    CompensatedSum s4;
    for (std::size_t r = q; r >= 1; --r) {
        const double inv = 1.0 / static_cast<double>(r);
        const double inv2 = inv * inv;
        s2 += inv2;
        s4 += inv2 * inv2;
    }
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    const double alpha = pi2 / 6.0 - s2.value();
    const double beta = pi2 * pi2 / 90.0 - s4.value();
    return {std::max(alpha, 0.0), std::max(beta, 0.0)};
}

GaussianDraw::GaussianDraw(std::size_t m, std::size_t p, std::size_t q, std::vector<double> zeta,
                           std::vector<double> xi, std::vector<double> mu, std::uint64_t seed)
    : m_(m), p_(p), q_(q), zeta_(std::move(zeta)), xi_(std::move(xi)), mu_(std::move(mu)),
      seed_(seed) {
    if (m_ == 0) {
        throw ContractError("GaussianDraw: need at least one component");
    }
    if (zeta_.size() != m_ * (p_ + 1) || xi_.size() != m_ || mu_.size() != m_) {
        throw ContractError("GaussianDraw: array sizes do not match m and p");
    }
}

void GaussianDraw::check_component(std::size_t i) const {
    if (i < 1 || i > m_) {
        throw ContractError("component " + std::to_string(i) + " outside 1.." + std::to_string(m_));
    }
}

double GaussianDraw::zeta(std::size_t i, std::size_t j) const {
    check_component(i);
    if (j > p_) {
        throw ContractError("basis index " + std::to_string(j) + " exceeds draw order " +
                            std::to_string(p_));
    }
    return zeta_[(i - 1) * (p_ + 1) + j];
}

double GaussianDraw::xi(std::size_t i) const {
    check_component(i);
    return xi_[i - 1];
}

double GaussianDraw::mu(std::size_t i) const {
    check_component(i);
    return mu_[i - 1];
}

std::span<const double> GaussianDraw::zeta_row(std::size_t i) const {
    check_component(i);
    return std::span<const double>(zeta_).subspan((i - 1) * (p_ + 1), p_ + 1);
}

GaussianDraw sample(std::uint64_t seed, std::size_t m, std::size_t p, std::size_t q) {
    std::vector<double> zeta(m * (p + 1));
    std::vector<double> xi(m);
    std::vector<double> mu(m);
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 0; j <= p; ++j) {
            zeta[(i - 1) * (p + 1) + j] = counter_normal(seed, StreamTag::zeta, i, j);
        }
        // Tail variables depend on q so that different cuts are independent.
        xi[i - 1] = counter_normal(seed, StreamTag::xi, i, q);
        mu[i - 1] = counter_normal(seed, StreamTag::mu, i, q);
    }
    return GaussianDraw(m, p, q, std::move(zeta), std::move(xi), std::move(mu), seed);
}

}  // namespace itexp
