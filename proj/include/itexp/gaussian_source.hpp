#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace itexp {

/// Stream tags keep the variate families on disjoint counter ranges.
enum class StreamTag : std::uint64_t { zeta = 1, xi = 2, mu = 3, path = 4, trial = 5 };

/// Counter-based N(0, 1): a pure function of (seed, tag, a, b).
double counter_normal(std::uint64_t seed, StreamTag tag, std::uint64_t a, std::uint64_t b);

/// Derives an independent 64-bit seed from (seed, tag, a).
std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t a);

struct TailWeights {
    double alpha;  // pi^2/6 - sum_{r<=q} 1/r^2
    double beta;   // pi^4/90 - sum_{r<=q} 1/r^4
};

TailWeights tail_weights(std::size_t q);

/// zeta_j^{(i)} for i = 1..m, j = 0..p, plus the tail variables xi_q^{(i)} and
/// mu_q^{(i)}. Component 0 (time) is not stored.
class GaussianDraw {
public:
    /// Explicit values, e.g. projections of a simulated path. zeta is
    /// component-major: zeta[(i - 1) * (p + 1) + j].
    GaussianDraw(std::size_t m, std::size_t p, std::size_t q, std::vector<double> zeta,
                 std::vector<double> xi, std::vector<double> mu, std::uint64_t seed = 0);

    std::size_t components() const { return m_; }
    std::size_t max_index() const { return p_; }
    std::size_t tail_cut() const { return q_; }
    std::uint64_t seed() const { return seed_; }

    /// i in 1..m, j in 0..p; ContractError otherwise.
    double zeta(std::size_t i, std::size_t j) const;
    double xi(std::size_t i) const;
    double mu(std::size_t i) const;
    std::span<const double> zeta_row(std::size_t i) const;

private:
    void check_component(std::size_t i) const;

    std::size_t m_;
    std::size_t p_;
    std::size_t q_;
    std::vector<double> zeta_;
    std::vector<double> xi_;
    std::vector<double> mu_;
    std::uint64_t seed_;
};

/// Same (seed, m, p, q) gives a bitwise identical draw. Slot (i, j) always maps
/// to the same counter, so a larger p extends a draw without changing it.
GaussianDraw sample(std::uint64_t seed, std::size_t m, std::size_t p, std::size_t q);

}  // namespace itexp
