#include "itexp/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <thread>

#include "itexp/exceptions.hpp"
#include "itexp/gaussian_source.hpp"
#include "itexp/summation.hpp"

namespace itexp {

WienerPath::WienerPath(Interval iv, std::size_t steps, std::size_t m, std::vector<double> increments,
                       std::uint64_t seed)
    : iv_(iv), steps_(steps), m_(m), dw_(std::move(increments)), seed_(seed) {
    if (steps_ == 0 || m_ == 0) {
        throw ContractError("WienerPath: need at least one step and one component");
    }
    if (dw_.size() != steps_ * m_) {
        throw ContractError("WienerPath: increment count does not match steps * components");
    }
}

double WienerPath::node(std::size_t n) const {
    return iv_.t() + iv_.length() * static_cast<double>(n) / static_cast<double>(steps_);
}

std::span<const double> WienerPath::increments(std::size_t i) const {
    if (i < 1 || i > m_) {
        throw ContractError("path component " + std::to_string(i) + " outside 1.." + std::to_string(m_));
    }
    return std::span<const double>(dw_).subspan((i - 1) * steps_, steps_);
}

double WienerPath::total(std::size_t i) const {
    CompensatedSum s;
    for (double d : increments(i)) {
        s += d;
    }
    return s.value();
}

WienerPath simulate_path(const Interval& iv, std::size_t steps, std::size_t m, std::uint64_t seed) {
    if (steps == 0) {
        throw ContractError("simulate_path: need at least one step");
    }
    const double scale = std::sqrt(iv.length() / static_cast<double>(steps));
    std::vector<double> dw(steps * m);
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t n = 0; n < steps; ++n) {
            dw[(i - 1) * steps + n] = scale * counter_normal(seed, StreamTag::path, i, n);
        }
    }
    return WienerPath(iv, steps, m, std::move(dw), seed);
}

double simulate_iterated(const WienerPath& path, const WeightedKernel& kernel,
                         const ComponentIndices& idx, IntegralKind kind) {
    const std::size_t k = kernel.multiplicity();
    if (idx.size() != k) {
        throw ContractError("component indices have length " + std::to_string(idx.size()) +
                            ", kernel multiplicity is " + std::to_string(k));
    }
    const std::size_t n_steps = path.steps();
    const double dt = path.step();
    std::vector<std::span<const double>> dw(k);
    for (std::size_t l = 0; l < k; ++l) {
        if (idx[l] != 0) {
            dw[l] = path.increments(idx[l]);
        }
    }
    // acc[l] = accumulated integral through slot l at the current node; acc[-1] = 1.
    std::vector<double> acc(k, 0.0);
    std::vector<double> next(k, 0.0);
    const bool ito = kind == IntegralKind::ito;
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double tau = ito ? path.node(n) : path.node(n) + 0.5 * dt;
        double below_old = 1.0;
        double below_new = 1.0;
        for (std::size_t l = 0; l < k; ++l) {
            const double d = idx[l] == 0 ? dt : dw[l][n];
            const double inner = ito ? below_old : 0.5 * (below_old + below_new);
            next[l] = acc[l] + kernel.weight(l, tau) * inner * d;
            below_old = acc[l];
            below_new = next[l];
        }
        acc.swap(next);
    }
    return acc[k - 1];
}

double zeta_from_path(const WienerPath& path, BasisKind basis, std::size_t j, std::size_t i) {
    const auto dw = path.increments(i);
    CompensatedSum s;
    for (std::size_t n = 0; n < dw.size(); ++n) {
        s += eval_phi(basis, path.interval(), j, path.node(n)) * dw[n];
    }
    return s.value();
}

namespace {

// Basis values at the left nodes and the tail weight vectors, shared by all trials.
struct GridProjector {
    std::size_t p;
    std::size_t steps;
    std::vector<double> phi;  // phi[j * steps + n]
    std::vector<double> xi_w;
    std::vector<double> mu_w;
    bool tails;
};

GridProjector make_projector(const Interval& iv, std::size_t steps, BasisKind basis, std::size_t p,
                             std::size_t q, std::size_t rcap, bool want_tails) {
    GridProjector g{p, steps, std::vector<double>((p + 1) * steps), {}, {},
                    want_tails && basis == BasisKind::trigonometric};
    std::vector<double> values(p + 1);
    const double h = iv.length();
    for (std::size_t n = 0; n < steps; ++n) {
        const double u = static_cast<double>(n) / static_cast<double>(steps);
        eval_phi_unit(basis, u, values);
        for (std::size_t j = 0; j <= p; ++j) {
            g.phi[j * steps + n] = values[j] / std::sqrt(h);
        }
    }
    if (!g.tails) {
        return g;
    }
    if (rcap < q) {
        throw ContractError("reconstruction cap " + std::to_string(rcap) + " is below the cut " +
                            std::to_string(q));
    }
    const TailWeights tw = tail_weights(q);
    g.xi_w.assign(steps, 0.0);
    g.mu_w.assign(steps, 0.0);
    const double pi2 = 2.0 * std::numbers::pi;
    const double norm = std::numbers::sqrt2 / std::sqrt(h);
    for (std::size_t n = 0; n < steps; ++n) {
        const double u = static_cast<double>(n) / static_cast<double>(steps);
        CompensatedSum sx;
        CompensatedSum sm;
        for (std::size_t r = rcap; r > q; --r) {
            const double rr = static_cast<double>(r);
            const double angle = pi2 * rr * u;
            sx += std::sin(angle) / rr;
            sm += std::cos(angle) / (rr * rr);
        }
        g.xi_w[n] = tw.alpha > 0.0 ? norm * sx.value() / std::sqrt(tw.alpha) : 0.0;
        g.mu_w[n] = tw.beta > 0.0 ? norm * sm.value() / std::sqrt(tw.beta) : 0.0;
    }
    return g;
}

double dot(std::span<const double> a, std::span<const double> b) {
    CompensatedSum s;
    for (std::size_t n = 0; n < a.size(); ++n) {
        s += a[n] * b[n];
    }
    return s.value();
}

GaussianDraw project(const WienerPath& path, const GridProjector& g, std::size_t q) {
    const std::size_t m = path.components();
    std::vector<double> zeta(m * (g.p + 1));
    std::vector<double> xi(m, 0.0);
    std::vector<double> mu(m, 0.0);
    for (std::size_t i = 1; i <= m; ++i) {
        const auto dw = path.increments(i);
        for (std::size_t j = 0; j <= g.p; ++j) {
            zeta[(i - 1) * (g.p + 1) + j] =
                dot(std::span<const double>(g.phi).subspan(j * g.steps, g.steps), dw);
        }
        if (g.tails) {
            xi[i - 1] = dot(g.xi_w, dw);
            mu[i - 1] = dot(g.mu_w, dw);
        }
    }
    return GaussianDraw(m, g.p, q, std::move(zeta), std::move(xi), std::move(mu), path.seed());
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::size_t max_component(const ComponentIndices& idx) {
    const std::size_t m = idx.empty() ? 0 : *std::max_element(idx.begin(), idx.end());
    return std::max<std::size_t>(m, 1);
}

MCEstimate run_trials(const MCConfig& config, std::size_t m, const Interval& iv,
                      const std::function<double(const WienerPath&)>& difference) {
    if (config.trials < 1000) {
        throw ContractError("Monte Carlo needs at least 1000 trials, got " + std::to_string(config.trials));
    }
    if (config.grid_N < 1000) {
        throw ContractError("Monte Carlo needs grid_N >= 1000, got " + std::to_string(config.grid_N));
    }
    std::vector<double> diff(config.trials);
    std::size_t threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    threads = std::clamp<std::size_t>(threads, 1, config.trials);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const std::uint64_t s = derive_seed(config.seed, StreamTag::trial, t);
            diff[t] = difference(simulate_path(iv, config.grid_N, m, s));
        }
    };
    if (threads == 1) {
        work(0, config.trials);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (config.trials + threads - 1) / threads;
        for (std::size_t w = 0; w < threads; ++w) {
            const std::size_t b = std::min(config.trials, w * chunk);
            const std::size_t e = std::min(config.trials, b + chunk);
            pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    std::vector<double> sq(diff.size());
    for (std::size_t t = 0; t < diff.size(); ++t) {
        sq[t] = diff[t] * diff[t];
    }
    const double n = static_cast<double>(config.trials);
    const double mean = pairwise_sum(diff) / n;
    const double ms = pairwise_sum(sq) / n;
    for (double& v : sq) {
        v = (v - ms) * (v - ms);
    }
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {mean, ms, std::sqrt(var / n), config.trials, config.grid_N};
}

}  // namespace

GaussianDraw draw_from_path(const WienerPath& path, BasisKind basis, std::size_t p, std::size_t q,
                            std::size_t rcap) {
    return project(path, make_projector(path.interval(), path.steps(), basis, p, q, rcap, true), q);
}

double grid_allowance(std::size_t k, const Interval& iv, std::size_t grid_N) {
    return 3.0 * std::pow(iv.length(), static_cast<double>(k)) / static_cast<double>(grid_N);
}

MCEstimate ms_error_vs_truth(const CatalogId& id, const Interval& iv, const ComponentIndices& idx,
                             std::size_t q, const MCConfig& config) {
    const std::size_t rcap = config.rcap == 0 ? 16 * q + 1000 : config.rcap;
    const std::size_t p = required_index(id, q);
    const GridProjector g = make_projector(iv, config.grid_N, id.basis, p, q, rcap, true);
    const WeightedKernel kernel = catalog_kernel(id.name, iv);
    return run_trials(config, max_component(idx), iv, [&](const WienerPath& path) {
        const double truth = simulate_iterated(path, kernel, idx, IntegralKind::stratonovich);
        return truth - eval_catalog(id, iv, idx, q, project(path, g, q));
    });
}

MCEstimate ms_error_vs_truth(const CoefficientTable& table, const ComponentIndices& idx,
                             IntegralKind kind, const MCConfig& config) {
    const Interval& iv = table.kernel().interval();
    std::size_t p = 0;
    for (std::size_t o : table.orders()) {
        p = std::max(p, o);
    }
    // Table expansions carry no tail variables.
    const GridProjector g = make_projector(iv, config.grid_N, table.kind(), p, 0, 0, false);
    return run_trials(config, max_component(idx), iv, [&](const WienerPath& path) {
        const double truth = simulate_iterated(path, table.kernel(), idx, kind);
        const GaussianDraw draw = project(path, g, 0);
        const double approx = kind == IntegralKind::ito ? ito_truncated(table, idx, draw).value
                                                        : stratonovich_truncated(table, idx, draw).value;
        return truth - approx;
    });
}

}  // namespace itexp
