#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "itexp/catalog.hpp"
#include "itexp/exceptions.hpp"

using namespace itexp;

namespace {

constexpr double pi = std::numbers::pi;

ComponentIndices distinct_indices(CatalogName name) {
    ComponentIndices idx(arity(name));
    for (std::size_t l = 0; l < idx.size(); ++l) {
        idx[l] = l + 1;
    }
    for (std::size_t s : time_slots(name)) {
        idx[s] = 0;
    }
    return idx;
}

// Coefficients of a single-slot display on (zeta_0..zeta_p, xi, mu).
std::vector<double> linear_form(const CatalogId& id, const Interval& iv, std::size_t q) {
    const std::size_t p = required_index(id, q);
    const std::size_t count = p + 3;
    std::vector<double> out;
    for (std::size_t v = 0; v < count; ++v) {
        std::vector<double> zeta(p + 1, 0.0);
        std::vector<double> xi(1, 0.0);
        std::vector<double> mu(1, 0.0);
        if (v <= p) {
            zeta[v] = 1.0;
        } else if (v == p + 1) {
            xi[0] = 1.0;
        } else {
            mu[0] = 1.0;
        }
        const GaussianDraw unit(1, p, q, zeta, xi, mu);
        out.push_back(eval_catalog(id, iv, {1}, q, unit));
    }
    return out;
}

double relative_gap(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

}  // namespace

TEST_CASE("catalog names") {
    CHECK(all_catalog_names().size() == 15);
    for (CatalogName n : all_catalog_names()) {
        CHECK(parse_catalog(to_string(n)) == n);
    }
    CHECK_THROWS_AS(parse_catalog("I3"), ContractError);
    CHECK(arity(CatalogName::I000) == 3);
    CHECK(is_j_family(CatalogName::J101_i0i));
    CHECK_FALSE(is_j_family(CatalogName::I10));
    CHECK(available({CatalogName::I00, BasisKind::legendre}));
    CHECK_FALSE(available({CatalogName::I10, BasisKind::legendre}));
    CHECK(time_slots(CatalogName::J010) == std::vector<std::size_t>{0, 2});
    CHECK(required_index({CatalogName::I000, BasisKind::trigonometric}, 3) == 12);
    CHECK(required_index({CatalogName::I10, BasisKind::trigonometric}, 3) == 6);
}

TEST_CASE("catalog contracts") {
    const Interval iv(0.0, 1.0);
    const GaussianDraw d = sample(1, 3, 4, 2);
    CHECK_THROWS_AS(eval_catalog({CatalogName::I00, BasisKind::trigonometric}, iv, {1}, 2, d), ContractError);
    CHECK_THROWS_AS(eval_catalog({CatalogName::J10_i0, BasisKind::trigonometric}, iv, {1, 2}, 2, d),
                    ContractError);
    CHECK_THROWS_AS(eval_catalog({CatalogName::I00, BasisKind::trigonometric}, iv, {1, 2}, 3, d),
                    ContractError);
    CHECK_THROWS_AS(eval_catalog({CatalogName::I000, BasisKind::trigonometric}, iv, {1, 2, 3}, 2, d),
                    ContractError);
    CHECK_THROWS_AS(eval_catalog({CatalogName::I10, BasisKind::legendre}, iv, {1, 2}, 2, d),
                    UnsupportedError);
    CHECK_THROWS_AS(eval_j_substituted(CatalogName::I00, iv, {1, 2}, 1, d), ContractError);
    CHECK_THROWS_AS(catalog_support({CatalogName::J001, BasisKind::trigonometric}, iv, 1),
                    UnsupportedError);
}

TEST_CASE("single integral entries") {
    const Interval iv(0.5, 1.4);
    const double h = 0.9;
    const GaussianDraw d = sample(31, 1, 20, 10);
    for (BasisKind kind : {BasisKind::legendre, BasisKind::trigonometric}) {
        CHECK(eval_catalog({CatalogName::I0, kind}, iv, {1}, 10, d) ==
              doctest::Approx(std::sqrt(h) * d.zeta(1, 0)).epsilon(1e-15));
    }
    const double z0 = d.zeta(1, 0);
    const double z1 = d.zeta(1, 1);
    const double z2 = d.zeta(1, 2);
    CHECK(legendre_closed_forms(CatalogName::I1, iv, {1}, 1, d) ==
          doctest::Approx(-std::pow(h, 1.5) / 2.0 * (z0 + z1 / std::sqrt(3.0))).epsilon(1e-14));
    CHECK(legendre_closed_forms(CatalogName::I2, iv, {1}, 2, d) ==
          doctest::Approx(std::pow(h, 2.5) / 3.0 *
                          (z0 + std::sqrt(3.0) / 2.0 * z1 + z2 / (2.0 * std::sqrt(5.0))))
              .epsilon(1e-14));
}

TEST_CASE("trig single integrals have exact variances") {
    const Interval iv(0.0, 1.7);
    const double h = 1.7;
    for (std::size_t q : {0, 1, 2, 5, 50, 1000}) {
        double v1 = 0.0;
        for (double c : linear_form({CatalogName::I1, BasisKind::trigonometric}, iv, q)) {
            v1 += c * c;
        }
        double v2 = 0.0;
        for (double c : linear_form({CatalogName::I2, BasisKind::trigonometric}, iv, q)) {
            v2 += c * c;
        }
        CHECK(std::fabs(v1 / (h * h * h / 3.0) - 1.0) <= 1e-12);
        CHECK(std::fabs(v2 / (std::pow(h, 5.0) / 5.0) - 1.0) <= 1e-12);
    }
    // Without the tail variables the variance falls short.
    double short1 = 0.0;
    const auto form = linear_form({CatalogName::I1, BasisKind::trigonometric}, iv, 3);
    for (std::size_t v = 0; v + 2 < form.size(); ++v) {
        short1 += form[v] * form[v];
    }
    CHECK(short1 < h * h * h / 3.0 - 1e-3);
}

TEST_CASE("trig single integrals are Gaussian") {
    const Interval iv(0.0, 1.0);
    constexpr std::size_t n = 100000;
    const double skew_tol = 4.0 * std::sqrt(6.0 / n);
    const double kurt_tol = 4.0 * std::sqrt(24.0 / n);
    for (CatalogName name : {CatalogName::I1, CatalogName::I2}) {
        double m1 = 0.0;
        double m2 = 0.0;
        double m3 = 0.0;
        double m4 = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const double v = eval_catalog({name, BasisKind::trigonometric}, iv, {1}, 4, sample(s, 1, 8, 4));
            m1 += v;
        }
        m1 /= n;
        for (std::size_t s = 0; s < n; ++s) {
            const double v =
                eval_catalog({name, BasisKind::trigonometric}, iv, {1}, 4, sample(s, 1, 8, 4)) - m1;
            m2 += v * v;
            m3 += v * v * v;
            m4 += v * v * v * v;
        }
        m2 /= n;
        m3 /= n;
        m4 /= n;
        CHECK(std::fabs(m3 / std::pow(m2, 1.5)) <= skew_tol);
        CHECK(std::fabs(m4 / (m2 * m2) - 3.0) <= kurt_tol);
    }
}

TEST_CASE("displays agree with the engine on full tables") {
    const Interval iv(0.25, 1.5);
    for (CatalogName name : all_catalog_names()) {
        if (name == CatalogName::I000) {
            continue;
        }
        const std::size_t k = arity(name);
        const ComponentIndices idx = distinct_indices(name);
        for (std::size_t q : {1, 4, 10}) {
            const auto table = build_table(BasisKind::trigonometric, catalog_kernel(name, iv),
                                           std::vector<std::size_t>(k, 2 * q));
            double worst = 0.0;
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const GaussianDraw d = sample(seed, 3, 2 * q, q);
                const double disp =
                    eval_catalog({name, BasisKind::trigonometric}, iv, idx, q, d, Tails::off);
                const double eng = stratonovich_truncated(table, idx, d).value;
                worst = std::max(worst, relative_gap(disp, eng));
            }
            INFO(std::string(to_string(name)) << " q=" << q);
            CHECK(worst <= 1e-10);
        }
    }
}

TEST_CASE("Legendre displays agree with the engine") {
    const Interval iv(0.0, 2.0);
    for (std::size_t p : {1, 2, 6, 25}) {
        for (CatalogName name : {CatalogName::I0, CatalogName::I1, CatalogName::I2, CatalogName::I00}) {
            if (required_index({name, BasisKind::legendre}, p) > p) {
                continue;
            }
            const std::size_t k = arity(name);
            const auto table = build_table(BasisKind::legendre, catalog_kernel(name, iv),
                                           std::vector<std::size_t>(k, p));
            const ComponentIndices idx = distinct_indices(name);
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const GaussianDraw d = sample(seed, 2, p, 0);
                CHECK(relative_gap(legendre_closed_forms(name, iv, idx, p, d),
                                   stratonovich_truncated(table, idx, d).value) <= 1e-10);
            }
        }
    }
}

TEST_CASE("Legendre double integral has mean h/2 on the diagonal") {
    const Interval iv(0.0, 3.0);
    constexpr std::size_t n = 40000;
    for (std::size_t p : {1, 10}) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const double v = legendre_closed_forms(CatalogName::I00, iv, {1, 1}, p, sample(s, 1, p, 0));
            s1 += v;
            s2 += v * v;
        }
        const double mean = s1 / n;
        const double sd = std::sqrt(s2 / n - mean * mean);
        CHECK(std::fabs(mean - 1.5) <= 4.0 * sd / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("triple display carries partial coefficients on a known set") {
    // Entries (4r-1, 2r-1, 2r) and (4r-1, 2r, 2r-1) with q/2 < r <= q collect a
    // second contribution from a block whose outer index would be 2r > q.
    const Interval iv(0.0, 1.3);
    const double outer = std::pow(1.3, 1.5) / (4.0 * std::numbers::sqrt2 * pi * pi);
    const CatalogId id{CatalogName::I000, BasisKind::trigonometric};
    const WeightedKernel kernel = catalog_kernel(CatalogName::I000, iv);
    for (std::size_t q : {1, 2, 3, 6, 9}) {
        const CatalogSupport support = catalog_support(id, iv, q);
        const auto engine = fourier_coefficients(BasisKind::trigonometric, kernel, support.indices);
        std::size_t partial = 0;
        for (std::size_t t = 0; t < support.indices.size(); ++t) {
            const MultiIndex& mi = support.indices[t];
            const double gap = engine.values[t] - support.coefficients[t];
            double expected = 0.0;
            const std::size_t r = (mi[0] + 1) / 4;
            if (mi[0] % 4 == 3 && 2 * r > q && r <= q) {
                const double rr = static_cast<double>(r * r);
                if (mi[1] == 2 * r - 1 && mi[2] == 2 * r) {
                    expected = -outer / rr;
                } else if (mi[1] == 2 * r && mi[2] == 2 * r - 1) {
                    expected = outer / rr;
                }
            }
            if (expected != 0.0) {
                ++partial;
            }
            INFO("q=" << q << " mi=" << mi[0] << "," << mi[1] << "," << mi[2]);
            CHECK(gap == doctest::Approx(expected).scale(1.0).epsilon(1e-12));
        }
        CHECK(partial == 2 * (q - q / 2));

        // Per draw: display plus the missing pieces equals the engine on the support.
        const SparseCoefficients engine_support{BasisKind::trigonometric, kernel, support.indices,
                                                engine.values};
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const GaussianDraw d = sample(seed, 3, 4 * q, q);
            double fix = 0.0;
            for (std::size_t t = 0; t < support.indices.size(); ++t) {
                const MultiIndex& mi = support.indices[t];
                fix += (engine.values[t] - support.coefficients[t]) * d.zeta(1, mi[0]) *
                       d.zeta(2, mi[1]) * d.zeta(3, mi[2]);
            }
            const double disp = eval_catalog(id, iv, {1, 2, 3}, q, d, Tails::off);
            CHECK(relative_gap(disp + fix, stratonovich_sparse(engine_support, {1, 2, 3}, d)) <= 1e-10);
        }
    }
}

TEST_CASE("display coefficients match engine coefficients") {
    const Interval iv(0.0, 1.0);
    for (CatalogName name : {CatalogName::I1, CatalogName::I2, CatalogName::I00, CatalogName::I10,
                             CatalogName::I01}) {
        for (std::size_t q : {1, 5}) {
            const CatalogSupport s = catalog_support({name, BasisKind::trigonometric}, iv, q);
            const auto e = fourier_coefficients(BasisKind::trigonometric, catalog_kernel(name, iv), s.indices);
            for (std::size_t t = 0; t < s.indices.size(); ++t) {
                CHECK(s.coefficients[t] == doctest::Approx(e.values[t]).scale(1.0).epsilon(1e-13));
            }
            CHECK(s.tail_slots.size() == arity(name));
        }
    }
}

TEST_CASE("printed time-component forms match substitution") {
    const Interval iv(0.1, 0.9);
    for (CatalogName name : all_catalog_names()) {
        if (!is_j_family(name)) {
            continue;
        }
        for (std::size_t q : {0, 1, 3, 7}) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                // Component patterns with repeats are covered too.
                for (std::size_t rep : {0, 1}) {
                    ComponentIndices idx = distinct_indices(name);
                    if (rep == 1) {
                        for (std::size_t& i : idx) {
                            i = i == 0 ? 0 : 1;
                        }
                    }
                    const GaussianDraw d = sample(seed, 3, 4 * q, q);
                    for (Tails tails : {Tails::on, Tails::off}) {
                        const double printed =
                            eval_catalog({name, BasisKind::trigonometric}, iv, idx, q, d, tails);
                        const double substituted = eval_j_substituted(name, iv, idx, q, d, tails);
                        INFO(std::string(to_string(name)) << " q=" << q);
                        CHECK(printed == doctest::Approx(substituted).epsilon(1e-12).scale(1e-15));
                    }
                }
            }
        }
    }
}

TEST_CASE("repeated-component mean of the (0, i, i) entry") {
    const Interval iv(0.0, 1.2);
    const double h = 1.2;
    constexpr std::size_t n = 100000;
    for (std::size_t q : {1, 6}) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const double v = eval_catalog({CatalogName::J011_0ii, BasisKind::trigonometric}, iv,
                                          {0, 1, 1}, q, sample(s, 1, 2 * q, q));
            s1 += v;
            s2 += v * v;
        }
        double harmonic = 0.0;
        for (std::size_t r = 1; r <= q; ++r) {
            harmonic += 1.0 / static_cast<double>(r * r);
        }
        const double expected = h * h * (1.0 / 6.0 + harmonic / (2.0 * pi * pi));
        const double mean = s1 / n;
        const double sd = std::sqrt(s2 / n - mean * mean);
        CHECK(std::fabs(mean - expected) <= 4.0 * sd / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("trace identity partial sums") {
    const Interval unit(0.0, 1.0);
    for (BasisKind kind : {BasisKind::legendre, BasisKind::trigonometric}) {
        for (TraceKernel which : {TraceKernel::c10, TraceKernel::c01}) {
            CHECK(std::fabs(trace_identity_partial(kind, which, unit, 200) + 0.25) <= 1e-2);
            const WeightedKernel k(which == TraceKernel::c10 ? std::vector<int>{1, 0}
                                                             : std::vector<int>{0, 1},
                                   unit);
            CHECK(trace_identity_partial(kind, which, unit, 0) ==
                  doctest::Approx(fourier_coefficient(kind, k, {0, 0})).epsilon(1e-15));
        }
    }
    // Scales as h^2.
    const Interval wide(1.0, 3.0);
    CHECK(trace_identity_partial(BasisKind::legendre, TraceKernel::c01, wide, 200) ==
          doctest::Approx(4.0 * trace_identity_partial(BasisKind::legendre, TraceKernel::c01, unit, 200))
              .epsilon(1e-12));
}
