#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "itexp/exceptions.hpp"
#include "itexp/kernel_coeffs.hpp"
#include "itexp/quadrature.hpp"

using namespace itexp;

namespace {

constexpr auto legendre = BasisKind::legendre;
constexpr auto trig = BasisKind::trigonometric;

// Brute-force nested simplex integral from pointwise basis values only.
double nested_oracle(BasisKind kind, const WeightedKernel& kernel, const MultiIndex& mi,
                     std::size_t panels = 4, std::size_t panel_nodes = 12) {
    const Interval& iv = kernel.interval();
    const std::size_t k = mi.size();
    std::function<double(std::size_t, double)> level = [&](std::size_t l, double upper) {
        const GaussRule rule = composite_gauss(panel_nodes, panels, iv.t(), upper);
        double acc = 0.0;
        for (std::size_t n = 0; n < rule.size(); ++n) {
            const double s = rule.nodes[n];
            double f = eval_phi(kind, iv, mi[l], s) * kernel.weight(l, s);
            if (l > 0) {
                f *= level(l - 1, s);
            }
            acc += rule.weights[n] * f;
        }
        return acc;
    };
    return level(k - 1, iv.T());
}

struct Frozen {
    BasisKind kind;
    std::vector<int> exps;
    MultiIndex mi;
    double value;  // on [0, 1]
};

// Exact symbolic integration, see tests/oracles/kernel_coeffs_oracle.py.
const std::vector<Frozen> frozen = {
    {legendre, {0, 0}, {0, 0}, 0.5},
    {legendre, {0, 0}, {2, 3}, 0.084515425472851657751},
    {legendre, {1, 0}, {1, 2}, -0.064549722436790281420},
    {legendre, {0, 2}, {3, 1}, -0.021821789023599238127},
    {legendre, {0, 0, 0}, {1, 0, 2}, 0.0},
    {legendre, {1, 0, 1}, {2, 1, 1}, -0.014640921281248623012},
    {legendre, {0, 0, 0, 0}, {1, 2, 0, 1}, 0.018633899812498247470},
    {trig, {0, 0}, {1, 2}, -0.15915494309189533577},
    {trig, {0, 0}, {3, 0}, 0.11253953951963825869},
    {trig, {1, 0}, {2, 1}, -0.079577471545947667884},
    {trig, {0, 0, 0}, {1, 2, 0}, -0.079577471545947667884},
    {trig, {0, 0, 0}, {3, 1, 4}, 0.0},
    {trig, {2, 0, 1}, {1, 0, 2}, 0.0047636520271661150270},
    {trig, {0, 0, 0, 0}, {1, 0, 2, 1}, 0.017911224007836133215},
    {trig, {0, 1, 0, 0}, {0, 1, 1, 2}, -0.0050410733804361500013},
};

std::vector<std::size_t> uniform(std::size_t k, std::size_t p) { return std::vector<std::size_t>(k, p); }

}  // namespace

TEST_CASE("frozen symbolic values, single and table evaluation") {
    const Interval unit(0.0, 1.0);
    for (const auto& f : frozen) {
        const WeightedKernel kernel(f.exps, unit);
        CAPTURE(f.mi.size());
        CAPTURE(f.value);
        CHECK(std::fabs(fourier_coefficient(f.kind, kernel, f.mi) - f.value) <= 1e-13);
        std::vector<std::size_t> orders(f.mi.begin(), f.mi.end());
        const auto table = build_table(f.kind, kernel, orders);
        CHECK(std::fabs(table.at(f.mi) - f.value) <= 1e-13);
    }
}

TEST_CASE("frozen values match the nested quadrature oracle") {
    const Interval unit(0.0, 1.0);
    for (const auto& f : frozen) {
        if (f.mi.size() > 3) {
            continue;
        }
        const WeightedKernel kernel(f.exps, unit);
        CHECK(std::fabs(nested_oracle(f.kind, kernel, f.mi) - f.value) <= 1e-12);
    }
}

TEST_CASE("single coefficients on a shifted interval match the oracle") {
    const Interval iv(0.4, 1.9);
    const double h = iv.length();
    const std::vector<std::pair<std::vector<int>, MultiIndex>> cases = {
        {{0, 0}, {7, 8}}, {{2, 1}, {5, 3}}, {{0, 0, 0}, {3, 4, 2}}, {{1, 0, 2}, {2, 6, 1}},
        {{0, 0, 0, 0}, {1, 2, 1, 0}},
    };
    for (BasisKind kind : {legendre, trig}) {
        for (const auto& [exps, mi] : cases) {
            const WeightedKernel kernel(exps, iv);
            const double tol = 1e-12 * std::pow(h, static_cast<double>(mi.size() + kernel.total_degree()));
            const std::size_t panels = mi.size() == 4 ? 1 : 3;
            CHECK(std::fabs(fourier_coefficient(kind, kernel, mi) -
                            nested_oracle(kind, kernel, mi, panels, 24)) <= tol);
        }
    }
}

TEST_CASE("legendre constant kernel examples") {
    const Interval iv(1.0, 3.5);
    const double h = iv.length();
    CHECK(fourier_coefficient(legendre, WeightedKernel({0}, iv), {0}) ==
          doctest::Approx(std::sqrt(h)).epsilon(1e-14));
    CHECK(fourier_coefficient(legendre, WeightedKernel({0, 0}, iv), {0, 0}) ==
          doctest::Approx(h / 2).epsilon(1e-14));
    for (std::size_t i = 1; i <= 3; ++i) {
        const double expected = h / (2.0 * std::sqrt(4.0 * i * i - 1.0));
        CHECK(fourier_coefficient(legendre, WeightedKernel({0, 0}, iv), {i - 1, i}) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
    const auto t1 = build_table(legendre, WeightedKernel({1}, iv), {1});
    CHECK(t1[0] == doctest::Approx(-std::pow(h, 1.5) / 2).epsilon(1e-14));
    CHECK(t1[1] == doctest::Approx(-std::pow(h, 1.5) / (2 * std::sqrt(3.0))).epsilon(1e-14));
    const auto t0 = build_table(legendre, WeightedKernel({0}, iv), {3});
    CHECK(t0[0] == doctest::Approx(std::sqrt(h)).epsilon(1e-14));
    for (std::size_t j = 1; j <= 3; ++j) {
        CHECK(std::fabs(t0[j]) <= 1e-14);
    }
}

TEST_CASE("trig double table has the single-frequency antisymmetric pattern") {
    const Interval iv(0.0, 2.0);
    const double h = iv.length();
    const auto table = build_table(trig, WeightedKernel({0, 0}, iv), {4, 4});
    // Coefficients read off the double-integral expansion with constant weights.
    auto expected = [&](std::size_t j1, std::size_t j2) {
        if (j1 == 0 && j2 == 0) {
            return h / 2;
        }
        for (std::size_t r = 1; r <= 2; ++r) {
            const double base = h / (2 * std::numbers::pi * r);
            if (j1 == 2 * r && j2 == 2 * r - 1) return base;
            if (j1 == 2 * r - 1 && j2 == 2 * r) return -base;
            if (j1 == 2 * r - 1 && j2 == 0) return std::numbers::sqrt2 * base;
            if (j1 == 0 && j2 == 2 * r - 1) return -std::numbers::sqrt2 * base;
        }
        return 0.0;
    };
    for (std::size_t j1 = 0; j1 <= 4; ++j1) {
        for (std::size_t j2 = 0; j2 <= 4; ++j2) {
            CAPTURE(j1);
            CAPTURE(j2);
            CHECK(std::fabs(table.at(MultiIndex{j1, j2}) - expected(j1, j2)) <= 1e-14);
        }
    }
}

TEST_CASE("tables agree with sparse evaluation") {
    const Interval iv(-0.3, 0.8);
    for (BasisKind kind : {legendre, trig}) {
        for (const auto& exps : {std::vector<int>{1, 0}, std::vector<int>{0, 2, 1},
                                 std::vector<int>{0, 1, 0, 1}}) {
            const WeightedKernel kernel(exps, iv);
            const std::size_t p = exps.size() == 4 ? 3 : 6;
            const auto table = build_table(kind, kernel, uniform(exps.size(), p));
            std::vector<MultiIndex> all;
            for (std::size_t f = 0; f < table.size(); ++f) {
                all.push_back(table.unflatten(f));
            }
            const auto sparse = fourier_coefficients(kind, kernel, all);
            for (std::size_t f = 0; f < table.size(); ++f) {
                CHECK(std::fabs(sparse.values[f] - table[f]) <= 1e-14);
            }
        }
    }
}

TEST_CASE("mixed orders keep the row-major layout") {
    const Interval iv(0.0, 1.0);
    const WeightedKernel kernel({0, 1, 0}, iv);
    const auto table = build_table(trig, kernel, {2, 5, 3});
    CHECK(table.size() == 3 * 6 * 4);
    CHECK(table.strides()[0] == 24);
    CHECK(table.strides()[1] == 4);
    const MultiIndex mi{2, 4, 1};
    CHECK(table.flat_index(mi) == 2 * 24 + 4 * 4 + 1);
    CHECK(table.unflatten(table.flat_index(mi)) == mi);
    CHECK(table.at(mi) == doctest::Approx(fourier_coefficient(trig, kernel, mi)).epsilon(1e-13));
    CHECK_THROWS_AS(table.common_order(), ContractError);
}

TEST_CASE("kernel norms") {
    const Interval iv(0.5, 2.5);
    const double h = iv.length();
    CHECK(kernel_norm_sq(WeightedKernel({0, 0}, iv)) == doctest::Approx(h * h / 2).epsilon(1e-15));
    CHECK(kernel_norm_sq(WeightedKernel({1}, iv)) == doctest::Approx(h * h * h / 3).epsilon(1e-15));
    CHECK(kernel_norm_sq(WeightedKernel({0, 0, 0}, iv)) == doctest::Approx(h * h * h / 6).epsilon(1e-15));
    // (1,0): integral over t1 < t2 of (t - t1)^2 is h^4/12.
    CHECK(kernel_norm_sq(WeightedKernel({1, 0}, iv)) == doctest::Approx(std::pow(h, 4) / 12).epsilon(1e-15));
    CHECK(kernel_norm_sq(WeightedKernel({0, 1}, iv)) == doctest::Approx(std::pow(h, 4) / 4).epsilon(1e-15));
}

TEST_CASE("parseval partial sums") {
    const Interval iv(0.0, 1.5);
    const double h = iv.length();
    CHECK(parseval_partial(build_table(legendre, WeightedKernel({0}, iv), {0})) ==
          doctest::Approx(h).epsilon(1e-14));
    CHECK(parseval_partial(build_table(legendre, WeightedKernel({1}, iv), {1})) ==
          doctest::Approx(h * h * h / 3).epsilon(1e-14));
    // Distinct-index mean-square deficit of the double trig expansion at q = 10
    // on the unit interval is alpha_10 / (2 pi^2) with the tails omitted, i.e.
    // the deficit of the cube sum at p = 20 minus the two missing tail families.
    const auto t = build_table(trig, WeightedKernel({0, 0}, Interval(0, 1)), {20, 20});
    double alpha = std::numbers::pi * std::numbers::pi / 6;
    for (int r = 1; r <= 10; ++r) {
        alpha -= 1.0 / (r * r);
    }
    const double deficit = 0.5 - parseval_partial(t);
    CHECK(deficit == doctest::Approx(3 * alpha / (2 * std::numbers::pi * std::numbers::pi)).epsilon(1e-11));
}

TEST_CASE("parseval is monotone, bounded and complete") {
    const Interval iv(0.2, 1.7);
    for (BasisKind kind : {legendre, trig}) {
        for (const auto& exps : {std::vector<int>{0, 0}, std::vector<int>{1, 2}, std::vector<int>{0, 0, 1}}) {
            const WeightedKernel kernel(exps, iv);
            const double norm = kernel_norm_sq(kernel);
            double previous = 0.0;
            const std::size_t top = exps.size() == 3 ? 12 : 30;
            for (std::size_t p = 0; p <= top; p += 3) {
                const double s = parseval_partial(build_table(kind, kernel, uniform(exps.size(), p)));
                CHECK(s >= previous - 1e-15 * norm);
                CHECK(s <= norm * (1 + 1e-9));
                previous = s;
            }
            // Growing only one axis also never decreases the sum.
            std::vector<std::size_t> orders = uniform(exps.size(), 2);
            const double base = parseval_partial(build_table(kind, kernel, orders));
            orders.back() = 9;
            CHECK(parseval_partial(build_table(kind, kernel, orders)) >= base - 1e-15 * norm);
        }
        const WeightedKernel flat({0, 0}, iv);
        const double norm = kernel_norm_sq(flat);
        const double s = parseval_partial(build_table(kind, flat, {100, 100}));
        CHECK(norm - s <= 0.01 * norm);
        CHECK(norm - s >= 0.0);
    }
}

TEST_CASE("legendre coefficients vanish beyond the paired polynomial degree") {
    // C vanishes once some j_l exceeds the degree of the polynomial it meets,
    // i.e. j_l > sum of the other indices + total weight degree + k - 1.
    const Interval unit(0.0, 1.0);
    for (const auto& exps : {std::vector<int>{0}, std::vector<int>{2}, std::vector<int>{0, 0},
                             std::vector<int>{1, 2}, std::vector<int>{0, 1, 0}}) {
        const WeightedKernel kernel(exps, unit);
        const std::size_t k = exps.size();
        const auto table = build_table(legendre, kernel, uniform(k, k == 3 ? 9 : 14));
        const long d = kernel.total_degree();
        std::size_t zero_checks = 0;
        for (std::size_t f = 0; f < table.size(); ++f) {
            const MultiIndex mi = table.unflatten(f);
            long sum = 0;
            for (std::size_t j : mi) sum += static_cast<long>(j);
            for (std::size_t l = 0; l < k; ++l) {
                const long others = sum - static_cast<long>(mi[l]);
                if (static_cast<long>(mi[l]) > others + d + static_cast<long>(k) - 1) {
                    CHECK(std::fabs(table[f]) <= 1e-12);
                    ++zero_checks;
                    break;
                }
            }
        }
        CHECK(zero_checks > 0);
    }
}

TEST_CASE("scale covariance") {
    const Interval unit(0.0, 1.0);
    const Interval iv(-2.0, 0.7);
    for (BasisKind kind : {legendre, trig}) {
        for (const auto& exps : {std::vector<int>{3}, std::vector<int>{1, 0}, std::vector<int>{2, 1, 0},
                                 std::vector<int>{0, 0, 1, 1}}) {
            const auto a = build_table(kind, WeightedKernel(exps, unit), uniform(exps.size(), 3));
            const auto b = build_table(kind, WeightedKernel(exps, iv), uniform(exps.size(), 3));
            const double factor = std::pow(iv.length(), 0.5 * exps.size() + WeightedKernel(exps, iv).total_degree());
            for (std::size_t f = 0; f < a.size(); ++f) {
                CHECK(b[f] == doctest::Approx(factor * a[f]).epsilon(1e-13).scale(1e-14 * factor));
            }
        }
    }
}

TEST_CASE("high-order tables converge to the oracle with more nodes") {
    // The node count is validated against a rule with twice the nodes.
    const Interval unit(0.0, 1.0);
    for (BasisKind kind : {legendre, trig}) {
        const WeightedKernel kernel({0, 0, 0}, unit);
        const auto table = build_table(kind, kernel, {40, 40, 40});
        const std::vector<MultiIndex> probes = {{40, 40, 40}, {40, 39, 0}, {0, 40, 39}, {17, 33, 40}, {40, 0, 40}};
        for (const auto& mi : probes) {
            const double fine = nested_oracle(kind, kernel, mi, 3, 48);
            CHECK(std::fabs(table.at(mi) - fine) <= 1e-12);
        }
    }
}

TEST_CASE("guards and contracts") {
    const Interval unit(0.0, 1.0);
    CHECK_THROWS_AS(WeightedKernel({}, unit), ContractError);
    CHECK_THROWS_AS(WeightedKernel({0, 0, 0, 0, 0}, unit), ContractError);
    CHECK_THROWS_AS(WeightedKernel({5}, unit), ContractError);
    CHECK_THROWS_AS(WeightedKernel({-1}, unit), ContractError);
    const WeightedKernel k2({0, 0}, unit);
    CHECK_THROWS_AS(fourier_coefficient(legendre, k2, {0, 0, 0}), ContractError);
    CHECK_THROWS_AS(build_table(legendre, k2, {3}), ContractError);
    CHECK_THROWS_AS(build_table(legendre, WeightedKernel({0, 0, 0}, unit), {201, 0, 0}), CapacityError);
    CHECK_THROWS_AS(build_table(legendre, WeightedKernel({0, 0, 0, 0}, unit), {0, 51, 0, 0}), CapacityError);
    CHECK_THROWS_AS(build_table(trig, WeightedKernel({0}, unit), {10001}), CapacityError);
}

TEST_CASE("csv dump") {
    const auto table = build_table(legendre, WeightedKernel({0, 0}, Interval(0, 1)), {1, 1});
    std::ostringstream out;
    write_csv(table, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "j1,j2,C");
    std::getline(in, line);
    CHECK(line.rfind("0,0,", 0) == 0);
    CHECK(std::stod(line.substr(4)) == table.at(MultiIndex{0, 0}));
    std::getline(in, line);
    CHECK(line.rfind("0,1,", 0) == 0);
    CHECK(std::stod(line.substr(4)) == table.at(MultiIndex{0, 1}));
}
