#include "itexp/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "itexp/exceptions.hpp"
#include "itexp/summation.hpp"

namespace itexp {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;
constexpr double pi4 = pi2 * pi2;

void check_pattern(const CoefficientTable& table, const ComponentIndices& idx) {
    const std::size_t k = table.multiplicity();
    if (idx.size() != k) {
        throw ContractError("component indices have length " + std::to_string(idx.size()) +
                            ", table multiplicity is " + std::to_string(k));
    }
    for (std::size_t i : idx) {
        if (i == 0) {
            throw UnsupportedError("exact error covers Wiener components only");
        }
    }
}

// Slot permutations sigma with idx[sigma[l]] == idx[l].
std::vector<std::vector<std::size_t>> stabilizer(const ComponentIndices& idx) {
    std::vector<std::size_t> perm(idx.size());
    for (std::size_t l = 0; l < perm.size(); ++l) {
        perm[l] = l;
    }
    std::vector<std::vector<std::size_t>> out;
    do {
        bool keeps = true;
        for (std::size_t l = 0; l < perm.size() && keeps; ++l) {
            keeps = idx[perm[l]] == idx[l];
        }
        if (keeps) {
            out.push_back(perm);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

double factorial(std::size_t k) {
    double f = 1.0;
    for (std::size_t n = 2; n <= k; ++n) {
        f *= static_cast<double>(n);
    }
    return f;
}

struct PowerSums {
    double inv2;
    double inv4;
};

PowerSums power_sums(std::size_t q) {
    CompensatedSum s2;
    CompensatedSum s4;
    for (std::size_t r = q; r >= 1; --r) {
        const double inv = 1.0 / static_cast<double>(r);
        s2 += inv * inv;
        s4 += inv * inv * inv * inv;
    }
    return {s2.value(), s4.value()};
}

double evaluate(ClosedForm form, double h, std::size_t q, const DoubleSums& d) {
    const PowerSums p = power_sums(q);
    const double alpha = pi2 / 6.0 - p.inv2;
    const double beta = pi4 / 90.0 - p.inv4;
    const double h2 = h * h;
    const double h3 = h2 * h;
    const double h4 = h2 * h2;
    switch (form) {
        case ClosedForm::i00: return h2 / (2.0 * pi2) * alpha;
        case ClosedForm::i000_series:
            return h3 * (alpha / (4.0 * pi2) + 55.0 / (32.0 * pi4) * beta +
                         (9.0 * pi4 / 80.0 - d.s3) / (4.0 * pi4));
        case ClosedForm::i01_series:
            return h4 * (alpha / (8.0 * pi2) + 5.0 / (32.0 * pi4) * beta + (pi4 / 48.0 - d.s1) / (4.0 * pi4));
        case ClosedForm::i10_series:
            return h4 * (alpha / (8.0 * pi2) + 5.0 / (32.0 * pi4) * beta + (pi4 / 48.0 - d.s2) / (4.0 * pi4));
        case ClosedForm::i000:
            return h3 * (4.0 / 45.0 - p.inv2 / (4.0 * pi2) - 55.0 / (32.0 * pi4) * p.inv4 -
                         d.s3 / (4.0 * pi4));
        case ClosedForm::i10:
            return h4 / 4.0 *
                   (1.0 / 9.0 - p.inv2 / (2.0 * pi2) - 5.0 / (8.0 * pi4) * p.inv4 - d.s2 / pi4);
        case ClosedForm::i01:
            return h4 / 4.0 *
                   (1.0 / 9.0 - p.inv2 / (2.0 * pi2) - 5.0 / (8.0 * pi4) * p.inv4 - d.s1 / pi4);
        case ClosedForm::i01_repeated:
            return h4 / 4.0 *
                   (17.0 / 240.0 - p.inv2 / (3.0 * pi2) - 2.0 / pi4 * p.inv4 +
                    p.inv2 * p.inv2 / pi4 - d.s1 / pi4);
    }
    return 0.0;
}

bool needs_double_sums(ClosedForm form) {
    return form != ClosedForm::i00;
}

constexpr std::array<std::pair<ClosedForm, std::string_view>, 8> form_names = {{
    {ClosedForm::i00, "i00"},
    {ClosedForm::i000_series, "i000_series"},
    {ClosedForm::i01_series, "i01_series"},
    {ClosedForm::i10_series, "i10_series"},
    {ClosedForm::i000, "i000"},
    {ClosedForm::i10, "i10"},
    {ClosedForm::i01, "i01"},
    {ClosedForm::i01_repeated, "i01_repeated"},
}};

}  // namespace

double exact_error(const CoefficientTable& table, const ComponentIndices& idx) {
    check_pattern(table, idx);
    table.common_order();
    const std::size_t k = table.multiplicity();
    const auto perms = stabilizer(idx);
    CompensatedSum captured;
    MultiIndex mi(k, 0);
    MultiIndex moved(k, 0);
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        const double c = table[flat];
        if (c != 0.0) {
            mi = table.unflatten(flat);
            double inner = 0.0;
            for (const auto& sigma : perms) {
                for (std::size_t l = 0; l < k; ++l) {
                    moved[l] = mi[sigma[l]];
                }
                inner += table.at(moved);
            }
            captured += c * inner;
        }
    }
    return kernel_norm_sq(table.kernel()) - captured.value();
}

double error_bound(const CoefficientTable& table, const ComponentIndices& idx) {
    check_pattern(table, idx);
    return factorial(table.multiplicity()) * (kernel_norm_sq(table.kernel()) - parseval_partial(table));
}

std::string_view to_string(ClosedForm form) {
    for (const auto& [f, name] : form_names) {
        if (f == form) {
            return name;
        }
    }
    return "?";
}

ClosedForm parse_closed_form(std::string_view text) {
    for (const auto& [f, name] : form_names) {
        if (name == text) {
            return f;
        }
    }
    throw ContractError("unknown closed form '" + std::string(text) + "'");
}

ErrorReport exact_error_report(const CoefficientTable& table, const ComponentIndices& idx) {
    const std::vector<int> exps(table.kernel().exponents().begin(), table.kernel().exponents().end());
    return {ErrorKind::exact, exact_error(table, idx), table.kind(), exps, idx, table.common_order(),
            "exact_error"};
}

ErrorReport bound_report(const CoefficientTable& table, const ComponentIndices& idx) {
    const std::vector<int> exps(table.kernel().exponents().begin(), table.kernel().exponents().end());
    return {ErrorKind::bound, error_bound(table, idx), table.kind(), exps, idx, table.max_order(),
            "error_bound"};
}

ErrorReport closed_form_report(ClosedForm form, const Interval& iv, std::size_t q) {
    std::vector<int> exps;
    switch (form) {
        case ClosedForm::i00: exps = {0, 0}; break;
        case ClosedForm::i000:
        case ClosedForm::i000_series: exps = {0, 0, 0}; break;
        case ClosedForm::i10:
        case ClosedForm::i10_series: exps = {1, 0}; break;
        case ClosedForm::i01:
        case ClosedForm::i01_series:
        case ClosedForm::i01_repeated: exps = {0, 1}; break;
    }
    ComponentIndices idx(exps.size());
    for (std::size_t l = 0; l < idx.size(); ++l) {
        idx[l] = form == ClosedForm::i01_repeated ? 1 : l + 1;
    }
    return {ErrorKind::closed_form, closed_form_error(form, iv, q), BasisKind::trigonometric, exps, idx, q,
            std::string(to_string(form))};
}

std::vector<DoubleSums> double_sums(std::span<const std::size_t> qs) {
    if (!std::is_sorted(qs.begin(), qs.end())) {
        throw ContractError("double_sums: cut list must be nondecreasing");
    }
    std::vector<DoubleSums> out;
    out.reserve(qs.size());
    CompensatedSum t1;
    CompensatedSum t2;
    CompensatedSum t3;
    std::size_t next = 0;
    auto emit = [&](std::size_t done) {
        while (next < qs.size() && qs[next] == done) {
            out.push_back({t1.value(), t2.value(), t3.value()});
            ++next;
        }
    };
    emit(0);
    const std::size_t qmax = qs.empty() ? 0 : qs.back();
    for (std::size_t n = 1; n <= qmax; ++n) {
        // Shell: pairs (r, n) and (n, r) for r < n; summed smallest terms first.
        CompensatedSum a1;
        CompensatedSum a2;
        CompensatedSum a3;
        const double nn = static_cast<double>(n);
        const double n2 = nn * nn;
        for (std::size_t r = 1; r < n; ++r) {
            const double rr = static_cast<double>(r);
            const double r2 = rr * rr;
            const double gap = n2 - r2;
            const double gap2 = gap * gap;
            const double num = n2 + r2;
            // (k, l) = (r, n) and (n, r) for the first two families.
            a1 += num / (r2 * gap2) + num / (n2 * gap2);
            a2 += num / (n2 * gap2) + num / (r2 * gap2);
            // (r, l) = (r, n) and (n, r).
            const double denom = r2 * n2 * gap2;
            a3 += (5.0 * n2 * n2 + 4.0 * r2 * r2 - 3.0 * r2 * n2) / denom +
                  (5.0 * r2 * r2 + 4.0 * n2 * n2 - 3.0 * r2 * n2) / denom;
        }
        t1 += a1;
        t2 += a2;
        t3 += a3;
        emit(n);
    }
    return out;
}

DoubleSums double_sums(std::size_t q) {
    const std::array<std::size_t, 1> one = {q};
    return double_sums(one).front();
}

std::vector<double> closed_form_errors(ClosedForm form, const Interval& iv,
                                       std::span<const std::size_t> qs) {
    std::vector<std::size_t> sorted(qs.begin(), qs.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<DoubleSums> sums;
    if (needs_double_sums(form)) {
        sums = double_sums(sorted);
    } else {
        sums.assign(sorted.size(), DoubleSums{0.0, 0.0, 0.0});
    }
    std::vector<double> out;
    out.reserve(qs.size());
    for (std::size_t q : qs) {
        const auto pos = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), q) - sorted.begin());
        out.push_back(evaluate(form, iv.length(), q, sums[pos]));
    }
    return out;
}

double closed_form_error(ClosedForm form, const Interval& iv, std::size_t q) {
    const std::array<std::size_t, 1> one = {q};
    return closed_form_errors(form, iv, one).front();
}

std::vector<double> identity_residuals(Identity which, std::span<const std::size_t> qs) {
    std::vector<std::size_t> sorted(qs.begin(), qs.end());
    std::sort(sorted.begin(), sorted.end());
    const auto sums = double_sums(sorted);
    std::vector<double> out;
    out.reserve(qs.size());
    for (std::size_t q : qs) {
        const auto pos = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), q) - sorted.begin());
        const DoubleSums& d = sums[pos];
        out.push_back(which == Identity::pi4_48 ? std::fabs(d.s1 - pi4 / 48.0)
                                                : std::fabs(d.s3 - 9.0 * pi4 / 80.0));
    }
    return out;
}

double identity_residual(Identity which, std::size_t q) {
    const std::array<std::size_t, 1> one = {q};
    return identity_residuals(which, one).front();
}

}  // namespace itexp
