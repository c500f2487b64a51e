#include "itexp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "itexp/catalog.hpp"
#include "itexp/errors.hpp"
#include "itexp/exceptions.hpp"
#include "itexp/kernel_coeffs.hpp"
#include "itexp/mc_oracle.hpp"

namespace itexp {

namespace {

const std::vector<std::size_t> default_table_qs = {1, 10, 100, 1000, 10000};

std::vector<std::size_t> qs_or(const RunConfig& config, const std::vector<std::size_t>& fallback) {
    return config.qs.empty() ? fallback : config.qs;
}

std::vector<BasisKind> bases(const RunConfig& config) {
    if (config.basis) {
        return {*config.basis};
    }
    return {BasisKind::legendre, BasisKind::trigonometric};
}

std::vector<int> parse_exponents(const std::string& text) {
    std::vector<int> exps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size() || v < 0) {
            throw ContractError("bad weight exponent list '" + text + "'");
        }
        exps.push_back(v);
    }
    if (exps.empty()) {
        throw ContractError("empty weight exponent list");
    }
    return exps;
}

WeightedKernel kernel_from(const std::string& text, const Interval& iv) {
    if (!text.empty() && (text[0] == 'I' || text[0] == 'J')) {
        return catalog_kernel(parse_catalog(text), iv);
    }
    return WeightedKernel(parse_exponents(text), iv);
}

ComponentIndices distinct(std::size_t k) {
    ComponentIndices idx(k);
    for (std::size_t l = 0; l < k; ++l) {
        idx[l] = l + 1;
    }
    return idx;
}

// Smallest n in [0, cap] with err(n) <= target for a nonincreasing err.
std::pair<std::optional<std::size_t>, double> minimal_order(const std::function<double(std::size_t)>& err,
                                                            double target, std::size_t cap) {
    double e0 = err(0);
    if (e0 <= target) {
        return {0, e0};
    }
    std::size_t lo = 0;
    std::size_t hi = 1;
    double ehi = 0.0;
    while (true) {
        hi = std::min(hi, cap);
        ehi = err(hi);
        if (ehi <= target) {
            break;
        }
        if (hi == cap) {
            return {std::nullopt, ehi};
        }
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const double e = err(mid);
        if (e <= target) {
            hi = mid;
            ehi = e;
        } else {
            lo = mid;
        }
    }
    return {hi, ehi};
}

std::size_t legendre_cap(std::size_t k) {
    constexpr std::size_t caps[] = {0, 10000, 400, 50, 20};
    return caps[std::min<std::size_t>(k, 4)];
}

std::size_t trig_cap(std::size_t k) {
    constexpr std::size_t caps[] = {0, 5000, 2000, 200, 0};
    return caps[std::min<std::size_t>(k, 4)];
}

}  // namespace

std::string format_shortest(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_table(double value) {
    char buf[40];
    if (std::fabs(value) >= 1e-3) {
        std::snprintf(buf, sizeof buf, "%.4f", value);
    } else {
        std::snprintf(buf, sizeof buf, "%.4e", value);
    }
    return buf;
}

void cmd_tables(const RunConfig& config, std::ostream& out) {
    const Interval iv(config.t0, config.t1);
    const double h = iv.length();
    const auto qs = qs_or(config, default_table_qs);
    const auto t1 = closed_form_errors(ClosedForm::i000, iv, qs);
    const auto t2 = closed_form_errors(ClosedForm::i10, iv, qs);
    const auto t3 = closed_form_errors(ClosedForm::i01_repeated, iv, qs);
    const auto t4 = identity_residuals(Identity::pi4_48, qs);
    const auto t5 = identity_residuals(Identity::ninepi4_80, qs);
    const double h3 = h * h * h;
    const double h4 = h3 * h;
    out << "table_id,q,value,rounded\n";
    auto row = [&](const char* id, std::size_t q, double v) {
        out << id << ',' << q << ',' << format_shortest(v) << ',' << format_table(v) << '\n';
    };
    for (std::size_t n = 0; n < qs.size(); ++n) {
        row("table1", qs[n], t1[n] / h3);
    }
    for (std::size_t n = 0; n < qs.size(); ++n) {
        row("table2", qs[n], 4.0 * t2[n] / h4);
    }
    for (std::size_t n = 0; n < qs.size(); ++n) {
        row("table3", qs[n], 4.0 * t3[n] / h4);
    }
    for (std::size_t n = 0; n < qs.size(); ++n) {
        row("table4", qs[n], t4[n]);
    }
    for (std::size_t n = 0; n < qs.size(); ++n) {
        row("table5", qs[n], t5[n]);
    }
}

void cmd_coeffs(const RunConfig& config, std::ostream& out) {
    const Interval iv(config.t0, config.t1);
    const WeightedKernel kernel = kernel_from(config.kernel, iv);
    const std::size_t p = config.qs.empty() ? 4 : config.qs.front();
    const BasisKind kind = config.basis.value_or(BasisKind::legendre);
    write_csv(build_table(kind, kernel, std::vector<std::size_t>(kernel.multiplicity(), p)), out);
}

void cmd_compare(const RunConfig& config, std::ostream& out) {
    const Interval iv(config.t0, config.t1);
    const CatalogName name = parse_catalog(config.kernel);
    if (is_j_family(name)) {
        throw UnsupportedError("compare covers the I entries of the catalog");
    }
    const WeightedKernel kernel = catalog_kernel(name, iv);
    const std::size_t k = kernel.multiplicity();
    const double scale = std::pow(iv.length(), static_cast<double>(k + 2 * kernel.total_degree()));
    const double target = config.target * scale;
    out << "basis,kernel,p_min,error\n";
    for (BasisKind kind : bases(config)) {
        std::function<double(std::size_t)> err;
        std::size_t cap = 0;
        if (kind == BasisKind::legendre) {
            cap = legendre_cap(k);
            err = [&](std::size_t p) {
                return exact_error(build_table(kind, kernel, std::vector<std::size_t>(k, p)), distinct(k));
            };
        } else if (k == 1) {
            // With tail variables the single integrals are exact at every cut;
            // the cost comparison uses the plain 2q truncation.
            cap = trig_cap(k);
            err = [&](std::size_t q) {
                return exact_error(build_table(kind, kernel, std::vector<std::size_t>{2 * q}), distinct(1));
            };
        } else {
            cap = trig_cap(k);
            err = [&](std::size_t q) { return catalog_exact_error(name, iv, q); };
        }
        const auto [order, error] = minimal_order(err, target, cap);
        out << to_string(kind) << ',' << to_string(name) << ',' << (order ? std::to_string(*order) : "NA") << ','
            << format_shortest(error) << '\n';
    }
}

void cmd_mc_verify(const RunConfig& config, std::ostream& out) {
    if (config.basis && *config.basis != BasisKind::trigonometric) {
        throw UnsupportedError("mc-verify checks the trigonometric closed forms");
    }
    const Interval iv(config.t0, config.t1);
    struct Row {
        CatalogName name;
        ClosedForm form;
        std::size_t q;
    };
    std::vector<Row> rows;
    if (config.qs.empty()) {
        rows = {{CatalogName::I00, ClosedForm::i00, 0},       {CatalogName::I00, ClosedForm::i00, 10},
                {CatalogName::I00, ClosedForm::i00, 50},      {CatalogName::I000, ClosedForm::i000, 1},
                {CatalogName::I10, ClosedForm::i10, 1},   {CatalogName::I01, ClosedForm::i01, 1}};
    } else {
        for (std::size_t q : config.qs) {
            rows.push_back({CatalogName::I00, ClosedForm::i00, q});
            rows.push_back({CatalogName::I000, ClosedForm::i000, q});
        }
    }
    MCConfig mc;
    mc.trials = config.trials;
    mc.grid_N = config.grid_N;
    mc.threads = config.threads;
    out << "integral_id,basis,q,mc_error,stderr,closed_form,pass\n";
    for (std::size_t n = 0; n < rows.size(); ++n) {
        const Row& r = rows[n];
        mc.seed = derive_seed(config.seed, StreamTag::trial, n);
        const std::size_t k = arity(r.name);
        const MCEstimate e = ms_error_vs_truth(CatalogId{r.name, BasisKind::trigonometric}, iv, distinct(k), r.q, mc);
        const double closed = closed_form_error(r.form, iv, r.q);
        const bool pass = std::fabs(e.second_moment - closed) <= 4.0 * e.stderr_ + grid_allowance(k, iv, mc.grid_N);
        out << to_string(r.name) << ",trig," << r.q << ',' << format_shortest(e.second_moment) << ','
            << format_shortest(e.stderr_) << ',' << format_shortest(closed) << ',' << (pass ? "true" : "false")
            << '\n';
    }
}

void cmd_identities(const RunConfig& config, std::ostream& out) {
    const Interval iv(config.t0, config.t1);
    constexpr double pi4 = std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi;
    auto qs = qs_or(config, default_table_qs);
    std::sort(qs.begin(), qs.end());
    const auto sums = double_sums(qs);
    out << "identity,basis,n,value,limit,residual\n";
    auto row = [&](const char* id, std::string_view basis, std::size_t n, double v, double limit) {
        out << id << ',' << basis << ',' << n << ',' << format_shortest(v) << ',' << format_shortest(limit) << ','
            << format_shortest(std::fabs(v - limit)) << '\n';
    };
    for (std::size_t n = 0; n < qs.size(); ++n) {
        row("pi4_48_s1", "-", qs[n], sums[n].s1, pi4 / 48.0);
        row("pi4_48_s2", "-", qs[n], sums[n].s2, pi4 / 48.0);
        row("ninepi4_80", "-", qs[n], sums[n].s3, 9.0 * pi4 / 80.0);
    }
    const double h2 = iv.length() * iv.length();
    for (BasisKind kind : bases(config)) {
        for (std::size_t jmax : {10u, 50u, 200u}) {
            row("trace_c10", to_string(kind), jmax, trace_identity_partial(kind, TraceKernel::c10, iv, jmax), -0.25 * h2);
            row("trace_c01", to_string(kind), jmax, trace_identity_partial(kind, TraceKernel::c01, iv, jmax), -0.25 * h2);
        }
    }
}

void run_command(const RunConfig& config, std::ostream& out) {
    switch (config.command) {
        case Command::tables: cmd_tables(config, out); break;
        case Command::coeffs: cmd_coeffs(config, out); break;
        case Command::compare: cmd_compare(config, out); break;
        case Command::mc_verify: cmd_mc_verify(config, out); break;
        case Command::identities: cmd_identities(config, out); break;
    }
}

}  // namespace itexp
