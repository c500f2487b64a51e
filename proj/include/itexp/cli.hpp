#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "itexp/basis.hpp"

namespace itexp {

enum class Command { tables, coeffs, compare, mc_verify, identities };

struct RunConfig {
    Command command = Command::tables;
    /// Unset means both bases where a command supports that.
    std::optional<BasisKind> basis;
    std::vector<std::size_t> qs;
    std::uint64_t seed = 1;
    std::size_t trials = 10000;
    std::size_t grid_N = 10000;
    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t threads = 1;
    /// Catalog name (I1, I00, ...) or comma-separated weight exponents.
    std::string kernel = "I00";
    /// Target error in units of (T - t)^{k + 2 sum l}.
    double target = 0.01;
};

/// Shortest decimal that reads back to the same double.
std::string format_shortest(double value);

/// Four decimals from 1e-3 up, otherwise five significant digits in
/// scientific form.
std::string format_table(double value);

/// table_id,q,value,rounded for the five reproduction tables.
void cmd_tables(const RunConfig& config, std::ostream& out);

/// Coefficient table of the kernel at order qs.front() per axis.
void cmd_coeffs(const RunConfig& config, std::ostream& out);

/// basis,kernel,p_min,error: smallest truncation meeting the target.
void cmd_compare(const RunConfig& config, std::ostream& out);

/// integral_id,basis,q,mc_error,stderr,closed_form,pass.
void cmd_mc_verify(const RunConfig& config, std::ostream& out);

/// identity,basis,n,value,limit,residual for the double-sum identities and
/// the trace identity.
void cmd_identities(const RunConfig& config, std::ostream& out);

void run_command(const RunConfig& config, std::ostream& out);

}  // namespace itexp
