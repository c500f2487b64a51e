#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "itexp/basis.hpp"
#include "itexp/expansions.hpp"
#include "itexp/gaussian_source.hpp"
#include "itexp/kernel_coeffs.hpp"

namespace itexp {

/// Closed-form truncated expansions. Names give the weight exponents
/// (I10: psi_1 = t - t_1, psi_2 = 1) or, for the J family, the pattern of
/// Wiener (1) and time (0) components.
enum class CatalogName {
    I0, I1, I2, I00, I10, I01, I000,
    J10_i0, J01_0i, J001, J010, J100, J011_0ii, J110_ii0, J101_i0i,
};

struct CatalogId {
    CatalogName name;
    BasisKind basis;
};

std::string_view to_string(CatalogName name);
CatalogName parse_catalog(std::string_view text);
const std::vector<CatalogName>& all_catalog_names();

std::size_t arity(CatalogName name);
bool is_j_family(CatalogName name);
/// I0, I1, I2, I00 exist in both bases; everything else is trig only.
bool available(const CatalogId& id);

/// Kernel whose Stratonovich expansion the entry represents (unit weights for the J family).
WeightedKernel catalog_kernel(CatalogName name, const Interval& iv);

/// Positions that must be 0 (time) for J-family entries; empty for I entries.
std::vector<std::size_t> time_slots(CatalogName name);

/// Highest basis index the display touches at cut q (the triple displays reach 4q).
std::size_t required_index(const CatalogId& id, std::size_t q);

enum class Tails { on, off };

/// Evaluates the display for `id` at cut q (Legendre I00: truncation p = q).
/// J-family idx is the full component tuple, zeros included.
/// Tails::off zeroes xi and mu; they are zero anyway for time components.
double eval_catalog(const CatalogId& id, const Interval& iv, const ComponentIndices& idx,
                    std::size_t q, const GaussianDraw& draw, Tails tails = Tails::on);

/// Legendre displays; p only matters for I00.
double legendre_closed_forms(CatalogName name, const Interval& iv, const ComponentIndices& idx,
                             std::size_t p, const GaussianDraw& draw);

/// J-family entry obtained by feeding zeta_eff of the time component into the
/// double or triple trig display instead of using the printed reduced form.
double eval_j_substituted(CatalogName name, const Interval& iv, const ComponentIndices& idx,
                          std::size_t q, const GaussianDraw& draw, Tails tails = Tails::on);

/// Multi-indices and coefficients read off an I-entry display for pairwise
/// distinct Wiener components, plus the slots that carry tail variables.
struct CatalogSupport {
    std::vector<MultiIndex> indices;
    std::vector<double> coefficients;
    std::vector<std::size_t> tail_slots;
};

CatalogSupport catalog_support(const CatalogId& id, const Interval& iv, std::size_t q);

/// Exact mean-square error of a trig I-entry for distinct components at cut q:
/// I_k minus the squared engine coefficients on the display support minus the
/// energy the tail variables carry (single-slot families above 2q), plus the
/// squared gap between display and engine coefficients on the support.
double catalog_exact_error(CatalogName name, const Interval& iv, std::size_t q);

enum class TraceKernel { c10, c01 };

/// sum_{j <= jmax} C_jj for the kernel (t - t_1) (c10) or (t - t_2) (c01).
double trace_identity_partial(BasisKind basis, TraceKernel which, const Interval& iv,
                              std::size_t jmax);

}  // namespace itexp
