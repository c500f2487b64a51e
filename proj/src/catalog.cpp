#include "itexp/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <map>
#include <numbers>
#include <string>

#include "itexp/exceptions.hpp"
#include "itexp/summation.hpp"

namespace itexp {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;
constexpr double sqrt2 = std::numbers::sqrt2;

enum class Var { zeta, xi, mu };

struct Factor {
    Var var;
    std::size_t slot;
    std::size_t index;
};

Factor z(std::size_t slot, std::size_t j) { return {Var::zeta, slot, j}; }
Factor xi(std::size_t slot) { return {Var::xi, slot, 0}; }
Factor mu(std::size_t slot) { return {Var::mu, slot, 0}; }

class EvalSink {
public:
    EvalSink(const Interval& iv, const ComponentIndices& idx, const GaussianDraw& draw, Tails tails)
        : iv_(iv), idx_(idx), draw_(draw), tails_(tails == Tails::on) {}

    void add(double coef, std::initializer_list<Factor> factors) {
        double v = coef;
        for (const Factor& f : factors) {
            v *= value(f);
            if (v == 0.0) {
                return;
            }
        }
        acc_ += v;
    }

    double result() const { return acc_.value(); }

private:
    double value(const Factor& f) const {
        const std::size_t i = idx_[f.slot];
        switch (f.var) {
            case Var::zeta: return zeta_eff(draw_, i, f.index, iv_);
            case Var::xi: return (tails_ && i != 0) ? draw_.xi(i) : 0.0;
            case Var::mu: return (tails_ && i != 0) ? draw_.mu(i) : 0.0;
        }
        return 0.0;
    }

    const Interval& iv_;
    const ComponentIndices& idx_;
    const GaussianDraw& draw_;
    bool tails_;
    CompensatedSum acc_;
};

// Collects coefficients per multi-index; slots stand for distinct components.
class ExtractSink {
public:
    explicit ExtractSink(std::size_t k) : k_(k) {}

    void add(double coef, std::initializer_list<Factor> factors) {
        MultiIndex mi(k_, 0);
        std::vector<bool> seen(k_, false);
        bool tail = false;
        for (const Factor& f : factors) {
            if (seen.at(f.slot)) {
                throw ContractError("catalog term repeats a slot; extraction needs distinct components");
            }
            seen[f.slot] = true;
            if (f.var != Var::zeta) {
                tail = true;
                if (std::find(tail_slots_.begin(), tail_slots_.end(), f.slot) == tail_slots_.end()) {
                    tail_slots_.push_back(f.slot);
                }
            }
            mi[f.slot] = f.index;
        }
        if (tail) {
            return;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw ContractError("catalog term does not cover every slot");
        }
        terms_[mi] += coef;
    }

    CatalogSupport result() const {
        CatalogSupport out;
        for (const auto& [mi, c] : terms_) {
            out.indices.push_back(mi);
            out.coefficients.push_back(c);
        }
        out.tail_slots = tail_slots_;
        std::sort(out.tail_slots.begin(), out.tail_slots.end());
        return out;
    }

private:
    std::size_t k_;
    std::map<MultiIndex, double> terms_;
    std::vector<std::size_t> tail_slots_;
};

struct Cut {
    std::size_t q;
    double sqrt_alpha;
    double sqrt_beta;
};

Cut make_cut(std::size_t q) {
    const TailWeights tw = tail_weights(q);
    return {q, std::sqrt(tw.alpha), std::sqrt(tw.beta)};
}

double rr(std::size_t r) { return static_cast<double>(r); }

// ---- trigonometric displays; slot s stands for component i_{s+1} ----

template <class Sink>
void emit_i0(Sink& s, double h) {
    s.add(std::sqrt(h), {z(0, 0)});
}

template <class Sink>
void emit_i1(Sink& s, double h, const Cut& c) {
    const double pre = -std::pow(h, 1.5) / 2.0;
    s.add(pre, {z(0, 0)});
    for (std::size_t r = 1; r <= c.q; ++r) {
        s.add(-pre * sqrt2 / (pi * rr(r)), {z(0, 2 * r - 1)});
    }
    s.add(-pre * sqrt2 / pi * c.sqrt_alpha, {xi(0)});
}

// Shared by the second-order single integral and its time-component relatives:
// pre * (a0 zeta_0 + a_even (sum zeta_2r / r^2 + sqrt(beta) mu) + a_odd (sum zeta_{2r-1} / r + sqrt(alpha) xi)).
template <class Sink>
void emit_single(Sink& s, std::size_t slot, double pre, double a0, double a_even, double a_odd,
                 const Cut& c) {
    s.add(pre * a0, {z(slot, 0)});
    for (std::size_t r = 1; r <= c.q; ++r) {
        if (a_even != 0.0) {
            s.add(pre * a_even / (rr(r) * rr(r)), {z(slot, 2 * r)});
        }
        if (a_odd != 0.0) {
            s.add(pre * a_odd / rr(r), {z(slot, 2 * r - 1)});
        }
    }
    if (a_even != 0.0) {
        s.add(pre * a_even * c.sqrt_beta, {mu(slot)});
    }
    if (a_odd != 0.0) {
        s.add(pre * a_odd * c.sqrt_alpha, {xi(slot)});
    }
}

template <class Sink>
void emit_i2(Sink& s, double h, const Cut& c) {
    emit_single(s, 0, std::pow(h, 2.5), 1.0 / 3.0, 1.0 / (sqrt2 * pi2), -1.0 / (sqrt2 * pi), c);
}

template <class Sink>
void emit_i00(Sink& s, double h, const Cut& c) {
    const double pre = h / 2.0;
    s.add(pre, {z(0, 0), z(1, 0)});
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double a = pre / (pi * rr(r));
        s.add(a, {z(0, 2 * r), z(1, 2 * r - 1)});
        s.add(-a, {z(0, 2 * r - 1), z(1, 2 * r)});
        s.add(a * sqrt2, {z(0, 2 * r - 1), z(1, 0)});
        s.add(-a * sqrt2, {z(0, 0), z(1, 2 * r - 1)});
    }
    const double t = pre * sqrt2 / pi * c.sqrt_alpha;
    s.add(t, {xi(0), z(1, 0)});
    s.add(-t, {z(0, 0), xi(1)});
}

// The (10)-type double display on slots (a, b); the same block appears in the
// time-component triple entries with a shifted slot pair.
template <class Sink>
void emit_i10_on(Sink& s, double pre, std::size_t a, std::size_t b, const Cut& c) {
    const double s2 = 2.0 * sqrt2;
    s.add(pre / 6.0, {z(a, 0), z(b, 0)});
    s.add(-pre / (s2 * pi) * c.sqrt_alpha, {xi(b), z(a, 0)});
    s.add(pre / (s2 * pi2) * c.sqrt_beta, {mu(b), z(a, 0)});
    s.add(-2.0 * pre / (s2 * pi2) * c.sqrt_beta, {mu(a), z(b, 0)});
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        s.add(-pre / (s2 * pi * r1), {z(b, 2 * r - 1), z(a, 0)});
        s.add(pre / (s2 * pi2 * r1 * r1), {z(b, 2 * r), z(a, 0)});
        s.add(-2.0 * pre / (s2 * pi2 * r1 * r1), {z(a, 2 * r), z(b, 0)});
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        for (std::size_t l = 1; l <= c.q; ++l) {
            if (r == l) {
                continue;
            }
            const double w = -pre / (2.0 * pi2) / (rr(r) * rr(r) - rr(l) * rr(l));
            s.add(w, {z(a, 2 * r), z(b, 2 * l)});
            s.add(w * rr(l) / rr(r), {z(a, 2 * r - 1), z(b, 2 * l - 1)});
        }
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        s.add(pre / (4.0 * pi * r1), {z(a, 2 * r), z(b, 2 * r - 1)});
        s.add(-pre / (4.0 * pi * r1), {z(a, 2 * r - 1), z(b, 2 * r)});
        s.add(3.0 * pre / (8.0 * pi2 * r1 * r1), {z(a, 2 * r - 1), z(b, 2 * r - 1)});
        s.add(pre / (8.0 * pi2 * r1 * r1), {z(b, 2 * r), z(a, 2 * r)});
    }
}

template <class Sink>
void emit_i10(Sink& s, double h, const Cut& c) {
    emit_i10_on(s, -h * h, 0, 1, c);
}

template <class Sink>
void emit_i01(Sink& s, double h, const Cut& c) {
    const double pre = h * h;
    const double s2 = 2.0 * sqrt2;
    s.add(-pre / 3.0, {z(0, 0), z(1, 0)});
    s.add(-pre / (s2 * pi) * c.sqrt_alpha, {xi(0), z(1, 0)});
    s.add(2.0 * pre / (s2 * pi) * c.sqrt_alpha, {xi(1), z(0, 0)});
    s.add(pre / (s2 * pi2) * c.sqrt_beta, {mu(0), z(1, 0)});
    s.add(-2.0 * pre / (s2 * pi2) * c.sqrt_beta, {mu(1), z(0, 0)});
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        const double a = -pre / s2;
        s.add(a / (pi * r1), {z(0, 2 * r - 1), z(1, 0)});
        s.add(-2.0 * a / (pi * r1), {z(1, 2 * r - 1), z(0, 0)});
        s.add(-a / (pi2 * r1 * r1), {z(0, 2 * r), z(1, 0)});
        s.add(2.0 * a / (pi2 * r1 * r1), {z(1, 2 * r), z(0, 0)});
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        for (std::size_t l = 1; l <= c.q; ++l) {
            if (r == l) {
                continue;
            }
            const double w = pre / (2.0 * pi2) / (rr(r) * rr(r) - rr(l) * rr(l));
            s.add(w * rr(r) / rr(l), {z(0, 2 * r - 1), z(1, 2 * l - 1)});
            s.add(w, {z(0, 2 * r), z(1, 2 * l)});
        }
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        s.add(-pre / (4.0 * pi * r1), {z(0, 2 * r), z(1, 2 * r - 1)});
        s.add(pre / (4.0 * pi * r1), {z(0, 2 * r - 1), z(1, 2 * r)});
        s.add(3.0 * pre / (8.0 * pi2 * r1 * r1), {z(0, 2 * r - 1), z(1, 2 * r - 1)});
        s.add(pre / (8.0 * pi2 * r1 * r1), {z(0, 2 * r), z(1, 2 * r)});
    }
}

template <class Sink>
void emit_d_term(Sink& s, double pre, const Cut& c) {
    const std::size_t q = c.q;
    // r != l block.
    for (std::size_t r = 1; r <= q; ++r) {
        for (std::size_t l = 1; l <= q; ++l) {
            if (r == l) {
                continue;
            }
            const double base = pre / (2.0 * pi2);
            const double w = base / (rr(r) * rr(r) - rr(l) * rr(l));
            s.add(w, {z(0, 2 * r), z(1, 2 * l), z(2, 0)});
            s.add(-w, {z(1, 2 * r), z(0, 0), z(2, 2 * l)});
            s.add(w * rr(r) / rr(l), {z(0, 2 * r - 1), z(1, 2 * l - 1), z(2, 0)});
            s.add(-w * rr(l) / rr(r), {z(0, 0), z(1, 2 * r - 1), z(2, 2 * l - 1)});
            s.add(-base / (rr(r) * rr(l)), {z(0, 2 * r - 1), z(1, 0), z(2, 2 * l - 1)});
        }
    }
    const double outer = pre / (4.0 * sqrt2 * pi2);
    // (r, m) full square.
    for (std::size_t r = 1; r <= q; ++r) {
        for (std::size_t m = 1; m <= q; ++m) {
            const double a = outer * 2.0 / (rr(r) * rr(m));
            s.add(-a, {z(0, 2 * r - 1), z(1, 2 * m - 1), z(2, 2 * m)});
            s.add(a, {z(0, 2 * r - 1), z(1, 2 * r), z(2, 2 * m - 1)});
            s.add(a, {z(0, 2 * r - 1), z(1, 2 * m), z(2, 2 * m - 1)});
            s.add(-a, {z(0, 2 * r), z(1, 2 * r - 1), z(2, 2 * m - 1)});
            const double b = outer / (rr(m) * rr(r + m));
            const std::size_t e = 2 * (m + r);
            s.add(-b, {z(0, e), z(1, 2 * r), z(2, 2 * m)});
            s.add(-b, {z(0, e - 1), z(1, 2 * r - 1), z(2, 2 * m)});
            s.add(-b, {z(0, e - 1), z(1, 2 * r), z(2, 2 * m - 1)});
            s.add(b, {z(0, e), z(1, 2 * r - 1), z(2, 2 * m - 1)});
        }
    }
    // (m, l) with l > m.
    for (std::size_t m = 1; m <= q; ++m) {
        for (std::size_t l = m + 1; l <= q; ++l) {
            const std::size_t d = 2 * (l - m);
            const double a = outer / (rr(m) * rr(l - m));
            s.add(a, {z(0, d), z(1, 2 * l), z(2, 2 * m)});
            s.add(a, {z(0, d - 1), z(1, 2 * l - 1), z(2, 2 * m)});
            s.add(-a, {z(0, d - 1), z(1, 2 * l), z(2, 2 * m - 1)});
            s.add(a, {z(0, d), z(1, 2 * l - 1), z(2, 2 * m - 1)});
            const double b = outer / (rr(l) * rr(l - m));
            s.add(-b, {z(0, d), z(1, 2 * m), z(2, 2 * l)});
            s.add(b, {z(0, d - 1), z(1, 2 * m - 1), z(2, 2 * l)});
            s.add(-b, {z(0, d - 1), z(1, 2 * m), z(2, 2 * l - 1)});
            s.add(-b, {z(0, d), z(1, 2 * m - 1), z(2, 2 * l - 1)});
        }
    }
}

template <class Sink>
void emit_i000(Sink& s, double h, const Cut& c) {
    const double pre = std::pow(h, 1.5);
    const double s2 = 2.0 * sqrt2;
    s.add(pre / 6.0, {z(0, 0), z(1, 0), z(2, 0)});
    const double ta = pre * c.sqrt_alpha / (s2 * pi);
    s.add(ta, {xi(0), z(1, 0), z(2, 0)});
    s.add(-ta, {xi(2), z(1, 0), z(0, 0)});
    const double tb = pre * c.sqrt_beta / (s2 * pi2);
    s.add(tb, {mu(0), z(1, 0), z(2, 0)});
    s.add(-2.0 * tb, {mu(1), z(0, 0), z(2, 0)});
    s.add(tb, {mu(2), z(0, 0), z(1, 0)});
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        const double a = pre / (s2 * pi * r1);
        const double b = pre / (s2 * pi2 * r1 * r1);
        s.add(a, {z(0, 2 * r - 1), z(1, 0), z(2, 0)});
        s.add(-a, {z(2, 2 * r - 1), z(1, 0), z(0, 0)});
        s.add(b, {z(0, 2 * r), z(1, 0), z(2, 0)});
        s.add(-2.0 * b, {z(1, 2 * r), z(2, 0), z(0, 0)});
        s.add(b, {z(2, 2 * r), z(1, 0), z(0, 0)});
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        const double a = pre / (4.0 * pi * r1);
        s.add(a, {z(0, 2 * r), z(1, 2 * r - 1), z(2, 0)});
        s.add(-a, {z(0, 2 * r - 1), z(1, 2 * r), z(2, 0)});
        s.add(-a, {z(1, 2 * r - 1), z(2, 2 * r), z(0, 0)});
        s.add(a, {z(2, 2 * r - 1), z(1, 2 * r), z(0, 0)});
        const double b = pre / (8.0 * pi2 * r1 * r1);
        s.add(3.0 * b, {z(0, 2 * r - 1), z(1, 2 * r - 1), z(2, 0)});
        s.add(b, {z(0, 2 * r), z(1, 2 * r), z(2, 0)});
        s.add(-6.0 * b, {z(0, 2 * r - 1), z(2, 2 * r - 1), z(1, 0)});
        s.add(3.0 * b, {z(1, 2 * r - 1), z(2, 2 * r - 1), z(0, 0)});
        s.add(-2.0 * b, {z(0, 2 * r), z(2, 2 * r), z(1, 0)});
        s.add(b, {z(2, 2 * r), z(1, 2 * r), z(0, 0)});
    }
    emit_d_term(s, pre, c);
}

// ---- printed J family; slots follow the full component tuple ----

template <class Sink>
void emit_j10(Sink& s, double h, const Cut& c) {
    emit_single(s, 0, std::pow(h, 1.5) / 2.0, 1.0, 0.0, sqrt2 / pi, c);
}

template <class Sink>
void emit_j01(Sink& s, double h, const Cut& c) {
    emit_single(s, 1, std::pow(h, 1.5) / 2.0, 1.0, 0.0, -sqrt2 / pi, c);
}

template <class Sink>
void emit_j001(Sink& s, double h, const Cut& c) {
    emit_single(s, 2, std::pow(h, 2.5), 1.0 / 6.0, 1.0 / (2.0 * sqrt2 * pi2), -1.0 / (2.0 * sqrt2 * pi), c);
}

template <class Sink>
void emit_j010(Sink& s, double h, const Cut& c) {
    emit_single(s, 1, std::pow(h, 2.5), 1.0 / 6.0, -1.0 / (sqrt2 * pi2), 0.0, c);
}

template <class Sink>
void emit_j100(Sink& s, double h, const Cut& c) {
    emit_single(s, 0, std::pow(h, 2.5), 1.0 / 6.0, 1.0 / (2.0 * sqrt2 * pi2), 1.0 / (2.0 * sqrt2 * pi), c);
}

template <class Sink>
void emit_j011(Sink& s, double h, const Cut& c) {
    // Same block as the (10) double display, carried by slots 1 and 2 with a positive prefactor.
    emit_i10_on(s, h * h, 1, 2, c);
}

template <class Sink>
void emit_j110(Sink& s, double h, const Cut& c) {
    const double pre = h * h;
    const double s2 = 2.0 * sqrt2;
    s.add(pre / 6.0, {z(0, 0), z(1, 0)});
    s.add(pre / (s2 * pi) * c.sqrt_alpha, {xi(0), z(1, 0)});
    s.add(pre / (s2 * pi2) * c.sqrt_beta, {mu(0), z(1, 0)});
    s.add(-2.0 * pre / (s2 * pi2) * c.sqrt_beta, {mu(1), z(0, 0)});
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        s.add(pre / (s2 * pi * r1), {z(0, 2 * r - 1), z(1, 0)});
        s.add(pre / (s2 * pi2 * r1 * r1), {z(0, 2 * r), z(1, 0)});
        s.add(-2.0 * pre / (s2 * pi2 * r1 * r1), {z(1, 2 * r), z(0, 0)});
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        for (std::size_t l = 1; l <= c.q; ++l) {
            if (r == l) {
                continue;
            }
            const double w = pre / (2.0 * pi2) / (rr(r) * rr(r) - rr(l) * rr(l));
            s.add(w * rr(r) / rr(l), {z(0, 2 * r - 1), z(1, 2 * l - 1)});
            s.add(w, {z(0, 2 * r), z(1, 2 * l)});
        }
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        s.add(pre / (4.0 * pi * r1), {z(1, 2 * r - 1), z(0, 2 * r)});
        s.add(-pre / (4.0 * pi * r1), {z(0, 2 * r - 1), z(1, 2 * r)});
        s.add(3.0 * pre / (8.0 * pi2 * r1 * r1), {z(0, 2 * r - 1), z(1, 2 * r - 1)});
        s.add(pre / (8.0 * pi2 * r1 * r1), {z(0, 2 * r), z(1, 2 * r)});
    }
}

template <class Sink>
void emit_j101(Sink& s, double h, const Cut& c) {
    const double pre = h * h;
    const double s2 = 2.0 * sqrt2;
    s.add(pre / 6.0, {z(0, 0), z(2, 0)});
    const double ta = pre / (s2 * pi) * c.sqrt_alpha;
    s.add(ta, {xi(0), z(2, 0)});
    s.add(-ta, {xi(2), z(0, 0)});
    const double tb = pre / (s2 * pi2) * c.sqrt_beta;
    s.add(tb, {mu(0), z(2, 0)});
    s.add(tb, {mu(2), z(0, 0)});
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double r1 = rr(r);
        s.add(pre / (s2 * pi * r1), {z(0, 2 * r - 1), z(2, 0)});
        s.add(-pre / (s2 * pi * r1), {z(2, 2 * r - 1), z(0, 0)});
        s.add(pre / (s2 * pi2 * r1 * r1), {z(0, 2 * r), z(2, 0)});
        s.add(pre / (s2 * pi2 * r1 * r1), {z(2, 2 * r), z(0, 0)});
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        for (std::size_t l = 1; l <= c.q; ++l) {
            if (r != l) {
                s.add(-pre / (2.0 * pi2 * rr(r) * rr(l)), {z(0, 2 * r - 1), z(2, 2 * l - 1)});
            }
        }
    }
    for (std::size_t r = 1; r <= c.q; ++r) {
        const double b = pre / (4.0 * pi2 * rr(r) * rr(r));
        s.add(-3.0 * b, {z(0, 2 * r - 1), z(2, 2 * r - 1)});
        s.add(-b, {z(0, 2 * r), z(2, 2 * r)});
    }
}

// ---- Legendre displays ----

template <class Sink>
void emit_legendre(Sink& s, CatalogName name, double h, std::size_t p) {
    switch (name) {
        case CatalogName::I0: s.add(std::sqrt(h), {z(0, 0)}); return;
        case CatalogName::I1: {
            const double pre = -std::pow(h, 1.5) / 2.0;
            s.add(pre, {z(0, 0)});
            s.add(pre / std::sqrt(3.0), {z(0, 1)});
            return;
        }
        case CatalogName::I2: {
            const double pre = std::pow(h, 2.5) / 3.0;
            s.add(pre, {z(0, 0)});
            s.add(pre * std::sqrt(3.0) / 2.0, {z(0, 1)});
            s.add(pre / (2.0 * std::sqrt(5.0)), {z(0, 2)});
            return;
        }
        case CatalogName::I00: {
            const double pre = h / 2.0;
            s.add(pre, {z(0, 0), z(1, 0)});
            for (std::size_t i = 1; i <= p; ++i) {
                const double a = pre / std::sqrt(4.0 * rr(i) * rr(i) - 1.0);
                s.add(a, {z(0, i - 1), z(1, i)});
                s.add(-a, {z(0, i), z(1, i - 1)});
            }
            return;
        }
        default: break;
    }
    throw UnsupportedError("no Legendre display for " + std::string(to_string(name)));
}

template <class Sink>
void emit_trig(Sink& s, CatalogName name, double h, const Cut& c) {
    switch (name) {
        case CatalogName::I0: emit_i0(s, h); return;
        case CatalogName::I1: emit_i1(s, h, c); return;
        case CatalogName::I2: emit_i2(s, h, c); return;
        case CatalogName::I00: emit_i00(s, h, c); return;
        case CatalogName::I10: emit_i10(s, h, c); return;
        case CatalogName::I01: emit_i01(s, h, c); return;
        case CatalogName::I000: emit_i000(s, h, c); return;
        case CatalogName::J10_i0: emit_j10(s, h, c); return;
        case CatalogName::J01_0i: emit_j01(s, h, c); return;
        case CatalogName::J001: emit_j001(s, h, c); return;
        case CatalogName::J010: emit_j010(s, h, c); return;
        case CatalogName::J100: emit_j100(s, h, c); return;
        case CatalogName::J011_0ii: emit_j011(s, h, c); return;
        case CatalogName::J110_ii0: emit_j110(s, h, c); return;
        case CatalogName::J101_i0i: emit_j101(s, h, c); return;
    }
}

struct NameInfo {
    CatalogName name;
    std::string_view text;
    std::vector<int> exponents;
    std::vector<std::size_t> zeros;
};

const std::vector<NameInfo>& name_table() {
    static const std::vector<NameInfo> table = {
        {CatalogName::I0, "I0", {0}, {}},
        {CatalogName::I1, "I1", {1}, {}},
        {CatalogName::I2, "I2", {2}, {}},
        {CatalogName::I00, "I00", {0, 0}, {}},
        {CatalogName::I10, "I10", {1, 0}, {}},
        {CatalogName::I01, "I01", {0, 1}, {}},
        {CatalogName::I000, "I000", {0, 0, 0}, {}},
        {CatalogName::J10_i0, "J10_i0", {0, 0}, {1}},
        {CatalogName::J01_0i, "J01_0i", {0, 0}, {0}},
        {CatalogName::J001, "J001", {0, 0, 0}, {0, 1}},
        {CatalogName::J010, "J010", {0, 0, 0}, {0, 2}},
        {CatalogName::J100, "J100", {0, 0, 0}, {1, 2}},
        {CatalogName::J011_0ii, "J011_0ii", {0, 0, 0}, {0}},
        {CatalogName::J110_ii0, "J110_ii0", {0, 0, 0}, {2}},
        {CatalogName::J101_i0i, "J101_i0i", {0, 0, 0}, {1}},
    };
    return table;
}

const NameInfo& info(CatalogName name) {
    for (const auto& entry : name_table()) {
        if (entry.name == name) {
            return entry;
        }
    }
    throw ContractError("unknown catalog entry");
}

void check_call(const CatalogId& id, const ComponentIndices& idx, std::size_t q,
                const GaussianDraw& draw, Tails tails) {
    if (!available(id)) {
        throw UnsupportedError(std::string(to_string(id.name)) + " has no " +
                               std::string(to_string(id.basis)) + " display");
    }
    const NameInfo& entry = info(id.name);
    if (idx.size() != entry.exponents.size()) {
        throw ContractError(std::string(entry.text) + " takes " +
                            std::to_string(entry.exponents.size()) + " component indices, got " +
                            std::to_string(idx.size()));
    }
    for (std::size_t slot : entry.zeros) {
        if (idx[slot] != 0) {
            throw ContractError(std::string(entry.text) + " needs the time component at position " +
                                std::to_string(slot + 1));
        }
    }
    bool any_wiener = false;
    for (std::size_t i : idx) {
        any_wiener = any_wiener || i != 0;
    }
    if (any_wiener && tails == Tails::on && id.basis == BasisKind::trigonometric &&
        draw.tail_cut() != q) {
        throw ContractError("draw tail variables belong to cut " + std::to_string(draw.tail_cut()) +
                            ", requested " + std::to_string(q));
    }
    if (any_wiener && required_index(id, q) > draw.max_index()) {
        throw ContractError("draw covers indices up to " + std::to_string(draw.max_index()) + ", " +
                            std::string(entry.text) + " at cut " + std::to_string(q) + " needs " +
                            std::to_string(required_index(id, q)));
    }
}

}  // namespace

std::string_view to_string(CatalogName name) { return info(name).text; }

CatalogName parse_catalog(std::string_view text) {
    for (const auto& entry : name_table()) {
        if (entry.text == text) {
            return entry.name;
        }
    }
    throw ContractError("unknown catalog entry '" + std::string(text) + "'");
}

const std::vector<CatalogName>& all_catalog_names() {
    static const std::vector<CatalogName> names = [] {
        std::vector<CatalogName> out;
        for (const auto& entry : name_table()) {
            out.push_back(entry.name);
        }
        return out;
    }();
    return names;
}

std::size_t arity(CatalogName name) { return info(name).exponents.size(); }

bool is_j_family(CatalogName name) { return !info(name).zeros.empty(); }

bool available(const CatalogId& id) {
    if (id.basis == BasisKind::trigonometric) {
        return true;
    }
    return id.name == CatalogName::I0 || id.name == CatalogName::I1 ||
           id.name == CatalogName::I2 || id.name == CatalogName::I00;
}

WeightedKernel catalog_kernel(CatalogName name, const Interval& iv) {
    return WeightedKernel(info(name).exponents, iv);
}

std::vector<std::size_t> time_slots(CatalogName name) { return info(name).zeros; }

std::size_t required_index(const CatalogId& id, std::size_t q) {
    if (id.basis == BasisKind::legendre) {
        switch (id.name) {
            case CatalogName::I0: return 0;
            case CatalogName::I1: return 1;
            case CatalogName::I2: return 2;
            default: return q;
        }
    }
    // D-term indices 2(m + r) reach 4q on the first slot.
    if (id.name == CatalogName::I000) {
        return 4 * q;
    }
    return 2 * q;
}

double eval_catalog(const CatalogId& id, const Interval& iv, const ComponentIndices& idx,
                    std::size_t q, const GaussianDraw& draw, Tails tails) {
    check_call(id, idx, q, draw, tails);
    EvalSink sink(iv, idx, draw, tails);
    if (id.basis == BasisKind::legendre) {
        emit_legendre(sink, id.name, iv.length(), q);
    } else {
        emit_trig(sink, id.name, iv.length(), make_cut(q));
    }
    return sink.result();
}

double legendre_closed_forms(CatalogName name, const Interval& iv, const ComponentIndices& idx,
                             std::size_t p, const GaussianDraw& draw) {
    return eval_catalog({name, BasisKind::legendre}, iv, idx, p, draw, Tails::off);
}

double eval_j_substituted(CatalogName name, const Interval& iv, const ComponentIndices& idx,
                          std::size_t q, const GaussianDraw& draw, Tails tails) {
    if (!is_j_family(name)) {
        throw ContractError(std::string(to_string(name)) + " is not a time-component entry");
    }
    const CatalogId parent{arity(name) == 2 ? CatalogName::I00 : CatalogName::I000,
                           BasisKind::trigonometric};
    check_call({name, BasisKind::trigonometric}, idx, q, draw, tails);
    if (required_index(parent, q) > draw.max_index()) {
        throw ContractError("substituted evaluation needs indices up to " +
                            std::to_string(required_index(parent, q)));
    }
    EvalSink sink(iv, idx, draw, tails);
    emit_trig(sink, parent.name, iv.length(), make_cut(q));
    return sink.result();
}

CatalogSupport catalog_support(const CatalogId& id, const Interval& iv, std::size_t q) {
    if (!available(id) || is_j_family(id.name)) {
        throw UnsupportedError("support extraction covers the I entries only");
    }
    ExtractSink sink(arity(id.name));
    if (id.basis == BasisKind::legendre) {
        emit_legendre(sink, id.name, iv.length(), q);
    } else {
        emit_trig(sink, id.name, iv.length(), make_cut(q));
    }
    return sink.result();
}

double catalog_exact_error(CatalogName name, const Interval& iv, std::size_t q) {
    const CatalogId id{name, BasisKind::trigonometric};
    const CatalogSupport support = catalog_support(id, iv, q);
    const WeightedKernel kernel = catalog_kernel(name, iv);
    const std::size_t k = kernel.multiplicity();
    CompensatedSum error;
    error += kernel_norm_sq(kernel);
    const auto engine = fourier_coefficients(BasisKind::trigonometric, kernel, support.indices);
    // Error = sum over support of (C - d)^2 plus the energy outside it. The
    // triple display carries only part of C on a few indices, so d != C there.
    for (std::size_t t = 0; t < engine.values.size(); ++t) {
        const double c = engine.values[t];
        const double miss = c - support.coefficients[t];
        error += -c * c;
        error += miss * miss;
    }
    // Tail variables carry the whole single-slot family above 2q. Its total
    // energy is exact from the Legendre side: the family function is a
    // polynomial and phi_0 is common to both bases.
    const auto degree = static_cast<std::size_t>(kernel.total_degree()) + k;
    for (std::size_t slot : support.tail_slots) {
        std::vector<MultiIndex> legendre_family;
        for (std::size_t j = 0; j <= degree; ++j) {
            MultiIndex mi(k, 0);
            mi[slot] = j;
            legendre_family.push_back(mi);
        }
        std::vector<MultiIndex> trig_family;
        for (std::size_t j = 0; j <= 2 * q; ++j) {
            MultiIndex mi(k, 0);
            mi[slot] = j;
            trig_family.push_back(mi);
        }
        CompensatedSum tail;
        for (double c : fourier_coefficients(BasisKind::legendre, kernel, legendre_family).values) {
            tail += c * c;
        }
        for (double c : fourier_coefficients(BasisKind::trigonometric, kernel, trig_family).values) {
            tail += -c * c;
        }
        error += -tail.value();
    }
    return error.value();
}

double trace_identity_partial(BasisKind basis, TraceKernel which, const Interval& iv,
                              std::size_t jmax) {
    const WeightedKernel kernel(which == TraceKernel::c10 ? std::vector<int>{1, 0}
                                                          : std::vector<int>{0, 1},
                                iv);
    std::vector<MultiIndex> diagonal;
    for (std::size_t j = 0; j <= jmax; ++j) {
        diagonal.push_back({j, j});
    }
    CompensatedSum acc;
    for (double c : fourier_coefficients(basis, kernel, diagonal).values) {
        acc += c;
    }
    return acc.value();
}

}  // namespace itexp
