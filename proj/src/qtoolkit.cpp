#include "qseries/qtoolkit.hpp"

#include <stdexcept>

namespace qs {

namespace {

SparsePoly q_power(const Registry& reg, int e)
{
    return SparsePoly::monomial(reg, Exponents::unit(0, e));
}

struct MonomialArg {
    ExactScalar coeff;
    Exponents exp;
};

MonomialArg require_monomial(const SparsePoly& x, const char* what)
{
    if (!x.is_monomial()) throw SeriesError(std::string(what) + ": argument must be a monomial");
    const auto& t = x.terms().front();
    for (std::size_t v = 0; v < x.registry()->size(); ++v)
        if (t.exp[v] < 0) throw SeriesError(std::string(what) + ": argument needs non-negative exponents");
    return {t.coeff, t.exp};
}

/// Number of leading factors (1 - x q^{base j}) that can touch the profile.
int infinite_length(const MonomialArg& x, const TruncationProfile& profile, int base)
{
    const std::size_t n = profile.reg->size();
    for (std::size_t v = 1; v < n; ++v)
        if (x.exp[v] > profile.cap[v]) return 0;
    const int room = profile.cap[0] - x.exp[0];
    return room < 0 ? 0 : room / base + 1;
}

TruncatedSeries mark_infinite_tail(TruncatedSeries s, const MonomialArg& x, const TruncationProfile& profile)
{
    s = s.mark_truncated(0);
    for (std::size_t v = 1; v < profile.reg->size(); ++v)
        if (x.exp[v] > profile.cap[v]) s = s.mark_truncated(v);
    return s;
}

}  // namespace

// ---------------------------------------------------------------- Pochhammer symbols

SparsePoly poch_poly(const SparsePoly& x, int n, int base)
{
    if (n < 0) throw std::invalid_argument("poch_poly: negative length");
    const auto& reg = x.registry();
    SparsePoly r = SparsePoly::constant(reg, 1);
    const SparsePoly one = SparsePoly::constant(reg, 1);
    for (int j = 0; j < n; ++j) r *= one - x.times_monomial(Exponents::unit(0, base * j));
    return r;
}

namespace {

/// 1/(x; q^base)_n with one denominator factor per binomial, so common
/// denominators of sums stay small.
RationalFunction over_poch(const SparsePoly& x, int n, int base)
{
    const SparsePoly one = SparsePoly::constant(x.registry(), 1);
    RationalFunction r = RationalFunction::constant(x.registry(), 1);
    for (int j = 0; j < n; ++j) r *= RationalFunction(one, one - x.times_monomial(Exponents::unit(0, base * j)));
    return r;
}

}  // namespace

RationalFunction poch_rf(const SparsePoly& x, int n, int base)
{
    if (n >= 0) return RationalFunction(poch_poly(x, n, base));
    return over_poch(x.times_monomial(Exponents::unit(0, base * n)), -n, base);
}

RationalFunction recip_poch_rf(const SparsePoly& x, int n, int base)
{
    if (n < 0) return RationalFunction(poch_poly(x.times_monomial(Exponents::unit(0, base * n)), -n, base));
    return over_poch(x, n, base);
}

TruncatedSeries poch_finite(const SparsePoly& x, int n, const TruncationProfile& profile, int base)
{
    if (n < 0) throw std::invalid_argument("poch_finite: negative length");
    TruncatedSeries s = TruncatedSeries::constant(profile, 1);
    if (x.is_monomial()) {
        const auto& t = x.terms().front();
        for (int j = 0; j < n; ++j) s = s.mul_binomial(-t.coeff, t.exp + Exponents::unit(0, base * j));
        return s;
    }
    const SparsePoly one = SparsePoly::constant(profile.reg, 1);
    for (int j = 0; j < n; ++j)
        s = s * TruncatedSeries::from_poly(one - x.times_monomial(Exponents::unit(0, base * j)), profile);
    return s;
}

TruncatedSeries poch_infinite(const SparsePoly& x, const TruncationProfile& profile, int base)
{
    if (x.is_zero()) return TruncatedSeries::constant(profile, 1);
    return mul_poch_infinite(TruncatedSeries::constant(profile, 1), x, base);
}

TruncatedSeries mul_poch_infinite(const TruncatedSeries& s, const SparsePoly& x, int base)
{
    if (x.is_zero()) return s;
    const MonomialArg m = require_monomial(x, "infinite product");
    if (m.exp.is_zero() && m.coeff == 1) throw SeriesError("infinite product (1;q)_inf vanishes");
    TruncatedSeries r = s;
    const int len = infinite_length(m, s.profile(), base);
    for (int j = 0; j < len; ++j) r = r.mul_binomial(-m.coeff, m.exp + Exponents::unit(0, base * j));
    return mark_infinite_tail(std::move(r), m, s.profile());
}

TruncatedSeries div_poch(const TruncatedSeries& s, const SparsePoly& x, int n, int base)
{
    if (n < 0) throw std::invalid_argument("div_poch: negative length");
    if (x.is_zero()) return s;
    const MonomialArg m = require_monomial(x, "Pochhammer division");
    TruncatedSeries r = s;
    for (int j = 0; j < n; ++j) r = r.div_binomial(-m.coeff, m.exp + Exponents::unit(0, base * j));
    return r;
}

TruncatedSeries div_poch_infinite(const TruncatedSeries& s, const SparsePoly& x, int base)
{
    if (x.is_zero()) return s;
    const MonomialArg m = require_monomial(x, "infinite product");
    if (m.exp.is_zero() && m.coeff == 1) throw SeriesError("division by (1;q)_inf");
    TruncatedSeries r = s;
    const int len = infinite_length(m, s.profile(), base);
    for (int j = 0; j < len; ++j) r = r.div_binomial(-m.coeff, m.exp + Exponents::unit(0, base * j));
    return mark_infinite_tail(std::move(r), m, s.profile());
}

// ---------------------------------------------------------------- q-binomials and friends

std::vector<SparsePoly> q_binomial_row(const Registry& reg, int n, int base)
{
    if (n < 0) return {};
    std::vector<SparsePoly> row{SparsePoly::constant(reg, 1)};
    for (int m = 1; m <= n; ++m) {
        // [m k] = [m-1 k-1] + q^{base k} [m-1 k]
        std::vector<SparsePoly> next(static_cast<std::size_t>(m) + 1, SparsePoly(reg));
        next[0] = SparsePoly::constant(reg, 1);
        next[static_cast<std::size_t>(m)] = SparsePoly::constant(reg, 1);
        for (int k = 1; k < m; ++k)
            next[static_cast<std::size_t>(k)] =
                row[static_cast<std::size_t>(k - 1)] +
                row[static_cast<std::size_t>(k)].times_monomial(Exponents::unit(0, base * k));
        row = std::move(next);
    }
    return row;
}

SparsePoly q_binomial(const Registry& reg, int n, int k, int base)
{
    if (k < 0 || k > n) return SparsePoly(reg);
    return q_binomial_row(reg, n, base)[static_cast<std::size_t>(k)];
}

SparsePoly tau_factor(const Registry& reg, int r, int n)
{
    const long e = static_cast<long>(r) * n * (n - 1) / 2;
    return SparsePoly::monomial(reg, Exponents::unit(0, static_cast<int>(e)), (n % 2 == 0) ? 1 : -1);
}

SparsePoly rogers_szego(int n, const SparsePoly& a, const SparsePoly& b, int base)
{
    require_same_registry(a.registry(), b.registry());
    const auto& reg = a.registry();
    const auto row = q_binomial_row(reg, n, base);
    SparsePoly r(reg);
    for (int k = 0; k <= n; ++k) r += row[static_cast<std::size_t>(k)] * a.pow(k) * b.pow(n - k);
    return r;
}

// ---------------------------------------------------------------- basic hypergeometric series

std::optional<int> terminating_index(const PhiSpec& spec)
{
    std::optional<int> best;
    for (const auto& u : spec.upper) {
        if (!u.is_monomial()) continue;
        const auto& t = u.terms().front();
        if (t.coeff != 1) continue;
        bool only_q = true;
        for (std::size_t v = 1; v < kMaxVars; ++v)
            if (t.exp[v] != 0) only_q = false;
        if (!only_q || t.exp[0] > 0) continue;
        const int m = -t.exp[0];
        if (!best || m < *best) best = m;
    }
    return best;
}

std::vector<RationalFunction> phi_terms(const PhiSpec& spec, std::optional<int> term_bound)
{
    const auto& reg = spec.argument.registry();
    std::optional<int> stop = terminating_index(spec);
    if (!stop) stop = term_bound;
    if (!stop) throw std::invalid_argument("non-terminating basic hypergeometric series needs a term bound");
    const int balance = static_cast<int>(spec.lower.size()) + 1 - static_cast<int>(spec.upper.size());
    const SparsePoly one = SparsePoly::constant(reg, 1);

    std::vector<RationalFunction> terms;
    RationalFunction t = RationalFunction::constant(reg, 1);
    terms.push_back(t);
    for (int n = 0; n < *stop; ++n) {
        const Exponents qn = Exponents::unit(0, n);
        SparsePoly num = spec.argument;
        for (const auto& u : spec.upper) num *= one - u.times_monomial(qn);
        // tau_1(n+1)/tau_1(n) = -q^n, raised to the balancing exponent
        num = num.times_monomial(Exponents::unit(0, n * balance), (balance % 2 == 0) ? 1 : -1);
        t *= RationalFunction(num, one - q_power(reg, n + 1));
        for (const auto& l : spec.lower) t *= RationalFunction(one, one - l.times_monomial(qn));
        terms.push_back(t);
    }
    return terms;
}

RationalFunction phi_sum(const PhiSpec& spec, std::optional<int> term_bound)
{
    RationalFunction s(spec.argument.registry());
    for (const auto& t : phi_terms(spec, term_bound)) s += t;
    return s;
}

TruncatedSeries phi_series(const PhiSpec& spec, const TruncationProfile& profile, std::optional<int> term_bound)
{
    TruncatedSeries s = TruncatedSeries::zero(profile);
    for (const auto& t : phi_terms(spec, term_bound)) s = s + t.to_series(profile);
    return s;
}

// ---------------------------------------------------------------- theta sums

TruncatedSeries partial_theta(ThetaKind kind, const TruncationProfile& profile, const SparsePoly& a,
                              const SparsePoly& b)
{
    const auto& reg = profile.reg;
    const int cap = profile.cap[0];
    SparsePoly sum = SparsePoly::constant(reg, 1);
    switch (kind) {
    case ThetaKind::APowerQTwoNSquared:
        for (int n = 1; 2 * n * n <= cap; ++n)
            sum += a.pow(n).times_monomial(Exponents::unit(0, 2 * n * n), 2);
        break;
    case ThetaKind::PentagonalPair:
        for (int n = 1; n * (n - 1) / 2 <= cap; ++n)
            sum += (a.pow(n) + b.pow(n)).times_monomial(Exponents::unit(0, n * (n - 1) / 2), (n % 2) ? -1 : 1);
        break;
    }
    return TruncatedSeries::from_poly(sum, profile).mark_truncated(0);
}

TruncatedSeries jacobi_triple_series(const TruncationProfile& profile, int scale)
{
    const auto& reg = profile.reg;
    SparsePoly sum = SparsePoly::constant(reg, 1);
    for (int k = 1; scale * k * k <= profile.cap[0]; ++k)
        sum += SparsePoly::monomial(reg, Exponents::unit(0, scale * k * k), (k % 2) ? -2 : 2);
    return TruncatedSeries::from_poly(sum, profile).mark_truncated(0);
}

std::pair<RationalFunction, RationalFunction> neg_shift_pochhammer(const Registry& reg, int n, int k)
{
    if (k < 0 || k > n) throw std::invalid_argument("neg_shift_pochhammer: need 0 <= k <= n");
    const SparsePoly minus_q = SparsePoly::monomial(reg, Exponents::unit(0), -1);
    RationalFunction lhs = poch_rf(SparsePoly::monomial(reg, Exponents::unit(0, -n), -1), k);
    RationalFunction rhs = poch_rf(minus_q, n) / poch_rf(minus_q, n - k);
    rhs *= RationalFunction(SparsePoly::monomial(reg, Exponents::unit(0, -n * k), (k % 2) ? -1 : 1) *
                            tau_factor(reg, 1, k));
    return {lhs, rhs};
}

}  // namespace qs
