#include "qseries/catalog_builders.hpp"

#include <algorithm>
#include <stdexcept>

#include "qseries/qtoolkit.hpp"

namespace qs::builders {

namespace {

struct Mono {
    ExactScalar coeff;
    Exponents exp;
};

Mono mono(const SparsePoly& x)
{
    if (x.is_zero()) return {0, Exponents{}};
    if (!x.is_monomial()) throw std::invalid_argument("identity parameters must be monomials");
    return {x.terms().front().coeff, x.terms().front().exp};
}

Exponents qe(int e) { return Exponents::unit(0, e); }

SparsePoly qp(const Registry& reg, int e, const ExactScalar& c = 1) { return SparsePoly::monomial(reg, qe(e), c); }

/// s * (1 + sign x q^j)
TruncatedSeries mul_factor(const TruncatedSeries& s, const SparsePoly& x, int j, int sign = -1)
{
    const Mono m = mono(x);
    if (m.coeff == 0) return s;
    return s.mul_binomial(sign * m.coeff, m.exp + qe(j));
}

/// s / (1 + sign x q^j)
TruncatedSeries div_factor(const TruncatedSeries& s, const SparsePoly& x, int j, int sign = -1)
{
    const Mono m = mono(x);
    if (m.coeff == 0) return s;
    return s.div_binomial(sign * m.coeff, m.exp + qe(j));
}

TruncatedSeries times(const TruncatedSeries& s, const SparsePoly& x)
{
    if (x.is_monomial()) return s.times_monomial(x.terms().front().exp, x.terms().front().coeff);
    return s * TruncatedSeries::from_poly(x, s.profile());
}

/// Largest n with f(n) <= cap, scaled.
template <class F>
int q_bound(const TruncationProfile& p, int scale, F f)
{
    int n = 0;
    while (f(n + 1) <= p.cap[0]) ++n;
    return n * scale + (scale - 1);
}

TruncatedSeries mark_vars_of(TruncatedSeries s, std::initializer_list<const SparsePoly*> xs)
{
    for (const SparsePoly* x : xs) {
        if (x->is_zero()) continue;
        const Exponents e = mono(*x).exp;
        for (std::size_t v = 1; v < s.registry()->size(); ++v)
            if (e[v] != 0) s = s.mark_truncated(v);
    }
    return s;
}

/// prod over xs of (x; q^base)_inf, with `sign` -1 for (x;q) and +1 for (-x;q).
TruncatedSeries products(TruncatedSeries s, std::initializer_list<std::pair<SparsePoly, int>> xs, bool divide)
{
    for (const auto& [x, base] : xs)
        s = divide ? div_poch_infinite(s, x, base) : mul_poch_infinite(s, x, base);
    return s;
}

/// Profile with `extra` more room in q.
TruncationProfile widen(TruncationProfile p, int extra)
{
    p.cap[0] += extra;
    return p;
}

/// sum_n term_n with term_0 = start and term_n = step(term_{n-1}, n), n <= count.
template <class Step>
TruncatedSeries incremental_sum(TruncatedSeries term, int count, Step step)
{
    TruncatedSeries sum = term;
    for (int n = 1; n <= count; ++n) {
        term = step(term, n);
        sum = sum + term;
    }
    return sum;
}

/// sum_{n<=count} poly_n * D_n, D_0 = 1, D_n = D_{n-1} / den(n).
template <class Poly, class Den>
TruncatedSeries weighted_sum(const TruncationProfile& p, int count, Poly poly, Den den)
{
    TruncatedSeries d = TruncatedSeries::constant(p, 1);
    TruncatedSeries sum = TruncatedSeries::zero(p);
    for (int n = 0; n <= count; ++n) {
        if (n > 0) d = den(d, n);
        sum = sum + d * TruncatedSeries::from_poly(poly(n), p);
    }
    return sum;
}

/// (a,b;q)_n q^{n(n+1)/2} c^n / ((q;q)_n (x;q^2)_n), n <= count.
TruncatedSeries andrews_type_lhs(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b,
                                 const SparsePoly& c, const SparsePoly& x, int count, int q_shift = 1)
{
    return incremental_sum(TruncatedSeries::constant(p, 1), count, [&](TruncatedSeries t, int n) {
        t = mul_factor(mul_factor(t, a, n - 1), b, n - 1);
        t = times(t, c).times_monomial(qe(n - 1 + q_shift));
        return div_factor(div_factor(t, qp(p.reg, n), 0), x, 2 * (n - 1));
    });
}

}  // namespace

TruncatedSeries expand(const RationalFunction& f, const TruncationProfile& p)
{
    if (f.is_zero()) return TruncatedSeries::zero(p);
    const int low = f.numerator().min_exponents()[0];
    if (low >= 0) return f.to_series(p);
    return f.to_series(widen(p, -low)).truncate(p);
}

int degree_bound(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b)
{
    int room = 0;
    int least = -1;
    std::array<bool, kMaxVars> used{};
    for (const SparsePoly* x : {&a, &b}) {
        const Exponents e = mono(*x).exp;
        int deg = 0;
        for (std::size_t v = 1; v < p.reg->size(); ++v) {
            if (e[v] < 0) throw std::invalid_argument("degree_bound: negative parameter exponent");
            deg += e[v];
            if (e[v] > 0) used[v] = true;
        }
        if (deg == 0) throw std::invalid_argument("sum needs formal parameters to converge");
        least = least < 0 ? deg : std::min(least, deg);
    }
    for (std::size_t v = 1; v < p.reg->size(); ++v)
        if (used[v]) room += p.cap[v];
    return room / least;
}

SeriesSides andrews(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale)
{
    const Registry& reg = p.reg;
    const int count = q_bound(p, scale, [](int n) { return n * (n + 1) / 2; });
    TruncatedSeries lhs = andrews_type_lhs(p, a, b, SparsePoly::constant(reg, 1), a * b * qp(reg, 1), count)
                              .mark_truncated(0);
    TruncatedSeries rhs = products(TruncatedSeries::constant(p, 1),
                                   {{qp(reg, 1, -1), 1}, {a * qp(reg, 1), 2}, {b * qp(reg, 1), 2}}, false);
    rhs = div_poch_infinite(rhs, a * b * qp(reg, 1), 2);
    return {lhs, rhs};
}

TruncatedSeries gen1_rhs_sum(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b,
                             const SparsePoly& c, int scale)
{
    const int count = degree_bound(p, a, b) * scale + (scale - 1);
    TruncatedSeries s = weighted_sum(
        p, count, [&](int n) { return rogers_szego(n, a, b, 2); },
        [&](const TruncatedSeries& d, int n) {
            return div_factor(div_factor(d, qp(p.reg, n), 0), c, n, +1);
        });
    return mark_vars_of(s, {&a, &b});
}

SeriesSides gen1(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, const SparsePoly& c,
                 int scale)
{
    const Registry& reg = p.reg;
    const int count = q_bound(p, scale, [](int n) { return n * (n + 1) / 2; });
    TruncatedSeries lhs = andrews_type_lhs(p, a, b, c, a * b * qp(reg, 1), count).mark_truncated(0);
    TruncatedSeries rhs = gen1_rhs_sum(p, a, b, c, scale);
    if (!c.is_zero()) rhs = mul_poch_infinite(rhs, -(c * qp(reg, 1)), 1);
    rhs = products(rhs, {{a, 1}, {b, 1}}, false);
    rhs = div_poch_infinite(rhs, a * b * qp(reg, 1), 2);
    return {lhs, rhs};
}

TruncatedSeries gen2_rhs_sum(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b,
                             const SparsePoly& c, int scale)
{
    const Registry& reg = p.reg;
    const int count = degree_bound(p, a, b) * scale + (scale - 1);
    const SparsePoly q = qp(reg, 1);
    TruncatedSeries sum = TruncatedSeries::zero(p);
    TruncatedSeries d = TruncatedSeries::constant(p, 1);
    for (int n = 0; n <= count; ++n) {
        if (n > 0) d = div_factor(div_factor(d, qp(reg, n), 0), c, n, +1);
        const SparsePoly h = rogers_szego(n, a, b * q, 2) + rogers_szego(n, a * q, b, 2);
        TruncatedSeries t = d * TruncatedSeries::from_poly(h, p);
        sum = sum + (n == 0 ? t.scaled(make_scalar(1, 2)) : t.div_binomial(1, qe(n)));
    }
    return mark_vars_of(sum, {&a, &b});
}

SeriesSides gen2(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, const SparsePoly& c,
                 int scale)
{
    const Registry& reg = p.reg;
    const int count = q_bound(p, scale, [](int n) { return n * (n + 1) / 2; });
    TruncatedSeries lhs = andrews_type_lhs(p, a, b, c, a * b, count).mark_truncated(0);
    TruncatedSeries rhs = gen2_rhs_sum(p, a, b, c, scale);
    if (!c.is_zero()) rhs = mul_poch_infinite(rhs, -(c * qp(reg, 1)), 1);
    rhs = products(rhs, {{a, 1}, {b, 1}}, false);
    rhs = div_poch_infinite(rhs, a * b, 2);
    return {lhs, rhs};
}

namespace {

/// (a,b;q)_n q^{n(n+1)/2} c^n / ((q, alpha beta; q)_n (-alpha beta; q)_{n+1}).
TruncatedSeries gen3_lhs(const TruncationProfile& p, const SparsePoly& alpha, const SparsePoly& beta,
                         const SparsePoly& c, int scale)
{
    const Registry& reg = p.reg;
    const SparsePoly a = alpha * alpha, b = beta * beta, ab = alpha * beta;
    const int count = q_bound(p, scale, [](int n) { return n * (n + 1) / 2; });
    TruncatedSeries start = div_factor(TruncatedSeries::constant(p, 1), ab, 0, +1);
    return incremental_sum(start, count, [&](TruncatedSeries t, int n) {
               t = mul_factor(mul_factor(t, a, n - 1), b, n - 1);
               t = times(t, c).times_monomial(qe(n));
               t = div_factor(div_factor(t, qp(reg, n), 0), ab, n - 1);
               return div_factor(t, ab, n, +1);
           })
        .mark_truncated(0);
}

}  // namespace

SeriesSides gen3(const TruncationProfile& p, const SparsePoly& alpha, const SparsePoly& beta, const SparsePoly& c,
                 int scale)
{
    const Registry& reg = p.reg;
    const SparsePoly a = alpha * alpha, b = beta * beta, q = qp(reg, 1);
    TruncatedSeries lhs = gen3_lhs(p, alpha, beta, c, scale);

    const int count = degree_bound(p, a, b) * scale + (scale - 1);
    const SparsePoly apb = alpha + beta;
    TruncatedSeries sum = weighted_sum(
        p, count,
        [&](int n) {
            const SparsePoly num = alpha * rogers_szego(n, a, b * q, 2) + beta * rogers_szego(n, a * q, b, 2);
            auto quotient = num.divide_exact(apb);
            if (!quotient) throw std::logic_error("GEN-III numerator not divisible by alpha + beta");
            return *quotient;
        },
        [&](const TruncatedSeries& d, int n) { return div_factor(div_factor(d, qp(reg, n), 0), c, n, +1); });
    TruncatedSeries rhs = mark_vars_of(sum, {&alpha, &beta});
    if (!c.is_zero()) rhs = mul_poch_infinite(rhs, -(c * q), 1);
    rhs = products(rhs, {{a, 1}, {b, 1}}, false);
    rhs = div_poch_infinite(rhs, a * b, 2);
    return {lhs, rhs};
}

SeriesSides gen3_split(const TruncationProfile& p, const SparsePoly& alpha, const SparsePoly& beta,
                       const SparsePoly& c, int scale)
{
    const Registry& reg = p.reg;
    const SparsePoly one = SparsePoly::constant(reg, 1);
    const SparsePoly a = alpha * alpha, b = beta * beta, q = qp(reg, 1);
    TruncatedSeries lhs = gen3_lhs(p, alpha, beta, c, scale) *
                          TruncatedSeries::from_poly((alpha + beta) * (one - a * b), p);
    const TruncatedSeries l1 = gen1(p, a, b * q, c, scale).second;
    const TruncatedSeries l2 = gen1(p, a * q, b, c, scale).second;
    TruncatedSeries rhs = l1 * TruncatedSeries::from_poly(alpha * (one - b), p) +
                          l2 * TruncatedSeries::from_poly(beta * (one - a), p);
    return {lhs, rhs};
}

TruncatedSeries master_rhs_sum(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b,
                               const SparsePoly& c, const ShiftParam& s, int scale)
{
    const Registry& reg = p.reg;
    const int count = degree_bound(p, a, b) * scale + (scale - 1);
    const SparsePoly shift = std::holds_alternative<int>(s) ? qp(reg, std::get<int>(s)) : std::get<SparsePoly>(s);
    const Mono shift_mono = mono(shift);
    if (shift_mono.coeff != 1) throw std::invalid_argument("shift must be a monic monomial");
    const SparsePoly q = qp(reg, 1);

    // 1/(q;q)_{n-2k} T_{n-k,k}(s) with the pole of T cancelled against 1/(q;q)_{n-2k}:
    //   sum_j (q^{-2k};q^2)_j q^{(2-s)j} / ((q;q)_j (q;q)_{n-2k+j}).
    const auto t_part = [&](int n, int k) {
        RationalFunction total(reg);
        for (int j = 0; j <= k; ++j) {
            Exponents e = qe(2 * j);
            for (std::size_t v = 0; v < reg->size(); ++v) e[v] -= j * shift_mono.exp[v];
            RationalFunction t(poch_poly(qp(reg, -2 * k), j, 2) *
                               SparsePoly::monomial(reg, e));
            total += t * recip_poch_rf(q, j) * recip_poch_rf(q, n - 2 * k + j);
        }
        return total;
    };

    TruncatedSeries sum = TruncatedSeries::zero(p);
    TruncatedSeries d = TruncatedSeries::constant(p, 1);
    for (int n = 0; n <= count; ++n) {
        if (n > 0) d = div_factor(d, c, n, +1);
        RationalFunction inner(reg);
        for (int k = 0; k <= n; ++k) {
            RationalFunction t(tau_factor(reg, 2, k) * (b * shift).pow(k) * a.pow(n - k));
            inner += t * recip_poch_rf(qp(reg, 2), k, 2) * t_part(n, k);
        }
        sum = sum + d * expand(inner, p);
    }
    return mark_vars_of(sum, {&a, &b});
}

SeriesSides master(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, const SparsePoly& c,
                   const ShiftParam& s, int scale)
{
    const Registry& reg = p.reg;
    const SparsePoly shift = std::holds_alternative<int>(s) ? qp(reg, std::get<int>(s)) : std::get<SparsePoly>(s);
    const SparsePoly x = a * b * shift;
    const int count = q_bound(p, scale, [](int n) { return n * (n + 1) / 2; });
    TruncatedSeries lhs = andrews_type_lhs(p, a, b, c, x, count).mark_truncated(0);
    TruncatedSeries rhs = master_rhs_sum(p, a, b, c, s, scale);
    if (!c.is_zero()) rhs = mul_poch_infinite(rhs, -(c * qp(reg, 1)), 1);
    rhs = products(rhs, {{a, 1}, {b, 1}}, false);
    rhs = div_poch_infinite(rhs, x, 2);
    return {lhs, rhs};
}

SeriesSides rs_gf(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale)
{
    const Registry& reg = p.reg;
    const int count = degree_bound(p, a, b) * scale + (scale - 1);
    TruncatedSeries lhs = weighted_sum(
        p, count, [&](int n) { return rogers_szego(n, a, b, 2); },
        [&](const TruncatedSeries& d, int n) { return div_factor(d, qp(reg, n), 0); });
    lhs = mark_vars_of(lhs, {&a, &b});
    TruncatedSeries rhs = poch_infinite(a * b * qp(reg, 1), p, 2);
    rhs = products(rhs, {{a, 1}, {b, 1}}, true);
    return {lhs, rhs};
}

SeriesSides c_qinv(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale)
{
    const Registry& reg = p.reg;
    const SparsePoly q = qp(reg, 1);
    const int count = q_bound(p, scale, [](int n) { return n * (n - 1) / 2; });
    TruncatedSeries lhs = andrews_type_lhs(p, a, b, SparsePoly::constant(reg, 1), a * b * q, count, 0)
                              .mark_truncated(0);
    const TruncatedSeries one = TruncatedSeries::constant(p, 1);
    TruncatedSeries rhs = products(one, {{a, 2}, {b, 2}}, false) + products(one, {{a * q, 2}, {b * q, 2}}, false);
    rhs = products(rhs, {{q, 2}, {a * b * q, 2}}, true);
    return {lhs, rhs};
}

SeriesSides s_eval(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale)
{
    const Registry& reg = p.reg;
    const int count = degree_bound(p, a, b) * scale + (scale - 1);
    TruncatedSeries lhs = weighted_sum(
        p, count,
        [&](int n) {
            // b^n sum_k [n k]_{q^2} (a/b)^k, summed term by term
            const auto row = q_binomial_row(reg, n, 2);
            SparsePoly s(reg);
            for (int k = 0; k <= n; ++k) s += row[static_cast<std::size_t>(k)] * a.pow(k) * b.pow(n - k);
            return s;
        },
        [&](const TruncatedSeries& d, int n) { return div_factor(d, qp(reg, 2 * n), 0); });
    lhs = mark_vars_of(lhs, {&a, &b});
    TruncatedSeries rhs = products(TruncatedSeries::constant(p, 1), {{a, 2}, {b, 2}}, true);
    return {lhs, rhs};
}

SeriesSides euler_odd(const TruncationProfile& p)
{
    const Registry& reg = p.reg;
    return {poch_infinite(qp(reg, 1, -1), p), div_poch_infinite(TruncatedSeries::constant(p, 1), qp(reg, 1), 2)};
}

SeriesSides andrews_pp(const TruncationProfile& p, const SparsePoly& alpha, const SparsePoly& beta, int scale)
{
    const Registry& reg = p.reg;
    const SparsePoly a = alpha * alpha, b = beta * beta, q = qp(reg, 1);
    TruncatedSeries lhs =
        gen3_lhs(p, alpha, beta, SparsePoly::constant(reg, 1), scale) * TruncatedSeries::from_poly(alpha + beta, p);
    const TruncatedSeries one = TruncatedSeries::constant(p, 1);
    TruncatedSeries rhs = times(products(one, {{a * q, 2}, {b, 2}}, false), alpha) +
                          times(products(one, {{a, 2}, {b * q, 2}}, false), beta);
    rhs = products(rhs, {{q, 2}, {a * b, 2}}, true);
    return {lhs, rhs};
}

SeriesSides aw_theta(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale)
{
    const Registry& reg = p.reg;
    TruncatedSeries lhs = partial_theta(ThetaKind::PentagonalPair, p, a, b);

    // (ab/q;q)_{2n} carries q^{-1}; one extra q order keeps the window exact.
    const TruncationProfile w = widen(p, 1);
    const SparsePoly ab = a * b;
    const int count = w.cap[0] * scale + scale;  // term n starts at q^{n-1}
    TruncatedSeries sum = incremental_sum(TruncatedSeries::constant(w, 1), count, [&](TruncatedSeries t, int n) {
        t = mul_factor(mul_factor(t, ab, 2 * n - 3), ab, 2 * n - 2).times_monomial(qe(1));
        t = div_factor(t, qp(reg, n), 0);
        t = div_factor(div_factor(t, a, n - 1), b, n - 1);
        return div_factor(t, ab, n - 1);
    });
    TruncatedSeries rhs = products(sum.mark_truncated(0), {{qp(reg, 1), 1}, {a, 1}, {b, 1}}, false);
    return {lhs, rhs.truncate(p)};
}

SeriesSides war_theta(const TruncationProfile& p, const SparsePoly& a, int scale)
{
    const Registry& reg = p.reg;
    TruncatedSeries lhs = partial_theta(ThetaKind::APowerQTwoNSquared, p, a, SparsePoly(reg));
    const int count = p.cap[0] * scale + (scale - 1);  // term n starts at q^n
    TruncatedSeries sum = incremental_sum(TruncatedSeries::constant(p, 1), count, [&](TruncatedSeries t, int n) {
        t = mul_factor(mul_factor(t, a, 2 * n - 2, +1), a, 2 * n - 1, +1).times_monomial(qe(1));
        t = div_factor(t, qp(reg, n), 0);
        t = div_factor(t, a, n, +1);
        return div_factor(t, a, 2 * n - 1);
    });
    TruncatedSeries rhs = poch_infinite(qp(reg, 1), p);
    rhs = mul_poch_infinite(rhs, a * qp(reg, 1), 2) * sum.mark_truncated(0);
    return {lhs, rhs};
}

SeriesSides jacobi_triple(const TruncationProfile& p)
{
    const Registry& reg = p.reg;
    TruncatedSeries rhs = poch_infinite(qp(reg, 3), p, 6);
    rhs = products(rhs, {{qp(reg, 3), 6}, {qp(reg, 6), 6}}, false);
    return {jacobi_triple_series(p, 3), rhs};
}

}  // namespace qs::builders
