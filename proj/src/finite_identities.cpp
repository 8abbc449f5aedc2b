#include "qseries/finite_identities.hpp"

#include <stdexcept>
#include <string>

#include "qseries/qtoolkit.hpp"

namespace qs {

namespace {

SparsePoly qy(const Registry& reg, int qe, int ye = 0, const ExactScalar& c = 1)
{
    Exponents e = Exponents::unit(0, qe);
    if (ye != 0) e = e + Exponents::unit(reg->index("y"), ye);
    return SparsePoly::monomial(reg, e, c);
}

std::string rn_label(int r, int n) { return "r=" + std::to_string(r) + ",n=" + std::to_string(n); }

}  // namespace

RationalFunction t_sum(const Registry& reg, const TSumSpec& spec)
{
    if (spec.n < 0) throw std::invalid_argument("t_sum: negative n");
    const int n = spec.n;
    RationalFunction sum(reg);
    for (int k = 0; k <= n; ++k) {
        RationalFunction t = poch_rf(qy(reg, -2 * n), k, 2);
        t *= recip_poch_rf(qy(reg, 1), k) * recip_poch_rf(qy(reg, 1 + spec.r - n), k);
        t *= spec.s ? RationalFunction(qy(reg, (2 - *spec.s) * k)) : RationalFunction(qy(reg, 2 * k, -k));
        sum += t;
    }
    return sum.reduced();
}

RationalFunction t_closed_s1(const Registry& reg, int r, int n)
{
    RationalFunction v = poch_rf(qy(reg, 1 + r, 0, -1), n) * recip_poch_rf(qy(reg, 1 + r - n), n);
    return v * RationalFunction(qy(reg, -n * n, 0, (n % 2) ? -1 : 1));
}

RationalFunction t_closed_s0(const Registry& reg, int r, int n)
{
    RationalFunction v = poch_rf(qy(reg, 1 + r, 0, -1), n) * recip_poch_rf(qy(reg, 1 + r - n), n);
    v *= RationalFunction(qy(reg, n) + qy(reg, r), SparsePoly::constant(reg, 1) + qy(reg, r + n));
    return v * RationalFunction(qy(reg, -n * n + n, 0, (n % 2) ? -1 : 1));
}

std::array<SparsePoly, 3> t_recurrence_coefficients(const Registry& reg, int r, int n)
{
    const SparsePoly one = SparsePoly::constant(reg, 1);
    const SparsePoly yinv = qy(reg, 0, -1);
    const SparsePoly c0 = yinv * (one - qy(reg, 2 * n + 2)) * (yinv + qy(reg, r + n));
    const SparsePoly c1 = qy(reg, n) * (qy(reg, n) - qy(reg, r)) *
                          (qy(reg, r + n) - qy(reg, 2 * n + 1) + yinv + qy(reg, -1, -1));
    const SparsePoly c2 = qy(reg, 2 * n) * (qy(reg, n) - qy(reg, r)) * (qy(reg, n + 1) - qy(reg, r));
    return {c0, c1, c2};
}

VerificationOutcome verify_t_recurrence(int r, int n, std::optional<RecurrenceMutation> mutation)
{
    if (n < 0 || r < n + 2) throw std::invalid_argument("verify_t_recurrence: needs r >= n + 2, got " + rn_label(r, n));
    const Registry reg = make_registry({"q", "y"});
    auto c = t_recurrence_coefficients(reg, r, n);
    if (mutation) {
        SparsePoly& p = c.at(static_cast<std::size_t>(mutation->which));
        const auto terms = p.terms();
        const auto& t = terms[static_cast<std::size_t>(mutation->term) % terms.size()];
        p += SparsePoly::monomial(reg, t.exp, mutation->delta);
    }
    RationalFunction lhs(reg);
    for (int j = 0; j < 3; ++j)
        lhs += RationalFunction(c[static_cast<std::size_t>(j)]) * t_sum(reg, {r, n + j, std::nullopt});
    return with_label(rational_equal(lhs, RationalFunction(reg)), rn_label(r, n));
}

VerificationOutcome verify_chu_vandermonde_evals(int n_max, int r_lo, int r_hi)
{
    if (r_lo < 1) throw std::invalid_argument("verify_chu_vandermonde_evals: needs r >= n + 1");
    const Registry reg = make_registry({"q"});
    for (int n = 0; n <= n_max; ++n)
        for (int r = n + r_lo; r <= n + r_hi; ++r) {
            auto o = rational_equal(t_sum(reg, {r, n, 1}), t_closed_s1(reg, r, n));
            if (!o.passed()) return with_label(std::move(o), "s=1," + rn_label(r, n));
            o = rational_equal(t_sum(reg, {r, n, 0}), t_closed_s0(reg, r, n));
            if (!o.passed()) return with_label(std::move(o), "s=0," + rn_label(r, n));
        }
    return VerificationOutcome::pass();
}

std::pair<RationalFunction, RationalFunction> finite_q_sides(const Registry& reg, int m)
{
    const std::size_t ia = reg->index("a");
    const SparsePoly a = SparsePoly::variable(reg, "a");
    RationalFunction lhs(reg);
    for (int k = 0; k <= m; ++k) {
        RationalFunction t = poch_rf(qy(reg, -2 * m), k, 2) * recip_poch_rf(qy(reg, 1), k);
        // (-a)^M q^{M^2} (q/a)^k folded into one monomial
        t *= RationalFunction(SparsePoly::monomial(reg, Exponents::unit(0, m * m + k) + Exponents::unit(ia, m - k),
                                                   (m % 2) ? -1 : 1));
        lhs += t;
    }
    const auto row = q_binomial_row(reg, m);
    SparsePoly rhs(reg);
    for (int k = 0; k <= m; ++k)
        rhs += row[static_cast<std::size_t>(k)] * poch_poly(a, k) * qy(reg, k * (k + 1) / 2);
    return {lhs.reduced(), RationalFunction(rhs)};
}

VerificationOutcome verify_finite_q_identity(int m_max)
{
    const Registry reg = make_registry({"q", "a"});
    for (int m = 0; m <= m_max; ++m) {
        auto [l, r] = finite_q_sides(reg, m);
        auto o = rational_equal(l, r);
        if (!o.passed()) return with_label(std::move(o), "M=" + std::to_string(m));
    }
    return VerificationOutcome::pass();
}

}  // namespace qs
