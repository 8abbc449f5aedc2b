#include "qseries/bailey.hpp"

#include <stdexcept>

#include "qseries/qtoolkit.hpp"

namespace qs {

namespace {

SparsePoly qp(const Registry& reg, int e, const ExactScalar& c = 1)
{
    return SparsePoly::monomial(reg, Exponents::unit(0, e), c);
}

RationalFunction rf(const SparsePoly& p) { return RationalFunction(p); }

SparsePoly inv_monomial(const SparsePoly& m)
{
    if (!m.is_monomial()) throw std::invalid_argument("rho values must be monomials");
    const auto& t = m.terms().front();
    Exponents e;
    for (std::size_t v = 0; v < kMaxVars; ++v) e[v] = -t.exp[v];
    return SparsePoly::monomial(m.registry(), e, ExactScalar(1 / t.coeff));
}

RationalFunction qq(const Registry& reg, int n) { return recip_poch_rf(qp(reg, 1), n); }

/// (rho1, rho2; q)_k (x/(rho1 rho2))^k with the limit rule applied to infinite slots.
RationalFunction rho_weight(const SparsePoly& x, const RhoSpec& r1, const RhoSpec& r2, int k)
{
    const Registry& reg = x.registry();
    const SparsePoly binom = qp(reg, k * (k - 1) / 2);
    if (r1.is_infinite() && r2.is_infinite()) return rf(x.pow(k) * binom * binom);
    if (r1.is_infinite() || r2.is_infinite()) {
        const RhoSpec& fin = r1.is_infinite() ? r2 : r1;
        return poch_rf(fin.value(), k) * rf((-(x * inv_monomial(fin.value()))).pow(k) * binom);
    }
    return poch_rf(r1.value(), k) * poch_rf(r2.value(), k) *
           rf((x * inv_monomial(r1.value()) * inv_monomial(r2.value())).pow(k));
}

/// 1/(x/rho; q)_m, or 1 for an infinite slot.
RationalFunction rho_lower_recip(const SparsePoly& x, const RhoSpec& r, int m)
{
    if (r.is_infinite()) return RationalFunction::constant(x.registry(), 1);
    return recip_poch_rf(x * inv_monomial(r.value()), m);
}

/// (x/(rho1 rho2); q)_m, or 1 if either slot is infinite.
RationalFunction rho_pair(const SparsePoly& x, const RhoSpec& r1, const RhoSpec& r2, int m)
{
    if (r1.is_infinite() || r2.is_infinite()) return RationalFunction::constant(x.registry(), 1);
    return poch_rf(x * inv_monomial(r1.value()) * inv_monomial(r2.value()), m);
}

SparsePoly signed_q(const Registry& reg, int k, int e, int scale = 1)
{
    return qp(reg, e, ExactScalar((k % 2) ? -scale : scale));
}

}  // namespace

RhoSpec RhoSpec::finite(SparsePoly value)
{
    if (value.is_zero()) throw std::invalid_argument("rho must be non-zero");
    RhoSpec r;
    r.value_ = std::move(value);
    return r;
}

std::string RhoSpec::to_string() const { return is_infinite() ? "inf" : value_->to_string(); }

RationalFunction gamma_sum(const Registry& reg, int n)
{
    if (n < 0) throw std::invalid_argument("gamma_sum: negative n");
    const auto row = q_binomial_row(reg, n);
    RationalFunction s(reg);
    for (int k = 0; k <= n; ++k)
        s += rf(row[static_cast<std::size_t>(k)] * qp(reg, k * k)) * recip_poch_rf(qp(reg, 1, -1), k);
    return s;
}

BaileyPair pair_3666(const Registry& reg)
{
    return {"3666",
            [reg](int n) { return rf(signed_q(reg, n, n * n, 2)); },
            [reg](int n) { return recip_poch_rf(qp(reg, 2), n, 2) + qq(reg, n) * qq(reg, n); },
            SparsePoly::constant(reg, 1)};
}

BaileyPair pair_great(const Registry& reg)
{
    return {"gamma",
            [reg](int n) { return rf(signed_q(reg, n, 2 * n * n, 2)); },
            [reg](int n) { return qq(reg, n) * qq(reg, n) + gamma_sum(reg, n) * qq(reg, n); },
            SparsePoly::constant(reg, 1)};
}

Sequence beta_from_alpha(const Sequence& alpha, const SparsePoly& a)
{
    const Registry& reg = a.registry();
    const SparsePoly aq = a * qp(reg, 1);
    Sequence beta;
    for (int n = 0; n < static_cast<int>(alpha.size()); ++n) {
        RationalFunction s(reg);
        for (int k = 0; k <= n; ++k)
            s += alpha[static_cast<std::size_t>(k)] * qq(reg, n - k) * recip_poch_rf(aq, n + k);
        beta.push_back(s);
    }
    return beta;
}

VerificationOutcome verify_bailey_pair(const BaileyPair& pair, int n_max)
{
    Sequence alpha;
    for (int n = 0; n <= n_max; ++n) alpha.push_back(pair.alpha(n));
    const Sequence beta = beta_from_alpha(alpha, pair.a);
    for (int n = 0; n <= n_max; ++n) {
        auto o = rational_equal(beta[static_cast<std::size_t>(n)], pair.beta(n));
        if (!o.passed()) return with_label(std::move(o), "n=" + std::to_string(n));
    }
    return VerificationOutcome::pass();
}

std::pair<RationalFunction, RationalFunction> bailey_lemma_sides(const BaileyPair& pair, const RhoSpec& rho1,
                                                                 const RhoSpec& rho2, int n)
{
    const Registry& reg = pair.a.registry();
    const SparsePoly aq = pair.a * qp(reg, 1);
    RationalFunction lhs(reg), rhs(reg);
    for (int k = 0; k <= n; ++k) {
        const RationalFunction w = rho_weight(aq, rho1, rho2, k);
        lhs += w * rho_pair(aq, rho1, rho2, n - k) * qq(reg, n - k) * pair.beta(k);
        rhs += w * qq(reg, n - k) * recip_poch_rf(aq, n + k) * rho_lower_recip(aq, rho1, k) *
               rho_lower_recip(aq, rho2, k) * pair.alpha(k);
    }
    lhs *= rho_lower_recip(aq, rho1, n) * rho_lower_recip(aq, rho2, n);
    return {lhs, rhs};
}

BaileyPair bailey_chain_step(const BaileyPair& pair)
{
    const Registry reg = pair.a.registry();
    const SparsePoly a = pair.a;
    auto alpha = pair.alpha;
    auto beta = pair.beta;
    return {pair.name + " (rho -> inf)",
            [=](int n) { return rf(a.pow(n) * qp(reg, n * n)) * alpha(n); },
            [=](int n) {
                RationalFunction s(reg);
                for (int k = 0; k <= n; ++k) s += rf(a.pow(k) * qp(reg, k * k)) * qq(reg, n - k) * beta(k);
                return s;
            },
            a};
}

// ---------------------------------------------------------------- concrete consequences

std::pair<RationalFunction, RationalFunction> concrete_sides(const Registry& reg, ConcreteFamily family,
                                                             const RhoSpec& rho1, const RhoSpec& rho2, int n)
{
    const SparsePoly q = qp(reg, 1);
    const bool gamma = family == ConcreteFamily::Gamma;
    RationalFunction lhs(reg), rhs(reg);
    for (int k = 0; k <= n; ++k) {
        const RationalFunction w = rho_weight(q, rho1, rho2, k);
        RationalFunction b = gamma ? qq(reg, k) * (qq(reg, k) + gamma_sum(reg, k))
                                   : (rf(poch_poly(q, k)) + rf(poch_poly(-q, k))) *
                                         recip_poch_rf(qp(reg, 2), k, 2) * qq(reg, k);
        lhs += w * rho_pair(q, rho1, rho2, n - k) * qq(reg, n - k) * b;
        rhs += w * rf(signed_q(reg, k, gamma ? 2 * k * k : k * k, 2)) * qq(reg, n - k) * qq(reg, n + k) *
               rho_lower_recip(q, rho1, k) * rho_lower_recip(q, rho2, k);
    }
    lhs *= rho_lower_recip(q, rho1, n) * rho_lower_recip(q, rho2, n);
    return {lhs, rhs};
}

std::pair<RationalFunction, RationalFunction> concrete_i_sides(const Registry& reg, ConcreteFamily family,
                                                               const SparsePoly& a, int n)
{
    if (n < 1) throw std::invalid_argument("the rho1 = 1/a, rho2 = q form needs n >= 1");
    const SparsePoly one = SparsePoly::constant(reg, 1);
    const SparsePoly ainv = inv_monomial(a);
    const SparsePoly aq = a * qp(reg, 1);
    const bool gamma = family == ConcreteFamily::Gamma;
    RationalFunction lhs(reg), rhs(reg);
    for (int k = 0; k <= n; ++k) {
        const RationalFunction ak = poch_rf(ainv, k) * rf(a.pow(k));
        lhs += ak * poch_rf(a, n - k) * qq(reg, n - k) *
               (gamma ? gamma_sum(reg, k) : recip_poch_rf(qp(reg, 1, -1), k));
        rhs += ak * recip_poch_rf(aq, k) * rf((one - qp(reg, k)) * signed_q(reg, k, gamma ? 2 * k * k : k * k)) *
               qq(reg, n - k) * qq(reg, n + k);
    }
    rhs *= rf(poch_poly(qp(reg, 1), n - 1) * poch_poly(aq, n) * SparsePoly::constant(reg, 2));
    return {lhs, rhs};
}

std::pair<RationalFunction, RationalFunction> concrete_ii_sides(const Registry& reg, ConcreteFamily family, int n)
{
    const bool gamma = family == ConcreteFamily::Gamma;
    RationalFunction lhs(reg), rhs(reg);
    for (int k = 0; k <= n; ++k)
        lhs += rf(qp(reg, k * k)) * qq(reg, n - k) *
               (gamma ? gamma_sum(reg, k) * qq(reg, k) : recip_poch_rf(qp(reg, 2), k, 2));
    for (int k = -n; k <= n; ++k)
        rhs += rf(signed_q(reg, k < 0 ? -k : k, (gamma ? 3 : 2) * k * k)) * qq(reg, n - k) * qq(reg, n + k);
    return {lhs, rhs};
}

std::pair<TruncatedSeries, TruncatedSeries> concrete_i_limit_sides(const TruncationProfile& profile)
{
    const Registry& reg = profile.reg;
    const std::size_t ia = reg->index("a");
    const SparsePoly one = SparsePoly::constant(reg, 1);
    const SparsePoly a = SparsePoly::variable(reg, "a");
    const int qcap = profile.cap[0];
    // a^j in a^k (1/a;q)_k has q-degree >= C(k-j, 2), so k <= acap + K covers the window.
    int big_k = 0;
    while ((big_k + 1) * big_k / 2 <= qcap) ++big_k;
    const int k_max = profile.cap[ia] + big_k + 1;

    TruncatedSeries lhs = TruncatedSeries::zero(profile), rhs = TruncatedSeries::zero(profile);
    SparsePoly ak = one;  // a^k (1/a;q)_k = prod_{j<k} (a - q^j)
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) ak *= a - qp(reg, k - 1);
        lhs = lhs + (rf(ak * (one - a)) * gamma_sum(reg, k)).to_series(profile);
        if (2 * k * k <= qcap)
            rhs = rhs + (rf(ak * (one - qp(reg, k)) * signed_q(reg, k, 2 * k * k, 2)) *
                         recip_poch_rf(a * qp(reg, 1), k))
                            .to_series(profile);
    }
    lhs = lhs.mark_truncated(0).mark_truncated(ia);
    rhs = rhs.mark_truncated(0).mark_truncated(ia);
    return {lhs, rhs};
}

std::pair<TruncatedSeries, TruncatedSeries> gamma_theta_sides(const TruncationProfile& profile)
{
    const Registry& reg = profile.reg;
    TruncatedSeries lhs = TruncatedSeries::zero(profile);
    for (int k = 0; k * k <= profile.cap[0]; ++k)
        lhs = lhs + (rf(qp(reg, k * k)) * gamma_sum(reg, k) * qq(reg, k)).to_series(profile);
    lhs = lhs.mark_truncated(0);
    TruncatedSeries rhs = poch_infinite(qp(reg, 3), profile, 6);
    rhs = div_poch_infinite(rhs, qp(reg, 1), 3);
    rhs = div_poch_infinite(rhs, qp(reg, 2), 3);
    return {lhs, rhs};
}

std::pair<RationalFunction, RationalFunction> closing_sum_sides(const Registry& reg, int n)
{
    RationalFunction lhs(reg);
    for (int k = 0; k <= n; ++k) lhs += rf(qp(reg, k * k)) * qq(reg, k) * qq(reg, k) * qq(reg, n - k);
    return {lhs, qq(reg, n) * qq(reg, n)};
}

std::pair<RationalFunction, RationalFunction> success_sides(const Registry& reg, int n)
{
    if (n < 0) throw std::invalid_argument("success_sides: negative n");
    const Registry with_a = make_registry({"q", "a"});
    const SparsePoly one = SparsePoly::constant(reg, 1);
    RationalFunction s(reg);
    for (int k = 0; k <= n; ++k) {
        const RationalFunction lam =
            lambda_rational(with_a, k).substitute("a", SparsePoly::monomial(with_a, Exponents::unit(0), -1)).retarget(reg);
        s += poch_rf(qp(reg, -n), k) * poch_rf(qp(reg, n), k) * rf(qp(reg, k)) * lam;
    }
    s *= rf(qp(reg, n * (n - 1) / 2) * (one + qp(reg, n)));
    return {s.reduced(), rf(qp(reg, 2 * n * n, 2))};
}

VerificationOutcome verify_success_identity(int n_max)
{
    const Registry reg = make_registry({"q"});
    return verify_range(0, n_max, [&](int n) { return success_sides(reg, n); });
}

VerificationOutcome verify_range(int n_min, int n_max,
                                 const std::function<std::pair<RationalFunction, RationalFunction>(int)>& sides)
{
    for (int n = n_min; n <= n_max; ++n) {
        auto [l, r] = sides(n);
        auto o = rational_equal(l, r);
        if (!o.passed()) return with_label(std::move(o), "n=" + std::to_string(n));
    }
    return VerificationOutcome::pass();
}

std::vector<NamedOutcome> verify_proposition_suite(int q_cap)
{
    const Registry reg = make_registry({"q"});
    const Registry reg_a = make_registry({"q", "a"});
    const SparsePoly a = SparsePoly::variable(reg_a, "a");
    const auto third = RhoSpec::finite(SparsePoly::constant(reg, make_scalar(1, 3)));
    const auto two_fifths = RhoSpec::finite(SparsePoly::constant(reg, make_scalar(2, 5)));
    const auto inf = RhoSpec::infinite();

    std::vector<NamedOutcome> out;
    auto family = [&](const char* name, ConcreteFamily f, const RhoSpec& r1, const RhoSpec& r2) {
        out.push_back({name, verify_range(0, 8, [&](int n) { return concrete_sides(reg, f, r1, r2, n); })});
    };
    family("gamma family, rho = 1/3, 2/5", ConcreteFamily::Gamma, third, two_fifths);
    family("gamma family, rho = inf, inf", ConcreteFamily::Gamma, inf, inf);
    family("3666 family, rho = 1/3, 2/5", ConcreteFamily::Pair3666, third, two_fifths);
    family("3666 family, rho = inf, inf", ConcreteFamily::Pair3666, inf, inf);
    out.push_back({"gamma family (i)", verify_range(1, 8, [&](int n) {
                       return concrete_i_sides(reg_a, ConcreteFamily::Gamma, a, n);
                   })});
    out.push_back({"3666 family (i)", verify_range(1, 8, [&](int n) {
                       return concrete_i_sides(reg_a, ConcreteFamily::Pair3666, a, n);
                   })});
    {
        auto [l, r] = concrete_i_limit_sides(TruncationProfile(reg_a, {{"q", 24}, {"a", 6}}));
        out.push_back({"gamma family (i), n -> inf", series_equal(l, r)});
    }
    out.push_back({"gamma family (ii)", verify_range(0, 10, [&](int n) {
                       return concrete_ii_sides(reg, ConcreteFamily::Gamma, n);
                   })});
    out.push_back({"3666 family (ii)", verify_range(0, 10, [&](int n) {
                       return concrete_ii_sides(reg, ConcreteFamily::Pair3666, n);
                   })});
    {
        auto [l, r] = gamma_theta_sides(TruncationProfile(reg, {{"q", q_cap}}));
        out.push_back({"gamma theta series", series_equal(l, r)});
    }
    out.push_back({"closing sum", verify_range(0, 10, [&](int n) { return closing_sum_sides(reg, n); })});
    out.push_back({"success identity", verify_success_identity(10)});
    return out;
}

}  // namespace qs
