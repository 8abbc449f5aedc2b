#include "qseries/inversion.hpp"

#include <stdexcept>

#include "qseries/qtoolkit.hpp"

namespace qs {

namespace {

SparsePoly q_power(const Registry& reg, int e, const ExactScalar& c = 1)
{
    return SparsePoly::monomial(reg, Exponents::unit(0, e), c);
}

}  // namespace

RationalFunction TriangularKernel::at(int n, int k) const
{
    if (k > n || k < 0) return RationalFunction(reg);
    return entry(n, k);
}

std::pair<TriangularKernel, TriangularKernel> kernel_qsquare_binomial(const Registry& reg)
{
    TriangularKernel m{"q^2-binomial", [reg](int n, int k) { return RationalFunction(q_binomial(reg, n, k, 2)); },
                       reg};
    TriangularKernel inv{"signed q^2-binomial",
                         [reg](int n, int k) {
                             return RationalFunction(q_binomial(reg, n, k, 2) * tau_factor(reg, 2, n - k));
                         },
                         reg};
    return {std::move(m), std::move(inv)};
}

std::pair<TriangularKernel, TriangularKernel> kernel_carlitz(const SparsePoly& a)
{
    const Registry reg = a.registry();
    const SparsePoly one = SparsePoly::constant(reg, 1);
    if (a == one) throw PoleError("Carlitz inversion needs a != 1");
    const SparsePoly q = q_power(reg, 1);

    TriangularKernel m{"Carlitz",
                       [=](int n, int k) {
                           RationalFunction r = poch_rf(q_power(reg, -n), k) * poch_rf(a.times_monomial(Exponents::unit(0, n)), k);
                           r *= recip_poch_rf(q, k) * recip_poch_rf(a * q, k);
                           return r * RationalFunction(q_power(reg, k));
                       },
                       reg};
    TriangularKernel inv{"Carlitz inverse",
                         [=](int n, int k) {
                             RationalFunction r = poch_rf(a, k) * poch_rf(q_power(reg, -n), k);
                             r *= recip_poch_rf(q, k) * recip_poch_rf(a.times_monomial(Exponents::unit(0, n + 1)), k);
                             r *= RationalFunction(one - a.times_monomial(Exponents::unit(0, 2 * k)), one - a);
                             return r * RationalFunction(q_power(reg, k * n));
                         },
                         reg};
    return {std::move(m), std::move(inv)};
}

Sequence kernel_apply(const TriangularKernel& kernel, const Sequence& beta)
{
    Sequence alpha;
    alpha.reserve(beta.size());
    for (int n = 0; n < static_cast<int>(beta.size()); ++n) {
        RationalFunction s(kernel.reg);
        for (int k = 0; k <= n; ++k) s += kernel.at(n, k) * beta[static_cast<std::size_t>(k)];
        alpha.push_back(s.reduced());
    }
    return alpha;
}

Sequence triangular_solve(const TriangularKernel& kernel, const Sequence& alpha)
{
    Sequence beta;
    beta.reserve(alpha.size());
    for (int n = 0; n < static_cast<int>(alpha.size()); ++n) {
        const RationalFunction d = kernel.at(n, n);
        if (d.is_zero()) throw std::domain_error("triangular_solve: zero diagonal entry at n=" + std::to_string(n));
        RationalFunction s = alpha[static_cast<std::size_t>(n)];
        for (int k = 0; k < n; ++k) s -= kernel.at(n, k) * beta[static_cast<std::size_t>(k)];
        beta.push_back((s / d).reduced());
    }
    return beta;
}

VerificationOutcome verify_inverse_pair(const TriangularKernel& first, const TriangularKernel& second, int size)
{
    std::vector<std::vector<RationalFunction>> a(static_cast<std::size_t>(size)), b(static_cast<std::size_t>(size));
    for (int n = 0; n < size; ++n)
        for (int k = 0; k <= n; ++k) {
            a[static_cast<std::size_t>(n)].push_back(first.at(n, k));
            b[static_cast<std::size_t>(n)].push_back(second.at(n, k));
        }
    const RationalFunction one = RationalFunction::constant(first.reg, 1);
    const RationalFunction zero(first.reg);
    for (int n = 0; n < size; ++n)
        for (int k = 0; k <= n; ++k) {
            RationalFunction s(first.reg);
            for (int j = k; j <= n; ++j)
                s += a[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] *
                     b[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            auto o = rational_equal(s, n == k ? one : zero);
            if (!o.passed()) return with_label(std::move(o), "n=" + std::to_string(n) + ",k=" + std::to_string(k));
        }
    return VerificationOutcome::pass();
}

RationalFunction lambda_rational(const Registry& reg, int n)
{
    if (n < 0) throw std::invalid_argument("lambda_rational: negative index");
    const std::size_t ia = reg->index("a");
    PhiSpec spec{{q_power(reg, -n), q_power(reg, -n, -1)},
                 {SparsePoly(reg)},
                 SparsePoly::monomial(reg, Exponents::unit(0, 2) + Exponents::unit(ia, -1))};
    RationalFunction r = phi_sum(spec);
    r *= RationalFunction(
        SparsePoly::monomial(reg, Exponents::unit(0, n * (n - 1)) + Exponents::unit(ia, n), (n % 2) ? -1 : 1));
    return (r * recip_poch_rf(q_power(reg, 2), n, 2)).reduced();
}

TruncatedSeries lambda_coeffs(int n, const TruncationProfile& profile)
{
    return lambda_rational(profile.reg, n).to_series(profile);
}

TruncatedSeries lambda_oracle(int n, const TruncationProfile& profile)
{
    if (n < 0) throw std::invalid_argument("lambda_oracle: negative index");
    std::vector<std::string> names = profile.reg->names();
    if (profile.reg->contains("x")) throw std::invalid_argument("lambda_oracle: registry already holds x");
    names.push_back("x");
    const Registry reg = make_registry(names);
    TruncationProfile p(reg, profile.caps());
    for (std::size_t v = 0; v < profile.reg->size(); ++v) p.floor[v] = profile.floor[v];
    p.set_cap("x", n);

    const SparsePoly x = SparsePoly::variable(reg, "x");
    const SparsePoly ax = x * SparsePoly::variable(reg, "a");
    TruncatedSeries s = div_poch_infinite(poch_infinite(ax, p, 2), x, 1);
    return s.coefficient_of("x", n).retarget(profile);
}

}  // namespace qs
