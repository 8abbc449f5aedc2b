#include <doctest.h>

#include <random>

#include "qseries/bailey.hpp"
#include "qseries/qtoolkit.hpp"

using namespace qs;

namespace {

SparsePoly qp(const Registry& r, int e, const ExactScalar& c = 1) { return SparsePoly::monomial(r, Exponents::unit(0, e), c); }
RationalFunction rf(const SparsePoly& p) { return RationalFunction(p); }
RationalFunction qq(const Registry& r, int n) { return recip_poch_rf(qp(r, 1), n); }

RhoSpec rational_rho(const Registry& r, std::mt19937_64& rng)
{
    // p/s with 1 <= p < s <= 17
    std::uniform_int_distribution<int> den(2, 17);
    const int s = den(rng);
    std::uniform_int_distribution<int> num(1, s - 1);
    return RhoSpec::finite(SparsePoly::constant(r, make_scalar(num(rng), s)));
}

}  // namespace

TEST_SUITE("pairs")
{
    TEST_CASE("gamma values")
    {
        auto r = make_registry({"q"});
        const SparsePoly one = SparsePoly::constant(r, 1);
        CHECK(gamma_sum(r, 0) == RationalFunction::constant(r, 1));
        CHECK(gamma_sum(r, 1) == rf(one) + RationalFunction(qp(r, 1), one + qp(r, 1)));
        CHECK(gamma_sum(r, 2) == rf(one) + RationalFunction((one + qp(r, 1)) * qp(r, 1), one + qp(r, 1)) +
                                     RationalFunction(qp(r, 4), (one + qp(r, 1)) * (one + qp(r, 2))));
    }

    TEST_CASE("beta from alpha")
    {
        auto r = make_registry({"q"});
        const SparsePoly one = SparsePoly::constant(r, 1);
        auto p = pair_3666(r);
        Sequence alpha{p.alpha(0), p.alpha(1)};
        auto beta = beta_from_alpha(alpha, one);
        CHECK(beta[0] == alpha[0]);
        const SparsePoly omq = one - qp(r, 1);
        CHECK(beta[1] == RationalFunction(SparsePoly::constant(r, 2), omq * omq * (one + qp(r, 1))));
        CHECK(beta[1] == recip_poch_rf(qp(r, 2), 1, 2) + qq(r, 1) * qq(r, 1));
    }

    TEST_CASE("built-in pairs")
    {
        auto r = make_registry({"q"});
        CHECK(verify_bailey_pair(pair_3666(r), 10).passed());
        CHECK(verify_bailey_pair(pair_great(r), 10).passed());
    }

    TEST_CASE("a perturbed beta fails at its index")
    {
        auto r = make_registry({"q"});
        auto p = pair_3666(r);
        auto beta = p.beta;
        p.beta = [beta, r](int n) { return n == 3 ? beta(n) + rf(qp(r, 5)) : beta(n); };
        auto o = verify_bailey_pair(p, 10);
        REQUIRE(o.status == Status::Fail);
        CHECK(o.witness->label == "n=3");
    }

    TEST_CASE("the other normalization is not a pair")
    {
        auto r = make_registry({"q"});
        auto p = pair_great(r);
        p.beta = [r](int n) { return qq(r, n) * qq(r, n) + gamma_sum(r, n); };
        CHECK(verify_bailey_pair(p, 4).status == Status::Fail);
    }

    TEST_CASE("beta_from_alpha is linear")
    {
        auto r = make_registry({"q"});
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> c(-6, 6), e(0, 5);
        const SparsePoly one = SparsePoly::constant(r, 1);
        for (int trial = 0; trial < 5; ++trial) {
            Sequence x, y, xy;
            for (int n = 0; n <= 8; ++n) {
                x.push_back(rf(qp(r, e(rng), c(rng)) + qp(r, e(rng), c(rng))));
                y.push_back(rf(qp(r, e(rng), c(rng))));
                xy.push_back(x.back() + y.back());
            }
            auto bx = beta_from_alpha(x, one), by = beta_from_alpha(y, one), bxy = beta_from_alpha(xy, one);
            for (std::size_t n = 0; n < bx.size(); ++n) CHECK(bxy[n] == bx[n] + by[n]);
        }
    }

    TEST_CASE("one lemma step turns the 3666 pair into the gamma pair")
    {
        auto r = make_registry({"q"});
        auto step = bailey_chain_step(pair_3666(r));
        auto great = pair_great(r);
        for (int n = 0; n <= 10; ++n) {
            CHECK(step.alpha(n) == great.alpha(n));
            CHECK(step.beta(n) == great.beta(n));
        }
        CHECK(verify_bailey_pair(step, 8).passed());
    }
}

TEST_SUITE("lemma")
{
    TEST_CASE("n = 0")
    {
        auto r = make_registry({"q"});
        auto p = pair_great(r);
        auto [l, rr] = bailey_lemma_sides(p, RhoSpec::finite(SparsePoly::constant(r, 3)), RhoSpec::infinite(), 0);
        CHECK(l == p.beta(0));
        CHECK(rr == p.alpha(0));
        CHECK(l == rr);
    }

    TEST_CASE("pairs satisfy the lemma for finite and infinite rho")
    {
        auto r = make_registry({"q"});
        const std::vector<RhoSpec> rhos{RhoSpec::finite(SparsePoly::constant(r, make_scalar(1, 3))),
                                        RhoSpec::finite(SparsePoly::constant(r, make_scalar(5, 7))),
                                        RhoSpec::infinite()};
        for (const auto& p : {pair_3666(r), pair_great(r)})
            for (const auto& r1 : rhos)
                for (const auto& r2 : rhos)
                    for (int n = 0; n <= 8; ++n) {
                        CAPTURE(p.name);
                        CAPTURE(r1.to_string());
                        CAPTURE(r2.to_string());
                        CAPTURE(n);
                        auto [l, rr] = bailey_lemma_sides(p, r1, r2, n);
                        CHECK(l == rr);
                    }
    }

    TEST_CASE("symbolic rho and general a")
    {
        auto r = make_registry({"q", "a", "x", "y"});
        const SparsePoly a = SparsePoly::variable(r, "a");
        // unit pair: alpha_0 = 1, alpha_n = 0, so beta_n = 1/((q;q)_n (aq;q)_n)
        BaileyPair unit{"unit",
                        [r](int n) { return RationalFunction::constant(r, n == 0 ? 1 : 0); },
                        [r, a](int n) { return qq(r, n) * recip_poch_rf(a * qp(r, 1), n); }, a};
        CHECK(verify_bailey_pair(unit, 5).passed());
        const auto rx = RhoSpec::finite(SparsePoly::variable(r, "x"));
        const auto ry = RhoSpec::finite(SparsePoly::variable(r, "y"));
        for (int n = 0; n <= 3; ++n) {
            auto [l1, r1] = bailey_lemma_sides(unit, rx, ry, n);
            CHECK(l1 == r1);
            auto [l2, r2] = bailey_lemma_sides(unit, rx, RhoSpec::infinite(), n);
            CHECK(l2 == r2);
        }
    }

    TEST_CASE("a non-pair breaks the lemma")
    {
        auto r = make_registry({"q"});
        auto p = pair_3666(r);
        auto beta = p.beta;
        p.beta = [beta, r](int n) { return n == 2 ? beta(n) + RationalFunction::constant(r, 1) : beta(n); };
        auto [l, rr] = bailey_lemma_sides(p, RhoSpec::infinite(), RhoSpec::infinite(), 3);
        CHECK_FALSE(l == rr);
    }

    TEST_CASE("infinite rho reproduces the (ii) identities")
    {
        auto r = make_registry({"q"});
        for (int n = 0; n <= 10; ++n) {
            const auto closing = closing_sum_sides(r, n).first;
            const auto inf = RhoSpec::infinite();
            auto [l3, r3] = bailey_lemma_sides(pair_3666(r), inf, inf, n);
            auto [c3l, c3r] = concrete_ii_sides(r, ConcreteFamily::Pair3666, n);
            CHECK(l3 - closing == c3l);
            CHECK(r3 - qq(r, n) * qq(r, n) == c3r);
            auto [lg, rg] = bailey_lemma_sides(pair_great(r), inf, inf, n);
            auto [cgl, cgr] = concrete_ii_sides(r, ConcreteFamily::Gamma, n);
            CHECK(lg - closing == cgl);
            CHECK(rg - qq(r, n) * qq(r, n) == cgr);
        }
    }
}

TEST_SUITE("consequences")
{
    TEST_CASE("written-out forms match the lemma")
    {
        auto r = make_registry({"q"});
        const auto r1 = RhoSpec::finite(SparsePoly::constant(r, make_scalar(2, 9)));
        const auto r2 = RhoSpec::finite(SparsePoly::constant(r, make_scalar(4, 5)));
        for (int n = 0; n <= 5; ++n) {
            CHECK(concrete_sides(r, ConcreteFamily::Gamma, r1, r2, n).first ==
                  bailey_lemma_sides(pair_great(r), r1, r2, n).first);
            CHECK(concrete_sides(r, ConcreteFamily::Pair3666, r1, r2, n).second ==
                  bailey_lemma_sides(pair_3666(r), r1, r2, n).second);
        }
    }

    TEST_CASE("fixed rational rho")
    {
        auto r = make_registry({"q"});
        const auto r1 = RhoSpec::finite(SparsePoly::constant(r, make_scalar(1, 3)));
        const auto r2 = RhoSpec::finite(SparsePoly::constant(r, make_scalar(2, 5)));
        for (auto f : {ConcreteFamily::Gamma, ConcreteFamily::Pair3666}) {
            CHECK(verify_range(0, 8, [&](int n) { return concrete_sides(r, f, r1, r2, n); }).passed());
            CHECK(verify_range(0, 8, [&](int n) {
                      return concrete_sides(r, f, RhoSpec::infinite(), RhoSpec::infinite(), n);
                  }).passed());
        }
    }

    TEST_CASE("sampled rational rho")
    {
        auto r = make_registry({"q"});
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            std::mt19937_64 rng(seed);
            const auto r1 = rational_rho(r, rng), r2 = rational_rho(r, rng);
            CAPTURE(r1.to_string());
            CAPTURE(r2.to_string());
            for (auto f : {ConcreteFamily::Gamma, ConcreteFamily::Pair3666}) {
                CHECK(verify_range(0, 6, [&](int n) { return concrete_sides(r, f, r1, r2, n); }).passed());
                CHECK(verify_range(0, 6, [&](int n) {
                          return concrete_sides(r, f, r1, RhoSpec::infinite(), n);
                      }).passed());
            }
        }
    }

    TEST_CASE("rho1 = 1/a, rho2 = q")
    {
        auto r = make_registry({"q", "a"});
        const SparsePoly a = SparsePoly::variable(r, "a");
        for (auto f : {ConcreteFamily::Gamma, ConcreteFamily::Pair3666}) {
            CHECK(verify_range(1, 8, [&](int n) { return concrete_i_sides(r, f, a, n); }).passed());
            const SparsePoly half = SparsePoly::constant(r, make_scalar(1, 2));
            CHECK(verify_range(1, 6, [&](int n) { return concrete_i_sides(r, f, half, n); }).passed());
        }
        CHECK_THROWS_AS(concrete_i_sides(r, ConcreteFamily::Gamma, a, 0), std::invalid_argument);
    }

    TEST_CASE("limit of the (i) form")
    {
        auto r = make_registry({"q", "a"});
        auto [l, rr] = concrete_i_limit_sides(TruncationProfile(r, {{"q", 20}, {"a", 5}}));
        auto o = series_equal(l, rr);
        CHECK(o.status == Status::Pass);
        CHECK(l.exact_region().cap[0] == 20);
        CHECK(l.exact_region().cap[1] == 5);
    }

    TEST_CASE("gamma theta series to q^60")
    {
        auto r = make_registry({"q"});
        auto [l, rr] = gamma_theta_sides(TruncationProfile(r, {{"q", 60}}));
        CHECK(series_equal(l, rr).status == Status::Pass);
        CHECK(l.exact_region().cap[0] == 60);
        CHECK(rr.exact_region().cap[0] == 60);
        auto bad = series_equal(l + TruncatedSeries::from_poly(qp(r, 41), l.profile()), rr);
        REQUIRE(bad.status == Status::Fail);
        CHECK(bad.witness->exponents[0].second == 41);
    }

    TEST_CASE("closing sum")
    {
        auto r = make_registry({"q"});
        const SparsePoly omq = SparsePoly::constant(r, 1) - qp(r, 1);
        auto [l, rr] = closing_sum_sides(r, 1);
        CHECK(l == RationalFunction(SparsePoly::constant(r, 1), omq * omq));
        CHECK(rr == l);
        CHECK(verify_range(0, 10, [&](int n) { return closing_sum_sides(r, n); }).passed());
    }

    TEST_CASE("success identity")
    {
        auto r = make_registry({"q"});
        auto [l0, r0] = success_sides(r, 0);
        CHECK(l0 == RationalFunction::constant(r, 2));
        CHECK(r0 == l0);
        auto [l1, r1] = success_sides(r, 1);
        CHECK(l1 == rf(qp(r, 2, 2)));
        CHECK(r1 == l1);
        CHECK(verify_success_identity(10).passed());
    }

    TEST_CASE("suite")
    {
        for (const auto& [name, o] : verify_proposition_suite()) {
            CAPTURE(name);
            CHECK(o.status == Status::Pass);
        }
    }
}
