#include "qseries/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

#include "qseries/bailey.hpp"
#include "qseries/finite_identities.hpp"
#include "qseries/inversion.hpp"
#include "qseries/qtoolkit.hpp"

namespace qs {

namespace {

using builders::SeriesSides;

using Instances = std::vector<Instance>;

Instance single(std::function<SeriesSides()> f)
{
    return {"", [f = std::move(f)]() -> Sides { return f(); }};
}

/// One instance per depth in [lo, ctx.cap(cap)], labelled "n=..".
Instances depth_range(const BuildContext& ctx, int lo, std::string_view cap,
                      std::function<RationalSides(const Registry&, int)> f)
{
    Instances out;
    for (int n = lo; n <= ctx.cap(cap); ++n)
        out.push_back({"n=" + std::to_string(n), [reg = ctx.reg, f, n]() -> Sides { return f(reg, n); }});
    return out;
}

std::string rn(int r, int n) { return "r=" + std::to_string(r) + "; n=" + std::to_string(n); }

RationalSides recurrence_sides(int r, int n)
{
    const Registry reg = make_registry({"q", "y"});
    const auto c = t_recurrence_coefficients(reg, r, n);
    RationalFunction lhs(reg);
    for (int j = 0; j < 3; ++j)
        lhs += RationalFunction(c[static_cast<std::size_t>(j)]) * t_sum(reg, {r, n + j, std::nullopt});
    return {lhs, RationalFunction(reg)};
}

RationalSides bailey_pair_sides(const BaileyPair& pair, int n)
{
    Sequence alpha;
    for (int k = 0; k <= n; ++k) alpha.push_back(pair.alpha(k));
    return {pair.beta(n), beta_from_alpha(alpha, pair.a).back()};
}

/// Lemma instances of a concrete family: the rho slots as parameters, then with one and both at infinity.
Instances concrete_family(const BuildContext& ctx, ConcreteFamily family)
{
    const RhoSpec r1 = RhoSpec::finite(ctx.param("rho1"));
    const RhoSpec r2 = RhoSpec::finite(ctx.param("rho2"));
    const RhoSpec inf = RhoSpec::infinite();
    Instances out;
    auto add = [&](const std::string& prefix, const RhoSpec& a, const RhoSpec& b) {
        for (int n = 0; n <= ctx.cap("n"); ++n)
            out.push_back({prefix + "n=" + std::to_string(n), [reg = ctx.reg, family, a, b, n]() -> Sides {
                               return concrete_sides(reg, family, a, b, n);
                           }});
    };
    add("", r1, r2);
    add("rho2=inf; ", r1, inf);
    add("rho1=rho2=inf; ", inf, inf);
    return out;
}

TruncationProfile q_profile(const BuildContext& ctx)
{
    return TruncationProfile(make_registry({"q"}), {{"q", ctx.cap("q")}});
}

std::vector<IdentityRecord> make_catalog()
{
    std::vector<IdentityRecord> c;
    const std::map<std::string, int> gen_caps{{"q", 14}, {"alpha", 6}, {"beta", 6}, {"c", 4}};
    const std::map<std::string, int> gen_min{{"q", 1}, {"alpha", 1}, {"beta", 1}, {"c", 0}};

    c.push_back({"AND-11", "Andrews' identity",
                 "sum (a,b;q)_n q^{n(n+1)/2}/((q;q)_n (abq;q^2)_n) = (-q;q)_inf (aq,bq;q^2)_inf/(abq;q^2)_inf",
                 {"a", "b"}, {{"q", 20}, {"a", 8}, {"b", 8}}, {{"q", 1}}, {"a", "b"}, {}, false,
                 [](const BuildContext& x) -> Instances {
                     return {single([x] {
                         return builders::andrews(x.profile, x.param("a"), x.param("b"), x.bound_scale);
                     })};
                 }});
    c.push_back({"GEN-I", "Generalization of Andrews' identity I",
                 "c-extension of Andrews' identity with a Rogers-Szego sum on the right",
                 {"a", "b", "c"}, {{"q", 16}, {"a", 6}, {"b", 6}, {"c", 6}}, {{"q", 1}, {"a", 1}, {"b", 1}}, {"c"}, {},
                 false, [](const BuildContext& x) -> Instances {
                     return {single([x] {
                         return builders::gen1(x.profile, x.param("a"), x.param("b"), x.param("c"), x.bound_scale);
                     })};
                 }});
    c.push_back({"GEN-II", "Generalization of Andrews' identity II",
                 "denominator (ab;q^2)_n, right side (h_n(a,bq|q^2) + h_n(aq,b|q^2))/(1+q^n); a = alpha^2, b = beta^2",
                 {"alpha", "beta", "c"}, gen_caps, gen_min, {"c"}, {}, false, [](const BuildContext& x) -> Instances {
                     return {single([x] {
                         const SparsePoly& al = x.param("alpha");
                         const SparsePoly& be = x.param("beta");
                         return builders::gen2(x.profile, al * al, be * be, x.param("c"), x.bound_scale);
                     })};
                 }});
    c.push_back({"GEN-III", "Generalization of Andrews' identity III",
                 "denominator (q,(ab)^{1/2};q)_n (-(ab)^{1/2};q)_{n+1}; a = alpha^2, b = beta^2",
                 {"alpha", "beta", "c"}, gen_caps, gen_min, {"c"}, {}, false, [](const BuildContext& x) -> Instances {
                     return {single([x] {
                         return builders::gen3(x.profile, x.param("alpha"), x.param("beta"), x.param("c"),
                                               x.bound_scale);
                     })};
                 }});
    c.push_back({"LAMBDA", "Coefficients of (ax;q^2)_inf/(x;q)_inf",
                 "lambda_n(a) as a terminating 2phi1 against the coefficient of x^n", {"a"},
                 {{"q", 24}, {"a", 12}, {"n", 12}}, {{"q", 0}}, {}, {}, false, [](const BuildContext& x) {
                     Instances out;
                     for (int n = 0; n <= x.cap("n"); ++n)
                         out.push_back({"n=" + std::to_string(n), [p = x.profile, n]() -> Sides {
                                            return SeriesSides{lambda_coeffs(n, p), lambda_oracle(n, p)};
                                        }});
                     return out;
                 }});
    c.push_back({"T-REC", "Three-term recurrence of T_{r,n}(s)",
                 "recurrence in n with y = q^s formal; checked for n+2 <= r <= n+r_cap", {}, {{"n", 8}, {"r", 6}},
                 {{"r", 2}}, {}, {}, false, [](const BuildContext& x) {
                     Instances out;
                     for (int n = 0; n <= x.cap("n"); ++n)
                         for (int r = n + 2; r <= n + x.cap("r"); ++r)
                             out.push_back({rn(r, n), [r, n]() -> Sides { return recurrence_sides(r, n); }});
                     return out;
                 }});
    c.push_back({"T-CLOSED", "Closed forms of T_{r,n}(1) and T_{r,n}(0)",
                 "s = 1 for r >= n+1 and s = 0 for r >= n+2, up to r = n+r_cap", {}, {{"n", 10}, {"r", 6}},
                 {{"r", 2}}, {}, {}, false, [](const BuildContext& x) {
                     Instances out;
                     for (int n = 0; n <= x.cap("n"); ++n)
                         for (int r = n + 1; r <= n + x.cap("r"); ++r) {
                             out.push_back({"s=1; " + rn(r, n), [reg = x.reg, r, n]() -> Sides {
                                                return RationalSides{t_sum(reg, {r, n, 1}), t_closed_s1(reg, r, n)};
                                            }});
                             if (r >= n + 2)
                                 out.push_back({"s=0; " + rn(r, n), [reg = x.reg, r, n]() -> Sides {
                                                    return RationalSides{t_sum(reg, {r, n, 0}), t_closed_s0(reg, r, n)};
                                                }});
                         }
                     return out;
                 }});
    for (int s = 0; s <= 3; ++s)
        c.push_back({"MASTER-" + std::to_string(s), "Master theorem at s = " + std::to_string(s),
                     "denominator (abq^s;q^2)_n, right side a double sum over T_{n-k,k}(s)", {"a", "b", "c"},
                     {{"q", 14}, {"a", 6}, {"b", 6}, {"c", 4}}, {{"q", 1}, {"a", 1}, {"b", 1}}, {"c"}, {}, false,
                     [s](const BuildContext& x) -> Instances {
                         return {single([x, s] {
                             return builders::master(x.profile, x.param("a"), x.param("b"), x.param("c"), s,
                                                     x.bound_scale);
                         })};
                     }});
    c.push_back({"MASTER-D", "Master theorem with d = q^s formal",
                 "the master theorem with q^s replaced by a variable y; net y exponents are non-negative",
                 {"a", "b", "c", "y"}, {{"q", 10}, {"a", 4}, {"b", 4}, {"c", 3}, {"y", 3}},
                 {{"q", 1}, {"a", 1}, {"b", 1}}, {"c"}, {}, true, [](const BuildContext& x) -> Instances {
                     return {single([x] {
                         return builders::master(x.profile, x.param("a"), x.param("b"), x.param("c"), x.param("y"),
                                                 x.bound_scale);
                     })};
                 }});
    c.push_back({"RS-GF", "Generating function of Rogers-Szego polynomials in q^2",
                 "sum h_n(a,b|q^2)/(q;q)_n = (abq;q^2)_inf/(a,b;q)_inf", {"a", "b"},
                 {{"q", 16}, {"a", 8}, {"b", 8}}, {{"q", 1}, {"a", 1}, {"b", 1}}, {}, {}, false,
                 [](const BuildContext& x) -> Instances {
                     return {single(
                         [x] { return builders::rs_gf(x.profile, x.param("a"), x.param("b"), x.bound_scale); })};
                 }});
    c.push_back({"FIN-Q", "Finite identity from the q-binomial theorem",
                 "(-a)^M q^{M^2} sum (q^{-2M};q^2)_k/(q;q)_k (q/a)^k = sum [M k] (a;q)_k q^{k(k+1)/2}", {"a"},
                 {{"n", 10}}, {}, {}, {}, false,
                 [](const BuildContext& x) { return depth_range(x, 0, "n", finite_q_sides); }});
    c.push_back({"C-QINV", "Andrews-type identity at c = 1/q",
                 "sum (a,b;q)_n q^{n(n-1)/2}/((q;q)_n (abq;q^2)_n) = ((a,b;q^2)_inf + (aq,bq;q^2)_inf)/(q,abq;q^2)_inf",
                 {"a", "b"}, {{"q", 20}, {"a", 6}, {"b", 6}}, {{"q", 1}}, {"a", "b"}, {}, false,
                 [](const BuildContext& x) -> Instances {
                     return {single(
                         [x] { return builders::c_qinv(x.profile, x.param("a"), x.param("b"), x.bound_scale); })};
                 }});
    c.push_back({"S-EVAL", "Evaluation of S(a,b)",
                 "sum_n sum_k [n k]_{q^2} a^k b^{n-k}/(q^2;q^2)_n = 1/(a,b;q^2)_inf, with Euler's (-q;q)_inf = 1/(q;q^2)_inf",
                 {"a", "b"}, {{"q", 16}, {"a", 8}, {"b", 8}}, {{"q", 1}, {"a", 1}, {"b", 1}}, {}, {}, false,
                 [](const BuildContext& x) -> Instances {
                     return {single([x] {
                                 return builders::s_eval(x.profile, x.param("a"), x.param("b"), x.bound_scale);
                             }),
                             {"euler", [p = q_profile(x)]() -> Sides { return builders::euler_odd(p); }}};
                 }});
    c.push_back({"ANDREWS-PP", "Andrews-type identity with square-root parameters",
                 "the c = 1 case of GEN-III, multiplied through by a^{1/2} + b^{1/2}", {"alpha", "beta"},
                 {{"q", 14}, {"alpha", 6}, {"beta", 6}}, {{"q", 1}}, {"alpha", "beta"}, {}, false,
                 [](const BuildContext& x) -> Instances {
                     return {single([x] {
                         return builders::andrews_pp(x.profile, x.param("alpha"), x.param("beta"), x.bound_scale);
                     })};
                 }});
    c.push_back({"AW-THETA", "Two-parameter partial theta identity",
                 "1 + sum (-1)^n q^{n(n-1)/2}(a^n + b^n) = (q,a,b;q)_inf sum (ab/q;q)_{2n} q^n/(q,a,b,ab;q)_n",
                 {"a", "b"}, {{"q", 30}, {"a", 10}, {"b", 10}}, {{"q", 1}}, {"a", "b"}, {}, false,
                 [](const BuildContext& x) -> Instances {
                     return {single(
                         [x] { return builders::aw_theta(x.profile, x.param("a"), x.param("b"), x.bound_scale); })};
                 }});
    c.push_back({"WAR-THETA", "Partial theta identity in q^{2n^2}",
                 "1 + 2 sum a^n q^{2n^2} = (q;q)_inf (aq;q^2)_inf sum (-a;q)_{2n} q^n/((q,-aq;q)_n (aq;q^2)_n)", {"a"},
                 {{"q", 40}, {"a", 6}}, {{"q", 1}}, {"a"}, {}, false, [](const BuildContext& x) -> Instances {
                     return {single([x] { return builders::war_theta(x.profile, x.param("a"), x.bound_scale); })};
                 }});
    c.push_back({"SUCCESS", "Inversion of lambda_k(-q)",
                 "q^{n(n-1)/2}(1+q^n) sum (q^{-n},q^n;q)_k q^k lambda_k(-q) = 2 q^{2n^2}", {}, {{"n", 10}}, {}, {}, {},
                 false, [](const BuildContext& x) { return depth_range(x, 0, "n", success_sides); }});
    c.push_back({"BP-3666", "Bailey pair (2(-1)^n q^{n^2}, 1/(q^2;q^2)_n + 1/(q;q)_n^2)",
                 "Bailey pair relative to a = 1", {}, {{"n", 10}}, {}, {}, {}, false, [](const BuildContext& x) {
                     return depth_range(x, 0, "n", [](const Registry& r, int n) {
                         return bailey_pair_sides(pair_3666(r), n);
                     });
                 }});
    c.push_back({"BP-GREAT", "Bailey pair (2(-1)^n q^{2n^2}, 1/(q;q)_n^2 + gamma(n)/(q;q)_n)",
                 "Bailey pair relative to a = 1", {}, {{"n", 10}}, {}, {}, {}, false, [](const BuildContext& x) {
                     return depth_range(x, 0, "n", [](const Registry& r, int n) {
                         return bailey_pair_sides(pair_great(r), n);
                     });
                 }});
    c.push_back({"BL-CONC1", "Bailey lemma applied to the gamma pair",
                 "general rho1, rho2, then rho2 and both slots at infinity", {"rho1", "rho2"}, {{"n", 8}}, {},
                 {"rho1", "rho2"}, {}, false,
                 [](const BuildContext& x) { return concrete_family(x, ConcreteFamily::Gamma); }});
    c.push_back({"BL-CONC1-I", "Gamma pair at rho1 = 1/a, rho2 = q", "checked from n = 1", {"a"}, {{"n", 8}}, {},
                 {"a"}, {}, false, [](const BuildContext& x) {
                     return depth_range(x, 1, "n", [a = x.param("a")](const Registry& r, int n) {
                         return concrete_i_sides(r, ConcreteFamily::Gamma, a, n);
                     });
                 }});
    c.push_back({"BL-CONC1-I-LIM", "Gamma pair at rho1 = 1/a, rho2 = q, n to infinity",
                 "(1-a) sum (1/a;q)_k a^k gamma(k) = 2 sum (1/a;q)_k/(aq;q)_k (-a)^k (1-q^k) q^{2k^2}", {"a"},
                 {{"q", 24}, {"a", 6}}, {{"q", 1}}, {}, {}, false, [](const BuildContext& x) -> Instances {
                     return {single([x] { return concrete_i_limit_sides(x.profile); })};
                 }});
    c.push_back({"BL-CONC1-II", "Gamma pair with both rho slots at infinity",
                 "sum q^{k^2} gamma(k)/((q;q)_k (q;q)_{n-k}) = sum_{|k|<=n} (-1)^k q^{3k^2}/((q;q)_{n-k} (q;q)_{n+k})", {},
                 {{"n", 10}}, {}, {}, {}, false, [](const BuildContext& x) {
                     return depth_range(x, 0, "n", [](const Registry& r, int n) {
                         return concrete_ii_sides(r, ConcreteFamily::Gamma, n);
                     });
                 }});
    c.push_back({"BL-CONC222", "Theta limit of the gamma pair",
                 "sum q^{k^2} gamma(k)/(q;q)_k = (q^3;q^6)_inf/(q,q^2;q^3)_inf", {}, {{"q", 60}}, {{"q", 1}}, {}, {},
                 false, [](const BuildContext& x) -> Instances {
                     return {single([x] { return gamma_theta_sides(x.profile); })};
                 }});
    c.push_back({"BL-CONC0123", "Bailey lemma applied to the 3666 pair",
                 "general rho1, rho2, then rho2 and both slots at infinity", {"rho1", "rho2"}, {{"n", 8}}, {},
                 {"rho1", "rho2"}, {}, false,
                 [](const BuildContext& x) { return concrete_family(x, ConcreteFamily::Pair3666); }});
    c.push_back({"BL-CONC0123-I", "3666 pair at rho1 = 1/a, rho2 = q", "checked from n = 1", {"a"}, {{"n", 8}}, {},
                 {"a"}, {}, false, [](const BuildContext& x) {
                     return depth_range(x, 1, "n", [a = x.param("a")](const Registry& r, int n) {
                         return concrete_i_sides(r, ConcreteFamily::Pair3666, a, n);
                     });
                 }});
    c.push_back({"BL-CONC000", "3666 pair with both rho slots at infinity",
                 "sum q^{k^2}/((q^2;q^2)_k (q;q)_{n-k}) = sum_{|k|<=n} (-1)^k q^{2k^2}/((q;q)_{n-k} (q;q)_{n+k})", {},
                 {{"n", 10}}, {}, {}, {}, false, [](const BuildContext& x) {
                     return depth_range(x, 0, "n", [](const Registry& r, int n) {
                         return concrete_ii_sides(r, ConcreteFamily::Pair3666, n);
                     });
                 }});
    c.push_back({"CLOSING-SUM", "Closing sum for the Bailey pairs",
                 "sum q^{k^2}/((q;q)_k^2 (q;q)_{n-k}) = 1/(q;q)_n^2", {}, {{"n", 10}}, {}, {}, {}, false,
                 [](const BuildContext& x) { return depth_range(x, 0, "n", closing_sum_sides); }});
    c.push_back({"JTP", "Jacobi triple product instance",
                 "sum_k (-1)^k q^{3k^2} = (q^3,q^3,q^6;q^6)_inf", {}, {{"q", 60}}, {{"q", 1}}, {}, {}, false,
                 [](const BuildContext& x) -> Instances {
                     return {single([x] { return builders::jacobi_triple(x.profile); })};
                 }});
    return c;
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string sample_label(const std::map<std::string, ExactScalar>& values)
{
    std::string out;
    for (const auto& [name, v] : values) {
        if (!out.empty()) out += "; ";
        out += name + "=" + to_string(v);
    }
    return out;
}

BuildContext make_context(const IdentityRecord& record, const std::map<std::string, int>& caps,
                          const std::map<std::string, ExactScalar>& sampled, int bound_scale)
{
    std::vector<std::string> names{"q"};
    for (const auto& p : record.params)
        if (!sampled.contains(p)) names.push_back(p);
    BuildContext ctx;
    ctx.reg = make_registry(names);
    std::map<std::string, int> var_caps;
    for (const auto& n : names)
        if (auto it = caps.find(n); it != caps.end()) var_caps[n] = it->second;
    ctx.profile = TruncationProfile(ctx.reg, var_caps);
    ctx.caps = caps;
    ctx.bound_scale = bound_scale;
    for (const auto& p : record.params) {
        auto it = sampled.find(p);
        ctx.params[p] = it == sampled.end() ? SparsePoly::variable(ctx.reg, p) : SparsePoly::constant(ctx.reg, it->second);
    }
    return ctx;
}

SparsePoly mutation_monomial(const Registry& reg, const RhsMutation& m)
{
    Exponents e;
    for (const auto& [name, k] : m.exponents) {
        const auto idx = reg->find(name);
        if (!idx) throw std::invalid_argument("mutation names variable '" + name + "' absent from the identity");
        e[*idx] = k;
    }
    return SparsePoly::monomial(reg, e, m.coeff);
}

Sides restrict_sides(Sides sides, const std::map<std::string, int>& limits)
{
    if (auto* s = std::get_if<SeriesSides>(&sides))
        for (const auto& [name, cap] : limits)
            if (auto idx = s->second.registry()->find(name)) s->second = s->second.restrict_exact(*idx, cap);
    return sides;
}

}  // namespace

std::string_view to_string(Mode m) noexcept { return m == Mode::Series ? "series" : "sample"; }

std::optional<Mode> parse_mode(std::string_view text) noexcept
{
    if (text == "series") return Mode::Series;
    if (text == "sample") return Mode::Sample;
    return std::nullopt;
}

int BuildContext::cap(std::string_view name) const
{
    auto it = caps.find(std::string(name));
    if (it == caps.end()) throw std::out_of_range("no cap named '" + std::string(name) + "'");
    return it->second;
}

const SparsePoly& BuildContext::param(std::string_view name) const
{
    auto it = params.find(std::string(name));
    if (it == params.end()) throw std::out_of_range("no parameter named '" + std::string(name) + "'");
    return it->second;
}

const std::vector<IdentityRecord>& catalog()
{
    static const std::vector<IdentityRecord> records = make_catalog();
    return records;
}

const IdentityRecord& find_record(std::string_view id)
{
    for (const auto& r : catalog())
        if (r.id == id) return r;
    throw UnknownIdentity("unknown identity '" + std::string(id) + "'");
}

std::map<std::string, int> resolve_caps(const IdentityRecord& record, const VerifyOptions& options)
{
    std::map<std::string, int> caps = record.default_caps;
    if (options.q_cap && caps.contains("q")) caps["q"] = *options.q_cap;
    for (const auto& [name, v] : options.caps)
        if (caps.contains(name)) caps[name] = v;
    for (const auto& [name, v] : caps) {
        auto it = record.min_caps.find(name);
        const int lo = it == record.min_caps.end() ? 0 : it->second;
        if (v < lo)
            throw std::invalid_argument(record.id + ": cap " + name + "=" + std::to_string(v) + " is below the minimum " +
                                        std::to_string(lo));
    }
    return caps;
}

Mode effective_mode(const IdentityRecord& record, Mode requested) noexcept
{
    return requested == Mode::Sample && record.supports_sample() ? Mode::Sample : Mode::Series;
}

std::vector<std::map<std::string, ExactScalar>> draw_samples(const IdentityRecord& record, int count,
                                                             std::uint64_t seed)
{
    std::vector<ExactScalar> pool;
    for (int r = 2; r <= 17; ++r)
        for (int p = 1; p < r; ++p) {
            if (std::gcd(p, r) != 1) continue;
            const ExactScalar v = make_scalar(p, r);
            if (std::find(record.excluded_values.begin(), record.excluded_values.end(), v) ==
                record.excluded_values.end())
                pool.push_back(v);
        }
    std::mt19937_64 rng(seed ^ fnv1a(record.id));
    std::vector<std::map<std::string, ExactScalar>> out;
    for (int i = 0; i < count; ++i) {
        std::map<std::string, ExactScalar> s;
        for (const auto& p : record.sample_params) s[p] = pool[rng() % pool.size()];
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Instance> expand_instances(const IdentityRecord& record, const VerifyOptions& options)
{
    const auto caps = resolve_caps(record, options);
    if (effective_mode(record, options.mode) == Mode::Series)
        return record.instances(make_context(record, caps, {}, options.bound_scale));
    std::vector<Instance> out;
    for (const auto& values : draw_samples(record, options.samples, options.seed)) {
        const std::string prefix = sample_label(values);
        for (auto& inst : record.instances(make_context(record, caps, values, options.bound_scale))) {
            inst.label = inst.label.empty() ? prefix : prefix + "; " + inst.label;
            out.push_back(std::move(inst));
        }
    }
    return out;
}

Sides mutate_rhs(Sides sides, const RhsMutation& mutation)
{
    if (auto* s = std::get_if<SeriesSides>(&sides)) {
        const SparsePoly m = mutation_monomial(s->second.registry(), mutation);
        s->second = s->second + TruncatedSeries::from_poly(m, s->second.profile());
    } else {
        auto& r = std::get<RationalSides>(sides);
        r.second += RationalFunction(mutation_monomial(r.second.registry(), mutation));
    }
    return sides;
}

VerificationOutcome compare_sides(const Sides& sides)
{
    if (const auto* s = std::get_if<SeriesSides>(&sides)) return series_equal(s->first, s->second);
    const auto& r = std::get<RationalSides>(sides);
    return rational_equal(r.first, r.second);
}

VerificationOutcome verify(const IdentityRecord& record, const VerifyOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    const auto caps = resolve_caps(record, options);
    const Mode mode = effective_mode(record, options.mode);

    VerificationOutcome result = VerificationOutcome::pass();
    for (const auto& inst : expand_instances(record, options)) {
        Sides sides = inst.build();
        if (options.mutation) sides = mutate_rhs(std::move(sides), *options.mutation);
        if (!options.restrict_exact.empty()) sides = restrict_sides(std::move(sides), options.restrict_exact);
        VerificationOutcome o = compare_sides(sides);
        if (o.status == Status::Pass) continue;
        if (!inst.label.empty()) {
            if (o.status == Status::Fail) o = with_label(std::move(o), inst.label);
            else o.note = inst.label + ": " + o.note;
        }
        if (o.status == Status::Fail) {
            result = std::move(o);
            break;
        }
        if (result.status == Status::Pass) result = std::move(o);
    }
    if (mode != options.mode) {
        const std::string fallback = "no sample mode; ran series";
        result.note = result.note.empty() ? fallback : fallback + "; " + result.note;
    }
    result.id = record.id;
    result.mode = std::string(to_string(mode));
    result.caps = caps;
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

VerificationOutcome verify(std::string_view id, const VerifyOptions& options)
{
    return verify(find_record(id), options);
}

std::vector<VerificationOutcome> run_jobs(const std::vector<VerifyJob>& jobs, unsigned threads)
{
    std::vector<VerificationOutcome> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            const IdentityRecord& rec = *jobs[i].record;
            try {
                out[i] = verify(rec, jobs[i].options);
            } catch (const std::exception& e) {
                out[i] = VerificationOutcome::inconclusive(std::string("error: ") + e.what());
                out[i].id = rec.id;
                out[i].mode = std::string(to_string(effective_mode(rec, jobs[i].options.mode)));
            }
        }
    };
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < threads; ++j) pool.emplace_back(worker);
        worker();
    }
    return out;
}

std::vector<VerificationOutcome> verify_all(const VerifyOptions& options, unsigned jobs,
                                            const std::vector<std::string>& ids,
                                            const std::vector<std::string>& mutate_ids)
{
    std::vector<VerifyJob> work;
    if (ids.empty())
        for (const auto& r : catalog()) work.push_back({&r, options});
    else
        for (const auto& id : ids) work.push_back({&find_record(id), options});
    for (const auto& id : mutate_ids) find_record(id);
    for (auto& job : work) {
        resolve_caps(*job.record, options);
        const bool mutate =
            mutate_ids.empty() || std::find(mutate_ids.begin(), mutate_ids.end(), job.record->id) != mutate_ids.end();
        if (!mutate) job.options.mutation.reset();
    }
    return run_jobs(work, jobs);
}

Status aggregate_status(const std::vector<VerificationOutcome>& outcomes) noexcept
{
    Status s = Status::Pass;
    for (const auto& o : outcomes) {
        if (o.status == Status::Fail) return Status::Fail;
        if (o.status == Status::Inconclusive) s = Status::Inconclusive;
    }
    return s;
}

}  // namespace qs
