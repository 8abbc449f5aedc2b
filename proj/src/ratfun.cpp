#include "qseries/ratfun.hpp"

#include <sstream>

namespace qs {

namespace {

struct Normalized {
    ExactScalar unit;
    Exponents shift;
    SparsePoly factor;  // constant 1 when f is a monomial
};

/// f = unit * x^shift * factor with factor free of monomial content and leading coefficient 1.
Normalized normalize_factor(const SparsePoly& f)
{
    const Exponents lo = f.min_exponents();
    const ExactScalar lead = f.leading_term().coeff;
    SparsePoly g = f.times_monomial(-1 * lo, 1 / lead);
    return {lead, lo, std::move(g)};
}

SparsePoly expand(const Registry& reg, const RationalFunction::Factors& fs)
{
    SparsePoly r = SparsePoly::constant(reg, 1);
    for (const auto& [f, m] : fs) r *= f.pow(m);
    return r;
}

}  // namespace

RationalFunction::RationalFunction(Registry reg) : num_(std::move(reg)) {}

RationalFunction::RationalFunction(SparsePoly num) : num_(std::move(num)) {}

RationalFunction::RationalFunction(SparsePoly num, const SparsePoly& den) : num_(std::move(num))
{
    require_same_registry(num_.registry(), den.registry());
    divide_by(den);
}

RationalFunction RationalFunction::constant(Registry reg, const ExactScalar& c)
{
    return RationalFunction(SparsePoly::constant(std::move(reg), c));
}

RationalFunction RationalFunction::variable(Registry reg, std::string_view name, int power)
{
    return RationalFunction(SparsePoly::variable(std::move(reg), name, power));
}

void RationalFunction::divide_by(const SparsePoly& f, int mult)
{
    if (f.is_zero()) throw PoleError("division by the zero polynomial");
    Normalized n = normalize_factor(f);
    num_ = num_.times_monomial(-mult * n.shift, 1);
    ExactScalar u = 1;
    for (int i = 0; i < mult; ++i) u *= n.unit;
    num_ *= ExactScalar(1 / u);
    if (n.factor.is_constant()) return;
    if (num_.is_zero()) return;
    den_[std::move(n.factor)] += mult;
}

SparsePoly RationalFunction::denominator() const
{
    return expand(registry(), den_);
}

RationalFunction RationalFunction::operator-() const
{
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs)
{
    require_same_registry(registry(), rhs.registry());
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    Factors common = den_;
    Factors mine, theirs;  // common / den_, common / rhs.den_
    for (const auto& [f, m] : rhs.den_) {
        auto it = common.find(f);
        const int have = it == common.end() ? 0 : it->second;
        if (m > have) {
            common[f] = m;
            mine[f] = m - have;
        } else if (have > m) {
            theirs[f] = have - m;
        }
    }
    for (const auto& [f, m] : den_)
        if (!rhs.den_.count(f)) theirs[f] = m;
    num_ = num_ * expand(registry(), mine) + rhs.num_ * expand(registry(), theirs);
    if (num_.is_zero())
        den_.clear();
    else
        den_ = std::move(common);
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs)
{
    return *this += -rhs;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs)
{
    require_same_registry(registry(), rhs.registry());
    num_ *= rhs.num_;
    if (num_.is_zero()) {
        den_.clear();
        return *this;
    }
    for (const auto& [f, m] : rhs.den_) den_[f] += m;
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs)
{
    return *this *= rhs.inverse();
}

RationalFunction RationalFunction::inverse() const
{
    if (is_zero()) throw PoleError("inverse of the zero rational function");
    RationalFunction r(expand(registry(), den_));
    r.divide_by(num_);
    return r;
}

RationalFunction RationalFunction::pow(int k) const
{
    if (k < 0) return inverse().pow(-k);
    RationalFunction r = constant(registry(), 1);
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
}

RationalFunction RationalFunction::reduced() const
{
    RationalFunction r = *this;
    for (auto it = r.den_.begin(); it != r.den_.end();) {
        while (it->second > 0) {
            auto q = r.num_.divide_exact(it->first);
            if (!q) break;
            r.num_ = std::move(*q);
            --it->second;
        }
        it = it->second == 0 ? r.den_.erase(it) : std::next(it);
    }
    return r;
}

RationalFunction RationalFunction::substitute(std::string_view var, const SparsePoly& value) const
{
    RationalFunction r(num_.substitute(var, value));
    for (const auto& [f, m] : den_) {
        SparsePoly g = f.substitute(var, value);
        if (g.is_zero())
            throw PoleError("substitution " + std::string(var) + " -> " + value.to_string() + " hits a pole");
        r.divide_by(g, m);
    }
    return r;
}

RationalFunction RationalFunction::substitute(std::string_view var, const ExactScalar& value) const
{
    return substitute(var, SparsePoly::constant(registry(), value));
}

RationalFunction RationalFunction::retarget(const Registry& target) const
{
    RationalFunction r(num_.retarget(target));
    for (const auto& [f, m] : den_) r.divide_by(f.retarget(target), m);
    return r;
}

TruncatedSeries RationalFunction::to_series(const TruncationProfile& profile) const
{
    TruncatedSeries s = TruncatedSeries::from_poly(num_, profile);
    for (const auto& [f, m] : den_) {
        const ExactScalar c0 = f.constant_term();
        if (sgn(c0) == 0) throw SeriesError("denominator factor " + f.to_string() + " is not a unit");
        if (f.size() == 2) {
            const auto& t = f.terms().back();
            for (int i = 0; i < m; ++i) s = s.div_binomial(t.coeff / c0, t.exp);
            ExactScalar scale = 1;
            for (int i = 0; i < m; ++i) scale /= c0;
            s = s.scaled(scale);
        } else {
            TruncatedSeries inv = TruncatedSeries::from_poly(f, s.profile()).inverse();
            for (int i = 0; i < m; ++i) s = s * inv;
        }
    }
    return s;
}

std::string RationalFunction::to_string() const
{
    if (den_.empty()) return num_.to_string();
    std::ostringstream os;
    os << '(' << num_.to_string() << ")/(";
    bool first = true;
    for (const auto& [f, m] : den_) {
        if (!first) os << '*';
        first = false;
        os << '(' << f.to_string() << ')';
        if (m != 1) os << '^' << m;
    }
    os << ')';
    return os.str();
}

std::pair<SparsePoly, SparsePoly> cross_numerators(const RationalFunction& a, const RationalFunction& b)
{
    require_same_registry(a.registry(), b.registry());
    RationalFunction::Factors fa, fb;  // multipliers for a and b
    for (const auto& [f, m] : b.denominator_factors()) {
        auto it = a.denominator_factors().find(f);
        const int have = it == a.denominator_factors().end() ? 0 : it->second;
        if (m > have) fa[f] = m - have;
    }
    for (const auto& [f, m] : a.denominator_factors()) {
        auto it = b.denominator_factors().find(f);
        const int have = it == b.denominator_factors().end() ? 0 : it->second;
        if (m > have) fb[f] = m - have;
    }
    return {a.numerator() * expand(a.registry(), fa), b.numerator() * expand(b.registry(), fb)};
}

bool operator==(const RationalFunction& a, const RationalFunction& b)
{
    if (!same_registry(a.registry(), b.registry())) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto [x, y] = cross_numerators(a, b);
    return x == y;
}

VerificationOutcome rational_equal(const RationalFunction& lhs, const RationalFunction& rhs)
{
    auto [x, y] = cross_numerators(lhs, rhs);
    if (x == y) return VerificationOutcome::pass();
    const SparsePoly d = x - y;
    const Exponents e = d.terms().front().exp;
    return VerificationOutcome::fail(make_witness(*lhs.registry(), e, x.coeff(e), y.coeff(e)),
                                     "cross-multiplied numerators differ");
}

}  // namespace qs
