#include "qseries/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qs {

namespace {

int add_cap(int e, int shift) noexcept
{
    return e == kComplete ? kComplete : e + shift;
}

/// Dense coefficient array over a box of exponents.
class DenseBox {
public:
    DenseBox(std::size_t nvars, const std::array<int, kMaxVars>& lo, const std::array<int, kMaxVars>& hi)
        : n_(nvars), lo_(lo), hi_(hi)
    {
        std::size_t s = 1;
        for (std::size_t v = 0; v < n_; ++v) {
            stride_[v] = s;
            const long extent = hi_[v] >= lo_[v] ? hi_[v] - lo_[v] + 1 : 0;
            s *= static_cast<std::size_t>(extent);
        }
        data_.resize(s);
    }

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool contains(const Exponents& e) const noexcept
    {
        for (std::size_t v = 0; v < n_; ++v)
            if (e[v] < lo_[v] || e[v] > hi_[v]) return false;
        return true;
    }
    std::size_t index(const Exponents& e) const noexcept
    {
        std::size_t idx = 0;
        for (std::size_t v = 0; v < n_; ++v) idx += static_cast<std::size_t>(e[v] - lo_[v]) * stride_[v];
        return idx;
    }
    Exponents decode(std::size_t idx) const noexcept
    {
        Exponents e;
        for (std::size_t v = n_; v-- > 0;) {
            e[v] = lo_[v] + static_cast<int>(idx / stride_[v]);
            idx %= stride_[v];
        }
        return e;
    }
    std::size_t stride(std::size_t v) const noexcept { return stride_[v]; }
    int lo(std::size_t v) const noexcept { return lo_[v]; }
    int hi(std::size_t v) const noexcept { return hi_[v]; }
    std::size_t nvars() const noexcept { return n_; }

    mpq_class& operator[](std::size_t i) { return data_[i]; }
    const mpq_class& operator[](std::size_t i) const { return data_[i]; }

    void load(const SparsePoly& p)
    {
        for (const auto& t : p.terms())
            if (contains(t.exp)) data_[index(t.exp)] = t.coeff;
    }

    SparsePoly to_poly(const Registry& reg) const
    {
        std::vector<SparsePoly::Term> terms;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (sgn(data_[i]) != 0) terms.push_back({decode(i), data_[i]});
        return SparsePoly::from_terms(reg, std::move(terms));
    }

private:
    std::size_t n_;
    std::array<int, kMaxVars> lo_;
    std::array<int, kMaxVars> hi_;
    std::array<std::size_t, kMaxVars> stride_{};
    std::vector<mpq_class> data_;
};

}  // namespace

// ---------------------------------------------------------------- profile

TruncationProfile::TruncationProfile(Registry r, const std::map<std::string, int>& caps) : reg(std::move(r))
{
    for (const auto& [name, c] : caps) cap[reg->index(name)] = c;
}

TruncationProfile& TruncationProfile::set_cap(std::string_view var, int c)
{
    cap[reg->index(var)] = c;
    return *this;
}

TruncationProfile& TruncationProfile::set_floor(std::string_view var, int f)
{
    floor[reg->index(var)] = f;
    return *this;
}

bool TruncationProfile::contains(const Exponents& e) const noexcept
{
    for (std::size_t v = 0; v < reg->size(); ++v)
        if (e[v] < floor[v] || e[v] > cap[v]) return false;
    return true;
}

std::int64_t TruncationProfile::volume() const noexcept
{
    std::int64_t n = 1;
    for (std::size_t v = 0; v < reg->size(); ++v) n *= std::max(0, cap[v] - floor[v] + 1);
    return n;
}

std::map<std::string, int> TruncationProfile::caps() const
{
    std::map<std::string, int> m;
    for (std::size_t v = 0; v < reg->size(); ++v) m[reg->name(v)] = cap[v];
    return m;
}

// ---------------------------------------------------------------- construction

TruncatedSeries TruncatedSeries::make(SparsePoly p, TruncationProfile prof, std::array<int, kMaxVars> exact)
{
    TruncatedSeries s;
    s.poly_ = std::move(p);
    s.profile_ = std::move(prof);
    s.exact_cap_ = exact;
    for (std::size_t v = s.registry()->size(); v < kMaxVars; ++v) s.exact_cap_[v] = kComplete;
    return s;
}

TruncatedSeries TruncatedSeries::from_poly(const SparsePoly& p, const TruncationProfile& profile)
{
    require_same_registry(p.registry(), profile.reg);
    TruncationProfile prof = profile;
    const std::size_t n = prof.reg->size();
    if (!p.is_zero()) {
        const auto lo = p.min_exponents();
        for (std::size_t v = 0; v < n; ++v) prof.floor[v] = std::min(prof.floor[v], lo[v]);
    }
    std::array<int, kMaxVars> exact;
    exact.fill(kComplete);
    std::vector<SparsePoly::Term> kept;
    kept.reserve(p.size());
    for (const auto& t : p.terms()) {
        bool inside = true;
        for (std::size_t v = 0; v < n; ++v) {
            if (t.exp[v] > prof.cap[v]) {
                exact[v] = prof.cap[v];
                inside = false;
            }
        }
        if (inside) kept.push_back(t);
    }
    SparsePoly stored = SparsePoly::from_terms(prof.reg, std::move(kept));
    return make(std::move(stored), std::move(prof), exact);
}

TruncatedSeries TruncatedSeries::zero(const TruncationProfile& profile)
{
    return from_poly(SparsePoly(profile.reg), profile);
}

TruncatedSeries TruncatedSeries::constant(const TruncationProfile& profile, const ExactScalar& c)
{
    return from_poly(SparsePoly::constant(profile.reg, c), profile);
}

TruncatedSeries TruncatedSeries::variable(const TruncationProfile& profile, std::string_view name)
{
    return from_poly(SparsePoly::variable(profile.reg, name), profile);
}

TruncationProfile TruncatedSeries::exact_region() const
{
    TruncationProfile r = profile_;
    for (std::size_t v = 0; v < registry()->size(); ++v)
        if (exact_cap_[v] != kComplete) r.cap[v] = exact_cap_[v];
    return r;
}

bool TruncatedSeries::in_exact_region(const Exponents& e) const noexcept
{
    for (std::size_t v = 0; v < registry()->size(); ++v)
        if (e[v] > exact_cap_[v]) return false;
    return true;
}

ExactScalar TruncatedSeries::coeff(const Exponents& e) const
{
    if (!in_exact_region(e))
        throw SeriesError("coefficient of " + format_monomial(*registry(), e) + " lies outside the exact region");
    for (std::size_t v = 0; v < registry()->size(); ++v)
        if (e[v] < profile_.floor[v]) return 0;
    return poly_.coeff(e);
}

ExactScalar TruncatedSeries::coeff(const std::map<std::string, int>& e) const
{
    Exponents x;
    for (const auto& [name, k] : e) x[registry()->index(name)] = k;
    return coeff(x);
}

void TruncatedSeries::check_compatible(const TruncatedSeries& other) const
{
    require_same_registry(registry(), other.registry());
}

// ---------------------------------------------------------------- arithmetic

TruncatedSeries TruncatedSeries::operator-() const
{
    return make(-poly_, profile_, exact_cap_);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
{
    a.check_compatible(b);
    const std::size_t n = a.registry()->size();
    TruncationProfile prof = a.profile_;
    std::array<int, kMaxVars> exact{};
    const auto amax = a.poly_.max_exponents();
    const auto bmax = b.poly_.max_exponents();
    for (std::size_t v = 0; v < n; ++v) {
        prof.floor[v] = std::min(a.profile_.floor[v], b.profile_.floor[v]);
        prof.cap[v] = std::min(a.profile_.cap[v], b.profile_.cap[v]);
        int e = std::min(a.exact_cap_[v], b.exact_cap_[v]);
        if (e == kComplete) {
            const bool fits = (a.poly_.is_zero() || amax[v] <= prof.cap[v]) &&
                              (b.poly_.is_zero() || bmax[v] <= prof.cap[v]);
            if (!fits) e = prof.cap[v];
        } else {
            e = std::min(e, prof.cap[v]);
        }
        exact[v] = e;
    }
    SparsePoly sum = a.poly_ + b.poly_;
    std::vector<SparsePoly::Term> kept;
    for (const auto& t : sum.terms())
        if (prof.contains(t.exp)) kept.push_back(t);
    return TruncatedSeries::make(SparsePoly::from_terms(prof.reg, std::move(kept)), prof, exact);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return a + (-b);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    a.check_compatible(b);
    const std::size_t n = a.registry()->size();
    TruncationProfile prof = a.profile_;
    std::array<int, kMaxVars> exact{};
    const auto amax = a.poly_.max_exponents();
    const auto bmax = b.poly_.max_exponents();
    for (std::size_t v = 0; v < n; ++v) {
        prof.floor[v] = a.profile_.floor[v] + b.profile_.floor[v];
        prof.cap[v] = std::min(a.profile_.cap[v], b.profile_.cap[v]);
        // Laurent soundness: an unknown tail above E is shifted by the other factor's floor.
        const int e = std::min(add_cap(a.exact_cap_[v], b.profile_.floor[v]),
                               add_cap(b.exact_cap_[v], a.profile_.floor[v]));
        if (e == kComplete) {
            const bool fits = a.poly_.is_zero() || b.poly_.is_zero() || amax[v] + bmax[v] <= prof.cap[v];
            exact[v] = fits ? kComplete : prof.cap[v];
        } else {
            exact[v] = std::min(e, prof.cap[v]);
        }
    }
    if (a.poly_.is_zero() || b.poly_.is_zero())
        return TruncatedSeries::make(SparsePoly(prof.reg), prof, exact);

    // Dense accumulation over the result box; b is walked over the sub-box that
    // keeps each product inside the caps.
    std::array<int, kMaxVars> blo{}, bhi{};
    for (std::size_t v = 0; v < n; ++v) {
        blo[v] = b.profile_.floor[v];
        bhi[v] = b.profile_.cap[v];
    }
    DenseBox B(n, blo, bhi);
    B.load(b.poly_);
    DenseBox R(n, prof.floor, prof.cap);

    mpq_class prod;
    std::array<int, kMaxVars> lo{}, hi{}, cur{};
    for (const auto& ta : a.poly_.terms()) {
        bool empty = false;
        for (std::size_t v = 0; v < n; ++v) {
            lo[v] = B.lo(v);
            hi[v] = std::min(B.hi(v), prof.cap[v] - ta.exp[v]);
            if (hi[v] < lo[v]) empty = true;
        }
        if (empty) continue;
        cur = lo;
        Exponents start;
        for (std::size_t v = 0; v < n; ++v) start[v] = lo[v];
        std::size_t ib = B.index(start);
        std::size_t ir = R.index(start + ta.exp);
        while (true) {
            const mpq_class& cb = B[ib];
            if (sgn(cb) != 0) {
                mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), cb.get_mpq_t());
                mpq_add(R[ir].get_mpq_t(), R[ir].get_mpq_t(), prod.get_mpq_t());
            }
            std::size_t v = 0;
            for (; v < n; ++v) {
                if (cur[v] < hi[v]) {
                    ++cur[v];
                    ib += B.stride(v);
                    ir += R.stride(v);
                    break;
                }
                const auto steps = static_cast<std::size_t>(cur[v] - lo[v]);
                ib -= steps * B.stride(v);
                ir -= steps * R.stride(v);
                cur[v] = lo[v];
            }
            if (v == n) break;
        }
    }
    return TruncatedSeries::make(R.to_poly(prof.reg), prof, exact);
}

TruncatedSeries TruncatedSeries::scaled(const ExactScalar& c) const
{
    if (sgn(c) == 0) {
        std::array<int, kMaxVars> exact;
        exact.fill(kComplete);
        return make(SparsePoly(registry()), profile_, exact);
    }
    return make(poly_ * c, profile_, exact_cap_);
}

TruncatedSeries TruncatedSeries::times_monomial(const Exponents& m, const ExactScalar& c) const
{
    const std::size_t n = registry()->size();
    TruncationProfile prof = profile_;
    std::array<int, kMaxVars> exact{};
    const auto pmax = poly_.max_exponents();
    for (std::size_t v = 0; v < n; ++v) {
        prof.floor[v] = std::min(profile_.floor[v], profile_.floor[v] + m[v]);
        if (exact_cap_[v] == kComplete) {
            exact[v] = (poly_.is_zero() || pmax[v] + m[v] <= prof.cap[v]) ? kComplete : prof.cap[v];
        } else {
            exact[v] = std::min(exact_cap_[v] + m[v], prof.cap[v]);
        }
    }
    std::vector<SparsePoly::Term> kept;
    if (sgn(c) != 0) {
        for (const auto& t : poly_.terms()) {
            const Exponents e = t.exp + m;
            if (prof.contains(e)) kept.push_back({e, t.coeff * c});
        }
    }
    return make(SparsePoly::from_terms(prof.reg, std::move(kept)), prof, exact);
}

TruncatedSeries TruncatedSeries::mul_binomial(const ExactScalar& c, const Exponents& m) const
{
    return *this + times_monomial(m, c);
}

TruncatedSeries TruncatedSeries::div_binomial(const ExactScalar& c, const Exponents& m) const
{
    const std::size_t n = registry()->size();
    bool positive = false;
    for (std::size_t v = 0; v < n; ++v) {
        if (m[v] < 0) throw SeriesError("division by a binomial with negative exponents");
        if (m[v] > 0) positive = true;
    }
    if (!positive) {
        const ExactScalar d = 1 + c;
        if (sgn(d) == 0) throw SeriesError("division by zero");
        return scaled(1 / d);
    }
    std::array<int, kMaxVars> exact = exact_cap_;
    for (std::size_t v = 0; v < n; ++v) {
        if (m[v] > 0 || exact[v] != kComplete) exact[v] = std::min(exact[v], profile_.cap[v]);
    }
    if (poly_.is_zero()) return make(poly_, profile_, exact);

    DenseBox D(n, profile_.floor, profile_.cap);
    D.load(poly_);
    std::size_t offset = 0;
    for (std::size_t v = 0; v < n; ++v) offset += static_cast<std::size_t>(m[v]) * D.stride(v);
    mpq_class prod;
    // t[e] = s[e] - c t[e - m], walked in increasing linear order.
    for (std::size_t i = 0; i < D.size(); ++i) {
        if (i < offset) continue;
        const Exponents e = D.decode(i);
        bool inside = true;
        for (std::size_t v = 0; v < n; ++v)
            if (e[v] - m[v] < D.lo(v)) {
                inside = false;
                break;
            }
        if (!inside) continue;
        const mpq_class& prev = D[i - offset];
        if (sgn(prev) == 0) continue;
        mpq_mul(prod.get_mpq_t(), c.get_mpq_t(), prev.get_mpq_t());
        mpq_sub(D[i].get_mpq_t(), D[i].get_mpq_t(), prod.get_mpq_t());
    }
    return make(D.to_poly(registry()), profile_, exact);
}

TruncatedSeries TruncatedSeries::inverse() const
{
    const std::size_t n = registry()->size();
    const ExactScalar c0 = poly_.constant_term();
    if (sgn(c0) == 0) throw SeriesError("series with zero constant term is not invertible");
    if (poly_.has_negative_exponents()) throw SeriesError("cannot invert a series with negative exponents");

    const auto pmin = poly_.min_exponents();
    const auto pmax = poly_.max_exponents();
    std::array<int, kMaxVars> exact{};
    for (std::size_t v = 0; v < n; ++v) {
        const bool absent = pmin[v] == 0 && pmax[v] == 0;
        exact[v] = (absent && exact_cap_[v] == kComplete) ? kComplete : std::min(exact_cap_[v], profile_.cap[v]);
    }
    TruncationProfile prof = profile_;
    for (std::size_t v = 0; v < n; ++v) prof.floor[v] = std::min(prof.floor[v], 0);

    if (poly_.size() == 1) return make(SparsePoly::constant(registry(), 1 / c0), prof, exact);
    if (poly_.size() == 2) {
        const auto& t = poly_.terms()[1];
        TruncatedSeries r = constant(prof, 1 / c0).div_binomial(t.coeff / c0, t.exp);
        for (std::size_t v = 0; v < n; ++v) r.exact_cap_[v] = std::min(r.exact_cap_[v], exact[v]);
        return r;
    }

    std::array<int, kMaxVars> lo{};
    DenseBox T(n, lo, prof.cap);
    const ExactScalar inv0 = 1 / c0;
    std::vector<std::pair<Exponents, const ExactScalar*>> rest;
    for (const auto& t : poly_.terms())
        if (!t.exp.is_zero()) rest.emplace_back(t.exp, &t.coeff);
    mpq_class acc, prod;
    for (std::size_t i = 0; i < T.size(); ++i) {
        const Exponents e = T.decode(i);
        acc = (i == 0) ? 1 : 0;
        for (const auto& [f, c] : rest) {
            bool inside = true;
            for (std::size_t v = 0; v < n; ++v)
                if (f[v] > e[v]) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            const mpq_class& prev = T[T.index(e - f)];
            if (sgn(prev) == 0) continue;
            mpq_mul(prod.get_mpq_t(), c->get_mpq_t(), prev.get_mpq_t());
            mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), prod.get_mpq_t());
        }
        if (sgn(acc) != 0) mpq_mul(T[i].get_mpq_t(), acc.get_mpq_t(), inv0.get_mpq_t());
    }
    return make(T.to_poly(registry()), prof, exact);
}

// ---------------------------------------------------------------- structural ops

TruncatedSeries TruncatedSeries::restrict_exact(std::size_t var, int c) const
{
    TruncatedSeries r = *this;
    r.exact_cap_[var] = std::min(r.exact_cap_[var], c);
    return r;
}

TruncatedSeries TruncatedSeries::mark_truncated(std::size_t var) const
{
    return restrict_exact(var, profile_.cap[var]);
}

TruncatedSeries TruncatedSeries::truncate(const TruncationProfile& p) const
{
    require_same_registry(registry(), p.reg);
    const std::size_t n = registry()->size();
    TruncationProfile prof = profile_;
    std::array<int, kMaxVars> exact = exact_cap_;
    const auto pmax = poly_.max_exponents();
    for (std::size_t v = 0; v < n; ++v) {
        prof.cap[v] = std::min(profile_.cap[v], p.cap[v]);
        prof.floor[v] = std::min(profile_.floor[v], p.floor[v]);
        if (exact[v] == kComplete) {
            if (!poly_.is_zero() && pmax[v] > prof.cap[v]) exact[v] = prof.cap[v];
        } else {
            exact[v] = std::min(exact[v], prof.cap[v]);
        }
    }
    std::vector<SparsePoly::Term> kept;
    for (const auto& t : poly_.terms())
        if (prof.contains(t.exp)) kept.push_back(t);
    return make(SparsePoly::from_terms(prof.reg, std::move(kept)), prof, exact);
}

TruncatedSeries TruncatedSeries::retarget(const TruncationProfile& target) const
{
    const std::size_t n = target.reg->size();
    std::array<int, kMaxVars> exact;
    exact.fill(kComplete);
    TruncationProfile prof = target;
    for (std::size_t w = 0; w < n; ++w) {
        if (auto v = registry()->find(target.reg->name(w))) {
            exact[w] = exact_cap_[*v];
            prof.floor[w] = std::min(prof.floor[w], profile_.floor[*v]);
            prof.cap[w] = std::max(prof.cap[w], profile_.cap[*v]);
        }
    }
    TruncatedSeries moved = make(poly_.retarget(target.reg), prof, exact);
    return moved.truncate(target);
}

TruncatedSeries TruncatedSeries::coefficient_of(std::string_view var, int k) const
{
    const std::size_t V = registry()->index(var);
    if (k > exact_cap_[V]) throw SeriesError("coefficient of " + std::string(var) + "^" + std::to_string(k) +
                                             " lies outside the exact region");
    std::vector<SparsePoly::Term> kept;
    for (const auto& t : poly_.terms()) {
        if (t.exp[V] != k) continue;
        SparsePoly::Term s = t;
        s.exp[V] = 0;
        kept.push_back(std::move(s));
    }
    std::array<int, kMaxVars> exact = exact_cap_;
    exact[V] = kComplete;
    TruncationProfile prof = profile_;
    prof.floor[V] = std::min(prof.floor[V], 0);
    prof.cap[V] = std::max(prof.cap[V], 0);
    return make(SparsePoly::from_terms(registry(), std::move(kept)), prof, exact);
}

TruncatedSeries TruncatedSeries::substitute(std::string_view var, const ExactScalar& value) const
{
    return substitute(var, SparsePoly::constant(registry(), value));
}

TruncatedSeries TruncatedSeries::substitute(std::string_view var, const SparsePoly& value) const
{
    require_same_registry(registry(), value.registry());
    const std::size_t n = registry()->size();
    const std::size_t V = registry()->index(var);
    const bool complete_v = exact_cap_[V] == kComplete;

    if (value.is_zero()) {
        if (exact_cap_[V] < 0) throw SeriesError("substitution: constant term in " + std::string(var) + " unknown");
        return coefficient_of(var, 0);
    }

    if (!value.is_monomial()) {
        // Polynomial value: Horner over the powers of var using series arithmetic.
        const auto vmin = value.min_exponents();
        int limit;
        std::size_t w = kMaxVars;
        if (complete_v) {
            limit = poly_.is_zero() ? 0 : poly_.max_exponents()[V];
        } else {
            for (std::size_t u = 0; u < n; ++u)
                if (u != V && vmin[u] >= 1) {
                    w = u;
                    break;
                }
            if (w == kMaxVars)
                throw SeriesError("substitution: unknown tail in " + std::string(var) +
                                  " would contaminate every coefficient");
            limit = exact_cap_[V];
        }
        if (profile_.floor[V] < 0 && value.has_negative_exponents())
            throw SeriesError("substitution: negative powers of a non-monomial value");
        TruncatedSeries base = coefficient_of(var, 0);
        TruncationProfile prof = base.profile_;
        TruncatedSeries val = from_poly(value, prof);
        TruncatedSeries acc = zero(prof);
        for (int k = limit; k >= std::min(0, profile_.floor[V]); --k) {
            if (k < 0) throw SeriesError("substitution: negative powers of a non-monomial value");
            acc = acc * val + coefficient_of(var, k);
        }
        if (!complete_v) {
            const int bound = profile_.floor[w] + (exact_cap_[V] + 1) * vmin[w] - 1;
            acc = acc.restrict_exact(w, bound);
        }
        return acc;
    }

    const auto& mono = value.terms().front();
    const Exponents& m = mono.exp;
    const int vmax_actual = poly_.is_zero() ? 0 : poly_.max_exponents()[V];
    const int floorV = profile_.floor[V];

    // Range of e_V over the whole (untruncated) support.
    auto shifted_min = [&](int mw) -> std::optional<long> {
        if (mw >= 0) return static_cast<long>(floorV) * mw;
        if (!complete_v) return std::nullopt;
        return static_cast<long>(vmax_actual) * mw;
    };

    TruncationProfile prof = profile_;
    std::array<int, kMaxVars> exact = exact_cap_;
    for (std::size_t w = 0; w < n; ++w) {
        if (w == V) continue;
        auto s = shifted_min(m[w]);
        if (!s) throw SeriesError("substitution: unbounded shift of " + registry()->name(w));
        prof.floor[w] = static_cast<int>(std::min<long>(profile_.floor[w], profile_.floor[w] + *s));
        if (exact_cap_[w] != kComplete) {
            exact[w] = static_cast<int>(std::min<long>(exact_cap_[w], exact_cap_[w] + *s));
        } else if (!complete_v && m[w] != 0) {
            exact[w] = prof.cap[w];
        }
    }
    {
        long lowV;
        if (m[V] >= 0)
            lowV = static_cast<long>(floorV) * m[V];
        else if (complete_v)
            lowV = static_cast<long>(vmax_actual) * m[V];
        else
            throw SeriesError("substitution: unbounded shift of " + std::string(var));
        prof.floor[V] = static_cast<int>(std::min<long>(0, lowV));
    }
    exact[V] = complete_v ? kComplete : exact_cap_[V];
    if (!complete_v) {
        // Tail e_V > E_V must land outside the box in some variable with a positive shift.
        std::size_t w = kMaxVars;
        if (m[V] > 0) {
            w = V;
        } else {
            for (std::size_t u = 0; u < n; ++u)
                if (u != V && m[u] > 0) {
                    w = u;
                    break;
                }
        }
        if (w == kMaxVars)
            throw SeriesError("substitution: unknown tail in " + std::string(var) +
                              " would contaminate every coefficient");
        const long base = (w == V) ? 0 : profile_.floor[w];
        const long bound = base + static_cast<long>(exact_cap_[V] + 1) * m[w] - 1;
        if (w == V) exact[V] = kComplete;  // recomputed below
        exact[w] = static_cast<int>(std::min<long>(exact[w] == kComplete ? prof.cap[w] : exact[w], bound));
    } else if (m[V] == 0) {
        exact[V] = kComplete;
    }

    std::vector<SparsePoly::Term> kept;
    kept.reserve(poly_.size());
    std::map<int, ExactScalar> cpow;
    for (const auto& t : poly_.terms()) {
        const int k = t.exp[V];
        Exponents e = t.exp;
        e[V] = 0;
        e = e + k * m;
        auto it = cpow.find(k);
        if (it == cpow.end()) {
            SparsePoly p = SparsePoly::constant(registry(), mono.coeff).pow(k);
            it = cpow.emplace(k, p.constant_term()).first;
        }
        bool inside = true;
        for (std::size_t w = 0; w < n; ++w) {
            if (e[w] > prof.cap[w]) {
                inside = false;
                if (exact[w] == kComplete) exact[w] = prof.cap[w];
            }
        }
        if (inside) kept.push_back({e, t.coeff * it->second});
    }
    for (std::size_t w = 0; w < n; ++w)
        if (exact[w] != kComplete) exact[w] = std::min(exact[w], prof.cap[w]);
    return make(SparsePoly::from_terms(registry(), std::move(kept)), prof, exact);
}

// ---------------------------------------------------------------- comparison

VerificationOutcome series_equal(const TruncatedSeries& lhs, const TruncatedSeries& rhs)
{
    require_same_registry(lhs.registry(), rhs.registry());
    const auto& reg = *lhs.registry();
    const std::size_t n = reg.size();
    std::array<int, kMaxVars> limit{};
    for (std::size_t v = 0; v < n; ++v) {
        limit[v] = std::min(lhs.exact_cap(v), rhs.exact_cap(v));
        const int lo = std::min(lhs.profile().floor[v], rhs.profile().floor[v]);
        if (limit[v] != kComplete && limit[v] < lo)
            return VerificationOutcome::inconclusive("exact regions do not intersect in " + reg.name(v));
    }
    auto inside = [&](const Exponents& e) {
        for (std::size_t v = 0; v < n; ++v)
            if (e[v] > limit[v]) return false;
        return true;
    };
    auto a = lhs.poly().terms();
    auto b = rhs.poly().terms();
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const bool take_a = j >= b.size() || (i < a.size() && term_order_less(a[i].exp, b[j].exp));
        const bool take_b = i >= a.size() || (j < b.size() && term_order_less(b[j].exp, a[i].exp));
        if (take_a) {
            if (inside(a[i].exp)) return VerificationOutcome::fail(make_witness(reg, a[i].exp, a[i].coeff, 0));
            ++i;
        } else if (take_b) {
            if (inside(b[j].exp)) return VerificationOutcome::fail(make_witness(reg, b[j].exp, 0, b[j].coeff));
            ++j;
        } else {
            if (a[i].coeff != b[j].coeff && inside(a[i].exp))
                return VerificationOutcome::fail(make_witness(reg, a[i].exp, a[i].coeff, b[j].coeff));
            ++i;
            ++j;
        }
    }
    return VerificationOutcome::pass();
}

}  // namespace qs
