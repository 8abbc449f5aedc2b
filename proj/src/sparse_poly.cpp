#include "qseries/sparse_poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qs {

namespace {

struct TermOrder {
    bool operator()(const Exponents& a, const Exponents& b) const noexcept
    {
        return term_order_less(a, b);
    }
};

void normalize(std::vector<SparsePoly::Term>& terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return term_order_less(a.exp, b.exp); });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        ExactScalar c = terms[i].coeff;
        while (j < terms.size() && terms[j].exp == terms[i].exp) c += terms[j++].coeff;
        if (sgn(c) != 0) {
            terms[out].exp = terms[i].exp;
            terms[out].coeff = std::move(c);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

}  // namespace

void require_same_registry(const Registry& a, const Registry& b)
{
    if (!same_registry(a, b)) throw std::invalid_argument("variable registry mismatch");
}

SparsePoly::SparsePoly(Registry reg) : reg_(std::move(reg))
{
    if (!reg_) throw std::invalid_argument("null registry");
}

SparsePoly SparsePoly::constant(Registry reg, const ExactScalar& c)
{
    return monomial(std::move(reg), Exponents{}, c);
}

SparsePoly SparsePoly::monomial(Registry reg, const Exponents& e, const ExactScalar& c)
{
    SparsePoly p(std::move(reg));
    for (std::size_t i = p.reg_->size(); i < kMaxVars; ++i)
        if (e[i] != 0) throw std::invalid_argument("exponent outside registry");
    if (sgn(c) != 0) p.terms_.push_back({e, c});
    return p;
}

SparsePoly SparsePoly::variable(Registry reg, std::string_view name, int power)
{
    const auto i = reg->index(name);
    return monomial(std::move(reg), Exponents::unit(i, power));
}

SparsePoly SparsePoly::from_terms(Registry reg, std::vector<Term> terms)
{
    SparsePoly p(std::move(reg));
    for (const auto& t : terms)
        for (std::size_t i = p.reg_->size(); i < kMaxVars; ++i)
            if (t.exp[i] != 0) throw std::invalid_argument("exponent outside registry");
    normalize(terms);
    p.terms_ = std::move(terms);
    return p;
}

bool SparsePoly::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().exp.is_zero());
}

ExactScalar SparsePoly::coeff(const Exponents& e) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponents& x) { return term_order_less(t.exp, x); });
    if (it != terms_.end() && it->exp == e) return it->coeff;
    return 0;
}

Exponents SparsePoly::min_exponents() const noexcept
{
    Exponents m;
    if (terms_.empty()) return m;
    m = terms_.front().exp;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], t.exp[i]);
    return m;
}

Exponents SparsePoly::max_exponents() const noexcept
{
    Exponents m;
    if (terms_.empty()) return m;
    m = terms_.front().exp;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = std::max(m[i], t.exp[i]);
    return m;
}

bool SparsePoly::has_negative_exponents() const noexcept
{
    const auto m = min_exponents();
    for (auto e : m.v)
        if (e < 0) return true;
    return false;
}

void SparsePoly::check_registry(const SparsePoly& other) const
{
    require_same_registry(reg_, other.reg_);
}

SparsePoly SparsePoly::operator-() const
{
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& rhs)
{
    check_registry(rhs);
    if (rhs.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + rhs.terms_.size());
    auto a = terms_.begin();
    auto b = rhs.terms_.begin();
    while (a != terms_.end() || b != rhs.terms_.end()) {
        if (b == rhs.terms_.end() || (a != terms_.end() && term_order_less(a->exp, b->exp))) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || term_order_less(b->exp, a->exp)) {
            out.push_back(*b++);
        } else {
            ExactScalar c = a->coeff + b->coeff;
            if (sgn(c) != 0) out.push_back({a->exp, std::move(c)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& rhs)
{
    return *this += -rhs;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& rhs)
{
    *this = *this * rhs;
    return *this;
}

SparsePoly& SparsePoly::operator*=(const ExactScalar& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b)
{
    a.check_registry(b);
    SparsePoly r(a.reg_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].exp, a.terms_[0].coeff);
    if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].exp, b.terms_[0].coeff);

    std::unordered_map<Exponents, ExactScalar, ExponentsHash> acc;
    acc.reserve(a.terms_.size() + b.terms_.size());
    ExactScalar prod;
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            prod = x.coeff * y.coeff;
            acc[x.exp + y.exp] += prod;
        }
    }
    r.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (sgn(c) != 0) r.terms_.push_back({e, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const auto& p, const auto& q) { return term_order_less(p.exp, q.exp); });
    return r;
}

SparsePoly SparsePoly::times_monomial(const Exponents& e, const ExactScalar& c) const
{
    SparsePoly r(reg_);
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    // Shifting by a fixed exponent preserves the graded term order.
    for (const auto& t : terms_) r.terms_.push_back({t.exp + e, t.coeff * c});
    return r;
}

SparsePoly SparsePoly::pow(int k) const
{
    if (k < 0) {
        if (!is_monomial()) throw std::domain_error("negative power of a non-monomial");
        const auto& t = terms_.front();
        ExactScalar inv = 1 / t.coeff;
        SparsePoly base = monomial(reg_, -1 * t.exp, inv);
        return base.pow(-k);
    }
    SparsePoly result = constant(reg_, 1);
    SparsePoly base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

std::optional<SparsePoly> SparsePoly::divide_exact(const SparsePoly& d) const
{
    check_registry(d);
    if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
    SparsePoly quotient(reg_);
    if (is_zero()) return quotient;
    if (d.is_monomial()) {
        const auto& t = d.terms_.front();
        return times_monomial(-1 * t.exp, 1 / t.coeff);
    }

    // If d*Q == p then min/max exponents add componentwise, which bounds Q's support.
    const Exponents lo = min_exponents() - d.min_exponents();
    const Exponents hi = max_exponents() - d.max_exponents();
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (lo[i] > hi[i]) return std::nullopt;

    std::map<Exponents, ExactScalar, TermOrder> rem;
    for (const auto& t : terms_) rem.emplace(t.exp, t.coeff);
    const auto& lt = d.terms_.back();
    std::vector<Term> qterms;
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        Exponents qe = top->first - lt.exp;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (qe[i] < lo[i] || qe[i] > hi[i]) return std::nullopt;
        ExactScalar qc = top->second / lt.coeff;
        for (const auto& t : d.terms_) {
            const Exponents e = t.exp + qe;
            auto [it, inserted] = rem.try_emplace(e, 0);
            it->second -= qc * t.coeff;
            if (sgn(it->second) == 0) rem.erase(it);
        }
        qterms.push_back({qe, std::move(qc)});
    }
    std::reverse(qterms.begin(), qterms.end());
    quotient.terms_ = std::move(qterms);
    return quotient;
}

SparsePoly SparsePoly::substitute(std::size_t var, const SparsePoly& value) const
{
    check_registry(value);
    if (var >= reg_->size()) throw std::out_of_range("substitution variable outside registry");
    std::map<int, std::vector<Term>> by_power;
    for (const auto& t : terms_) {
        Term stripped = t;
        stripped.exp[var] = 0;
        by_power[t.exp[var]].push_back(std::move(stripped));
    }
    SparsePoly result(reg_);
    for (auto& [k, ts] : by_power) {
        SparsePoly part = from_terms(reg_, std::move(ts));
        if (k == 0) {
            result += part;
        } else if (value.is_monomial()) {
            const auto& t = value.terms_.front();
            ExactScalar c;
            mpq_class base = t.coeff;
            // c = coeff^k for possibly negative k
            mpz_class num = base.get_num(), den = base.get_den();
            mpz_class pn, pd;
            const unsigned long ak = static_cast<unsigned long>(k < 0 ? -k : k);
            mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), ak);
            mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), ak);
            c = k > 0 ? mpq_class(pn, pd) : mpq_class(pd, pn);
            c.canonicalize();
            result += part.times_monomial(k * t.exp, c);
        } else if (value.is_zero()) {
            if (k < 0) throw std::domain_error("negative power of a variable substituted by zero");
        } else {
            result += part * value.pow(k);
        }
    }
    return result;
}

SparsePoly SparsePoly::retarget(const Registry& target) const
{
    std::array<std::size_t, kMaxVars> map{};
    for (std::size_t i = 0; i < reg_->size(); ++i) {
        auto j = target->find(reg_->name(i));
        if (j) {
            map[i] = *j;
        } else {
            for (const auto& t : terms_)
                if (t.exp[i] != 0)
                    throw std::invalid_argument("variable " + reg_->name(i) + " missing from target registry");
            map[i] = kMaxVars;
        }
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e;
        for (std::size_t i = 0; i < reg_->size(); ++i)
            if (map[i] < kMaxVars) e[map[i]] = t.exp[i];
        out.push_back({e, t.coeff});
    }
    return from_terms(target, std::move(out));
}

std::string SparsePoly::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        ExactScalar c = t.coeff;
        const bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        const bool unit_coeff = (c == 1);
        if (t.exp.is_zero()) {
            os << qs::to_string(c);
        } else {
            if (!unit_coeff) os << qs::to_string(c) << '*';
            os << format_monomial(*reg_, t.exp);
        }
    }
    return os.str();
}

bool operator==(const SparsePoly& a, const SparsePoly& b)
{
    return same_registry(a.reg_, b.reg_) && a.terms_ == b.terms_;
}

bool operator<(const SparsePoly& a, const SparsePoly& b)
{
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const auto& x = a.terms_[i];
        const auto& y = b.terms_[i];
        if (x.exp != y.exp) return term_order_less(x.exp, y.exp);
        const int c = cmp(x.coeff, y.coeff);
        if (c != 0) return c < 0;
    }
    return false;
}

}  // namespace qs
