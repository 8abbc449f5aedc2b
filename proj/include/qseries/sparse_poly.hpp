#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/registry.hpp"
#include "qseries/scalar.hpp"

namespace qs {

/// Exact multivariate Laurent polynomial over the rationals.
///
/// Terms are kept sorted by term_order_less with no zero coefficients, so
/// two polynomials are equal iff their term lists are equal.
class SparsePoly {
public:
    struct Term {
        Exponents exp;
        ExactScalar coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    SparsePoly() = default;
    explicit SparsePoly(Registry reg);

    static SparsePoly constant(Registry reg, const ExactScalar& c);
    static SparsePoly monomial(Registry reg, const Exponents& e, const ExactScalar& c = 1);
    static SparsePoly variable(Registry reg, std::string_view name, int power = 1);
    /// Sums duplicate exponents and drops zeros.
    static SparsePoly from_terms(Registry reg, std::vector<Term> terms);

    const Registry& registry() const noexcept { return reg_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    /// Constant term (coefficient of the zero exponent).
    ExactScalar constant_term() const { return coeff(Exponents{}); }
    ExactScalar coeff(const Exponents& e) const;
    const Term& leading_term() const { return terms_.back(); }

    /// Componentwise min / max exponents over the support (zero vector when empty).
    Exponents min_exponents() const noexcept;
    Exponents max_exponents() const noexcept;
    bool has_negative_exponents() const noexcept;

    SparsePoly operator-() const;
    SparsePoly& operator+=(const SparsePoly& rhs);
    SparsePoly& operator-=(const SparsePoly& rhs);
    SparsePoly& operator*=(const SparsePoly& rhs);
    SparsePoly& operator*=(const ExactScalar& c);
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(SparsePoly a, const ExactScalar& c) { return a *= c; }
    friend SparsePoly operator*(const ExactScalar& c, SparsePoly a) { return a *= c; }

    /// Multiply by c * x^e.
    SparsePoly times_monomial(const Exponents& e, const ExactScalar& c = 1) const;
    /// Non-negative powers only; a monomial may take negative powers.
    SparsePoly pow(int k) const;

    /// Exact quotient when `d` divides `*this` in the Laurent ring, otherwise nullopt.
    std::optional<SparsePoly> divide_exact(const SparsePoly& d) const;

    /// Replace variable `var` by `value`. Negative powers of `var` require `value`
    /// to be a monomial.
    SparsePoly substitute(std::size_t var, const SparsePoly& value) const;
    SparsePoly substitute(std::string_view var, const SparsePoly& value) const
    {
        return substitute(reg_->index(var), value);
    }

    /// Same polynomial over another registry; every variable with content must exist there.
    SparsePoly retarget(const Registry& target) const;

    std::string to_string() const;

    friend bool operator==(const SparsePoly& a, const SparsePoly& b);
    /// Arbitrary but fixed total order (for use as a map key).
    friend bool operator<(const SparsePoly& a, const SparsePoly& b);

private:
    void check_registry(const SparsePoly& other) const;

    Registry reg_;
    std::vector<Term> terms_;
};

/// Throws std::invalid_argument when the two polynomials live over different registries.
void require_same_registry(const Registry& a, const Registry& b);

}  // namespace qs
